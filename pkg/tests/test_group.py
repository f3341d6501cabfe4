import itertools

import pytest

from fibra import (
    Bundle,
    FiberedGroup,
    FiniteGroup,
    Section,
    Tower,
    TstarRepresentation,
    cyclic_group,
    degenerate_fibers,
    is_free,
    little_group,
    orbit_equivalence,
    orbit_quotient,
    stabilizer,
    tower_project,
    tower_validate,
    trivial_group,
)
from fibra.errors import BrokenChain, EnumerationBound, InvalidStructure, SectionMismatch, UnknownElement, UnknownPoint
from fibra.group import level_two_projection
from tests import gen


def z2_rep():
    """Z2 swaps the fiber over ``r`` and fixes the single point over ``s``."""
    grp = cyclic_group(2)
    space = Bundle(["r", "s"], {"r": ["p", "q"], "s": ["o"]}, name="E")
    action = {
        "r": {("g0", "p"): "p", ("g0", "q"): "q", ("g1", "p"): "q", ("g1", "q"): "p"},
        "s": {("g0", "o"): "o", ("g1", "o"): "o"},
    }
    return TstarRepresentation(FiberedGroup(space.base, grp), space, action)


def test_group_validation():
    z3 = cyclic_group(3)
    assert z3.mul("g1", "g2") == "g0" and z3.inv("g1") == "g2"
    assert z3.is_subgroup({"g0"}) and not z3.is_subgroup({"g0", "g1"})
    with pytest.raises(InvalidStructure):
        FiniteGroup(["a", "b"], {("a", "a"): "a", ("a", "b"): "b", ("b", "a"): "b", ("b", "b"): "b"}, "a")
    assert len(trivial_group()) == 1


def test_action_validation():
    grp = cyclic_group(2)
    space = Bundle(["r"], {"r": ["p", "q"]})
    with pytest.raises(InvalidStructure):
        # g1 fixes everything but g0 swaps: identity must act trivially
        TstarRepresentation(FiberedGroup(space.base, grp), space, {
            "r": {("g0", "p"): "q", ("g0", "q"): "p", ("g1", "p"): "p", ("g1", "q"): "q"},
        })
    with pytest.raises(InvalidStructure):
        TstarRepresentation(FiberedGroup(space.base, grp), space, {"r": {("g0", "p"): "p"}})


def test_stabilizers_fixture():
    rep = z2_rep()
    assert stabilizer(rep, "r", "p") == {"g0"}
    assert stabilizer(rep, "s", "o") == {"g0", "g1"}
    with pytest.raises(UnknownPoint):
        stabilizer(rep, "t", "p")
    with pytest.raises(UnknownElement):
        stabilizer(rep, "r", "o")
    assert not is_free(rep)


def test_little_group_fixture():
    rep = z2_rep()
    h = Section(rep.space, {"r": "p", "s": "o"})
    lg = little_group(rep, h)
    assert {tuple(sorted(g.assignment.items())) for g in lg} == {
        (("r", "g0"), ("s", "g0")),
        (("r", "g0"), ("s", "g1")),
    }
    with pytest.raises(EnumerationBound):
        little_group(rep, h, limit=3)
    other = Bundle(["r", "s"], {"r": ["p"], "s": ["o"]})
    with pytest.raises(SectionMismatch):
        little_group(rep, Section(other, {"r": "p", "s": "o"}))


def test_little_group_example_with_four_sections():
    grp = cyclic_group(2)
    space = Bundle(["r", "s"], {"r": ["p"], "s": ["o"]})
    fix = {"r": {("g0", "p"): "p", ("g1", "p"): "p"}, "s": {("g0", "o"): "o", ("g1", "o"): "o"}}
    rep = TstarRepresentation(FiberedGroup(space.base, grp), space, fix)
    assert len(little_group(rep, Section(space, {"r": "p", "s": "o"}))) == 4


def test_enumeration_bound_from_environment(monkeypatch):
    rep = z2_rep()
    h = Section(rep.space, {"r": "p", "s": "o"})
    monkeypatch.setenv("FIBRA_MAX_ENUM", "2")
    with pytest.raises(EnumerationBound):
        little_group(rep, h)


def test_orbit_quotient_flags_fixed_point():
    oq = orbit_quotient(z2_rep())
    assert oq.degenerate == {("s", "o")}
    assert dict(oq.bijections[("r", "p")]) == {"g0": "p", "g1": "q"}
    top = oq.level2.levels[0]
    # one fiber of each size: no strict majority, so both are reported
    assert degenerate_fibers(top) == {("r", "p"), ("s", "o")}
    assert tower_validate(oq.level2) == {"height": 2, "valid": True, "sizes": [3, 2]}
    nat = oq.quotient.nat
    for (point, a), cls in level_two_projection(oq).items():
        assert cls == (point[0], nat(point[0], a))


def shift_rep(r, n, base, fixed=()):
    """Z_n acting by rotation on n-element fibers, trivially on one-point fibers in ``fixed``."""
    grp = cyclic_group(n)
    fibers, action = {}, {}
    for x in base:
        if x in fixed:
            fibers[x] = ["o"]
            action[x] = {(g, "o"): "o" for g in grp.elements}
            continue
        k = r.randint(1, 2)
        els = [(c, i) for c in range(k) for i in range(n)]
        fibers[x] = els
        action[x] = {(f"g{j}", (c, i)): (c, (i + j) % n) for j in range(n) for c, i in els}
    space = Bundle(base, fibers)
    return TstarRepresentation(FiberedGroup(base, grp), space, action)


def test_orbit_quotient_majority_flags_only_fixed_point():
    grp = cyclic_group(2)
    swap = {("g0", "p"): "p", ("g0", "q"): "q", ("g1", "p"): "q", ("g1", "q"): "p"}
    space = Bundle(["r", "t", "s"], {"r": ["p", "q"], "t": ["p", "q"], "s": ["o"]})
    fix = {("g0", "o"): "o", ("g1", "o"): "o"}
    rep = TstarRepresentation(FiberedGroup(space.base, grp), space, {"r": swap, "t": swap, "s": fix})
    oq = orbit_quotient(rep)
    assert oq.degenerate == {("s", "o")}
    assert degenerate_fibers(oq.level2.levels[0]) == {("s", "o")}


def test_free_iff_orbits_full_iff_little_group_trivial():
    r = gen.rng(30)
    for _ in range(40):
        base = [f"m{i}" for i in range(r.randint(1, 3))]
        fixed = set(gen.subset(r, base, 0.3))
        rep = shift_rep(r, r.randint(1, 3), base, fixed)
        free = is_free(rep)
        oq = orbit_quotient(rep)
        full = not oq.degenerate
        assert free == full
        assert free == (len(rep.group) == 1 or not fixed)
        trivial = all(
            len(little_group(rep, Section(rep.space, dict(zip(sorted(base), vals))))) == 1
            for vals in itertools.product(*(sorted(rep.space.fibers[x], key=repr) for x in sorted(base)))
        )
        assert free == trivial
        for point, bij in oq.bijections.items():
            assert set(bij) == set(rep.group.elements)
            assert set(bij.values()) == oq.quotient.class_map[point[0]][point[1]]


def test_orbit_equivalence_classes_are_orbits():
    rep = z2_rep()
    s = orbit_equivalence(rep)
    assert s.fibers["r"] == {("p", "p"), ("p", "q"), ("q", "p"), ("q", "q")}
    assert rep.orbit("r", "p") == {"p", "q"}


def test_tower_chain_and_projection():
    bottom = Bundle(["m"], {"m": [0, 1]})
    middle = Bundle(bottom.total_space(), {("m", 0): ["a"], ("m", 1): ["b", "c"]})
    t = Tower([middle, bottom])
    assert tower_validate(t)["sizes"] == [3, 2]
    proj = tower_project(t, 2, 0)
    assert proj[(("m", 1), "c")] == "m"
    assert tower_project(t, 2, 1)[(("m", 1), "c")] == ("m", 1)
    assert tower_project(t, 1, 0) == {("m", 0): "m", ("m", 1): "m"}
    with pytest.raises(ValueError):
        tower_project(t, 1, 1)
    with pytest.raises(BrokenChain) as exc:
        Tower([Bundle(["z"], {"z": [1]}), bottom])
    assert exc.value.level == 2
