import pytest

from fibra import Bundle, FiberedMorphism, ReducedFiberedCorrespondence, classify, factorize, kernel_equivalence, quotient_bundle
from fibra import generate_topology, reduced_compose, reduced_inverse
from fibra.errors import BundleMismatch, InvalidStructure, NotAnEquivalence, PartialDomain
from tests import gen, oracles


def parity_setup():
    e = Bundle(["m"], {"m": [0, 1, 2, 3]}, name="E")
    s = ReducedFiberedCorrespondence(e, e, {"m": [(a, b) for a in range(4) for b in range(4) if a % 2 == b % 2]})
    return e, s


def test_parity_quotient():
    e, s = parity_setup()
    q = quotient_bundle(e, s)
    assert q.quotient.fibers["m"] == {0, 1}
    assert dict(q.class_map["m"]) == {0: {0, 2}, 1: {1, 3}}
    assert [q.nat("m", a) for a in range(4)] == [0, 1, 0, 1]
    assert q.quotient_topology is None


def test_quotient_rejects_non_equivalence():
    e, _ = parity_setup()
    with pytest.raises(NotAnEquivalence):
        quotient_bundle(e, ReducedFiberedCorrespondence(e, e, {"m": [(0, 1)]}))
    two = Bundle(["m", "n"], {"m": [0], "n": [0]})
    with pytest.raises(PartialDomain):
        quotient_bundle(two, ReducedFiberedCorrespondence(two, two, {"m": [(0, 0)]}))
    with pytest.raises(BundleMismatch):
        quotient_bundle(two, parity_setup()[1])


def test_factorization_example():
    a = Bundle(["m"], {"m": [0, 1, 2, 3]}, name="A")
    b = Bundle(["m"], {"m": ["u", "v", "w"]}, name="B")
    f = FiberedMorphism(a, b, {"m": {0: "u", 1: "u", 2: "v", 3: "v"}})
    fac = factorize(f)
    assert fac.quotient.quotient.fibers["m"] == {0, 2}
    assert dict(fac.t.maps["m"]) == {0: "u", 2: "v"}
    assert fac.i.target.fibers["m"] == {"u", "v", "w"}
    assert not f.is_surjective() and not f.is_injective()
    assert fac.t.is_bijective() and fac.i.is_injective() and fac.j.is_surjective()
    assert fac.j.then(fac.t).then(fac.i) == f


def test_morphism_validation():
    a = Bundle(["m"], {"m": [0, 1]})
    b = Bundle(["m"], {"m": ["u"]})
    with pytest.raises(InvalidStructure):
        FiberedMorphism(a, b, {"m": {0: "u"}})
    with pytest.raises(InvalidStructure):
        FiberedMorphism(a, b, {"m": {0: "u", 1: "z"}})
    with pytest.raises(BundleMismatch):
        FiberedMorphism(a, Bundle(["n"], {"n": ["u"]}), {})


def test_random_factorizations():
    r = gen.rng(20)
    for _ in range(200):
        base = [f"m{i}" for i in range(r.randint(0, 4))]
        a = gen.same_base(r, "A", base)
        b = gen.same_base(r, "B", base, min_fiber=1)
        f = gen.morphism(r, a, b)
        fac = factorize(f)
        for x in base:
            for p in a.fibers[x]:
                assert fac.i(x, fac.t(x, fac.j(x, p))) == f(x, p)
        k = kernel_equivalence(f)
        assert "equivalence" in classify(k)
        assert k == reduced_compose(reduced_inverse(f.graph()), f.graph())
        for x in base:
            blocks = {frozenset(c) for c in fac.quotient.class_map[x].values()}
            assert blocks == oracles.partition_of(a.fibers[x], k.fibers[x])


def topologized(r, base, sizes):
    fibers = {x: list(range(n)) for x, n in zip(base, sizes)}
    total = [(x, a) for x in base for a in fibers[x]]
    base_top = generate_topology(base, [gen.subset(r, base) for _ in range(2)])
    # preimages of base opens keep the projection continuous
    subbasis = [{p for p in total if p[0] in u} for u in base_top.opens]
    subbasis += [gen.subset(r, total, 0.4) for _ in range(r.randint(0, 3))]
    return Bundle(base, fibers, base_topology=base_top, total_topology=generate_topology(total, subbasis))


def random_equivalence(r, e):
    fibers = {}
    for x in e.base:
        elems = sorted(e.fibers[x])
        blocks = oracles.partition_of(elems, gen.relation(r, elems, elems, 0.25))
        fibers[x] = [(a, b) for blk in blocks for a in blk for b in blk]
    return ReducedFiberedCorrespondence(e, e, fibers, e.base)


def test_quotient_topology_is_finest():
    r = gen.rng(21)
    for _ in range(25):
        base = ["m0", "m1"][: r.randint(1, 2)]
        e = topologized(r, base, [r.randint(1, 3) for _ in base])
        q = quotient_bundle(e, random_equivalence(r, e))
        owner = {(x, a): (x, q.nat(x, a)) for x, a in e.total_space()}
        assert len(q.quotient.total_space()) <= 5
        assert oracles.finest_continuous(e.total_topology.opens, owner, q.quotient.total_space(), q.quotient_topology.opens)
        # the quotient still projects continuously onto the base
        for u in e.base_topology.opens:
            assert q.quotient_topology.is_open({p for p in q.quotient.total_space() if p[0] in u})


def test_finest_oracle_rejects_coarser():
    r = gen.rng(22)
    e = topologized(r, ["m"], [3])
    e = Bundle(["m"], e.fibers, base_topology=e.base_topology, total_topology=generate_topology(e.total_space(), [{("m", 0)}, {("m", 1)}]))
    s = ReducedFiberedCorrespondence(e, e, {"m": [(a, a) for a in range(3)]})
    q = quotient_bundle(e, s)
    owner = {p: p for p in e.total_space()}
    coarse = {frozenset(), frozenset(q.quotient.total_space())}
    assert not oracles.finest_continuous(e.total_topology.opens, owner, q.quotient.total_space(), coarse)
    assert oracles.finest_continuous(e.total_topology.opens, owner, q.quotient.total_space(), q.quotient_topology.opens)
