import pytest

from fibra import Bundle, Section, Trivialization, degenerate_fibers, is_subbundle, product, reduced_product, sections
from fibra.errors import BaseMismatch, EmptyFiber, InvalidStructure, NotContained
from tests import gen


def test_bundle_invariants():
    with pytest.raises(InvalidStructure):
        Bundle({"m"}, {})
    with pytest.raises(InvalidStructure):
        Bundle({"m"}, {"m": {"a", "b"}}, Trivialization({"t0", "t1"}, {"m": {"a": "t0", "b": "t0"}}))
    b = Bundle({"m"}, {"m": {"a"}})
    assert b.total_space() == {("m", "a")}


def test_is_subbundle_examples():
    big = Bundle({"m", "n"}, {"m": {"a", "b"}, "n": {"c"}})
    w = is_subbundle(big, big)
    assert dict(w.base_injection) == {"m": "m", "n": "n"}
    small = Bundle({"m"}, {"m": {"a"}})
    assert is_subbundle(small, big).sub is small
    with pytest.raises(NotContained) as exc:
        is_subbundle(Bundle({"m"}, {"m": {"z"}}), big)
    assert exc.value.point == "m"
    with pytest.raises(NotContained):
        is_subbundle(Bundle({"q"}, {"q": set()}), big)


def test_witnesses_compose():
    big = Bundle({"m", "n"}, {"m": {"a", "b"}, "n": {"c"}})
    mid = Bundle({"m", "n"}, {"m": {"a"}, "n": {"c"}})
    small = Bundle({"m"}, {"m": {"a"}})
    w = is_subbundle(small, mid).compose(is_subbundle(mid, big))
    assert w.sup is big and w.sub is small
    assert dict(w.total_injection["m"]) == {"a": "a"}


def test_product_examples():
    a = Bundle({"m"}, {"m": {"a"}})
    b = Bundle({"n"}, {"n": {"b"}})
    p = product(a, b)
    assert p.base == {("m", "n")}
    assert p.fibers[("m", "n")] == {("a", "b")}
    r = gen.rng(0)
    two = gen.bundle(r, "A", max_base=2, min_fiber=1)
    two = Bundle(["x", "y"], {"x": {1}, "y": {2, 3}})
    three = Bundle(["p", "q", "s"], {"p": {1}, "q": {1, 2}, "s": set()})
    pr = product(two, three)
    assert len(pr.base) == 6
    for (x, y), fiber in pr.fibers.items():
        assert len(fiber) == len(two.fibers[x]) * len(three.fibers[y])
    assert product(a, Bundle(set(), {})).base == set()


def test_product_charts_are_componentwise():
    a = gen.uniform_bundle("A", ["m0", "m1"], 2)
    b = gen.uniform_bundle("B", ["n0"], 3)
    p = product(a, b)
    assert len(p.trivialization.typical) == 6
    assert p.trivialization.charts[("m1", "n0")][("m1:1", "n0:2")] == ("t1", "t2")


def test_reduced_product_examples():
    a = Bundle({"m"}, {"m": {"a0", "a1"}})
    b = Bundle({"m"}, {"m": {"b0"}})
    assert reduced_product(a, b).fibers["m"] == {("a0", "b0"), ("a1", "b0")}
    r = gen.rng(1)
    for _ in range(20):
        c = gen.bundle(r, "C")
        sq = reduced_product(c, c)
        assert all(len(sq.fibers[x]) == len(c.fibers[x]) ** 2 for x in c.base)
    e = Bundle({"m", "n"}, {"m": set(), "n": {1}})
    assert reduced_product(e, e).fibers["m"] == set()
    with pytest.raises(BaseMismatch):
        reduced_product(a, Bundle({"n"}, {"n": {1}}))


def test_sections_examples():
    assert len(sections(Bundle({"m"}, {"m": {"a", "b"}}))) == 2
    assert len(sections(Bundle({"m", "n"}, {"m": {1, 2}, "n": {1, 2, 3}}))) == 6
    with pytest.raises(EmptyFiber) as exc:
        sections(Bundle({"m", "n"}, {"m": {1}, "n": set()}))
    assert exc.value.point == "n"


def test_sections_of_reduced_product_are_pairs():
    r = gen.rng(2)
    for _ in range(20):
        base = [f"m{i}" for i in range(r.randint(0, 3))]
        a = gen.same_base(r, "A", base, max_fiber=3, min_fiber=1)
        b = gen.same_base(r, "B", base, max_fiber=3, min_fiber=1)
        joint = {tuple(sorted(s.assignment.items())) for s in sections(reduced_product(a, b))}
        paired = {
            tuple(sorted((x, (s(x), t(x))) for x in base)) for s in sections(a) for t in sections(b)
        }
        assert joint == paired


def test_section_validation():
    b = Bundle({"m"}, {"m": {"a"}})
    with pytest.raises(InvalidStructure):
        Section(b, {"m": "z"})
    with pytest.raises(InvalidStructure):
        Section(b, {})


def test_degenerate_fibers_examples():
    assert degenerate_fibers(Bundle({"m", "n"}, {"m": {1, 2}, "n": {1, 2}})) == set()
    assert degenerate_fibers(Bundle({"m", "n", "o"}, {"m": {1, 2}, "n": {1, 2}, "o": {1}})) == {"o"}
    assert degenerate_fibers(Bundle({"m", "n"}, {"m": {1}, "n": {1, 2}})) == {"m", "n"}
    assert degenerate_fibers(Bundle(set(), {})) == set()


def test_degenerate_fibers_reports_missing_charts():
    b = Bundle({"m", "n"}, {"m": {1}, "n": {2}}, Trivialization({"t"}, {"m": {1: "t"}}))
    assert degenerate_fibers(b) == {"n"}
