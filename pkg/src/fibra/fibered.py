"""Fibered and reduced fibered correspondences, fibered relations and their properties.

A fibered correspondence from bundle A (base M) to bundle B (base N) is a
base correspondence ``Φ ⊆ M × N`` with a fiber relation ``F_(x,y) ⊆ A_x × B_y``
over every base pair. A reduced one lives over a single base: a domain
``N ⊆ M`` and ``F_x ⊆ A_x × B_x`` for ``x ∈ N``.
"""

from ._util import frozendict, rel_compose, rel_diagonal, rel_inverse, sorted_labels
from .bundle import Bundle, Trivialization, is_subbundle, sections
from .errors import (
    ArityMismatch,
    BaseMismatch,
    BundleMismatch,
    InvalidStructure,
    MissingTrivialization,
    NonInjectiveBase,
    NonUniformSubbundle,
    NotEndorelation,
    NotOverDiagonal,
    PartialDomain,
    SingularFiber,
    TheoremViolation,
)
from .relations import Correspondence, compose, diagonal, inverse

PROPERTIES = ("transitive", "symmetric", "antisymmetric", "reflexive")


def _check_fiber_pairs(pairs, left, right, where):
    for a, b in pairs:
        if a not in left or b not in right:
            raise InvalidStructure(f"fiber relation over {where!r} has {(a, b)!r} outside its fibers")


class FiberedCorrespondence:
    __slots__ = ("source", "target", "base", "fibers", "_hash")

    def __init__(self, source, target, base, fibers):
        if not isinstance(base, Correspondence):
            base = Correspondence(source.base, target.base, base)
        self.source = source
        self.target = target
        self.base = base
        self.fibers = frozendict({tuple(k): frozenset(map(tuple, v)) for k, v in fibers.items()})
        self._hash = None
        self._validate()

    def _validate(self):
        if self.base.source != self.source.base or self.base.target != self.target.base:
            raise InvalidStructure("base correspondence must run between the bundles' bases")
        if set(self.fibers) != set(self.base.pairs):
            raise InvalidStructure("every base pair carries exactly one fiber relation")
        for (x, y), pairs in self.fibers.items():
            _check_fiber_pairs(pairs, self.source.fibers[x], self.target.fibers[y], (x, y))

    def __eq__(self, other):
        if not isinstance(other, FiberedCorrespondence):
            return NotImplemented
        return (
            self.source.same_shape(other.source)
            and self.target.same_shape(other.target)
            and self.base == other.base
            and self.fibers == other.fibers
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.base, self.fibers))
        return self._hash

    def __repr__(self):
        return f"FiberedCorrespondence(base={sorted_labels(self.base.pairs)})"

    def total(self):
        """The correspondence as a set of ``(x, y, a, b)`` tuples."""
        return frozenset((x, y, a, b) for (x, y), pairs in self.fibers.items() for a, b in pairs)


class ReducedFiberedCorrespondence:
    __slots__ = ("source", "target", "domain", "fibers", "_hash")

    def __init__(self, source, target, fibers, domain=None):
        if source.base != target.base:
            raise BaseMismatch("reduced fibered correspondences live over one base")
        self.source = source
        self.target = target
        self.fibers = frozendict({x: frozenset(map(tuple, v)) for x, v in fibers.items()})
        self.domain = frozenset(self.fibers) if domain is None else frozenset(domain)
        self._hash = None
        if not self.domain <= source.base:
            raise InvalidStructure("domain must be a subset of the base")
        if set(self.fibers) != set(self.domain):
            raise InvalidStructure("every domain point carries exactly one fiber relation")
        for x, pairs in self.fibers.items():
            _check_fiber_pairs(pairs, source.fibers[x], target.fibers[x], x)

    def __eq__(self, other):
        if not isinstance(other, ReducedFiberedCorrespondence):
            return NotImplemented
        return (
            self.source.same_shape(other.source)
            and self.target.same_shape(other.target)
            and self.domain == other.domain
            and self.fibers == other.fibers
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.domain, self.fibers))
        return self._hash

    def __repr__(self):
        return f"ReducedFiberedCorrespondence(domain={sorted_labels(self.domain)})"

    def total(self):
        return frozenset((x, a, b) for x, pairs in self.fibers.items() for a, b in pairs)


class FiberedRelation:
    """An n-ary relation inside each fiber of one bundle."""

    __slots__ = ("bundle", "arity", "fibers")

    def __init__(self, bundle, arity, fibers):
        if arity < 1:
            raise ArityMismatch("arity must be at least 1")
        self.bundle = bundle
        self.arity = arity
        self.fibers = frozendict({x: frozenset(map(tuple, v)) for x, v in fibers.items()})
        for x, tuples in self.fibers.items():
            if x not in bundle.base:
                raise InvalidStructure(f"{x!r} is not a base point")
            for t in tuples:
                if len(t) != arity:
                    raise ArityMismatch(f"tuple {t!r} over {x!r} does not have {arity} entries")
                if not set(t) <= bundle.fibers[x]:
                    raise InvalidStructure(f"tuple {t!r} leaves the fiber over {x!r}")

    def __eq__(self, other):
        if not isinstance(other, FiberedRelation):
            return NotImplemented
        return (
            self.arity == other.arity
            and self.fibers == other.fibers
            and self.bundle.same_shape(other.bundle)
        )

    def __hash__(self):
        return hash((self.arity, self.fibers))

    def __repr__(self):
        return f"FiberedRelation(arity={self.arity}, points={sorted_labels(self.fibers)})"


# general fibered correspondences


def base_is_injective_map(fc):
    return fc.base.is_functional() and fc.base.is_injective()


def fibered_compose(h, f):
    """``h ∘ f`` for fibered correspondences with injective-map bases."""
    if not f.target.same_shape(h.source):
        raise BundleMismatch("target of f differs from source of h")
    if not base_is_injective_map(f):
        raise NonInjectiveBase("f")
    if not base_is_injective_map(h):
        raise NonInjectiveBase("h")
    h_map = h.base.as_map()
    fibers = {}
    for x, y in f.base.pairs:
        if y in h_map:
            z = h_map[y]
            fibers[(x, z)] = rel_compose(h.fibers[(y, z)], f.fibers[(x, y)])
    base = compose(h.base, f.base)
    return FiberedCorrespondence(f.source, h.target, base, fibers)


def fibered_inverse(f):
    if not base_is_injective_map(f):
        raise NonInjectiveBase("f")
    fibers = {(y, x): rel_inverse(pairs) for (x, y), pairs in f.fibers.items()}
    return FiberedCorrespondence(f.target, f.source, inverse(f.base), fibers)


def fibered_diagonal(a):
    fibers = {(x, x): rel_diagonal(a.fibers[x]) for x in a.base}
    return FiberedCorrespondence(a, a, diagonal(a.base), fibers)


def image_of_subbundle(f, c):
    """Image of the subbundle ``c`` of ``f.source``, returned as a trivialized bundle.

    Requires charts on both bundles. Every fiber relation over a base pair
    leaving ``c`` must transport to one and the same relation between the
    typical fibers; otherwise ``SingularFiber`` names the first deviating pair.
    """
    if not base_is_injective_map(f):
        raise NonInjectiveBase("f")
    is_subbundle(c, f.source)
    ta, tb = f.source.trivialization, f.target.trivialization
    if ta is None or tb is None:
        raise MissingTrivialization("image of a subbundle needs charts on both bundles")
    pairs = sorted_labels((x, y) for x, y in f.base.pairs if x in c.base)
    for x, y in pairs:
        if x not in ta.charts or y not in tb.charts:
            raise MissingTrivialization(f"no chart over {(x, y)!r}")

    reference = None
    for x, y in pairs:
        moved = frozenset((ta.charts[x][a], tb.charts[y][b]) for a, b in f.fibers[(x, y)])
        if reference is None:
            reference = moved
        elif moved != reference:
            raise SingularFiber(x, y)

    reference = None
    for x, _ in pairs:
        moved = ta.transport(x, c.fibers[x])
        if reference is None:
            reference = moved
        elif moved != reference:
            raise NonUniformSubbundle(f"subbundle fiber over {x!r} differs from the others under the charts")

    fibers = {}
    for x, y in pairs:
        cx = c.fibers[x]
        fibers[y] = frozenset(b for a, b in f.fibers[(x, y)] if a in cx)
    moved = {tb.transport(y, d) for y, d in fibers.items()}
    if len(moved) > 1:
        raise TheoremViolation("image fibers are not identified by the target charts")
    typical = next(iter(moved)) if moved else frozenset()
    charts = {y: {b: tb.charts[y][b] for b in d} for y, d in fibers.items()}
    return Bundle(fibers.keys(), fibers, Trivialization(typical, charts), name=f"image of {c.name}".strip())


# reduced fibered correspondences


def reduced_compose(h, f):
    """``h ∘ f`` fiber by fiber over the common domain."""
    if not f.target.same_shape(h.source):
        raise BundleMismatch("target of f differs from source of h")
    domain = f.domain & h.domain
    fibers = {x: rel_compose(h.fibers[x], f.fibers[x]) for x in domain}
    return ReducedFiberedCorrespondence(f.source, h.target, fibers, domain)


def reduced_inverse(f):
    fibers = {x: rel_inverse(pairs) for x, pairs in f.fibers.items()}
    return ReducedFiberedCorrespondence(f.target, f.source, fibers, f.domain)


def reduced_diagonal(a):
    return ReducedFiberedCorrespondence(a, a, {x: rel_diagonal(a.fibers[x]) for x in a.base}, a.base)


def reduced_intersection(f, g):
    domain = f.domain & g.domain
    return ReducedFiberedCorrespondence(f.source, f.target, {x: f.fibers[x] & g.fibers[x] for x in domain}, domain)


def reduced_contained(f, g):
    """``f ⊆ g`` as sets of ``(x, a, b)``."""
    return all(not pairs or (x in g.domain and pairs <= g.fibers[x]) for x, pairs in f.fibers.items())


def lift_of_diagonal(f):
    """The same data seen as a fibered correspondence whose base is the diagonal of the domain."""
    base = Correspondence(f.source.base, f.target.base, rel_diagonal(f.domain))
    lifted = FiberedCorrespondence(f.source, f.target, base, {(x, x): pairs for x, pairs in f.fibers.items()})
    if reduce_over_diagonal(lifted) != f:
        raise TheoremViolation("lift of the diagonal does not round-trip")
    return lifted


def reduce_over_diagonal(fc):
    """Inverse of :func:`lift_of_diagonal`."""
    if fc.source.base != fc.target.base:
        raise NotOverDiagonal("bundles live over different bases")
    for x, y in fc.base.pairs:
        if x != y:
            raise NotOverDiagonal(f"base pair {(x, y)!r} is off the diagonal")
    fibers = {x: pairs for (x, _), pairs in fc.fibers.items()}
    return ReducedFiberedCorrespondence(fc.source, fc.target, fibers)


def sections_correspondence(f):
    """Pairs of sections ``(s, t)`` with ``(s(x), t(x)) ∈ F_x`` at every point."""
    if f.domain != f.source.base:
        raise PartialDomain("sections correspondence needs the full base as domain")
    left = sections(f.source)
    right = sections(f.target)
    pairs = [
        (s, t)
        for s in left
        for t in right
        if all((s(x), t(x)) in f.fibers[x] for x in f.domain)
    ]
    return Correspondence(left, right, pairs)


# relation properties


def _check_endorelation(r):
    if not r.source.same_shape(r.target):
        raise NotEndorelation("relation properties need a correspondence from a bundle to itself")
    if r.domain != r.source.base:
        raise PartialDomain("relation properties are defined over the full base only")


def relation_is(r, prop):
    """Evaluate one of ``transitive``, ``symmetric``, ``antisymmetric``, ``reflexive``."""
    _check_endorelation(r)
    if prop == "transitive":
        return reduced_contained(reduced_compose(r, r), r)
    if prop == "symmetric":
        return reduced_inverse(r) == r
    if prop == "antisymmetric":
        return reduced_contained(reduced_intersection(r, reduced_inverse(r)), reduced_diagonal(r.source))
    if prop == "reflexive":
        return reduced_contained(reduced_diagonal(r.source), r)
    raise ValueError(f"unknown property {prop!r}")


def relation_counterexample(r, prop):
    """First witness against ``prop`` as ``(x, elements)``, or None when it holds.

    Transitivity witnesses are triples ``(a, b, c)`` with aFb, bFc but not aFc.
    """
    _check_endorelation(r)
    for x in sorted_labels(r.domain):
        pairs = r.fibers[x]
        if prop == "transitive":
            for a, b in sorted_labels(pairs):
                for b2, c in sorted_labels(pairs):
                    if b == b2 and (a, c) not in pairs:
                        return x, (a, b, c)
        elif prop == "symmetric":
            for a, b in sorted_labels(pairs):
                if (b, a) not in pairs:
                    return x, (a, b)
        elif prop == "antisymmetric":
            for a, b in sorted_labels(pairs):
                if a != b and (b, a) in pairs:
                    return x, (a, b)
        elif prop == "reflexive":
            for a in sorted_labels(r.source.fibers[x]):
                if (a, a) not in pairs:
                    return x, (a,)
        else:
            raise ValueError(f"unknown property {prop!r}")
    return None


def classify(r):
    """Flags among ``equivalence``, ``ordering``, ``preordering``, or ``("none",)``.

    ``preordering`` is reported only when neither stronger flag applies.
    """
    flags = {p: relation_is(r, p) for p in PROPERTIES}
    if not (flags["transitive"] and flags["reflexive"]):
        return ("none",)
    opposite = reduced_inverse(r)
    if not (relation_is(opposite, "transitive") and relation_is(opposite, "reflexive")):
        raise TheoremViolation("opposite of a preordering is not a preordering")
    out = []
    if flags["symmetric"]:
        out.append("equivalence")
    if flags["antisymmetric"]:
        out.append("ordering")
    return tuple(out) or ("preordering",)


def is_equivalence(r):
    return "equivalence" in classify(r)


# n-ary fibered relations


def relation_from_reduced(f):
    """A reduced correspondence in one bundle read as a 2-ary fibered relation."""
    if not f.source.same_shape(f.target):
        raise NotEndorelation("only a correspondence in one bundle is a 2-ary relation")
    return FiberedRelation(f.source, 2, f.fibers)


def nary_relation_check(r, expected_arity=None):
    """Structural report; for arity 2 also the equivalent reduced correspondence."""
    if expected_arity is not None and r.arity != expected_arity:
        raise ArityMismatch(f"expected arity {expected_arity}, got {r.arity}")
    report = {
        "arity": r.arity,
        "points": len(r.fibers),
        "tuples": sum(len(t) for t in r.fibers.values()),
        "valid": True,
        "reduced": None,
    }
    if r.arity == 2:
        reduced = ReducedFiberedCorrespondence(r.bundle, r.bundle, r.fibers)
        if relation_from_reduced(reduced) != r:
            raise TheoremViolation("2-ary relation does not round-trip through reduced form")
        report["reduced"] = reduced
    return report
