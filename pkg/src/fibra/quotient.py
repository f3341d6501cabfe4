"""Quotient bundles by fibered equivalences and factorization of fibered morphisms."""

from typing import NamedTuple, Optional

from ._util import frozendict, least, sorted_labels
from .bundle import Bundle
from .errors import (
    BundleMismatch,
    InvalidStructure,
    NotAnEquivalence,
    PartialDomain,
    TheoremViolation,
)
from .fibered import ReducedFiberedCorrespondence, classify
from .topology import FiniteTopology


class FiberedMorphism:
    """A map ``A_x → B_x`` over every point of a shared base."""

    __slots__ = ("source", "target", "maps")

    def __init__(self, source, target, maps):
        if source.base != target.base:
            raise BundleMismatch("fibered morphisms here have the identity as base map")
        self.source = source
        self.target = target
        self.maps = frozendict({x: frozendict(m) for x, m in maps.items()})
        if set(self.maps) != set(source.base):
            raise InvalidStructure("a fibered morphism is defined over every base point")
        for x, m in self.maps.items():
            if set(m) != set(source.fibers[x]):
                raise InvalidStructure(f"map over {x!r} is not total on the fiber")
            if not set(m.values()) <= target.fibers[x]:
                raise InvalidStructure(f"map over {x!r} leaves the target fiber")

    def __call__(self, x, a):
        return self.maps[x][a]

    def __eq__(self, other):
        if not isinstance(other, FiberedMorphism):
            return NotImplemented
        return (
            self.maps == other.maps
            and self.source.same_shape(other.source)
            and self.target.same_shape(other.target)
        )

    def __hash__(self):
        return hash(self.maps)

    def __repr__(self):
        return f"FiberedMorphism({len(self.maps)} fibers)"

    def is_injective(self):
        return all(len(set(m.values())) == len(m) for m in self.maps.values())

    def is_surjective(self):
        return all(set(m.values()) == self.target.fibers[x] for x, m in self.maps.items())

    def is_bijective(self):
        return self.is_injective() and self.is_surjective()

    def then(self, other):
        """``other ∘ self``."""
        if not self.target.same_shape(other.source):
            raise BundleMismatch("morphisms do not chain")
        return FiberedMorphism(
            self.source, other.target, {x: {a: other.maps[x][b] for a, b in m.items()} for x, m in self.maps.items()}
        )

    def graph(self):
        """The morphism as a reduced fibered correspondence with full domain."""
        return ReducedFiberedCorrespondence(
            self.source, self.target, {x: set(m.items()) for x, m in self.maps.items()}, self.source.base
        )


class QuotientResult(NamedTuple):
    quotient: Bundle
    nat: FiberedMorphism
    # base point -> class label -> members of the class
    class_map: frozendict
    quotient_topology: Optional[FiniteTopology]


def _partition(elements, related):
    classes = []
    seen = set()
    for a in sorted_labels(elements):
        if a in seen:
            continue
        cls = frozenset(b for b in elements if (a, b) in related)
        seen |= cls
        classes.append(cls)
    return classes


def quotient_topology(e, nat, quotient):
    """Images of the saturated open sets of ``e``: the finest topology making ``nat`` continuous."""
    top = e.total_topology
    owner = {(x, a): (x, nat.maps[x][a]) for x, a in e.total_space()}
    members = {}
    for point, cls in owner.items():
        members.setdefault(cls, set()).add(point)
    opens = set()
    for u in top.opens:
        image = {owner[p] for p in u}
        if set().union(*(members[c] for c in image)) == set(u):
            opens.add(frozenset(image))
    return FiniteTopology(quotient.total_space(), opens)


def quotient_bundle(e, s):
    """Quotient of ``e`` by the fibered equivalence ``s``; classes are labelled by their least member."""
    if not (s.source.same_shape(e) and s.target.same_shape(e)):
        raise BundleMismatch("equivalence must live on the bundle being divided")
    if s.domain != e.base:
        raise PartialDomain("equivalence must be defined over the whole base")
    if "equivalence" not in classify(s):
        raise NotAnEquivalence("relation is not a fibered equivalence")
    class_map = {}
    for x in e.base:
        class_map[x] = {least(c): c for c in _partition(e.fibers[x], s.fibers[x])}
    fibers = {x: set(classes) for x, classes in class_map.items()}
    base_name = e.name or "E"
    quotient = Bundle(e.base, fibers, name=f"{base_name}/S", base_topology=e.base_topology)
    nat = FiberedMorphism(
        e, quotient, {x: {a: label for label, c in classes.items() for a in c} for x, classes in class_map.items()}
    )
    for x, classes in class_map.items():
        for label, c in classes.items():
            if label not in c:
                raise TheoremViolation("class label is not a member of its class")
    top = None
    if e.total_topology is not None:
        top = quotient_topology(e, nat, quotient)
        quotient = Bundle(
            e.base, fibers, name=quotient.name, base_topology=e.base_topology, total_topology=top
        )
        nat = FiberedMorphism(e, quotient, nat.maps)
    return QuotientResult(quotient, nat, frozendict({x: frozendict(c) for x, c in class_map.items()}), top)


def kernel_equivalence(f):
    """``{(a, a') : f(a) = f(a')}`` in every fiber; always a fibered equivalence."""
    fibers = {x: {(a, b) for a in m for b in m if m[a] == m[b]} for x, m in f.maps.items()}
    s = ReducedFiberedCorrespondence(f.source, f.source, fibers, f.source.base)
    if "equivalence" not in classify(s):
        raise TheoremViolation("kernel of a fibered morphism is not an equivalence")
    return s


def image_bundle(f):
    return Bundle(f.source.base, {x: set(m.values()) for x, m in f.maps.items()}, name=f"f({f.source.name})")


class Factorization(NamedTuple):
    j: FiberedMorphism
    t: FiberedMorphism
    i: FiberedMorphism
    quotient: QuotientResult


def factorize(f):
    """Split ``f`` as ``i ∘ t ∘ j``: onto the classes of its kernel, bijectively onto its image, then inclusion."""
    q = quotient_bundle(f.source, kernel_equivalence(f))
    j = q.nat
    img = image_bundle(f)
    t = FiberedMorphism(
        q.quotient, img, {x: {label: f.maps[x][label] for label in classes} for x, classes in q.class_map.items()}
    )
    i = FiberedMorphism(img, f.target, {x: {b: b for b in img.fibers[x]} for x in img.base})
    for x, m in f.maps.items():
        for a, b in m.items():
            if i.maps[x][t.maps[x][j.maps[x][a]]] != b:
                raise TheoremViolation(f"i∘t∘j differs from f at {(x, a)!r}")
    if not (t.is_bijective() and i.is_injective() and j.is_surjective()):
        raise TheoremViolation("factors do not have the expected kinds")
    return Factorization(j, t, i, q)
