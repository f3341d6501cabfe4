"""Plain correspondences between finite sets.

A correspondence is a subset of ``source × target``. Finite sets are plain
``frozenset`` values; labels are any hashable objects.
"""

from itertools import product

from ._util import frozendict, powerset, rel_compose, rel_diagonal, rel_inverse, sorted_labels
from .errors import (
    EmptyImageBase,
    InvalidStructure,
    LabelMismatch,
    ShapeMismatch,
    SignatureMismatch,
    SpaceMismatch,
    TheoremViolation,
)
from .topology import FilterBase, filterbase_converges, neighborhood_filter

FinSet = frozenset


class Correspondence:
    """A set of pairs drawn from ``source × target``."""

    __slots__ = ("source", "target", "pairs", "_images", "_hash")

    def __init__(self, source, target, pairs):
        self.source = frozenset(source)
        self.target = frozenset(target)
        self.pairs = frozenset((a, b) for a, b in pairs)
        for a, b in self.pairs:
            if a not in self.source:
                raise InvalidStructure(f"pair {(a, b)!r}: {a!r} is not in the source")
            if b not in self.target:
                raise InvalidStructure(f"pair {(a, b)!r}: {b!r} is not in the target")
        self._images = {}
        self._hash = None

    def __eq__(self, other):
        if not isinstance(other, Correspondence):
            return NotImplemented
        return (self.source, self.target, self.pairs) == (other.source, other.target, other.pairs)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.source, self.target, self.pairs))
        return self._hash

    def __repr__(self):
        return f"Correspondence({sorted_labels(self.pairs)})"

    def __iter__(self):
        return iter(self.pairs)

    def __len__(self):
        return len(self.pairs)

    def __contains__(self, pair):
        return pair in self.pairs

    def partners(self, a):
        return frozenset(b for x, b in self.pairs if x == a)

    def is_functional(self):
        seen = set()
        for a, _ in self.pairs:
            if a in seen:
                return False
            seen.add(a)
        return True

    def is_injective(self):
        return self.inverse().is_functional()

    def as_map(self):
        """The correspondence as a dict; only valid when functional."""
        if not self.is_functional():
            raise InvalidStructure("correspondence is not functional")
        return dict(self.pairs)

    def inverse(self):
        return inverse(self)


def _check_within(c, universe, what):
    c = frozenset(c)
    if not c <= universe:
        raise LabelMismatch(f"{sorted_labels(c - universe)} not in the {what}")
    return c


def restrict(phi, c):
    """Pairs of ``phi`` whose first component lies in ``c``; the source narrows to ``c``."""
    c = _check_within(c, phi.source, "source")
    return Correspondence(c, phi.target, ((a, b) for a, b in phi.pairs if a in c))


def image(phi, c):
    """``{b : (a, b) ∈ phi, a ∈ c}``."""
    c = frozenset(c)
    found = phi._images.get(c)
    if found is None:
        _check_within(c, phi.source, "source")
        found = frozenset(b for a, b in phi.pairs if a in c)
        phi._images[c] = found
    return found


def compose(psi, phi):
    """``psi ∘ phi``: first ``phi``, then ``psi``, matched through shared middle labels."""
    return Correspondence(phi.source, psi.target, rel_compose(psi.pairs, phi.pairs))


def inverse(phi):
    return Correspondence(phi.target, phi.source, rel_inverse(phi.pairs))


def diagonal(s):
    s = frozenset(s)
    return Correspondence(s, s, rel_diagonal(s))


def square_commutes(psi, sigma, phi, theta):
    """Whether ``sigma ∘ psi`` and ``theta ∘ phi`` send every subset of A to the same set.

    Shapes: ``psi: A→B``, ``sigma: B→D``, ``phi: A→C``, ``theta: C→D``.
    """
    if psi.source != phi.source:
        raise ShapeMismatch("psi and phi must share their source")
    if psi.target != sigma.source:
        raise ShapeMismatch("psi must land where sigma starts")
    if phi.target != theta.source:
        raise ShapeMismatch("phi must land where theta starts")
    if sigma.target != theta.target:
        raise ShapeMismatch("sigma and theta must share their target")
    return all(
        image(sigma, image(psi, s)) == image(theta, image(phi, s)) for s in powerset(psi.source)
    )


def _check_spaces(phi, src, dst):
    if src is not None and phi.source != src.points:
        raise SpaceMismatch("correspondence source differs from the source space")
    if phi.target != dst.points:
        raise SpaceMismatch("correspondence target differs from the target space")


def is_continuous_on(phi, src, dst, c):
    """Every open V ⊇ phi(c) admits an open U ⊇ c with phi(U) ⊆ V."""
    _check_spaces(phi, src, dst)
    c = src.check_subset(c)
    image_c = image(phi, c)
    candidates = src.opens_containing(c)
    for v in dst.opens_containing(image_c):
        if not any(image(phi, u) <= v for u in candidates):
            return False
    return True


def is_continuous(phi, src, dst):
    """Every open V of the target admits an open U of the source with phi(U) ⊆ V.

    Taken literally this always holds, since U = ∅ qualifies.
    """
    _check_spaces(phi, src, dst)
    return all(any(image(phi, u) <= v for u in src.opens) for v in dst.opens)


def is_continuous_at_every_point(phi, src, dst):
    """``is_continuous_on`` holds at every singleton of the source."""
    return all(is_continuous_on(phi, src, dst, {a}) for a in src.points)


def limit_characterization(phi, f, dst, candidate):
    """Every neighborhood V of ``candidate`` has some M in ``f`` with phi(M) ⊆ V.

    Quantifier form of the limit; defined for every candidate, including ∅.
    """
    _check_spaces(phi, f.space, dst)
    candidate = dst.check_subset(candidate)
    images = {image(phi, m) for m in f.members}
    return all(any(i <= v for i in images) for v in dst.neighborhoods(candidate))


def limit_of_correspondence(phi, f, dst, candidate):
    """Whether ``candidate`` is a limit of ``phi`` along the filter ``f``.

    Evaluated twice: by the neighborhood quantifier, and as convergence of
    the image filter base ``{phi(M) : M ∈ f}``. The two must agree.
    """
    _check_spaces(phi, f.space, dst)
    candidate = dst.check_subset(candidate)
    images = frozenset(image(phi, m) for m in f.members)
    if frozenset() in images:
        raise EmptyImageBase("some member of the filter has an empty image")
    nbhd = neighborhood_filter(dst, candidate)
    by_quantifier = all(any(i <= v for i in images) for v in nbhd.members)
    by_base = filterbase_converges(FilterBase(dst, images), candidate)
    if by_quantifier != by_base:
        raise TheoremViolation("limit characterization disagrees with filter-base convergence")
    return by_quantifier


class FiniteAlgebra:
    """A finite carrier with named total operations.

    ``operations`` maps a name to ``(arity, table)`` where ``table`` maps
    argument tuples to carrier elements. Arity 0 tables have the single key ``()``.
    """

    __slots__ = ("carrier", "operations")

    def __init__(self, carrier, operations):
        self.carrier = frozenset(carrier)
        ops = {}
        for name, (arity, table) in operations.items():
            if arity < 0:
                raise InvalidStructure(f"operation {name!r} has negative arity")
            table = frozendict({tuple(k): v for k, v in table.items()})
            for args in product(sorted_labels(self.carrier), repeat=arity):
                if args not in table:
                    raise InvalidStructure(f"operation {name!r} undefined at {args!r}")
                if table[args] not in self.carrier:
                    raise InvalidStructure(f"operation {name!r} leaves the carrier at {args!r}")
            if len(table) != len(self.carrier) ** arity:
                raise InvalidStructure(f"operation {name!r} has arguments outside the carrier")
            ops[name] = (arity, table)
        self.operations = frozendict(ops)

    def __repr__(self):
        return f"FiniteAlgebra({sorted_labels(self.carrier)}, ops={sorted(self.operations)})"

    def apply(self, name, *args):
        return self.operations[name][1][tuple(args)]


def is_homomorphism_correspondence(phi, alg_a, alg_b):
    """Closure of ``phi`` under every operation applied componentwise to related tuples."""
    if phi.source != alg_a.carrier or phi.target != alg_b.carrier:
        raise SignatureMismatch("correspondence does not run between the algebras' carriers")
    if {n: a for n, (a, _) in alg_a.operations.items()} != {
        n: a for n, (a, _) in alg_b.operations.items()
    }:
        raise SignatureMismatch("algebras have different signatures")
    pairs = sorted_labels(phi.pairs)
    for name, (arity, table_a) in alg_a.operations.items():
        table_b = alg_b.operations[name][1]
        for chosen in product(pairs, repeat=arity):
            left = tuple(a for a, _ in chosen)
            right = tuple(b for _, b in chosen)
            if (table_a[left], table_b[right]) not in phi.pairs:
                return False
    return True
