"""Finite topological spaces, filters and set-valued filter convergence.

Open families are validated on construction and stored both as frozensets
and as bitmasks over a canonical point order; the masks keep the exhaustive
enumerations used elsewhere in the package cheap.
"""

from functools import lru_cache

from ._util import powerset, sorted_labels
from .errors import EmptyTarget, InvalidFilter, InvalidTopology, SpaceMismatch, TheoremViolation


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class FiniteTopology:
    """A finite point set together with its family of open sets."""

    __slots__ = ("points", "opens", "_order", "_bit", "_open_masks", "_hash", "_cache")

    def __init__(self, points, opens, *, _trusted=False):
        points = frozenset(points)
        opens = frozenset(frozenset(u) for u in opens)
        self.points = points
        self.opens = opens
        self._order = tuple(sorted_labels(points))
        self._bit = {p: 1 << i for i, p in enumerate(self._order)}
        self._hash = None
        self._cache = {}
        if not _trusted:
            self._validate()
        self._open_masks = tuple(sorted(self.mask(u) for u in opens))

    def _validate(self):
        if frozenset() not in self.opens:
            raise InvalidTopology("empty set is not open")
        if self.points not in self.opens:
            raise InvalidTopology("whole space is not open")
        for u in self.opens:
            if not u <= self.points:
                raise InvalidTopology(f"open set {set(u)} has labels outside the space")
        for u in self.opens:
            for v in self.opens:
                if u | v not in self.opens:
                    raise InvalidTopology(f"union of {set(u)} and {set(v)} is not open")
                if u & v not in self.opens:
                    raise InvalidTopology(f"intersection of {set(u)} and {set(v)} is not open")

    def __eq__(self, other):
        if not isinstance(other, FiniteTopology):
            return NotImplemented
        return self.points == other.points and self.opens == other.opens

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.points, self.opens))
        return self._hash

    def __repr__(self):
        opens = [sorted_labels(u) for u in sorted(self.opens, key=lambda u: (len(u), sorted_labels(u)))]
        return f"FiniteTopology({sorted_labels(self.points)}, {opens})"

    def mask(self, subset):
        m = 0
        bit = self._bit
        for p in subset:
            try:
                m |= bit[p]
            except KeyError:
                raise SpaceMismatch(f"label {p!r} is not a point of the space") from None
        return m

    def unmask(self, mask):
        order = self._order
        return frozenset(order[i] for i in _bits(mask))

    def check_subset(self, subset):
        subset = frozenset(subset)
        if not subset <= self.points:
            raise SpaceMismatch(f"labels {set(subset - self.points)} are not points of the space")
        return subset

    def is_open(self, subset):
        return frozenset(subset) in self.opens

    def opens_containing(self, subset):
        """Open sets U with ``subset ⊆ U``, as a tuple."""
        subset = frozenset(subset)
        key = ("oc", subset)
        found = self._cache.get(key)
        if found is None:
            found = tuple(u for u in self.opens if subset <= u)
            self._cache[key] = found
        return found

    def neighborhoods(self, target):
        """All V ⊆ points such that some open U has ``target ⊆ U ⊆ V``.

        Unlike :func:`neighborhood_filter` this accepts the empty target,
        whose neighborhoods are all subsets of the space.
        """
        target = self.check_subset(target)
        key = ("nb", target)
        found = self._cache.get(key)
        if found is None:
            full = (1 << len(self._order)) - 1
            masks = set()
            for u in self.opens_containing(target):
                um = self.mask(u)
                rest = full & ~um
                sub = rest
                while True:
                    masks.add(um | sub)
                    if sub == 0:
                        break
                    sub = (sub - 1) & rest
            found = frozenset(self.unmask(m) for m in masks)
            self._cache[key] = found
        return found


def discrete(points):
    return FiniteTopology(points, powerset(points), _trusted=True)


def indiscrete(points):
    points = frozenset(points)
    return FiniteTopology(points, {frozenset(), points}, _trusted=True)


def generate_topology(points, subbasis):
    """Coarsest topology on ``points`` in which every set of ``subbasis`` is open."""
    points = frozenset(points)
    family = {frozenset(), points} | {frozenset(s) for s in subbasis}
    for s in family:
        if not s <= points:
            raise SpaceMismatch(f"subbasis set {set(s)} leaves the space")
    # close under finite intersections, then under unions
    basis = set(family)
    changed = True
    while changed:
        changed = False
        for a in list(basis):
            for b in list(basis):
                if a & b not in basis:
                    basis.add(a & b)
                    changed = True
    opens = {frozenset()}
    for b in basis:
        opens |= {o | b for o in opens}
    return FiniteTopology(points, opens, _trusted=True)


@lru_cache(maxsize=None)
def all_topology_masks(n):
    """Every topology on the points ``0..n-1``, each a sorted tuple of open bitmasks.

    Topologies on a finite set correspond one-to-one to preorders (opens are
    the up-closed sets), so the preorders are enumerated by inserting one
    point at a time with a down-closed set below it and an up-closed set
    above it.
    """
    preorders = [()]
    for k in range(n):
        extended = []
        for up in preorders:
            down = [0] * k
            for i in range(k):
                for j in _bits(up[i]):
                    down[j] |= 1 << i
            downsets = [d for d in range(1 << k) if all(down[j] & ~d == 0 for j in _bits(d))]
            upsets = [u for u in range(1 << k) if all(up[j] & ~u == 0 for j in _bits(u))]
            full = (1 << k) - 1
            for d in downsets:
                allowed = full
                for j in _bits(d):
                    allowed &= up[j]
                for u in upsets:
                    if u & ~allowed:
                        continue
                    new_up = list(up)
                    for j in _bits(d):
                        new_up[j] |= 1 << k
                    new_up.append((1 << k) | u)
                    extended.append(tuple(new_up))
        preorders = extended
    result = []
    for up in preorders:
        opens = {0}
        for m in up:
            opens |= {o | m for o in opens}
        result.append(tuple(sorted(opens)))
    return tuple(result)


def all_topologies(points):
    """Every topology on a finite point set (29 on three points)."""
    order = sorted_labels(frozenset(points))
    out = []
    for masks in all_topology_masks(len(order)):
        opens = [frozenset(order[i] for i in _bits(m)) for m in masks]
        out.append(FiniteTopology(order, opens, _trusted=True))
    return out


class Filter:
    """A proper filter on the points of a finite space, stored as its full member family."""

    __slots__ = ("space", "members", "_hash")

    def __init__(self, space, members):
        self.space = space
        self.members = frozenset(frozenset(m) for m in members)
        self._hash = None
        self._validate()

    def _validate(self):
        points = self.space.points
        if not self.members:
            raise InvalidFilter("a filter has at least one member")
        if frozenset() in self.members:
            raise InvalidFilter("a proper filter does not contain the empty set")
        for m in self.members:
            if not m <= points:
                raise InvalidFilter(f"member {set(m)} leaves the space")
            for p in points - m:
                if m | {p} not in self.members:
                    raise InvalidFilter(f"not upward closed above {set(m)}")
        for a in self.members:
            for b in self.members:
                if a & b not in self.members:
                    raise InvalidFilter(f"intersection of {set(a)} and {set(b)} missing")

    def __eq__(self, other):
        if not isinstance(other, Filter):
            return NotImplemented
        return self.space == other.space and self.members == other.members

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.space, self.members))
        return self._hash

    def __repr__(self):
        return f"Filter({len(self.members)} members)"

    def is_finer_than(self, other):
        return self.members >= other.members


class FilterBase:
    """A nonempty family of nonempty sets, any two of which contain a common member."""

    __slots__ = ("space", "sets")

    def __init__(self, space, sets):
        self.space = space
        self.sets = frozenset(frozenset(s) for s in sets)
        if not self.sets:
            raise InvalidFilter("a filter base is nonempty")
        for s in self.sets:
            if not s:
                raise InvalidFilter("a filter base has no empty member")
            space.check_subset(s)
        for a in self.sets:
            for b in self.sets:
                common = a & b
                if not any(c <= common for c in self.sets):
                    raise InvalidFilter(f"no base set inside {set(a)} ∩ {set(b)}")

    def __repr__(self):
        return f"FilterBase({len(self.sets)} sets)"


def principal_filter(space, subset):
    """All supersets of a nonempty ``subset``."""
    subset = space.check_subset(subset)
    if not subset:
        raise EmptyTarget("principal filter of the empty set is improper")
    rest = space.points - subset
    return Filter(space, [subset | r for r in powerset(rest)])


def generated_filter(base):
    """Upward closure of a filter base."""
    space = base.space
    return Filter(space, {v for v in powerset(space.points) if any(s <= v for s in base.sets)})


def neighborhood_filter(space, target):
    """Filter of neighborhoods of a nonempty set ``target``."""
    target = space.check_subset(target)
    if not target:
        raise EmptyTarget("the neighborhoods of the empty set form an improper filter")
    return _neighborhood_filter(space, target)


@lru_cache(maxsize=4096)
def _neighborhood_filter(space, target):
    return Filter(space, space.neighborhoods(target))


def _check_target(space, target):
    target = frozenset(target)
    space.check_subset(target)
    if not target:
        raise EmptyTarget("convergence target must be nonempty")
    return target


def filter_converges(f, target):
    """Whether ``f`` is finer than the neighborhood filter of ``target``."""
    target = _check_target(f.space, target)
    return neighborhood_filter(f.space, target).members <= f.members


@lru_cache(maxsize=65536)
def _filterbase_routes(space, sets, target):
    direct = all(any(s <= v for s in sets) for v in neighborhood_filter(space, target).members)
    via_filter = filter_converges(generated_filter(FilterBase(space, sets)), target)
    return direct, via_filter


def filterbase_converges(b, target):
    """Whether every neighborhood of ``target`` contains some set of the base.

    The answer is cross-checked against convergence of the generated filter.
    """
    target = _check_target(b.space, target)
    direct, via_filter = _filterbase_routes(b.space, b.sets, target)
    if direct != via_filter:
        raise TheoremViolation(
            f"base convergence ({direct}) disagrees with generated-filter convergence ({via_filter})"
        )
    return direct
