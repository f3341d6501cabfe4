"""Finite bundles: a base, one finite fiber per base point, optional charts."""

from collections import Counter
from itertools import product as _cartesian

from ._util import frozendict, sorted_labels
from .errors import BaseMismatch, EmptyFiber, InvalidStructure, NotContained


class Trivialization:
    """Charts identifying fibers with one typical fiber.

    ``charts`` maps a base point to a bijection ``A_x → typical``. Points
    without a chart are allowed; they are reported by :func:`degenerate_fibers`.
    """

    __slots__ = ("typical", "charts")

    def __init__(self, typical, charts):
        self.typical = frozenset(typical)
        self.charts = frozendict({x: frozendict(c) for x, c in charts.items()})

    def __eq__(self, other):
        if not isinstance(other, Trivialization):
            return NotImplemented
        return self.typical == other.typical and self.charts == other.charts

    def __hash__(self):
        return hash((self.typical, self.charts))

    def __repr__(self):
        return f"Trivialization({sorted_labels(self.typical)}, {len(self.charts)} charts)"

    def transport(self, x, subset):
        chart = self.charts[x]
        return frozenset(chart[a] for a in subset)


class Bundle:
    """Base points with a finite fiber over each; the total space is ``{(x, a)}``.

    Topologies are optional: ``base_topology`` on the base points and
    ``total_topology`` on total-space pairs. Only the quotient
    construction consumes them.
    """

    __slots__ = ("name", "base", "fibers", "trivialization", "base_topology", "total_topology", "_hash")

    def __init__(self, base, fibers, trivialization=None, *, name="", base_topology=None, total_topology=None):
        self.name = name
        self.base = frozenset(base)
        self.fibers = frozendict({x: frozenset(f) for x, f in fibers.items()})
        self.trivialization = trivialization
        self.base_topology = base_topology
        self.total_topology = total_topology
        self._hash = None
        self._validate()

    def _validate(self):
        if set(self.fibers) != set(self.base):
            missing = self.base - set(self.fibers)
            extra = set(self.fibers) - self.base
            raise InvalidStructure(f"fibers must cover the base exactly (missing {missing}, extra {extra})")
        triv = self.trivialization
        if triv is not None:
            for x, chart in triv.charts.items():
                if x not in self.base:
                    raise InvalidStructure(f"chart over {x!r} which is not a base point")
                if set(chart) != set(self.fibers[x]):
                    raise InvalidStructure(f"chart over {x!r} is not defined on the whole fiber")
                if len(set(chart.values())) != len(chart) or set(chart.values()) != triv.typical:
                    raise InvalidStructure(f"chart over {x!r} is not a bijection onto the typical fiber")
        if self.base_topology is not None and self.base_topology.points != self.base:
            raise InvalidStructure("base topology lives on a different point set")
        if self.total_topology is not None and self.total_topology.points != self.total_space():
            raise InvalidStructure("total-space topology lives on a different point set")

    def __eq__(self, other):
        if not isinstance(other, Bundle):
            return NotImplemented
        return (
            self.base == other.base
            and self.fibers == other.fibers
            and self.trivialization == other.trivialization
            and self.base_topology == other.base_topology
            and self.total_topology == other.total_topology
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.base, self.fibers, self.trivialization))
        return self._hash

    def __repr__(self):
        sizes = {x: len(self.fibers[x]) for x in sorted_labels(self.base)}
        label = f"{self.name!r}, " if self.name else ""
        return f"Bundle({label}fiber sizes {sizes})"

    def fiber(self, x):
        return self.fibers[x]

    def total_space(self):
        return frozenset((x, a) for x, f in self.fibers.items() for a in f)

    def same_shape(self, other):
        """Equal base and fibers; charts and topologies ignored."""
        return self.base == other.base and self.fibers == other.fibers


class Section:
    """A choice of one fiber element over every base point."""

    __slots__ = ("bundle", "assignment", "_hash")

    def __init__(self, bundle, assignment):
        self.bundle = bundle
        self.assignment = frozendict(assignment)
        if set(self.assignment) != set(bundle.base):
            raise InvalidStructure("a section is defined on the whole base")
        for x, a in self.assignment.items():
            if a not in bundle.fibers[x]:
                raise InvalidStructure(f"section value {a!r} not in the fiber over {x!r}")
        self._hash = None

    def __call__(self, x):
        return self.assignment[x]

    def __eq__(self, other):
        if not isinstance(other, Section):
            return NotImplemented
        return self.assignment == other.assignment and self.bundle.same_shape(other.bundle)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.assignment)
        return self._hash

    def __repr__(self):
        return f"Section({ {x: self.assignment[x] for x in sorted_labels(self.assignment)} })"


class SubbundleWitness:
    """Injections of base and fibers exhibiting ``sub`` inside ``sup``."""

    __slots__ = ("sub", "sup", "base_injection", "total_injection")

    def __init__(self, sub, sup, base_injection, total_injection):
        self.sub = sub
        self.sup = sup
        self.base_injection = frozendict(base_injection)
        self.total_injection = frozendict({x: frozendict(m) for x, m in total_injection.items()})
        self._validate()

    def _validate(self):
        f = self.base_injection
        if set(f) != set(self.sub.base):
            raise InvalidStructure("base injection must be defined on the whole sub base")
        if len(set(f.values())) != len(f) or not set(f.values()) <= self.sup.base:
            raise InvalidStructure("base map is not an injection into the super base")
        for x in self.sub.base:
            m = self.total_injection.get(x)
            if m is None or set(m) != set(self.sub.fibers[x]):
                raise InvalidStructure(f"fiber map over {x!r} is not total")
            target = self.sup.fibers[f[x]]
            if len(set(m.values())) != len(m) or not set(m.values()) <= target:
                raise InvalidStructure(f"fiber map over {x!r} is not an injection into the super fiber")

    def __repr__(self):
        return f"SubbundleWitness({self.sub!r} ⊆ {self.sup!r})"

    def compose(self, outer):
        """Witness for ``self.sub ⊆ outer.sup`` given ``self.sup == outer.sub``."""
        if not self.sup.same_shape(outer.sub):
            raise InvalidStructure("witnesses do not chain")
        base = {x: outer.base_injection[y] for x, y in self.base_injection.items()}
        total = {
            x: {a: outer.total_injection[self.base_injection[x]][b] for a, b in m.items()}
            for x, m in self.total_injection.items()
        }
        return SubbundleWitness(self.sub, outer.sup, base, total)


def is_subbundle(sub, sup):
    """Witness with identity injections, or ``NotContained`` at the first violating point."""
    for x in sorted_labels(sub.base):
        if x not in sup.base:
            raise NotContained(x, "base point missing")
        extra = sub.fibers[x] - sup.fibers[x]
        if extra:
            raise NotContained(x, f"fiber labels {sorted_labels(extra)} missing")
    return SubbundleWitness(
        sub,
        sup,
        {x: x for x in sub.base},
        {x: {a: a for a in sub.fibers[x]} for x in sub.base},
    )


def product(a, b):
    """Cartesian product: base ``M × N``, fiber ``A_x × B_y`` over ``(x, y)``."""
    fibers = {
        (x, y): {(p, q) for p in a.fibers[x] for q in b.fibers[y]} for x in a.base for y in b.base
    }
    triv = None
    ta, tb = a.trivialization, b.trivialization
    if ta is not None and tb is not None:
        typical = {(s, t) for s in ta.typical for t in tb.typical}
        charts = {
            (x, y): {(p, q): (ta.charts[x][p], tb.charts[y][q]) for p, q in fibers[(x, y)]}
            for x in ta.charts
            for y in tb.charts
        }
        triv = Trivialization(typical, charts)
    return Bundle(fibers.keys(), fibers, triv, name=f"{a.name}×{b.name}")


def reduced_product(a, b):
    """Reduced product over a shared base: fiber ``A_x × B_x`` over ``x``."""
    if a.base != b.base:
        raise BaseMismatch("reduced product needs bundles over the same base")
    fibers = {x: {(p, q) for p in a.fibers[x] for q in b.fibers[x]} for x in a.base}
    triv = None
    ta, tb = a.trivialization, b.trivialization
    if ta is not None and tb is not None:
        typical = {(s, t) for s in ta.typical for t in tb.typical}
        charts = {
            x: {(p, q): (ta.charts[x][p], tb.charts[x][q]) for p, q in fibers[x]}
            for x in set(ta.charts) & set(tb.charts)
        }
        triv = Trivialization(typical, charts)
    return Bundle(a.base, fibers, triv, name=f"{a.name}⊙{b.name}")


def sections(a):
    """All total sections, in canonical order."""
    order = sorted_labels(a.base)
    for x in order:
        if not a.fibers[x]:
            raise EmptyFiber(x)
    choices = [sorted_labels(a.fibers[x]) for x in order]
    return [Section(a, dict(zip(order, values))) for values in _cartesian(*choices)]


def degenerate_fibers(a):
    """Points whose fiber size differs from the strict-majority size, or that lack a chart.

    With no strict majority every point is reported.
    """
    if not a.base:
        return frozenset()
    sizes = {x: len(f) for x, f in a.fibers.items()}
    size, count = Counter(sizes.values()).most_common(1)[0]
    if 2 * count > len(sizes):
        odd = {x for x, s in sizes.items() if s != size}
    else:
        odd = set(a.base)
    if a.trivialization is not None:
        odd |= a.base - set(a.trivialization.charts)
    return frozenset(odd)


def bundle_from_total(base, total):
    """Bundle whose total space is the given set of ``(x, a)`` pairs."""
    fibers = {x: set() for x in base}
    for x, a in total:
        fibers[x].add(a)
    return Bundle(base, fibers)


__all__ = [
    "Bundle",
    "Section",
    "SubbundleWitness",
    "Trivialization",
    "bundle_from_total",
    "degenerate_fibers",
    "is_subbundle",
    "product",
    "reduced_product",
    "sections",
]
