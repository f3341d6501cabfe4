"""Finite groups acting fiberwise on bundles: stabilizers, little groups, orbits, towers."""

import os
from itertools import product as _cartesian
from typing import NamedTuple

from ._util import frozendict, least, sorted_labels
from .bundle import Bundle, Section, Trivialization
from .errors import (
    BrokenChain,
    EnumerationBound,
    InvalidStructure,
    SectionMismatch,
    TheoremViolation,
    UnknownElement,
    UnknownPoint,
)
from .fibered import ReducedFiberedCorrespondence, classify
from .quotient import QuotientResult, quotient_bundle

DEFAULT_MAX_ENUM = 10**6


def max_enum():
    return int(os.environ.get("FIBRA_MAX_ENUM", DEFAULT_MAX_ENUM))


class FiniteGroup:
    __slots__ = ("elements", "table", "identity", "_inverse")

    def __init__(self, elements, table, identity):
        self.elements = frozenset(elements)
        self.table = frozendict({tuple(k): v for k, v in table.items()})
        self.identity = identity
        self._validate()
        self._inverse = {g: next(h for h in self.elements if self.table[(g, h)] == identity) for g in self.elements}

    def _validate(self):
        els = self.elements
        if self.identity not in els:
            raise InvalidStructure("identity is not an element")
        for g in els:
            for h in els:
                if self.table.get((g, h)) not in els:
                    raise InvalidStructure(f"product {g!r}·{h!r} undefined or outside the group")
        if len(self.table) != len(els) ** 2:
            raise InvalidStructure("table has entries outside the group")
        for g in els:
            if self.table[(self.identity, g)] != g or self.table[(g, self.identity)] != g:
                raise InvalidStructure(f"identity law fails at {g!r}")
            if not any(self.table[(g, h)] == self.identity for h in els):
                raise InvalidStructure(f"{g!r} has no inverse")
        mul = self.table
        for g in els:
            for h in els:
                gh = mul[(g, h)]
                for k in els:
                    if mul[(gh, k)] != mul[(g, mul[(h, k)])]:
                        raise InvalidStructure(f"associativity fails at {(g, h, k)!r}")

    def __eq__(self, other):
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return (self.elements, self.table, self.identity) == (other.elements, other.table, other.identity)

    def __hash__(self):
        return hash((self.elements, self.table, self.identity))

    def __len__(self):
        return len(self.elements)

    def __repr__(self):
        return f"FiniteGroup(order={len(self.elements)})"

    def mul(self, g, h):
        return self.table[(g, h)]

    def inv(self, g):
        return self._inverse[g]

    def is_subgroup(self, subset):
        subset = frozenset(subset)
        return (
            self.identity in subset
            and all(self.mul(g, h) in subset for g in subset for h in subset)
            and all(self.inv(g) in subset for g in subset)
        )


def cyclic_group(n, prefix="g"):
    """Z_n with elements ``g0 .. g{n-1}``; ``g0`` is the identity."""
    els = [f"{prefix}{i}" for i in range(n)]
    table = {(els[i], els[j]): els[(i + j) % n] for i in range(n) for j in range(n)}
    return FiniteGroup(els, table, els[0])


def trivial_group(label="e"):
    return FiniteGroup([label], {(label, label): label}, label)


class FiberedGroup:
    """The trivial group bundle ``base × G``."""

    __slots__ = ("base", "group")

    def __init__(self, base, group):
        self.base = frozenset(base)
        self.group = group

    def as_bundle(self):
        return Bundle(self.base, {x: self.group.elements for x in self.base}, name="G")


class TstarRepresentation:
    """A left action of the fiber group on every fiber of ``space``.

    ``action`` maps a base point to a table ``(g, e) -> g·e``.
    """

    __slots__ = ("group_bundle", "space", "action")

    def __init__(self, group_bundle, space, action):
        if group_bundle.base != space.base:
            raise InvalidStructure("group bundle and space need the same base")
        self.group_bundle = group_bundle
        self.space = space
        self.action = frozendict({x: frozendict({tuple(k): v for k, v in t.items()}) for x, t in action.items()})
        self._validate()

    @property
    def group(self):
        return self.group_bundle.group

    def _validate(self):
        grp = self.group
        if set(self.action) != set(self.space.base):
            raise InvalidStructure("action must be given over every base point")
        for x, table in self.action.items():
            fiber = self.space.fibers[x]
            for g in grp.elements:
                for e in fiber:
                    if table.get((g, e)) not in fiber:
                        raise InvalidStructure(f"action over {x!r} undefined or leaves the fiber at {(g, e)!r}")
            if len(table) != len(grp) * len(fiber):
                raise InvalidStructure(f"action over {x!r} has entries outside G × fiber")
            for e in fiber:
                if table[(grp.identity, e)] != e:
                    raise InvalidStructure(f"identity moves {e!r} over {x!r}")
                for g in grp.elements:
                    for h in grp.elements:
                        if table[(g, table[(h, e)])] != table[(grp.mul(g, h), e)]:
                            raise InvalidStructure(f"action over {x!r} is not compatible with the group law")
            for g in grp.elements:
                if len({table[(g, e)] for e in fiber}) != len(fiber):
                    raise InvalidStructure(f"{g!r} does not act bijectively over {x!r}")

    def act(self, x, g, e):
        return self.action[x][(g, e)]

    def orbit(self, x, e):
        return frozenset(self.act(x, g, e) for g in self.group.elements)


def stabilizer(rep, x, e):
    if x not in rep.space.base:
        raise UnknownPoint(f"{x!r} is not a base point")
    if e not in rep.space.fibers[x]:
        raise UnknownElement(f"{e!r} is not in the fiber over {x!r}")
    found = frozenset(g for g in rep.group.elements if rep.act(x, g, e) == e)
    if not rep.group.is_subgroup(found):
        raise TheoremViolation(f"stabilizer of {e!r} over {x!r} is not a subgroup")
    return found


def little_group(rep, h, limit=None):
    """All sections ``g`` of the group bundle with ``g(x)·h(x) = h(x)`` everywhere.

    Enumerates ``|G|^|M|`` sections; refuses beyond ``limit`` (default from
    ``FIBRA_MAX_ENUM``, else 10**6).
    """
    if not h.bundle.same_shape(rep.space):
        raise SectionMismatch("section does not belong to the representation space")
    limit = max_enum() if limit is None else limit
    count = len(rep.group) ** len(rep.space.base)
    if count > limit:
        raise EnumerationBound(f"{count} group sections exceed the enumeration bound {limit}")
    gbundle = rep.group_bundle.as_bundle()
    order = sorted_labels(rep.space.base)
    elements = sorted_labels(rep.group.elements)
    found = set()
    for values in _cartesian(elements, repeat=len(order)):
        if all(rep.act(x, g, h(x)) == h(x) for x, g in zip(order, values)):
            found.add(Section(gbundle, dict(zip(order, values))))
    stabs = {x: stabilizer(rep, x, h(x)) for x in order}
    for g in found:
        for x in order:
            if g(x) not in stabs[x]:
                raise TheoremViolation(f"little-group fiber over {x!r} leaves the stabilizer")
    expected = 1
    for x in order:
        expected *= len(stabs[x])
    if len(found) != expected:
        raise TheoremViolation("little group is not the product of pointwise stabilizers")
    return frozenset(found)


def is_free(rep):
    return all(
        stabilizer(rep, x, e) == {rep.group.identity} for x in rep.space.base for e in rep.space.fibers[x]
    )


def orbit_equivalence(rep):
    """``p ~ q`` over x when some g sends p to q."""
    fibers = {
        x: {(p, rep.act(x, g, p)) for p in rep.space.fibers[x] for g in rep.group.elements}
        for x in rep.space.base
    }
    s = ReducedFiberedCorrespondence(rep.space, rep.space, fibers, rep.space.base)
    if "equivalence" not in classify(s):
        raise TheoremViolation("orbit relation is not an equivalence")
    return s


class Tower:
    """Bundles listed from the top level down; each base is the total space of the next."""

    __slots__ = ("levels",)

    def __init__(self, levels):
        self.levels = tuple(levels)
        tower_validate(self)

    def __len__(self):
        return len(self.levels)

    def __repr__(self):
        return f"Tower(height={len(self.levels)})"

    @property
    def bottom(self):
        return self.levels[-1].base if self.levels else frozenset()


def tower_validate(t):
    """Check chaining. Level ``k`` counts up from the base (level 0) to the top (level n)."""
    n = len(t.levels)
    for upper in range(n - 1):
        above, below = t.levels[upper], t.levels[upper + 1]
        if above.base != below.total_space():
            raise BrokenChain(n - upper, "base differs from the total space one level down")
    return {"height": n, "valid": True, "sizes": [len(b.total_space()) for b in t.levels]}


def tower_project(t, from_level, to_level):
    """Composite projection from the total space of ``from_level`` down to ``to_level``.

    Level 0 is the base of the bottom bundle. Points of level k ≥ 1 are pairs ``(b, a)``.
    """
    n = len(t.levels)
    if not 0 <= to_level < from_level <= n:
        raise ValueError("need 0 <= to_level < from_level <= height")
    bundle = t.levels[n - from_level]
    mapping = {}
    for p in bundle.total_space():
        q = p
        for _ in range(from_level - to_level):
            q = q[0]
        mapping[p] = q
    return mapping


class OrbitQuotient(NamedTuple):
    quotient: QuotientResult
    level2: Tower
    # (x, class label) for classes whose size is not |G|
    degenerate: frozenset
    # (x, class label) -> {g: g·label}, recorded for classes of size |G|
    bijections: frozendict


def orbit_quotient(rep):
    """Quotient by orbits plus the level-2 tower ``E → E/S → M``.

    A class of size |G| gets the bijection ``g ↦ g·label`` and a chart onto
    ``G`` in the level-2 bundle; smaller classes are reported degenerate.
    """
    q = quotient_bundle(rep.space, orbit_equivalence(rep))
    grp = rep.group
    degenerate = set()
    bijections = {}
    fibers = {}
    charts = {}
    for x, classes in q.class_map.items():
        for label, members in classes.items():
            point = (x, label)
            fibers[point] = members
            if len(members) == len(grp):
                bij = {g: rep.act(x, g, label) for g in grp.elements}
                if set(bij.values()) != members:
                    raise TheoremViolation(f"orbit of {label!r} over {x!r} is not in bijection with G")
                bijections[point] = frozendict(bij)
                charts[point] = {a: g for g, a in bij.items()}
            else:
                degenerate.add(point)
    level2 = Bundle(
        fibers.keys(), fibers, Trivialization(grp.elements, charts), name=f"{rep.space.name or 'E'}→E/S"
    )
    tower = Tower([level2, q.quotient])
    return OrbitQuotient(q, tower, frozenset(degenerate), frozendict(bijections))


def level_two_projection(oq):
    """``(x, a) ↦ (x, [a])`` read off the tower; agrees with the natural morphism."""
    return {((x, label), a): (x, label) for (x, label), members in oq.level2.levels[0].fibers.items() for a in members}
