"""Brute-force reference computations, written without the library's helpers."""

from itertools import combinations


def all_subsets(items):
    items = list(items)
    out = []
    for k in range(len(items) + 1):
        out.extend(frozenset(c) for c in combinations(items, k))
    return out


def compose_pairs(second, first):
    return {(a, c) for (a, b) in first for (b2, c) in second if b == b2}


def compose_fibered_total(h_total, f_total):
    """Tuples ``(x, z, a, c)`` reachable through some ``(y, b)``."""
    return {
        (x, z, a, c)
        for (x, y, a, b) in f_total
        for (y2, z, b2, c) in h_total
        if y == y2 and b == b2
    }


def compose_reduced_total(h_total, f_total):
    return {(x, a, c) for (x, a, b) in f_total for (x2, b2, c) in h_total if x == x2 and b == b2}


def invert_fibered_total(total):
    return {(y, x, b, a) for (x, y, a, b) in total}


def fibered_total(fc):
    out = set()
    for (x, y), pairs in fc.fibers.items():
        for a, b in pairs:
            out.add((x, y, a, b))
    return out


def reduced_total(rc):
    return {(x, a, b) for x, pairs in rc.fibers.items() for a, b in pairs}


class UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb

    def classes(self):
        groups = {}
        for x in self.parent:
            groups.setdefault(self.find(x), set()).add(x)
        return {frozenset(g) for g in groups.values()}


def partition_of(elements, pairs):
    uf = UnionFind(elements)
    for a, b in pairs:
        uf.union(a, b)
    return uf.classes()


def neighborhoods(points, opens, target):
    return {v for v in all_subsets(points) if any(target <= u <= v for u in opens)}


def is_topology(points, opens):
    opens = set(opens)
    if frozenset() not in opens or frozenset(points) not in opens:
        return False
    return all(u | v in opens and u & v in opens for u in opens for v in opens)


def finest_continuous(total_opens, owner, quotient_points, quotient_opens):
    """Brute force over every topology on the quotient points.

    ``owner`` sends each total-space point to its quotient point. Returns
    True when ``quotient_opens`` makes the projection continuous and every
    topology that does so is contained in it.
    """
    from fibra.topology import all_topology_masks

    order = sorted(quotient_points, key=repr)
    index = {q: i for i, q in enumerate(order)}
    opens_e = {frozenset(u) for u in total_opens}
    good = set()
    for m in range(1 << len(order)):
        pre = frozenset(p for p, q in owner.items() if (m >> index[q]) & 1)
        if pre in opens_e:
            good.add(m)
    mine = {sum(1 << index[q] for q in u) for u in quotient_opens}
    if not mine <= good:
        return False
    for masks in all_topology_masks(len(order)):
        if good.issuperset(masks) and not mine.issuperset(masks):
            return False
    return True
