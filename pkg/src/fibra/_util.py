"""Small immutable containers and canonical ordering shared by all modules."""

from collections.abc import Mapping
from itertools import chain, combinations


class frozendict(Mapping):
    """Hashable read-only mapping."""

    __slots__ = ("_data", "_hash")

    def __init__(self, *args, **kwargs):
        self._data = dict(*args, **kwargs)
        self._hash = None

    def __getitem__(self, key):
        return self._data[key]

    def __iter__(self):
        return iter(self._data)

    def __len__(self):
        return len(self._data)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._data.items()))
        return self._hash

    def __eq__(self, other):
        if isinstance(other, Mapping):
            return self._data == dict(other.items())
        return NotImplemented

    def __repr__(self):
        return f"frozendict({self._data!r})"


def label_key(x):
    # tuples sort after scalars; scalars compare by their string form
    if isinstance(x, tuple):
        return (1, tuple(label_key(y) for y in x))
    if isinstance(x, frozenset):
        return (2, tuple(sorted(label_key(y) for y in x)))
    return (0, str(x))


def sorted_labels(items):
    return sorted(items, key=label_key)


def least(items):
    return min(items, key=label_key)


def powerset(items):
    items = sorted_labels(items)
    return [
        frozenset(c)
        for c in chain.from_iterable(combinations(items, r) for r in range(len(items) + 1))
    ]


def rel_compose(second, first):
    """Set-level composition ``second ∘ first`` of two relations given as pair sets."""
    by_middle = {}
    for b, c in second:
        by_middle.setdefault(b, []).append(c)
    return frozenset((a, c) for a, b in first for c in by_middle.get(b, ()))


def rel_inverse(pairs):
    return frozenset((b, a) for a, b in pairs)


def rel_diagonal(items):
    return frozenset((a, a) for a in items)
