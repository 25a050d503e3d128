"""Canonical hereditarily finite sets and the small ZF toolbox built on them.

Every :class:`HSet` is stored with its members sorted in a structural total
order (rank first, then lexicographically on the sorted members) and is
hash-consed, so two extensionally equal sets are the same object.  The
rich comparison operators implement that canonical order; use
:meth:`HSet.issubset` for inclusion.
"""

from __future__ import annotations

import threading
import weakref
from contextlib import contextmanager
from contextvars import ContextVar
from functools import cmp_to_key, lru_cache, wraps
from typing import Callable, Iterable, Iterator, Optional, Tuple

from .errors import BudgetExceeded

__all__ = [
    "HSet", "EMPTY", "DEFAULT_BUDGET", "node_budget", "metered",
    "mk_set", "mem", "kpair", "unpair", "is_pair", "pairs_of", "domain",
    "range_", "union", "eclose", "is_transset", "memrel", "trancl",
    "sep_replace", "nat_ord", "ord_value", "rank", "singleton", "upair_set",
    "product", "powerset", "cumulative_level", "relation_from_pairs",
]

DEFAULT_BUDGET = 10 ** 6


class _Meter:
    __slots__ = ("limit", "used")

    def __init__(self, limit: int):
        self.limit = limit
        self.used = 0


_meter: ContextVar[Optional[_Meter]] = ContextVar("hset_meter", default=None)


@contextmanager
def node_budget(limit: int = DEFAULT_BUDGET):
    """Cap the number of sets constructed inside the ``with`` block."""
    meter = _Meter(limit)
    token = _meter.set(meter)
    try:
        yield meter
    finally:
        _meter.reset(token)


def metered(fn):
    """Run ``fn`` under the default budget unless a budget is already active."""

    @wraps(fn)
    def wrapper(*args, **kwargs):
        if _meter.get() is not None:
            return fn(*args, **kwargs)
        with node_budget():
            return fn(*args, **kwargs)

    return wrapper


def _compare(a: "HSet", b: "HSet") -> int:
    """Canonical order: rank first, then lexicographic on sorted members.

    Members are interned, so equal prefixes are skipped by identity and
    only the first differing pair is compared recursively.
    """
    while a is not b:
        if a.rank != b.rank:
            return -1 if a.rank < b.rank else 1
        for x, y in zip(a.elems, b.elems):
            if x is not y:
                a, b = x, y
                break
        else:
            la, lb = len(a.elems), len(b.elems)
            return (la > lb) - (la < lb)
    return 0


_sort_key = cmp_to_key(_compare)


class HSet:
    __slots__ = ("elems", "rank", "_hash", "_members", "__weakref__")

    # keyed by the tuple of (interned) members, so lookups hash in O(width)
    _table: "weakref.WeakValueDictionary" = weakref.WeakValueDictionary()
    _lock = threading.Lock()

    def __new__(cls, elems: Iterable["HSet"] = ()):
        meter = _meter.get()
        if meter is not None:
            meter.used += 1
            if meter.used > meter.limit:
                raise BudgetExceeded(meter.limit)
        uniq = set()
        for e in elems:
            if not isinstance(e, HSet):
                raise TypeError(f"HSet members must be HSet, got {type(e).__name__}")
            uniq.add(e)
        children = tuple(sorted(uniq, key=_sort_key))
        with cls._lock:
            found = cls._table.get(children)
            if found is not None:
                return found
            obj = object.__new__(cls)
            obj.elems = children
            obj.rank = 1 + max(c.rank for c in children) if children else 0
            obj._hash = hash((obj.rank, tuple(c._hash for c in children)))
            obj._members = frozenset(children)
            cls._table[children] = obj
        return obj

    def __reduce__(self):
        return (HSet, (self.elems,))

    def __copy__(self):
        return self

    def __deepcopy__(self, memo):
        return self

    def __iter__(self) -> Iterator["HSet"]:
        return iter(self.elems)

    def __len__(self) -> int:
        return len(self.elems)

    def __bool__(self) -> bool:
        return bool(self.elems)

    def __contains__(self, x) -> bool:
        return x in self._members

    def __hash__(self) -> int:
        return self._hash

    # interning makes extensional equality coincide with identity
    def __eq__(self, other):
        if not isinstance(other, HSet):
            return NotImplemented
        return self is other

    def __ne__(self, other):
        if not isinstance(other, HSet):
            return NotImplemented
        return self is not other

    def __lt__(self, other: "HSet"):
        if not isinstance(other, HSet):
            return NotImplemented
        return _compare(self, other) < 0

    def __le__(self, other: "HSet"):
        if not isinstance(other, HSet):
            return NotImplemented
        return _compare(self, other) <= 0

    def __gt__(self, other: "HSet"):
        if not isinstance(other, HSet):
            return NotImplemented
        return _compare(self, other) > 0

    def __ge__(self, other: "HSet"):
        if not isinstance(other, HSet):
            return NotImplemented
        return _compare(self, other) >= 0

    def __repr__(self) -> str:
        from .syntax import format_set
        return format_set(self, sugar=True)

    def __str__(self) -> str:
        from .syntax import format_set
        return format_set(self)

    def issubset(self, other: "HSet") -> bool:
        return self._members <= other._members

    def union(self, *others: "HSet") -> "HSet":
        acc = set(self.elems)
        for o in others:
            acc.update(o.elems)
        return HSet(acc)

    def intersection(self, other: "HSet") -> "HSet":
        return HSet(e for e in self.elems if e in other._members)

    def difference(self, other: "HSet") -> "HSet":
        return HSet(e for e in self.elems if e not in other._members)

    def with_(self, *extra: "HSet") -> "HSet":
        return HSet(self.elems + extra)

    @property
    def is_empty(self) -> bool:
        return not self.elems

    @property
    def min(self) -> "HSet":
        """Canonical-order minimum member."""
        if not self.elems:
            raise ValueError("empty set has no minimum")
        return self.elems[0]


EMPTY = HSet()


def mk_set(elems: Iterable[HSet] = ()) -> HSet:
    return HSet(elems)


def mem(x: HSet, y: HSet) -> bool:
    return x in y


def rank(x: HSet) -> int:
    return x.rank


def singleton(x: HSet) -> HSet:
    return HSet((x,))


def upair_set(x: HSet, y: HSet) -> HSet:
    return HSet((x, y))


def kpair(x: HSet, y: HSet) -> HSet:
    """Kuratowski pair {{x}, {x, y}}."""
    return HSet((HSet((x,)), HSet((x, y))))


def unpair(z: HSet) -> Optional[Tuple[HSet, HSet]]:
    """Inverse of :func:`kpair`; ``None`` when ``z`` is not of pair shape."""
    n = len(z.elems)
    if n == 1:
        (only,) = z.elems
        if len(only.elems) == 1:
            x = only.elems[0]
            return x, x
        return None
    if n != 2:
        return None
    a, b = z.elems
    if len(a.elems) == 1 and len(b.elems) == 2:
        small, big = a, b
    elif len(b.elems) == 1 and len(a.elems) == 2:
        small, big = b, a
    else:
        return None
    x = small.elems[0]
    if x not in big._members:
        return None
    y = big.elems[1] if big.elems[0] == x else big.elems[0]
    return x, y


def is_pair(z: HSet) -> bool:
    return unpair(z) is not None


def pairs_of(r: HSet) -> Iterator[Tuple[HSet, HSet]]:
    """Iterate the pairs of a relation, skipping members that are not pairs."""
    for z in r.elems:
        p = unpair(z)
        if p is not None:
            yield p


def relation_from_pairs(pairs: Iterable[Tuple[HSet, HSet]]) -> HSet:
    return HSet(kpair(x, y) for x, y in pairs)


def domain(r: HSet) -> HSet:
    return HSet(x for x, _ in pairs_of(r))


def range_(r: HSet) -> HSet:
    return HSet(y for _, y in pairs_of(r))


def union(x: HSet) -> HSet:
    """The union of the members of ``x``."""
    acc = set()
    for e in x.elems:
        acc.update(e.elems)
    return HSet(acc)


@metered
def eclose(x: HSet) -> HSet:
    """Least transitive set containing every member of ``x``."""
    seen = set()
    stack = list(x.elems)
    while stack:
        e = stack.pop()
        if e in seen:
            continue
        seen.add(e)
        stack.extend(e.elems)
    return HSet(seen)


def is_transset(m: HSet) -> bool:
    return all(y in m._members for x in m.elems for y in x.elems)


def transset_witness(m: HSet) -> Optional[Tuple[HSet, HSet]]:
    """A pair (x, y) with y in x in m but y not in m, or None."""
    for x in m.elems:
        for y in x.elems:
            if y not in m._members:
                return x, y
    return None


@metered
def memrel(a: HSet) -> HSet:
    """Membership relation restricted to ``a``: pairs <x, y> with x in y."""
    return relation_from_pairs(
        (x, y) for y in a.elems for x in y.elems if x in a._members)


@metered
def trancl(r: HSet) -> HSet:
    """Transitive closure of a relation, by depth-first reachability."""
    succ = {}
    for x, y in pairs_of(r):
        succ.setdefault(x, set()).add(y)
    out = []
    for start in succ:
        reached = set()
        stack = list(succ[start])
        while stack:
            v = stack.pop()
            if v in reached:
                continue
            reached.add(v)
            stack.extend(succ.get(v, ()))
        out.extend((start, v) for v in reached)
    return relation_from_pairs(out)


def sep_replace(a: HSet, b: Callable[[HSet], HSet],
                q: Callable[[HSet], bool]) -> HSet:
    """{b(x) : x in a, q(x)}."""
    return HSet(b(x) for x in a.elems if q(x))


@lru_cache(maxsize=None)
def nat_ord(n: int) -> HSet:
    if n < 0:
        raise ValueError("von Neumann numerals are defined for n >= 0")
    x = EMPTY
    for _ in range(n):
        x = HSet(x.elems + (x,))
    return x


def ord_value(x: HSet) -> Optional[int]:
    """``n`` if ``x`` is the von Neumann numeral n, else ``None``."""
    n = len(x.elems)
    if x.rank != n:
        return None
    return n if nat_ord(n) is x or nat_ord(n) == x else None


def product(a: HSet, b: HSet) -> HSet:
    return relation_from_pairs((x, y) for x in a.elems for y in b.elems)


def powerset(a: HSet) -> HSet:
    elems = a.elems
    subsets = []
    for mask in range(1 << len(elems)):
        subsets.append(HSet(e for i, e in enumerate(elems) if mask >> i & 1))
    return HSet(subsets)


@lru_cache(maxsize=8)
def cumulative_level(n: int) -> HSet:
    """V_n: all sets of rank below ``n`` (n <= 5 is practical)."""
    if n > 5:
        raise ValueError("V_n beyond n = 5 is astronomically large")
    v = EMPTY
    for _ in range(n):
        v = powerset(v)
    return v
