"""Deterministic choice principles and well-founded recursion.

Choice is realized by selectors: the canonical one picks the least element
in the canonical set order (finite carriers) or the first hit in
enumeration order (countable carriers, see :class:`Enumeration`).
"""

from __future__ import annotations

import itertools
import threading
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Union

from .errors import EmptyChoice, NotWellFounded, OutsideCarrier, TotalityError
from .sets import HSet, kpair, metered, nat_ord, pairs_of, unpair

__all__ = [
    "Enumeration", "Selector", "ChoiceStream", "min_selector", "dc_witness",
    "pointed_dc", "sequence_dc", "product_with_nat", "wfrec", "relation_test", "is_total",
    "DEFAULT_SEARCH_LIMIT",
]

DEFAULT_SEARCH_LIMIT = 100_000


class Enumeration:
    """A countable carrier given by an injective indexing and a membership test."""

    def __init__(self, at: Callable[[int], HSet],
                 contains: Callable[[HSet], bool], name: str = "enumeration"):
        self.at = at
        self._contains = contains
        self.name = name

    def __contains__(self, x) -> bool:
        return bool(self._contains(x))

    def __iter__(self) -> Iterator[HSet]:
        return (self.at(n) for n in itertools.count())

    def prefix(self, n: int) -> List[HSet]:
        return [self.at(k) for k in range(n)]

    def __repr__(self):
        return f"Enumeration({self.name})"


Carrier = Union[HSet, Enumeration]
RelationLike = Union[HSet, Callable[[HSet, HSet], bool]]


def relation_test(r: RelationLike) -> Callable[[HSet, HSet], bool]:
    """Turn a relation given as a set of pairs into a binary predicate."""
    if isinstance(r, HSet):
        table = set(pairs_of(r))
        return lambda x, y: (x, y) in table
    return r


class Selector:
    """A choice function on nonempty subsets of a fixed carrier.

    ``choose`` receives the candidates as an iterable; for finite carriers
    that iterable is an :class:`HSet`.
    """

    def __init__(self, choose: Callable[[Iterable[HSet]], HSet], name: str = "selector"):
        self._choose = choose
        self.name = name

    def __call__(self, candidates: Iterable[HSet]) -> HSet:
        return self._choose(candidates)

    choose = __call__

    def __repr__(self):
        return f"Selector({self.name})"


def _canonical_min(xs: Iterable[HSet]) -> HSet:
    if isinstance(xs, HSet):
        if not xs.elems:
            raise EmptyChoice("cannot choose from the empty set")
        return xs.elems[0]
    best = None
    for x in xs:
        if best is None or x < best:
            best = x
    if best is None:
        raise EmptyChoice("cannot choose from the empty set")
    return best


def _first_hit(limit: int):
    def choose(xs: Iterable[HSet]) -> HSet:
        if isinstance(xs, HSet):
            return _canonical_min(xs)
        for x in itertools.islice(xs, limit):
            return x
        raise EmptyChoice(f"no candidate found within {limit} tries")
    return choose


def min_selector(a: Carrier = None, search_limit: int = DEFAULT_SEARCH_LIMIT) -> Selector:
    """Canonical selector: least element, or first in enumeration order."""
    if isinstance(a, Enumeration):
        return Selector(_first_hit(search_limit), f"first-in-{a.name}")
    return Selector(_canonical_min, "canonical-min")


def _carrier_iter(a: Carrier) -> Iterable[HSet]:
    return a.elems if isinstance(a, HSet) else iter(a)


def is_total(a: HSet, r: RelationLike) -> Optional[HSet]:
    """First ``x`` in the finite carrier ``a`` without an r-successor in ``a``."""
    rel = relation_test(r)
    for x in a.elems:
        if not any(rel(x, y) for y in a.elems):
            return x
    return None


def _successors(a: Carrier, rel, x: HSet, candidates, limit: int):
    source = candidates(x) if candidates is not None else _carrier_iter(a)
    if isinstance(a, HSet):
        return HSet(y for y in source if y in a and rel(x, y))
    return (y for y in itertools.islice(source, limit) if y in a and rel(x, y))


def _step(a, rel, s, x, n, candidates, limit):
    pool = _successors(a, rel, x, candidates, limit)
    try:
        y = s(pool)
    except EmptyChoice:
        raise TotalityError(n, x) from None
    return y


def dc_witness(n: int, a: Carrier, a0: HSet, s: Selector, r: RelationLike, *,
               candidates: Optional[Callable[[HSet], Iterable[HSet]]] = None,
               search_limit: int = DEFAULT_SEARCH_LIMIT) -> HSet:
    """Primitive recursion: step 0 is ``a0``; step n+1 is ``s`` applied to the
    r-successors in ``a`` of step n."""
    if a0 not in a:
        raise OutsideCarrier(a0)
    rel = relation_test(r)
    if isinstance(a, HSet):
        bad = is_total(a, rel)
        if bad is not None:
            raise TotalityError(None, bad)
    x = a0
    for k in range(n):
        x = _step(a, rel, s, x, k, candidates, search_limit)
    return x


class ChoiceStream:
    """A memoized total sequence ``n -> HSet`` computed on demand."""

    def __init__(self, first: HSet, step: Callable[[HSet, int], HSet]):
        self._values = [first]
        self._step = step
        self._lock = threading.Lock()

    def at(self, n: int) -> HSet:
        if n < 0:
            raise IndexError(n)
        with self._lock:
            vals = self._values
            while len(vals) <= n:
                k = len(vals) - 1
                vals.append(self._step(vals[k], k))
            return vals[n]

    __getitem__ = at

    def __call__(self, n: int) -> HSet:
        return self.at(n)

    def prefix(self, n: int) -> List[HSet]:
        """Values at 0..n inclusive."""
        self.at(n)
        return list(self._values[:n + 1])


def pointed_dc(a: Carrier, r: RelationLike, a0: HSet,
               selector: Optional[Selector] = None, *,
               candidates: Optional[Callable[[HSet], Iterable[HSet]]] = None,
               search_limit: int = DEFAULT_SEARCH_LIMIT) -> ChoiceStream:
    """A stream f with f(0) = a0 and <f(n), f(n+1)> in r.

    Totality of ``r`` is checked lazily along the constructed path.
    """
    if a0 not in a:
        raise OutsideCarrier(a0)
    rel = relation_test(r)
    s = selector or min_selector(a, search_limit)
    return ChoiceStream(
        a0, lambda x, k: _step(a, rel, s, x, k, candidates, search_limit))


def _cantor_unpair(n: int):
    w = int(((8 * n + 1) ** 0.5 - 1) // 2)
    while w * (w + 1) // 2 > n:
        w -= 1
    while (w + 1) * (w + 2) // 2 <= n:
        w += 1
    j = n - w * (w + 1) // 2
    return w - j, j


def _is_numeral(x: HSet) -> bool:
    return x == nat_ord(len(x.elems))


def product_with_nat(a: Carrier) -> Enumeration:
    """The countable carrier A x nat (naturals as von Neumann numerals)."""
    if isinstance(a, HSet):
        elems = a.elems
        if not elems:
            def at(n):
                raise IndexError("A x nat is empty when A is empty")
        else:
            def at(n):
                return kpair(elems[n % len(elems)], nat_ord(n // len(elems)))
    else:
        def at(n):
            i, j = _cantor_unpair(n)
            return kpair(a.at(i), nat_ord(j))

    def contains(z):
        p = unpair(z)
        return p is not None and p[0] in a and _is_numeral(p[1])

    return Enumeration(at, contains, "A x nat")


def _lift(selector: Selector) -> Selector:
    """Selector on pairs <y, k> sharing one k, choosing by first coordinate."""

    def choose(pairs: Iterable[HSet]) -> HSet:
        tags = []

        def firsts():
            for z in pairs:
                y, k = unpair(z)
                tags.append(k)
                yield y

        src = firsts()
        if isinstance(pairs, HSet):
            src = HSet(list(src))
        y = selector(src)
        return kpair(y, tags[0])

    return Selector(choose, f"lifted-{selector.name}")


def sequence_dc(a: Carrier, s_family: Callable[[int], RelationLike], a0: HSet,
                selector: Optional[Selector] = None, *,
                candidates: Optional[Callable[[HSet], Iterable[HSet]]] = None,
                search_limit: int = DEFAULT_SEARCH_LIMIT) -> ChoiceStream:
    """Diagonal dependent choice: <f(n), f(n+1)> in s_family(n + 1).

    Runs pointed dependent choice on A x nat for the relation taking
    <w, n> to <y, m> whenever <w, y> is in s_family(m); the chain visits
    <f(n), n> -> <f(n+1), n+1> and f is its first projection.
    """
    if a0 not in a:
        raise OutsideCarrier(a0)
    base = selector or min_selector(a, search_limit)
    tests: Dict[int, Callable] = {}

    def s_test(m: int):
        if m not in tests:
            tests[m] = relation_test(s_family(m))
        return tests[m]

    def big_rel(x: HSet, z: HSet) -> bool:
        (w, _), (y, m) = unpair(x), unpair(z)
        return s_test(len(m.elems))(w, y)

    def big_candidates(x: HSet):
        w, n = unpair(x)
        nxt = nat_ord(len(n.elems) + 1)
        src = candidates(w) if candidates is not None else _carrier_iter(a)
        return (kpair(y, nxt) for y in src)

    pairs = pointed_dc(product_with_nat(a), big_rel, kpair(a0, nat_ord(0)),
                       _lift(base), candidates=big_candidates,
                       search_limit=search_limit)

    def project(_x: HSet, k: int) -> HSet:
        try:
            z = pairs.at(k + 1)
        except TotalityError as err:
            raise TotalityError(k, unpair(err.point)[0]) from None
        return unpair(z)[0]

    return ChoiceStream(a0, project)


def _predecessors(r) -> Callable[[HSet], Iterable[HSet]]:
    if isinstance(r, HSet):
        index: Dict[HSet, List[HSet]] = {}
        for x, y in pairs_of(r):
            index.setdefault(y, []).append(x)
        return lambda y: index.get(y, ())
    return r


@metered
def wfrec(r, x: HSet, h: Callable[[HSet, Dict[HSet, HSet]], HSet],
          memo: Optional[Dict[HSet, HSet]] = None):
    """Well-founded recursion F(x) = h(x, F restricted to r-predecessors of x).

    ``r`` is a relation (a set of pairs <y, x> meaning y r x) or a function
    returning the r-predecessors of a point.  Cycles met during the descent
    raise :class:`NotWellFounded`.
    """
    preds = _predecessors(r)
    memo = {} if memo is None else memo
    if x in memo:
        return memo[x]
    path = [x]
    on_path = {x}
    pending = [list(preds(x))]
    cursors = [0]
    while path:
        lst, i = pending[-1], cursors[-1]
        if i < len(lst):
            cursors[-1] = i + 1
            y = lst[i]
            if y in memo:
                continue
            if y in on_path:
                start = path.index(y)
                raise NotWellFounded(path[start:] + [y])
            path.append(y)
            on_path.add(y)
            pending.append(list(preds(y)))
            cursors.append(0)
            continue
        node = path.pop()
        on_path.discard(node)
        pending.pop()
        cursors.pop()
        memo[node] = h(node, {p: memo[p] for p in lst})
    return memo[x]
