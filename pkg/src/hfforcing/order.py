"""Forcing notions: preorders with a top element, density, filters.

Two backends share one interface.  :class:`FiniteForcingNotion` stores the
carrier and the order as explicit sets and every check is exhaustive.
:class:`CountableForcingNotion` is given by an enumeration and decidable
predicates; checks that would quantify over the whole carrier take a
``bound`` and are only valid up to that prefix.

A *subset* of the carrier is either an :class:`HSet` or a predicate.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, List, Optional, Tuple, Union

from .choice import DEFAULT_SEARCH_LIMIT, Enumeration
from .errors import HFError, OutsideCarrier
from .sets import (EMPTY, HSet, kpair, nat_ord, pairs_of, relation_from_pairs,
                   unpair)

__all__ = [
    "ForcingNotion", "FiniteForcingNotion", "CountableForcingNotion",
    "Violation", "ClosureOutcome", "validate_forcing_notion", "compat_in",
    "dense", "dense_below", "increasing", "is_filter", "upclosure",
    "closure_compat_filter", "in_subset", "chain_notion", "antichain_notion",
    "trivial_notion", "cohen_notion", "cohen_condition", "cohen_dict",
    "cohen_dense", "DEFAULT_BOUND",
]

Subset = Union[HSet, Callable[[HSet], bool]]

DEFAULT_BOUND = 50


def in_subset(d: Subset, x: HSet) -> bool:
    if isinstance(d, HSet):
        return x in d
    return bool(d(x))


class ForcingNotion:
    one: HSet
    is_finite: bool

    def __contains__(self, p) -> bool:
        raise NotImplementedError

    def leq(self, p: HSet, q: HSet) -> bool:
        """``p <= q``: p is a stronger condition than q."""
        raise NotImplementedError

    def conditions(self, bound: Optional[int] = None) -> List[HSet]:
        raise NotImplementedError

    def below(self, p: HSet) -> Iterator[HSet]:
        """Candidates for extensions of ``p``, in the canonical search order."""
        raise NotImplementedError

    def require(self, *xs: HSet):
        for x in xs:
            if x not in self:
                raise OutsideCarrier(x)


class FiniteForcingNotion(ForcingNotion):
    is_finite = True

    def __init__(self, carrier: HSet, leq: HSet, one: HSet, name: str = ""):
        self.carrier = carrier
        self.relation = leq
        self.one = one
        self.name = name or "finite"
        self._pairs = frozenset(pairs_of(leq))

    @classmethod
    def generated(cls, carrier: HSet, pairs: Iterable[Tuple[HSet, HSet]],
                  one: HSet, name: str = "") -> "FiniteForcingNotion":
        """Preorder generated by ``pairs`` with ``one`` forced on top."""
        elems = carrier.elems
        rel = {(p, p) for p in elems}
        rel.update(pairs)
        rel.update((p, one) for p in elems)
        changed = True
        while changed:
            changed = False
            for a, b in list(rel):
                for c in elems:
                    if (b, c) in rel and (a, c) not in rel:
                        rel.add((a, c))
                        changed = True
        return cls(carrier, relation_from_pairs(rel), one, name)

    def __contains__(self, p) -> bool:
        return p in self.carrier

    def leq(self, p: HSet, q: HSet) -> bool:
        return (p, q) in self._pairs

    def conditions(self, bound: Optional[int] = None) -> List[HSet]:
        elems = list(self.carrier.elems)
        return elems if bound is None else elems[:bound]

    def below(self, p: HSet) -> Iterator[HSet]:
        return (q for q in self.carrier.elems if (q, p) in self._pairs)

    def above(self, p: HSet) -> List[HSet]:
        return [q for q in self.carrier.elems if (p, q) in self._pairs]

    def __repr__(self):
        return f"FiniteForcingNotion({self.name}, |P|={len(self.carrier)})"


class CountableForcingNotion(ForcingNotion):
    """A forcing notion over an enumerated carrier.

    ``below(p)`` must yield every condition below ``p`` eventually (it is
    the search order used to find extensions); ``above(p)``, when given,
    returns the finite set of conditions above ``p``; ``compat`` decides
    compatibility exactly.
    """

    is_finite = False

    def __init__(self, enum: Callable[[int], HSet], contains: Callable[[HSet], bool],
                 leq: Callable[[HSet, HSet], bool], one: HSet, *,
                 below: Optional[Callable[[HSet], Iterable[HSet]]] = None,
                 above: Optional[Callable[[HSet], Iterable[HSet]]] = None,
                 compat: Optional[Callable[[HSet, HSet], bool]] = None,
                 name: str = "countable"):
        self.carrier = Enumeration(enum, contains, name)
        self.one = one
        self.name = name
        self._leq = leq
        self._below = below
        self._above = above
        self._compat = compat

    def __contains__(self, p) -> bool:
        return p in self.carrier

    def leq(self, p: HSet, q: HSet) -> bool:
        return bool(self._leq(p, q))

    def conditions(self, bound: Optional[int] = None) -> List[HSet]:
        if bound is None:
            raise HFError(f"{self.name}: a bound is needed to list conditions")
        return self.carrier.prefix(bound)

    def below(self, p: HSet) -> Iterator[HSet]:
        if self._below is not None:
            return iter(self._below(p))
        return (q for q in self.carrier if self.leq(q, p))

    @property
    def has_above(self) -> bool:
        return self._above is not None

    def above(self, p: HSet) -> List[HSet]:
        if self._above is None:
            raise HFError(f"{self.name}: no enumeration of conditions above {p!r}")
        return list(self._above(p))

    def __repr__(self):
        return f"CountableForcingNotion({self.name})"


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: Tuple[HSet, ...]

    def __str__(self):
        shown = ", ".join(repr(w) for w in self.witness)
        return f"{self.axiom} fails at ({shown})"


def validate_forcing_notion(f: ForcingNotion,
                            bound: int = DEFAULT_BOUND) -> List[Violation]:
    """Check one_in_P, reflexivity, transitivity and one_max.

    Exhaustive for finite notions; over the first ``bound`` conditions for
    countable ones.  An empty list means valid.
    """
    out: List[Violation] = []
    if f.one not in f:
        out.append(Violation("one_in_P", (f.one,)))
    ps = f.conditions(None if f.is_finite else bound)
    for p in ps:
        if not f.leq(p, p):
            out.append(Violation("reflexivity", (p,)))
    for p in ps:
        for q in ps:
            if not f.leq(p, q):
                continue
            for r in ps:
                if f.leq(q, r) and not f.leq(p, r):
                    out.append(Violation("transitivity", (p, q, r)))
    if f.one in f:
        for p in ps:
            if not f.leq(p, f.one):
                out.append(Violation("one_max", (p,)))
    return out


def compat_in(f: ForcingNotion, x: HSet, y: HSet, within: Optional[HSet] = None,
              search_limit: int = DEFAULT_SEARCH_LIMIT) -> bool:
    """Whether ``x`` and ``y`` have a common lower bound in ``within``.

    ``within`` defaults to the whole carrier.
    """
    if within is not None:
        if x not in within or y not in within:
            raise OutsideCarrier(x if x not in within else y, "given set")
        return any(f.leq(d, x) and f.leq(d, y) for d in within.elems)
    f.require(x, y)
    if isinstance(f, CountableForcingNotion) and f._compat is not None:
        return bool(f._compat(x, y))
    cands = f.below(x)
    if not f.is_finite:
        cands = itertools.islice(cands, search_limit)
    return any(f.leq(d, y) for d in cands)


def _meets_below(f: ForcingNotion, d: Subset, p: HSet, search_limit: int) -> bool:
    cands = f.below(p)
    if not f.is_finite:
        cands = itertools.islice(cands, search_limit)
    return any(in_subset(d, x) for x in cands)


def _scan(f: ForcingNotion, bound: Optional[int]) -> List[HSet]:
    if not f.is_finite and bound is None:
        raise HFError("unbounded check over a countable forcing notion; pass bound=")
    return f.conditions(bound)


def dense(f: ForcingNotion, d: Subset, bound: Optional[int] = None,
          search_limit: int = DEFAULT_SEARCH_LIMIT) -> bool:
    """Every condition has a lower bound in ``d``."""
    return all(_meets_below(f, d, p, search_limit) for p in _scan(f, bound))


def dense_witness(f: ForcingNotion, d: Subset, bound: Optional[int] = None,
                  search_limit: int = DEFAULT_SEARCH_LIMIT) -> Optional[HSet]:
    """A condition with no lower bound in ``d``, or ``None`` if ``d`` is dense."""
    for p in _scan(f, bound):
        if not _meets_below(f, d, p, search_limit):
            return p
    return None


def dense_below(f: ForcingNotion, d: Subset, q: HSet, bound: Optional[int] = None,
                search_limit: int = DEFAULT_SEARCH_LIMIT) -> bool:
    return all(_meets_below(f, d, p, search_limit)
               for p in _scan(f, bound) if f.leq(p, q))


def _above(f: ForcingNotion, x: HSet, bound: Optional[int]) -> Iterable[HSet]:
    if f.is_finite:
        return f.above(x)
    if f.has_above:
        return f.above(x)
    return [p for p in _scan(f, bound) if f.leq(x, p)]


def increasing(f: ForcingNotion, s: HSet, bound: Optional[int] = None) -> bool:
    """Upward closed: every condition above a member of ``s`` is in ``s``."""
    return all(p in s for x in s.elems for p in _above(f, x, bound))


def is_filter(f: ForcingNotion, g: HSet, bound: Optional[int] = None) -> bool:
    if not all(p in f for p in g.elems):
        return False
    if not increasing(f, g, bound):
        return False
    return all(compat_in(f, p, q, within=g) for p in g.elems for q in g.elems)


def upclosure(f: ForcingNotion, a: HSet, bound: Optional[int] = None) -> HSet:
    """Conditions lying above some member of ``a``."""
    if f.is_finite:
        return HSet(p for p in f.carrier.elems
                    if any(f.leq(x, p) for x in a.elems))
    acc = set()
    for x in a.elems:
        if x in f:
            acc.update(_above(f, x, bound))
    return HSet(acc)


@dataclass(frozen=True)
class ClosureOutcome:
    filter: Optional[HSet] = None
    incompatible: Optional[Tuple[HSet, HSet]] = None

    @property
    def ok(self) -> bool:
        return self.filter is not None


def closure_compat_filter(f: ForcingNotion, a: HSet,
                          bound: Optional[int] = None) -> ClosureOutcome:
    """Upward closure of a set whose members are pairwise compatible in it.

    Returns the filter, or the first pair of members with no common lower
    bound inside ``a``.
    """
    for x in a.elems:
        if x not in f:
            raise OutsideCarrier(x)
    for p in a.elems:
        for q in a.elems:
            if not compat_in(f, p, q, within=a):
                return ClosureOutcome(incompatible=(p, q))
    g = upclosure(f, a, bound)
    if not is_filter(f, g, bound):
        raise AssertionError("upward closure of a compatible set is not a filter")
    return ClosureOutcome(filter=g)


# -- builtin forcing notions ----------------------------------------------

def chain_notion(k: int) -> FiniteForcingNotion:
    """The ordinal k = {0, ..., k-1} under <=, top k-1."""
    if k < 1:
        raise ValueError("chain needs at least one element")
    carrier = nat_ord(k)
    rel = [(nat_ord(i), nat_ord(j)) for i in range(k) for j in range(i, k)]
    return FiniteForcingNotion(carrier, relation_from_pairs(rel),
                               nat_ord(k - 1), f"chain-{k}")


def antichain_notion(k: int) -> FiniteForcingNotion:
    """k pairwise incompatible atoms 1..k below a top element 0."""
    atoms = [nat_ord(i) for i in range(1, k + 1)]
    carrier = HSet([EMPTY] + atoms)
    rel = [(p, p) for p in carrier.elems] + [(a, EMPTY) for a in atoms]
    return FiniteForcingNotion(carrier, relation_from_pairs(rel), EMPTY,
                               f"antichain-{k}")


def trivial_notion() -> FiniteForcingNotion:
    return FiniteForcingNotion(HSet([EMPTY]), HSet([kpair(EMPTY, EMPTY)]),
                               EMPTY, "trivial")


_BITS = (nat_ord(0), nat_ord(1))


def cohen_condition(values: dict) -> HSet:
    """The finite partial function {n: b} as a set of pairs <n, b>."""
    return HSet(kpair(nat_ord(n), _BITS[b]) for n, b in values.items())


def cohen_dict(p: HSet) -> Optional[dict]:
    """Inverse of :func:`cohen_condition`; ``None`` if ``p`` is not a condition."""
    out = {}
    for z in p.elems:
        pr = unpair(z)
        if pr is None:
            return None
        n, b = pr
        k = len(n.elems)
        if n != nat_ord(k) or b not in _BITS or k in out:
            return None
        out[k] = _BITS.index(b)
    return out


def _digits3(k: int) -> Iterator[Tuple[int, int]]:
    pos = 0
    while k:
        k, d = divmod(k, 3)
        yield pos, d
        pos += 1


def _cohen_at(k: int) -> HSet:
    return cohen_condition({i: d - 1 for i, d in _digits3(k) if d})


def _cohen_below(p: HSet) -> Iterator[HSet]:
    # base-3 digit i of k fixes the i-th coordinate outside dom(p)
    base = cohen_dict(p)
    for k in itertools.count():
        ext = dict(base)
        slot = -1
        for _, d in _digits3(k):
            slot += 1
            while slot in base:
                slot += 1
            if d:
                ext[slot] = d - 1
        yield cohen_condition(ext)


def _cohen_above(p: HSet) -> List[HSet]:
    elems = p.elems
    return [HSet(e for i, e in enumerate(elems) if mask >> i & 1)
            for mask in range(1 << len(elems))]


def _cohen_compat(p: HSet, q: HSet) -> bool:
    a, b = cohen_dict(p), cohen_dict(q)
    return all(b.get(n, v) == v for n, v in a.items())


def cohen_notion() -> CountableForcingNotion:
    """Finite partial functions from the naturals to 2, ordered by reverse
    inclusion, with the empty function on top."""
    return CountableForcingNotion(
        _cohen_at, lambda p: cohen_dict(p) is not None,
        lambda p, q: q.issubset(p), EMPTY,
        below=_cohen_below, above=_cohen_above, compat=_cohen_compat,
        name="cohen")


def cohen_dense(n: int) -> Callable[[HSet], bool]:
    """D_n: conditions whose domain contains n."""
    key = nat_ord(n)

    def member(q: HSet) -> bool:
        return any(unpair(z)[0] == key for z in q.elems)

    member.__name__ = f"cohen_D{n}"
    return member
