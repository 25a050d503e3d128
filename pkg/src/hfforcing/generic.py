"""Generic filters: the Rasiowa-Sikorski construction and M-genericity.

A generic filter is never a finished object here.  :func:`rasiowa_sikorski`
returns a :class:`GenericPrefix`: the first ``steps + 1`` conditions of the
descending sequence, the upward closure of that finite prefix, and for each
dense set ``D_n`` (``n < steps``) the condition that meets it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from .choice import DEFAULT_SEARCH_LIMIT, sequence_dc
from .errors import DensityError, LocaleError, OutsideCarrier, TotalityError
from .order import (ForcingNotion, Subset, Violation, dense, dense_witness,
                    in_subset, is_filter, upclosure)
from .sets import HSet, is_transset, transset_witness

__all__ = [
    "DenseFamily", "GenericPrefix", "UpwardClosure", "MGenericReport",
    "rs_relation", "rasiowa_sikorski", "d_generic_check",
    "make_countable_family", "generic_filter_existence", "check_forcing_locale",
]


class DenseFamily:
    """An indexed family ``n -> D_n`` of subsets of the carrier.

    A finite list is read cyclically, ``D_n = items[n % len(items)]``.
    """

    def __init__(self, at: Union[Callable[[int], Subset], Sequence[Subset]],
                 name: str = "family"):
        if callable(at):
            self._at = at
        else:
            items = list(at)
            if not items:
                raise ValueError("a dense family needs at least one set")
            self._at = lambda n: items[n % len(items)]
        self.name = name
        self._cache: Dict[int, Subset] = {}

    def at(self, n: int) -> Subset:
        if n not in self._cache:
            self._cache[n] = self._at(n)
        return self._cache[n]

    __getitem__ = at

    def first_violation(self, f: ForcingNotion, upto: int,
                        bound: Optional[int] = None) -> Optional[Tuple[int, HSet]]:
        """``(n, p)`` for the first ``D_n`` (n < upto) not dense at ``p``."""
        for n in range(upto):
            d = self.at(n)
            if isinstance(d, HSet):
                stray = [x for x in d.elems if x not in f]
                if stray:
                    return n, stray[0]
            p = dense_witness(f, d, bound)
            if p is not None:
                return n, p
        return None

    def __repr__(self):
        return f"DenseFamily({self.name})"


class UpwardClosure:
    """Membership-only view of the upward closure of finitely many conditions."""

    def __init__(self, f: ForcingNotion, generators: Sequence[HSet]):
        self.notion = f
        self.generators = tuple(generators)

    def __contains__(self, p) -> bool:
        return p in self.notion and any(
            self.notion.leq(a, p) for a in self.generators)

    __call__ = __contains__

    def __repr__(self):
        return f"UpwardClosure({len(self.generators)} generators)"


@dataclass(frozen=True)
class GenericPrefix:
    conditions: Tuple[HSet, ...]
    filter_prefix: Union[HSet, UpwardClosure]
    certificates: Tuple[HSet, ...]

    @property
    def steps(self) -> int:
        return len(self.conditions) - 1

    def in_filter(self, p: HSet) -> bool:
        return p in self.filter_prefix

    def to_json(self) -> dict:
        from .syntax import to_json
        out = {
            "conditions": [to_json(c) for c in self.conditions],
            "certificates": [to_json(c) for c in self.certificates],
        }
        if isinstance(self.filter_prefix, HSet):
            out["filter_prefix"] = to_json(self.filter_prefix)
        return out


def rs_relation(f: ForcingNotion, d: DenseFamily, m: int) -> Callable[[HSet, HSet], bool]:
    """Relation m: x to y when y is below x and lies in D_{pred(m)}."""
    idx = max(m - 1, 0)

    def related(x: HSet, y: HSet) -> bool:
        return (x in f and y in f and f.leq(y, x)
                and in_subset(d.at(idx), y))

    return related


def rasiowa_sikorski(f: ForcingNotion, d: DenseFamily, p: HSet, steps: int,
                     search_limit: int = DEFAULT_SEARCH_LIMIT) -> GenericPrefix:
    """Descending conditions p = p_0 >= p_1 >= ... with p_{n+1} in D_n."""
    if p not in f:
        raise OutsideCarrier(p)
    if steps < 0:
        raise ValueError("steps must be non-negative")
    if f.is_finite:
        bad = d.first_violation(f, steps)
        if bad is not None:
            raise DensityError(*bad)
    stream = sequence_dc(f.carrier, lambda m: rs_relation(f, d, m), p,
                         candidates=f.below, search_limit=search_limit)
    try:
        conds = tuple(stream.prefix(steps))
    except TotalityError as err:
        raise DensityError(err.step, err.point) from None
    if f.is_finite:
        filt: Union[HSet, UpwardClosure] = upclosure(f, HSet(conds))
    else:
        filt = UpwardClosure(f, conds)
    certs = tuple(conds[n + 1] for n in range(steps))
    for n, c in enumerate(certs):
        if not (in_subset(d.at(n), c) and c in filt):
            raise AssertionError(f"certificate for D_{n} is not in D_{n} and G")
    return GenericPrefix(conds, filt, certs)


def d_generic_check(f: ForcingNotion, d: DenseFamily, g: HSet, upto: int,
                    bound: Optional[int] = None) -> bool:
    """``g`` is a filter meeting D_0, ..., D_{upto-1}."""
    if not is_filter(f, g, bound):
        return False
    return all(any(in_subset(d.at(n), x) for x in g.elems) for n in range(upto))


def make_countable_family(m: HSet, f: ForcingNotion) -> DenseFamily:
    """Index the members of ``m`` and keep those that are dense subsets of P.

    Index n names the n-th member of ``m`` in canonical order; members that
    are not dense subsets of P, and indices past the end, become P itself.
    """
    if not f.is_finite:
        raise ValueError("make_countable_family needs a finite forcing notion")
    members = m.elems
    carrier = f.carrier

    def at(n: int) -> Subset:
        if n < len(members):
            e = members[n]
            if e.issubset(carrier) and dense(f, e):
                return e
        return carrier

    return DenseFamily(at, "model-dense")


def check_forcing_locale(m: HSet, f: ForcingNotion) -> List[Violation]:
    """Violations of: M transitive, P in M, leq in M."""
    out = []
    w = transset_witness(m)
    if w is not None:
        out.append(Violation("Transset(M)", w))
    if not f.is_finite:
        out.append(Violation("finite forcing notion", ()))
        return out
    if f.carrier not in m:
        out.append(Violation("P in M", (f.carrier,)))
    if f.relation not in m:
        out.append(Violation("leq in M", (f.relation,)))
    return out


@dataclass
class MGenericReport:
    """Which dense subsets of P lying in M the filter prefix meets."""

    dense_in_m: List[HSet] = field(default_factory=list)
    witnesses: Dict[HSet, Optional[HSet]] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(w is not None for w in self.witnesses.values())

    @property
    def missed(self) -> List[HSet]:
        return [d for d, w in self.witnesses.items() if w is None]


def generic_filter_existence(m: HSet, f: ForcingNotion, p: HSet,
                             steps: Optional[int] = None
                             ) -> Tuple[GenericPrefix, MGenericReport]:
    """Run Rasiowa-Sikorski on the dense sets of a finite transitive model.

    ``steps`` defaults to ``len(m)``, which visits every member of ``m``.
    """
    violations = check_forcing_locale(m, f)
    if violations:
        raise LocaleError(violations)
    if p not in f:
        raise OutsideCarrier(p)
    if steps is None:
        steps = len(m)
    family = make_countable_family(m, f)
    prefix = rasiowa_sikorski(f, family, p, steps)
    g = prefix.filter_prefix
    report = MGenericReport()
    for e in m.elems:
        if e.issubset(f.carrier) and dense(f, e):
            report.dense_in_m.append(e)
            hits = [x for x in e.elems if x in g]
            report.witnesses[e] = hits[0] if hits else None
    return prefix, report
