"""Names, their valuation, and the generic extension of a finite model.

A name is any set; its members that are pairs <sigma, p> with p a
condition contribute ``val(G, sigma)`` to ``val(G, tau)`` whenever p is in G.
Valuation and check-names are both computed by :func:`wfrec`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .choice import wfrec
from .errors import LocaleError, OutsideCarrier, PreconditionError
from .formula import upair_ax_witness
from .generic import check_forcing_locale
from .order import FiniteForcingNotion, Violation
from .sets import (HSet, eclose, kpair, metered, pairs_of, relation_from_pairs)

__all__ = [
    "ForcingData", "Verdict", "GenericExtension", "PairingWitness",
    "ExtraAssumptionsReport", "edrel", "wf_check", "hv", "val", "check",
    "gen_ext", "trans_gen_ext_check", "g_dot", "val_g_dot", "pairing_witness",
    "pairing_axiom_instance", "check_extra_assms", "upair_ax_gen_ext",
]


class ForcingData:
    """A finite transitive set ``m`` together with a forcing notion in it."""

    def __init__(self, m: HSet, notion: FiniteForcingNotion):
        violations = self.violations(m, notion)
        if violations:
            raise LocaleError(violations)
        self.m = m
        self.notion = notion

    @staticmethod
    def violations(m: HSet, notion) -> List[Violation]:
        out = check_forcing_locale(m, notion)
        if notion.is_finite and notion.one not in notion.carrier:
            out.append(Violation("one in P", (notion.one,)))
        return out

    @classmethod
    def minimal(cls, notion: FiniteForcingNotion, *extra: HSet) -> "ForcingData":
        """The least transitive set containing P, leq and ``extra``."""
        return cls(eclose(HSet((notion.carrier, notion.relation) + extra)), notion)

    @property
    def P(self) -> HSet:
        return self.notion.carrier

    @property
    def leq(self) -> HSet:
        return self.notion.relation

    @property
    def one(self) -> HSet:
        return self.notion.one

    def __repr__(self):
        return f"ForcingData(|M|={len(self.m)}, {self.notion!r})"


@dataclass(frozen=True)
class Verdict:
    ok: bool
    witness: Optional[tuple] = None

    def __bool__(self):
        return self.ok


@metered
def edrel(a: HSet) -> HSet:
    """Pairs <x, y> of members of ``a`` with x in the domain of y."""
    return relation_from_pairs(
        (x, y) for y in a.elems for x, _ in pairs_of(y) if x in a)


def wf_check(r: HSet) -> bool:
    """Cycle-freeness of a finite relation, by peeling off minimal points."""
    preds: Dict[HSet, set] = {}
    succs: Dict[HSet, set] = {}
    for x, y in pairs_of(r):
        preds.setdefault(y, set()).add(x)
        preds.setdefault(x, set())
        succs.setdefault(x, set()).add(y)
    pending = {v: len(ps) for v, ps in preds.items()}
    ready = [v for v, k in pending.items() if k == 0]
    removed = 0
    while ready:
        v = ready.pop()
        removed += 1
        for w in succs.get(v, ()):
            pending[w] -= 1
            if pending[w] == 0:
                ready.append(w)
    return removed == len(pending)


def _name_domain(y: HSet) -> List[HSet]:
    seen = {}
    for x, _ in pairs_of(y):
        seen[x] = None
    return list(seen)


def hv(P: HSet, g: HSet, y: HSet, values: Dict[HSet, HSet]) -> HSet:
    """{values[x] : x in domain(y), some p in P with <x, p> in y and p in g}."""
    return HSet(values[x] for x, p in pairs_of(y) if p in P and p in g)


def _require_subset(g: HSet, P: HSet):
    for p in g.elems:
        if p not in P:
            raise OutsideCarrier(p, "forcing notion")


class _Valuation:
    def __init__(self, fd: ForcingData, g: HSet, over: str = "name"):
        _require_subset(g, fd.P)
        self.fd = fd
        self.g = g
        self.memo: Dict[HSet, HSet] = {}
        P = fd.P
        self.h = lambda y, f: hv(P, g, y, f)
        if over == "name":
            self.rel = _name_domain
        elif over == "model":
            self.rel = edrel(eclose(fd.m))
        else:
            raise ValueError(f"unknown recursion range {over!r}")
        self.over = over

    def __call__(self, tau: HSet) -> HSet:
        if self.over == "model" and tau not in self.fd.m:
            raise PreconditionError("model-range valuation needs the name in M")
        return wfrec(self.rel, tau, self.h, self.memo)


@metered
def val(fd: ForcingData, g: HSet, tau: HSet, over: str = "name") -> HSet:
    """Value of the name ``tau`` under ``g``.

    ``over="name"`` recurses along edrel of the closure of ``{tau}``;
    ``over="model"`` uses edrel(eclose(M)) and requires ``tau`` in M.
    """
    return _Valuation(fd, g, over)(tau)


@metered
def check(fd, x: HSet) -> HSet:
    """Canonical name {<check(y), one> : y in x}; ``fd`` supplies ``one``."""
    one = fd.one
    return wfrec(lambda z: z.elems, x,
                 lambda z, f: HSet(kpair(f[y], one) for y in z.elems))


@dataclass(frozen=True)
class GenericExtension:
    value: HSet
    names: Tuple[Tuple[HSet, HSet], ...]

    def name_of(self, x: HSet) -> Optional[HSet]:
        """Some name in M whose value is ``x``."""
        for tau, v in self.names:
            if v == x:
                return tau
        return None

    def __contains__(self, x) -> bool:
        return x in self.value


@metered
def gen_ext(fd: ForcingData, g: HSet) -> GenericExtension:
    """{val(g, tau) : tau in M} together with the name of each value."""
    v = _Valuation(fd, g)
    table = tuple((tau, v(tau)) for tau in fd.m.elems)
    return GenericExtension(HSet(val_ for _, val_ in table), table)


def trans_gen_ext_check(fd: ForcingData, g: HSet) -> Verdict:
    ext = gen_ext(fd, g).value
    for x in ext.elems:
        for y in x.elems:
            if y not in ext:
                return Verdict(False, (x, y))
    return Verdict(True)


def g_dot(fd) -> HSet:
    """The name {<check(p), p> : p in P}."""
    return HSet(kpair(check(fd, p), p) for p in fd.P.elems)


def val_g_dot(fd: ForcingData, g: HSet) -> HSet:
    """val(g, G_dot); equals ``g`` whenever g is a subset of P containing one."""
    return val(fd, g, g_dot(fd))


@dataclass(frozen=True)
class PairingWitness:
    sigma: HSet
    value: HSet
    sigma_in_m: bool


def pairing_witness(fd: ForcingData, g: HSet, tau: HSet, rho: HSet) -> PairingWitness:
    """The name {<tau, one>, <rho, one>} and its value {val tau, val rho}."""
    if fd.one not in g:
        raise PreconditionError("pairing needs one in G")
    for t in (tau, rho):
        if t not in fd.m:
            raise PreconditionError(f"{t!r} is not in M")
    sigma = HSet((kpair(tau, fd.one), kpair(rho, fd.one)))
    v = _Valuation(fd, g)
    value = v(sigma)
    if value != HSet((v(tau), v(rho))):
        raise AssertionError("val of the pairing name is not the pair of values")
    return PairingWitness(sigma, value, sigma in fd.m)


def pairing_axiom_instance(fd: ForcingData, g: HSet, tau: HSet, rho: HSet,
                           sats_upair: Optional[bool] = None) -> Verdict:
    """If M satisfies pairing and sigma is in M, the pair lands in M[G].

    The verdict is vacuously true when a hypothesis fails; the witness then
    records which one.
    """
    if sats_upair is None:
        sats_upair = upair_ax_witness(fd.m) is None
    pw = pairing_witness(fd, g, tau, rho)
    if not sats_upair:
        return Verdict(True, ("vacuous", "upair_ax(M) fails"))
    if not pw.sigma_in_m:
        return Verdict(True, ("vacuous", "sigma not in M"))
    ext = gen_ext(fd, g)
    return Verdict(pw.value in ext, (pw.sigma, pw.value))


def upair_ax_gen_ext(fd: ForcingData, g: HSet) -> Verdict:
    w = upair_ax_witness(gen_ext(fd, g).value)
    return Verdict(w is None, w)


@dataclass
class ExtraAssumptionsReport:
    check_in_m: Dict[HSet, bool] = field(default_factory=dict)
    sats_upair_ax: bool = False
    upair_witness: Optional[Tuple[HSet, HSet]] = None
    repl_check_pair_closed: bool = False
    missing_check_pairs: List[HSet] = field(default_factory=list)
    g_dot_in_m: bool = False

    @property
    def check_in_m_all(self) -> bool:
        return all(self.check_in_m.values())

    @property
    def check_failures(self) -> List[HSet]:
        return [x for x, ok in self.check_in_m.items() if not ok]

    def lines(self) -> List[str]:
        def mark(b):
            return "PASS" if b else "FAIL"
        out = [f"check_in_M: {mark(self.check_in_m_all)}"]
        if not self.check_in_m_all:
            out[-1] += f" (first failure at {self.check_failures[0]!r})"
        out.append(f"sats_upair_ax: {mark(self.sats_upair_ax)}")
        if self.upair_witness:
            a, b = self.upair_witness
            out[-1] += f" (no pair for {a!r}, {b!r})"
        out.append(f"repl_check_pair: {mark(self.repl_check_pair_closed)}")
        out.append(f"G_dot_in_M: {mark(self.g_dot_in_m)}")
        return out


@metered
def check_extra_assms(fd: ForcingData) -> ExtraAssumptionsReport:
    rep = ExtraAssumptionsReport()
    for x in fd.m.elems:
        rep.check_in_m[x] = check(fd, x) in fd.m
    rep.upair_witness = upair_ax_witness(fd.m)
    rep.sats_upair_ax = rep.upair_witness is None
    pairs = [kpair(check(fd, p), p) for p in fd.P.elems]
    rep.missing_check_pairs = [z for z in pairs if z not in fd.m]
    rep.repl_check_pair_closed = not rep.missing_check_pairs
    rep.g_dot_in_m = g_dot(fd) in fd.m
    return rep
