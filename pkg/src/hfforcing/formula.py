"""First-order formulas over membership and equality.

Variables are de Bruijn indices: inside ``k`` binders, index ``i < k``
refers to the ``i``-th enclosing binder (innermost is 0) and index ``k + j``
refers to the ``j``-th free variable, i.e. ``env[j]``.

:class:`InClass` is the guard that relativization inserts; it is evaluated
against the class parameter passed to :func:`sat`, which may be an explicit
finite universe (an :class:`HSet`) or any decidable predicate.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Union

from .errors import ArityError, HFError, ParseError, UnboundIdentifier
from .sets import HSet

__all__ = [
    "Formula", "Member", "Equal", "InClass", "Neg", "And", "Or", "Implies",
    "Iff", "Forall", "Exists", "parse_formula", "free_names", "format_formula",
    "relativize", "sat", "free_arity", "foundation_ax", "upair", "upair_ax",
    "absolute_between", "PAIRING_FORMULA", "FOUNDATION_SENTENCE",
]

ClassParam = Union[HSet, Callable[[HSet], bool]]


class Formula:
    __slots__ = ()

    def __str__(self):
        return format_formula(self)


@dataclass(frozen=True)
class Member(Formula):
    left: int
    right: int


@dataclass(frozen=True)
class Equal(Formula):
    left: int
    right: int


@dataclass(frozen=True)
class InClass(Formula):
    var: int


@dataclass(frozen=True)
class Neg(Formula):
    body: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Iff(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Forall(Formula):
    body: Formula


@dataclass(frozen=True)
class Exists(Formula):
    body: Formula


_BINARY = (And, Or, Implies, Iff)


def free_arity(phi: Formula, depth: int = 0) -> int:
    """Number of free-variable slots the formula refers to."""
    if isinstance(phi, (Member, Equal)):
        return max(phi.left - depth + 1, phi.right - depth + 1, 0)
    if isinstance(phi, InClass):
        return max(phi.var - depth + 1, 0)
    if isinstance(phi, Neg):
        return free_arity(phi.body, depth)
    if isinstance(phi, _BINARY):
        return max(free_arity(phi.left, depth), free_arity(phi.right, depth))
    if isinstance(phi, (Forall, Exists)):
        return free_arity(phi.body, depth + 1)
    raise TypeError(f"not a formula: {phi!r}")


# -- parsing ---------------------------------------------------------------

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<iff><->|↔)
  | (?P<imp>->|→)
  | (?P<sym>[~&|=().¬∧∨∈∀∃])
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
""", re.VERBOSE)

_KEYWORDS = {"forall", "exists", "in"}
_SYM_ALIASES = {"¬": "~", "∧": "&", "∨": "|", "∈": "in", "∀": "forall",
                "∃": "exists", "↔": "<->", "→": "->"}


def _tokenize(text: str):
    toks = []
    i = 0
    while i < len(text):
        m = _TOKEN.match(text, i)
        if m is None:
            raise ParseError(f"unexpected character {text[i]!r}", i, text)
        kind = m.lastgroup
        val = m.group()
        if kind != "ws":
            val = _SYM_ALIASES.get(val, val)
            if kind != "ident" or val in _KEYWORDS:
                kind = val
            toks.append((kind, val, i))
        i = m.end()
    toks.append(("eof", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, free_vars: Sequence[str]):
        self.text = text
        self.toks = _tokenize(text)
        self.k = 0
        # scope[-1] is the innermost binder; free vars sit below all binders
        self.scope: List[str] = list(reversed(list(free_vars)))

    @property
    def cur(self):
        return self.toks[self.k]

    def take(self, kind: str):
        tok = self.cur
        if tok[0] != kind:
            shown = tok[1] or "end of input"
            raise ParseError(f"expected {kind!r}, got {shown!r}", tok[2], self.text)
        self.k += 1
        return tok

    def index_of(self, tok) -> int:
        name = tok[1]
        for depth, bound in enumerate(reversed(self.scope)):
            if bound == name:
                return depth
        raise UnboundIdentifier(f"unbound identifier {name!r}", tok[2], self.text)

    def formula(self) -> Formula:
        return self.iff()

    def iff(self) -> Formula:
        left = self.imp()
        if self.cur[0] == "<->":
            self.k += 1
            return Iff(left, self.iff())
        return left

    def imp(self) -> Formula:
        left = self.disj()
        if self.cur[0] == "->":
            self.k += 1
            return Implies(left, self.imp())
        return left

    def disj(self) -> Formula:
        left = self.conj()
        if self.cur[0] == "|":
            self.k += 1
            return Or(left, self.disj())
        return left

    def conj(self) -> Formula:
        left = self.unary()
        if self.cur[0] == "&":
            self.k += 1
            return And(left, self.conj())
        return left

    def unary(self) -> Formula:
        kind = self.cur[0]
        if kind == "~":
            self.k += 1
            return Neg(self.unary())
        if kind in ("forall", "exists"):
            self.k += 1
            name = self.take("ident")[1]
            self.take(".")
            self.scope.append(name)
            try:
                body = self.formula()
            finally:
                self.scope.pop()
            return Forall(body) if kind == "forall" else Exists(body)
        if kind == "(":
            self.k += 1
            inner = self.formula()
            self.take(")")
            return inner
        return self.atom()

    def atom(self) -> Formula:
        left = self.take("ident")
        if left[1] == "C" and self.cur[0] == "(":
            self.k += 1
            var = self.take("ident")
            self.take(")")
            return InClass(self.index_of(var))
        op = self.cur
        if op[0] not in ("in", "="):
            shown = op[1] or "end of input"
            raise ParseError(f"expected 'in' or '=', got {shown!r}", op[2], self.text)
        self.k += 1
        right = self.take("ident")
        i, j = self.index_of(left), self.index_of(right)
        return Member(i, j) if op[0] == "in" else Equal(i, j)


def parse_formula(text: str, free_vars: Sequence[str] = ()) -> Formula:
    """Parse surface syntax; ``free_vars[j]`` becomes free slot ``j``.

    >>> parse_formula("x in y", ["x", "y"])
    Member(left=0, right=1)
    """
    p = _Parser(text, free_vars)
    phi = p.formula()
    if p.cur[0] != "eof":
        raise ParseError(f"unexpected {p.cur[1]!r}", p.cur[2], text)
    return phi


class _FreeCollector(_Parser):
    def __init__(self, text: str):
        super().__init__(text, ())
        self.found: List[str] = []

    def index_of(self, tok) -> int:
        try:
            return super().index_of(tok)
        except UnboundIdentifier:
            self.scope.insert(0, tok[1])
            self.found.append(tok[1])
            return super().index_of(tok)


def free_names(text: str) -> List[str]:
    """Identifiers occurring free in ``text``, in order of first occurrence."""
    p = _FreeCollector(text)
    p.formula()
    return p.found


# -- printing --------------------------------------------------------------

_PREC = {Iff: 1, Implies: 2, Or: 3, And: 4}
_OPS = {Iff: "<->", Implies: "->", Or: "|", And: "&"}


def format_formula(phi: Formula, free_vars: Sequence[str] = ()) -> str:
    """Inverse of :func:`parse_formula` for the same ``free_vars``."""
    names = list(reversed(list(free_vars)))
    arity = free_arity(phi)
    while len(names) < arity:
        names.insert(0, f"v{len(names)}")
    used = set(names)
    counter = [0]

    def fresh() -> str:
        while True:
            name = f"w{counter[0]}"
            counter[0] += 1
            if name not in used:
                return name

    def var(i: int) -> str:
        return names[-1 - i]

    def go(f: Formula, ctx: int) -> str:
        # ctx: minimum precedence a compound subterm needs to avoid parens
        if isinstance(f, Member):
            return f"{var(f.left)} in {var(f.right)}"
        if isinstance(f, Equal):
            return f"{var(f.left)} = {var(f.right)}"
        if isinstance(f, InClass):
            return f"C({var(f.var)})"
        if isinstance(f, Neg):
            return "~" + go(f.body, 5)
        if isinstance(f, (Forall, Exists)):
            name = fresh()
            names.append(name)
            try:
                body = go(f.body, 0)
            finally:
                names.pop()
            word = "forall" if isinstance(f, Forall) else "exists"
            s = f"{word} {name}. {body}"
            return s if ctx == 0 else f"({s})"
        prec = _PREC[type(f)]
        s = f"{go(f.left, prec + 1)} {_OPS[type(f)]} {go(f.right, prec)}"
        return s if prec >= ctx else f"({s})"

    return go(phi, 0)


# -- relativization and evaluation ----------------------------------------

def relativize(phi: Formula) -> Formula:
    """Guard every quantifier with the class predicate ``C``."""
    if isinstance(phi, (Member, Equal, InClass)):
        return phi
    if isinstance(phi, Neg):
        return Neg(relativize(phi.body))
    if isinstance(phi, _BINARY):
        return type(phi)(relativize(phi.left), relativize(phi.right))
    if isinstance(phi, Forall):
        return Forall(Implies(InClass(0), relativize(phi.body)))
    if isinstance(phi, Exists):
        return Exists(And(InClass(0), relativize(phi.body)))
    raise TypeError(f"not a formula: {phi!r}")


def _class_test(cls: Optional[ClassParam]) -> Callable[[HSet], bool]:
    if cls is None:
        def missing(_):
            raise HFError("formula mentions C(...) but no class was supplied")
        return missing
    if isinstance(cls, HSet):
        return cls.__contains__
    return cls


def sat(u: HSet, phi: Formula, env: Sequence[HSet] = (),
        cls: Optional[ClassParam] = None) -> bool:
    """Truth of ``phi`` when quantifiers range over the members of ``u``.

    ``env`` values may lie outside ``u``.
    """
    need = free_arity(phi)
    if len(env) < need:
        raise ArityError(f"formula has {need} free variables, env has {len(env)}")
    domain = u.elems
    in_class = _class_test(cls)
    # stack[-1 - i] is variable i
    stack = list(reversed(list(env)))

    def ev(f: Formula) -> bool:
        t = type(f)
        if t is Member:
            return stack[-1 - f.left] in stack[-1 - f.right]
        if t is Equal:
            return stack[-1 - f.left] == stack[-1 - f.right]
        if t is InClass:
            return bool(in_class(stack[-1 - f.var]))
        if t is Neg:
            return not ev(f.body)
        if t is And:
            return ev(f.left) and ev(f.right)
        if t is Or:
            return ev(f.left) or ev(f.right)
        if t is Implies:
            return (not ev(f.left)) or ev(f.right)
        if t is Iff:
            return ev(f.left) == ev(f.right)
        if t is Forall or t is Exists:
            want = t is Exists
            for w in domain:
                stack.append(w)
                try:
                    if ev(f.body) == want:
                        return want
                finally:
                    stack.pop()
            return not want
        raise TypeError(f"not a formula: {f!r}")

    return ev(phi)


PAIRING_FORMULA = parse_formula("forall w. w in z <-> (w = x | w = y)",
                                ["x", "y", "z"])

FOUNDATION_SENTENCE = parse_formula(
    "forall x. (exists y. y in x) -> "
    "(exists y. y in x & ~(exists z. z in x & z in y))")


def foundation_ax(m: HSet) -> bool:
    """Relativized foundation evaluated over the finite universe ``m``."""
    if not isinstance(m, HSet):
        raise TypeError("foundation_ax needs an explicit finite universe")
    return sat(m, FOUNDATION_SENTENCE)


def upair(c: ClassParam, a: HSet, b: HSet, z: HSet) -> bool:
    """``a, b in z`` and every member of ``z`` lying in ``c`` is ``a`` or ``b``."""
    if a not in z or b not in z:
        return False
    in_c = _class_test(c)
    return all(x == a or x == b for x in z.elems if in_c(x))


def upair_ax(c: HSet) -> bool:
    return upair_ax_witness(c) is None


def upair_ax_witness(c: HSet):
    """First pair (x, y) of members of ``c`` with no pair-set inside ``c``."""
    if not isinstance(c, HSet):
        raise TypeError("upair_ax needs an explicit finite universe")
    for x in c.elems:
        for y in c.elems:
            if not any(upair(c, x, y, z) for z in c.elems):
                return x, y
    return None


def absolute_between(n: HSet, m: HSet, phi: Formula,
                     env: Sequence[HSet]) -> bool:
    """Whether ``phi`` has the same truth value in ``n`` and ``m`` at ``env``."""
    if not n.issubset(m):
        raise ValueError("absolute_between needs n to be a subset of m")
    for v in env:
        if v not in n:
            raise ValueError(f"parameter {v!r} is not in n")
    return sat(n, phi, env) == sat(m, phi, env)
