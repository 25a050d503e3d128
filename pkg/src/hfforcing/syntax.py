"""Set-literal grammar and JSON encoding for :class:`HSet`.

Grammar::

    set   := '0' | '{' '}' | '{' set (',' set)* '}' | '<' set ',' set '>' | digits

Decimal numerals denote von Neumann ordinals and ``<a,b>`` is a Kuratowski
pair.  The canonical printer emits ``0`` for the empty set and braces for
everything else; ``sugar=True`` additionally folds numerals and pairs.
"""

from __future__ import annotations

import json
from typing import Any, List

from .errors import ParseError
from .sets import HSet, EMPTY, kpair, nat_ord, ord_value, unpair

__all__ = ["parse_set", "parse_sets", "format_set", "to_json", "from_json",
           "dumps", "loads"]


class _Reader:
    def __init__(self, text: str):
        self.text = text
        self.i = 0

    def skip(self):
        t = self.text
        while self.i < len(t) and t[self.i].isspace():
            self.i += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.i] if self.i < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            got = self.peek() or "end of input"
            raise ParseError(f"expected {ch!r}, got {got!r}", self.i, self.text)
        self.i += 1

    def read(self) -> HSet:
        c = self.peek()
        if c == "{":
            self.i += 1
            if self.peek() == "}":
                self.i += 1
                return EMPTY
            items = [self.read()]
            while self.peek() == ",":
                self.i += 1
                items.append(self.read())
            self.expect("}")
            return HSet(items)
        if c == "<":
            self.i += 1
            a = self.read()
            self.expect(",")
            b = self.read()
            self.expect(">")
            return kpair(a, b)
        if c.isdigit():
            start = self.i
            while self.i < len(self.text) and self.text[self.i].isdigit():
                self.i += 1
            return nat_ord(int(self.text[start:self.i]))
        got = c or "end of input"
        raise ParseError(f"unexpected {got!r}", self.i, self.text)


def parse_set(text: str) -> HSet:
    r = _Reader(text)
    x = r.read()
    if r.peek():
        raise ParseError("trailing input", r.i, text)
    return x


def parse_sets(text: str) -> List[HSet]:
    """Parse a comma-separated sequence of literals (possibly empty)."""
    r = _Reader(text)
    out: List[HSet] = []
    if not r.peek():
        return out
    out.append(r.read())
    while r.peek() == ",":
        r.i += 1
        out.append(r.read())
    if r.peek():
        raise ParseError("trailing input", r.i, text)
    return out


def format_set(x: HSet, sugar: bool = False) -> str:
    if not x.elems:
        return "0"
    if sugar:
        n = ord_value(x)
        if n is not None:
            return str(n)
        p = unpair(x)
        if p is not None:
            return f"<{format_set(p[0], True)},{format_set(p[1], True)}>"
    return "{" + ",".join(format_set(e, sugar) for e in x.elems) + "}"


def to_json(x: HSet) -> list:
    return [to_json(e) for e in x.elems]


def from_json(obj: Any) -> HSet:
    if isinstance(obj, list):
        return HSet(from_json(e) for e in obj)
    if isinstance(obj, int) and not isinstance(obj, bool) and obj >= 0:
        return nat_ord(obj)
    if isinstance(obj, str):
        return parse_set(obj)
    raise ValueError(f"cannot read a set from JSON value {obj!r}")


def dumps(x: HSet) -> str:
    return json.dumps(to_json(x), separators=(",", ":"))


def loads(text: str) -> HSet:
    return from_json(json.loads(text))
