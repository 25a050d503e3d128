"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


__all__ = [
    "HFError", "BudgetExceeded", "ParseError", "UnboundIdentifier", "ArityError",
    "OutsideCarrier", "EmptyChoice", "TotalityError", "NotWellFounded",
    "DensityError", "LocaleError", "PreconditionError",
]


class HFError(Exception):
    """Base class for domain errors raised by hfforcing."""


class BudgetExceeded(HFError):
    def __init__(self, limit: int):
        super().__init__(f"node budget of {limit} constructed sets exceeded")
        self.limit = limit


class ParseError(HFError):
    def __init__(self, message: str, pos: int, text: str = ""):
        where = f" at position {pos}"
        if text:
            where += f" near {text[pos:pos + 12]!r}"
        super().__init__(message + where)
        self.pos = pos


class UnboundIdentifier(ParseError):
    pass


class ArityError(HFError):
    pass


class OutsideCarrier(HFError):
    def __init__(self, element, what: str = "carrier"):
        super().__init__(f"{element!r} is not in the {what}")
        self.element = element


class EmptyChoice(HFError):
    """A selector was asked to choose from the empty set."""


class TotalityError(HFError):
    """A relation has no successor at some point of a dependent-choice run."""

    def __init__(self, step: int, point):
        super().__init__(f"no successor for {point!r} at step {step}")
        self.step = step
        self.point = point


class NotWellFounded(HFError):
    def __init__(self, cycle):
        shown = " -> ".join(repr(c) for c in cycle)
        super().__init__(f"relation is not well-founded; cycle: {shown}")
        self.cycle = tuple(cycle)


class DensityError(HFError):
    def __init__(self, index: int, condition):
        super().__init__(
            f"dense set D_{index} has no element below {condition!r}")
        self.index = index
        self.condition = condition


class LocaleError(HFError):
    """One or more structural assumptions on a model/forcing notion fail."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


class PreconditionError(HFError, ValueError):
    """An operation was called outside the hypotheses it is stated under."""
