"""Exception hierarchy shared by every part of the engine."""

from __future__ import annotations


class VdcError(Exception):
    """Base class for all engine errors."""


# -- individuals and enumeration ---------------------------------------------


class ValidationError(VdcError):
    pass


class NotFunctional(ValidationError):
    def __init__(self, event, count: int):
        self.event = event
        self.count = count
        super().__init__(f"not functional at {event}: {count} images")


class OutOfType(ValidationError):
    def __init__(self, value):
        self.value = value
        super().__init__(f"value {value} is outside the codomain type")


class OutOfDomain(ValidationError):
    def __init__(self, event):
        self.event = event
        super().__init__(f"pair with first component {event} lies outside the event set")


class TooLarge(VdcError):
    def __init__(self, size: int, cap: int):
        self.size = size
        self.cap = cap
        super().__init__(f"enumeration of {size} items exceeds cap {cap}")


# -- evaluation ---------------------------------------------------------------


class EvalError(VdcError):
    pass


class Undefined(EvalError):
    """The value does not exist at this index (partiality, not a fault)."""

    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(reason)


class UndefinedAt(Undefined):
    def __init__(self, event):
        self.event = event
        super().__init__(f"undefined at {event}")


class Improper(EvalError):
    """A description whose satisfier set is not a singleton."""

    def __init__(self, candidates):
        self.candidates = candidates
        super().__init__(f"improper description: {len(candidates)} candidates")


class NotApplicable(EvalError):
    def __init__(self, value):
        self.value = value
        super().__init__(f"cannot apply non-graph value {value}")


# -- syntax and sorts -----------------------------------------------------------


class ParseError(VdcError, SyntaxError):
    def __init__(self, line: int, column: int, expected: str, found: str = ""):
        self.line = line
        self.column = column
        self.expected = expected
        self.found = found
        detail = f", found {found!r}" if found else ""
        super().__init__(f"{line}:{column}: expected {expected}{detail}")


class SortError(VdcError):
    pass


class SortMismatch(SortError):
    def __init__(self, expected, found, position: str = ""):
        self.expected = expected
        self.found = found
        self.position = position
        where = f" in {position}" if position else ""
        super().__init__(f"sort mismatch{where}: expected {expected}, found {found}")


class UnknownType(SortError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"unknown type {name!r}")


class UnboundVariable(SortError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"unbound variable {name!r}")


# -- layers, scripts, files -------------------------------------------------------


class DepthExceeded(VdcError):
    def __init__(self, depth: int, max_depth: int):
        self.depth = depth
        self.max_depth = max_depth
        super().__init__(f"layer {depth} exceeds maximum depth {max_depth}")


class ScriptError(VdcError):
    pass


class NotPossible(ScriptError):
    def __init__(self, value):
        self.value = value
        super().__init__(f"{value} is not a possible individual (not in H)")


class NotLive(ScriptError):
    def __init__(self, value):
        self.value = value
        super().__init__(f"{value} is not live and cannot leave")


class UnknownEvent(ScriptError):
    def __init__(self, event):
        self.event = event
        super().__init__(f"event {event} is not declared in Asg")


class StepFailed(ScriptError):
    """Raised by run_script; ``step`` is 1-based."""

    def __init__(self, step: int, cause: ScriptError, last_state):
        self.step = step
        self.cause = cause
        self.last_state = last_state
        super().__init__(f"step {step}: {cause}")


class OutOfRange(VdcError, IndexError):
    pass


class FormatError(VdcError):
    def __init__(self, line: int, message: str):
        self.line = line
        self.message = message
        super().__init__(f"line {line}: {message}")
