"""
Exceptions raised by the Kakimizu complex toolkit
"""
from typing import Optional
from typing import Tuple


class KakimizuError(Exception):
    """Root of every error raised by this package"""


class InputError(KakimizuError, ValueError):
    """Malformed arguments or instances"""


class ParseError(InputError):
    """
    Instance file that does not follow its grammar, with the 1-based position
    of the offending token and an optional fix-it hint
    """

    def __init__(self, message: str, line: int, column: int = 1, hint: str = None):
        self.message = message
        self.line = line
        self.column = column
        self.hint = hint
        super().__init__(str(self))

    def __str__(self):
        text = f"line {self.line}, column {self.column}: {self.message}"
        if self.hint:
            text += f" (hint: {self.hint})"
        return text


class StructureError(KakimizuError):
    """
    A projection structure violates an axiom that an algorithm relies on
    """

    def __init__(self, message: str, witness: Optional[Tuple] = None, trace=None):
        self.witness = tuple(witness) if witness is not None else None
        self.trace = trace
        super().__init__(message)


class ConvexityError(StructureError):
    """A projection image lies outside the vertex set"""


class ModelViolationError(KakimizuError):
    """The height model left its height box during a closure"""


class CapExceededError(KakimizuError):
    """A configured cap was exceeded"""

    def __init__(self, cap: str, limit: int, message: str = None):
        self.cap = cap
        self.limit = limit
        super().__init__(message or f"{cap} cap of {limit} exceeded")
