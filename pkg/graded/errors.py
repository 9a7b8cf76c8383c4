"""
Algebra Errors
Exceptions raised when an operation cannot produce an exact answer
"""

from typing import Any, Optional


class AlgebraError(ValueError):
    """Base class for input, cap and precondition failures"""


class SpaceMismatchError(AlgebraError):
    """Operands live in different graded spaces"""


class PermutationError(AlgebraError):
    """A permutation is not a bijection or does not match its degree list"""


class ArityError(AlgebraError):
    """Argument count does not match the arity of a multilinear map"""


class CapExceededError(AlgebraError):
    """A requested arity or weight lies above the configured cap"""


class TruncationError(AlgebraError):
    """A series has no nilpotency or weight certificate and would not terminate"""


class WeightOverflowError(AlgebraError):
    """A Poisson bracket produced a term above the weight cap"""

    def __init__(self, message: str, term: Optional[Any] = None):
        super().__init__(message)
        self.term = term


class PreconditionError(AlgebraError):
    """An input fails the mathematical precondition of an operation"""

    def __init__(self, message: str, report: Optional[dict] = None):
        super().__init__(message)
        self.report = report


class DocumentError(AlgebraError):
    """An algebra document cannot be parsed; carries the line number and field"""

    def __init__(self, message: str, line: Optional[int] = None, field: Optional[str] = None):
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{message}")
        self.line = line
        self.field = field
