"""
Error hierarchy for the linkage calculus.

Every error carries a human readable ``detail`` and the process exit code the
CLI reports for it: 2 for bad input or a failed precondition, 1 for a numeric
gate that rejects an otherwise well formed request.
"""

from typing import Optional


class LiaisonError(Exception):
    """Base class for all domain errors"""

    exit_code: int = 2

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class InvalidInputError(LiaisonError, ValueError):
    """Malformed data: bad JSON, bad serialization, bad windows or arguments"""

    exit_code = 2


class PreconditionError(InvalidInputError):
    """A named precondition of an operation does not hold"""

    def __init__(self, detail: str, clause: Optional[str] = None):
        super().__init__(detail)
        self.clause = clause


class NotAdmissibleError(PreconditionError):
    """A function required to be an admissible character is not one"""


class DominationError(PreconditionError):
    """A domination clause is violated"""

    def __init__(
        self, detail: str, clause: Optional[str] = None, degree: Optional[int] = None
    ):
        super().__init__(detail, clause)
        self.degree = degree


class LinkageError(PreconditionError):
    """Class, link or double link preconditions fail"""


class ResolutionError(PreconditionError):
    """Resolution data is inconsistent or incomplete"""


class ChainError(LiaisonError):
    """A chain step fails its numeric gate"""

    exit_code = 1

    def __init__(self, detail: str, step: Optional[int] = None):
        super().__init__(detail)
        self.step = step
