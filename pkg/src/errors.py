"""
Exceptions raised by the library and the command-line frontend.

Every exception carries a human-readable `detail` and the process `exit_code` the command-line
frontend should use when the exception reaches it. Library code raises the most specific class;
the frontend only looks at `detail` and `exit_code`.
"""


class ChowError(Exception):
    """Base class of all expected errors."""

    exit_code = 1

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class StructuralError(ChowError):
    """Operands do not live in the same place: variable-count mismatch, foreign ring."""

    exit_code = 3


class ContractError(ChowError):
    """A precondition of an operation is violated."""

    exit_code = 3


class RankOneBundleError(ContractError):
    """Projectivizing a line bundle is the identity; rank must be at least two."""


class NotAProductError(ChowError):
    """The polynomial is not the Poincaré polynomial of a multiprojective space."""

    exit_code = 3
    reason = "NOT_A_PRODUCT"


class HypothesisViolation(ChowError):
    """The hypotheses of a decision procedure do not hold."""

    exit_code = 0
    reason = "HYPOTHESIS_VIOLATION"


class InputDocumentError(ChowError):
    """The input document is malformed (syntax or schema)."""

    exit_code = 3


class UsageError(ChowError):
    """The command line is malformed."""

    exit_code = 2
