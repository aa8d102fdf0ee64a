"""
Exception hierarchy for the partition distributions package.

Verification outcomes (an identity holding or failing, conjecture
counter-evidence) are reported as result objects, not raised.
"""


class PartitionDistributionError(Exception):
    """Base class for all package errors."""


class InvalidPartitionError(PartitionDistributionError, ValueError):
    """A part list or vector does not describe a partition."""


class ExactArithmeticError(PartitionDistributionError, ZeroDivisionError):
    """Exact arithmetic was asked for an undefined result (division by zero)."""


class OutOfDomainError(PartitionDistributionError, ValueError):
    """An operation was called outside its stated parameter range."""


class SingularSystemError(PartitionDistributionError):
    """An exact linear system has no unique solution."""


class ConjectureFormMismatch(PartitionDistributionError):
    """The polynomial and binomial-basis forms of a conjecture disagree."""

    def __init__(self, n: int, j: int, polynomial_value, binomial_value) -> None:
        super().__init__(
            f"Conjectured forms disagree at n={n}, j={j}: "
            f"polynomial={polynomial_value}, binomial={binomial_value}"
        )
        self.n = n
        self.j = j
        self.polynomial_value = polynomial_value
        self.binomial_value = binomial_value


class InsufficientTrialsError(PartitionDistributionError):
    """Chi-square cells cannot be pooled up to the expected-count floor."""
