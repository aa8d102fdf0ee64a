"""
The cycle-type distribution of a uniform random permutation of S_n.

X (partition vectors) and Y (multiplicity vectors) share one pmf:
P = 1 / (1^m_1 2^m_2 ... n^m_n m_1! ... m_n!). This module gives the pmf,
the normalisation identity, and the exact first and second moments of Y,
each as a closed form and as an exhaustive-enumeration oracle.
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple

from .errors import OutOfDomainError
from .partitions import (
    MultiplicityVector,
    Partition,
    PartitionVector,
    centralizer_size,
    enumerate_partitions,
    to_multiplicity,
    to_partition_vector,
)

logger = logging.getLogger(__name__)

Vector = Tuple[Fraction, ...]
Matrix = Tuple[Tuple[Fraction, ...], ...]


def pmf_of(p: Partition) -> Fraction:
    """P(X = Lambda(p)) = P(Y = m(p)) = 1 / z_lambda."""
    return Fraction(1, centralizer_size(p))


@dataclass(frozen=True)
class Pmf:
    """Probability of every partition of n, in reverse-lexicographic order."""

    n: int
    entries: Dict[Partition, Fraction]

    def total(self) -> Fraction:
        total = Fraction(0)
        for probability in self.entries.values():
            total += probability
        return total

    def probability(self, p: Partition) -> Fraction:
        """Probability of p; zero for anything outside the support."""
        return self.entries.get(p, Fraction(0))

    def as_y_distribution(self) -> List[Tuple[MultiplicityVector, Fraction]]:
        return [(to_multiplicity(p), prob) for p, prob in self.entries.items()]

    def as_x_distribution(self) -> List[Tuple[PartitionVector, Fraction]]:
        return [(to_partition_vector(p), prob) for p, prob in self.entries.items()]

    def __len__(self) -> int:
        return len(self.entries)


def build_pmf(n: int) -> Pmf:
    """The full pmf over the partitions of n."""
    return Pmf(n=n, entries={p: pmf_of(p) for p in enumerate_partitions(n)})


@dataclass(frozen=True)
class FineIdentityResult:
    """Exact sum of the pmf over all partitions of n."""

    n: int
    total: Fraction
    terms: int

    @property
    def holds(self) -> bool:
        return self.total == 1


def verify_fine_identity(n: int) -> FineIdentityResult:
    """Sum pmf_of over every partition of n; the identity holds iff the sum is 1."""
    total = Fraction(0)
    terms = 0
    for p in enumerate_partitions(n):
        total += pmf_of(p)
        terms += 1
    result = FineIdentityResult(n=n, total=total, terms=terms)
    if not result.holds:
        logger.error(f"Normalisation fails at n={n}: sum is {total}")
    return result


def _require_positive(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise OutOfDomainError(f"n must be a positive integer, got {n!r}")


def expectation_y(n: int) -> Vector:
    """E(Y) = (1, 1/2, ..., 1/n)."""
    _require_positive(n)
    return tuple(Fraction(1, i) for i in range(1, n + 1))


class ABoundary(str, Enum):
    """Which condition puts 1/(ij) into the A matrix."""

    INCLUSIVE = "inclusive"  # i + j <= n; agrees with the enumeration oracle
    PRINTED_STRICT = "printed-strict"  # j < n - i, as printed; fails the oracle


def a_matrix(n: int, boundary: ABoundary = ABoundary.INCLUSIVE) -> Matrix:
    """The A part of E(YY'): a_ij = 1/(ij) when the boundary condition holds."""
    _require_positive(n)
    boundary = ABoundary(boundary)
    rows = []
    for i in range(1, n + 1):
        row = []
        for j in range(1, n + 1):
            low, high = min(i, j), max(i, j)
            if boundary is ABoundary.INCLUSIVE:
                inside = low + high <= n
            else:
                inside = high < n - low
            row.append(Fraction(1, i * j) if inside else Fraction(0))
        rows.append(tuple(row))
    return tuple(rows)


def b_matrix(n: int) -> Matrix:
    """The diagonal B part of E(YY'): b_ii = 1/i."""
    _require_positive(n)
    return tuple(
        tuple(Fraction(1, i) if i == j else Fraction(0) for j in range(1, n + 1))
        for i in range(1, n + 1)
    )


def second_moment_decomposition(
    n: int, boundary: ABoundary = ABoundary.INCLUSIVE
) -> Tuple[Matrix, Matrix]:
    """(A, B) with E(YY') = A + B."""
    return a_matrix(n, boundary), b_matrix(n)


def add_matrices(left: Matrix, right: Matrix) -> Matrix:
    return tuple(tuple(a + b for a, b in zip(row_l, row_r)) for row_l, row_r in zip(left, right))


def covariance_from_moments(second_moment: Matrix, expectation: Vector) -> Matrix:
    """Sigma = E(YY') - E(Y) E(Y)'."""
    return tuple(
        tuple(second_moment[i][j] - expectation[i] * expectation[j] for j in range(len(expectation)))
        for i in range(len(expectation))
    )


def _variance(n: int, i: int) -> Fraction:
    return Fraction(1, i) if 2 * i <= n else Fraction(i - 1, i * i)


def variance_y(n: int, i: int) -> Fraction:
    """Var(Y_i), one diagonal entry of covariance_y without building the matrix."""
    _require_positive(n)
    if not isinstance(i, int) or not 1 <= i <= n:
        raise OutOfDomainError(f"i must satisfy 1 <= i <= n, got n={n}, i={i!r}")
    return _variance(n, i)


def covariance_y(n: int) -> Matrix:
    """
    Closed-form covariance of Y.

    Sigma_ii = 1/i when 2i <= n, else (i-1)/i^2; for i < j, Sigma_ij = 0 when
    j <= n - i, else -1/(ij); symmetric.
    """
    _require_positive(n)
    rows = []
    for i in range(1, n + 1):
        row = []
        for j in range(1, n + 1):
            if i == j:
                value = _variance(n, i)
            else:
                low, high = min(i, j), max(i, j)
                value = Fraction(0) if high <= n - low else Fraction(-1, i * j)
            row.append(value)
        rows.append(tuple(row))
    return tuple(rows)


def weighted_covariance_sum(cov: Matrix) -> Fraction:
    """Sum of i*j*Sigma_ij; zero because sum of i*Y_i = n is deterministic."""
    total = Fraction(0)
    for i, row in enumerate(cov, start=1):
        for j, value in enumerate(row, start=1):
            total += i * j * value
    return total


@dataclass
class MomentSums:
    """Partial oracle sums over a chunk of partitions (before normalisation)."""

    n: int
    first: List[Fraction] = field(default_factory=list)
    second: List[List[Fraction]] = field(default_factory=list)

    def __post_init__(self) -> None:
        if not self.first:
            self.first = [Fraction(0)] * self.n
        if not self.second:
            self.second = [[Fraction(0)] * self.n for _ in range(self.n)]

    def add_partition(self, p: Partition) -> None:
        weight = pmf_of(p)
        items = list(p.multiplicities.items())
        for part_i, count_i in items:
            self.first[part_i - 1] += count_i * weight
            for part_j, count_j in items:
                self.second[part_i - 1][part_j - 1] += count_i * count_j * weight

    def merge(self, other: "MomentSums") -> "MomentSums":
        for i in range(self.n):
            self.first[i] += other.first[i]
            for j in range(self.n):
                self.second[i][j] += other.second[i][j]
        return self


def _moment_chunk(n: int, chunk: Iterable[Partition]) -> MomentSums:
    sums = MomentSums(n)
    for p in chunk:
        sums.add_partition(p)
    return sums


def moment_oracle(n: int, workers: int = 1, job_manager=None) -> Tuple[Vector, Matrix]:
    """
    E(Y) and E(YY') by exhaustive enumeration.

    Args:
        n: Size.
        workers: Threads used for the chunked reduction.
        job_manager: Optional JobManager (for progress and cancellation).

    Returns:
        Tuple of (expectation, second_moment).
    """
    _require_positive(n)
    from ..core.job_manager import JobManager, chunked

    manager = job_manager or JobManager()
    logger.info(f"Enumerating moment oracle for n={n} with {workers} worker(s)")
    sums = manager.map_reduce(
        lambda chunk: _moment_chunk(n, chunk),
        chunked(enumerate_partitions(n), 2048),
        combine=lambda acc, part: acc.merge(part),
        initial=MomentSums(n),
        workers=workers,
    )
    return tuple(sums.first), tuple(tuple(row) for row in sums.second)


def expectation_y_oracle(n: int, workers: int = 1) -> Vector:
    """E(Y) by enumeration: sum over partitions of m_i(lambda) * pmf(lambda)."""
    return moment_oracle(n, workers)[0]


def second_moment_oracle(n: int, workers: int = 1) -> Matrix:
    return moment_oracle(n, workers)[1]


def covariance_oracle(n: int, workers: int = 1) -> Matrix:
    expectation, second = moment_oracle(n, workers)
    return covariance_from_moments(second, expectation)


@dataclass(frozen=True)
class MatrixMismatch:
    """One entry where a closed form and its oracle disagree (1-indexed)."""

    quantity: str
    row: int
    column: Optional[int]
    closed_form: Fraction
    oracle: Fraction


def compare_vectors(quantity: str, closed: Vector, oracle: Vector) -> List[MatrixMismatch]:
    return [
        MatrixMismatch(quantity, i, None, c, o)
        for i, (c, o) in enumerate(zip(closed, oracle), start=1)
        if c != o
    ]


def compare_matrices(quantity: str, closed: Matrix, oracle: Matrix) -> List[MatrixMismatch]:
    mismatches = []
    for i, (row_c, row_o) in enumerate(zip(closed, oracle), start=1):
        for j, (c, o) in enumerate(zip(row_c, row_o), start=1):
            if c != o:
                mismatches.append(MatrixMismatch(quantity, i, j, c, o))
    return mismatches


@dataclass(frozen=True)
class MomentReport:
    """Closed-form moments of Y, optionally checked against the oracle."""

    n: int
    expectation: Vector
    second_moment: Matrix
    a_matrix: Matrix
    b_matrix: Matrix
    covariance: Matrix
    verified: bool = False
    mismatches: Tuple[MatrixMismatch, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.mismatches


def moment_report(n: int, verify: bool = False, workers: int = 1, job_manager=None) -> MomentReport:
    """
    Assemble E(Y), A, B, E(YY') = A + B and Sigma from the closed forms.

    With ``verify`` the enumeration oracle runs alongside and every entry is
    compared exactly; disagreements are listed in ``mismatches``.
    """
    expectation = expectation_y(n)
    a, b = second_moment_decomposition(n)
    second = add_matrices(a, b)
    covariance = covariance_y(n)
    mismatches: List[MatrixMismatch] = []
    if verify:
        oracle_expectation, oracle_second = moment_oracle(n, workers, job_manager)
        oracle_covariance = covariance_from_moments(oracle_second, oracle_expectation)
        mismatches += compare_vectors("expectation", expectation, oracle_expectation)
        mismatches += compare_matrices("second_moment", second, oracle_second)
        mismatches += compare_matrices("covariance", covariance, oracle_covariance)
        for mismatch in mismatches:
            logger.error(
                f"n={n}: {mismatch.quantity}[{mismatch.row},{mismatch.column}] closed form "
                f"{mismatch.closed_form} != oracle {mismatch.oracle}"
            )
    return MomentReport(
        n=n,
        expectation=expectation,
        second_moment=second,
        a_matrix=a,
        b_matrix=b,
        covariance=covariance,
        verified=verify,
        mismatches=tuple(mismatches),
    )
