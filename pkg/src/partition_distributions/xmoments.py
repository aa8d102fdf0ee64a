"""
Exact expectations of the partition-vector distribution X.

X_j is the j-th largest cycle length of a uniform random permutation of S_n
(0 when there are fewer than j cycles). Expectations are computed by
enumeration in integers: n! * P(lambda) is the number of permutations of
type lambda, so n! E(X_j) is an exact integer sum.

The closed forms for n! E(X_{n-j}) (j = 1, 2, 3) and the general
binomial-basis form 1 + sum_{i=2}^{2j} a_i C(n, i) are conjectural; they are
checked against enumeration here and never used as a source of truth.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from sympy import Poly, Rational, binomial as sym_binomial, expand_func, symbols

from .distribution import build_pmf
from .errors import ConjectureFormMismatch, OutOfDomainError, SingularSystemError
from .exactnum import binomial, double_factorial_odd, factorial
from .partitions import Partition, PartitionVector, count_permutations_of_type, enumerate_partitions
from .reference import (
    conjecture_min_n,
    is_reference_value,
    reference_coefficients,
    reference_polynomial,
)

logger = logging.getLogger(__name__)

CONJECTURED_OFFSETS = (1, 2, 3)


@dataclass(frozen=True)
class XExpectationTable:
    """E(X_j^(n)), n! E(X_j^(n)) and E((X_j^(n))^2) for j = 1..n."""

    n: int
    values: Tuple[Fraction, ...]
    scaled: Tuple[int, ...]
    second_moments: Tuple[Fraction, ...] = ()

    def value(self, j: int) -> Fraction:
        """E(X_j), 1-indexed."""
        if not 1 <= j <= self.n:
            raise OutOfDomainError(f"Component {j} outside 1..{self.n}")
        return self.values[j - 1]

    def scaled_value(self, j: int) -> int:
        """n! E(X_j), 1-indexed."""
        if not 1 <= j <= self.n:
            raise OutOfDomainError(f"Component {j} outside 1..{self.n}")
        return self.scaled[j - 1]

    def variance(self, j: int) -> Fraction:
        """Var(X_j), 1-indexed."""
        mean = self.value(j)
        return self.second_moments[j - 1] - mean * mean


def _require_positive(n: int, name: str = "n") -> None:
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise OutOfDomainError(f"{name} must be a positive integer, got {n!r}")


def _scaled_chunk(n: int, chunk: Sequence[Partition]) -> List[int]:
    # first n entries: sum of X_j over S_n; last n: sum of X_j^2
    sums = [0] * (2 * n)
    for p in chunk:
        count = count_permutations_of_type(p)
        for index, part in enumerate(p.parts):
            sums[index] += part * count
            sums[n + index] += part * part * count
    return sums


def x_expectations(n: int, workers: int = 1, job_manager=None) -> XExpectationTable:
    """
    E(X^(n)) and the second moments E(X_j^2) by exhaustive enumeration.

    Args:
        n: Size, at least 1.
        workers: Threads for the chunked reduction.
        job_manager: Optional JobManager for progress and cancellation.

    Returns:
        The expectation table; ``scaled`` holds the integers n! E(X_j).
    """
    _require_positive(n)
    from ..core.job_manager import JobManager, chunked

    manager = job_manager or JobManager()
    scaled = manager.map_reduce(
        lambda chunk: _scaled_chunk(n, chunk),
        chunked(enumerate_partitions(n), 2048),
        combine=lambda acc, part: [a + b for a, b in zip(acc, part)],
        initial=[0] * (2 * n),
        workers=workers,
    )
    total = factorial(n)
    return XExpectationTable(
        n=n,
        values=tuple(Fraction(s, total) for s in scaled[:n]),
        scaled=tuple(scaled[:n]),
        second_moments=tuple(Fraction(s, total) for s in scaled[n:]),
    )


def x_distribution(n: int) -> List[Tuple[PartitionVector, Fraction]]:
    """The pmf of X: (Lambda(lambda), probability) in reverse-lex order."""
    return build_pmf(n).as_x_distribution()


def expected_largest_cycle(n: int) -> Fraction:
    """E(X_1^(n)), the expected length of the longest cycle."""
    return x_expectations(n).value(1)


def conjecture_in_range(n: int, j: int) -> bool:
    """Whether the printed closed form for n! E(X_{n-j}) is stated at n."""
    minimum = conjecture_min_n(j)
    return minimum is not None and n >= minimum


def conjectured_polynomial(j: int) -> List[Fraction]:
    """Monomial coefficients, constant term first, of the printed form for j."""
    coefficients = reference_polynomial(j)
    if coefficients is None:
        raise OutOfDomainError(f"No printed polynomial for j={j}; expected one of {CONJECTURED_OFFSETS}")
    return coefficients


def _evaluate_polynomial(coefficients: Sequence[Fraction], n: int) -> Fraction:
    value = Fraction(0)
    for coefficient in reversed(coefficients):
        value = value * n + coefficient
    return value


def _evaluate_binomial_form(coefficients: Dict[int, Fraction], n: int) -> Fraction:
    return 1 + sum((a * binomial(n, i) for i, a in coefficients.items()), Fraction(0))


def conjecture_closed_form(n: int, j: int) -> int:
    """
    The conjectured value of n! E(X_{n-j}^(n)) for j in {1, 2, 3}.

    Both the polynomial and the binomial-basis forms are evaluated.

    Raises:
        OutOfDomainError: If j is not 1, 2 or 3, or n < 2j + 1.
        ConjectureFormMismatch: If the two forms disagree.
    """
    if j not in CONJECTURED_OFFSETS:
        raise OutOfDomainError(f"Closed forms exist only for j in {CONJECTURED_OFFSETS}, got {j!r}")
    if not isinstance(n, int) or not conjecture_in_range(n, j):
        raise OutOfDomainError(f"The j={j} form is stated for n >= {conjecture_min_n(j)}, got n={n!r}")
    a = reference_coefficients(j)
    binomial_value = _evaluate_binomial_form({i: Fraction(c) for i, c in enumerate(a, start=2)}, n)
    polynomial_value = _evaluate_polynomial(conjectured_polynomial(j), n)
    if polynomial_value != binomial_value:
        raise ConjectureFormMismatch(n, j, polynomial_value, binomial_value)
    if binomial_value.denominator != 1:
        raise ConjectureFormMismatch(n, j, polynomial_value, binomial_value)
    return binomial_value.numerator


@dataclass(frozen=True)
class SequenceRow:
    """One row of a scaled expectation sequence."""

    n: int
    component: int
    scaled: int
    conjecture: Optional[int] = None
    in_conjectured_range: bool = False
    reference: bool = False

    @property
    def match(self) -> Optional[bool]:
        if self.conjecture is None:
            return None
        return self.conjecture == self.scaled

    @property
    def provenance(self) -> str:
        return "reference" if self.reference else "computed"


def scaled_component_sequence(
    component: int, max_n: int, from_end: bool = False, workers: int = 1
) -> List[SequenceRow]:
    """
    n! E(X_component^(n)) for every n <= max_n where the component exists.

    With ``from_end`` the row for n holds n! E(X_{n-component}) instead, and
    carries the conjectured value when (n, component) is in a stated range.
    """
    _require_positive(component, "component")
    _require_positive(max_n, "max_n")
    first_n = component + 1 if from_end else component
    rows = []
    for n in range(first_n, max_n + 1):
        index = n - component if from_end else component
        scaled = x_expectations(n, workers).scaled_value(index)
        conjecture = None
        in_range = from_end and component in CONJECTURED_OFFSETS and conjecture_in_range(n, component)
        if in_range:
            conjecture = conjecture_closed_form(n, component)
            if conjecture != scaled:
                logger.error(f"Conjecture j={component} fails at n={n}: {conjecture} != {scaled}")
        rows.append(
            SequenceRow(
                n=n,
                component=index,
                scaled=scaled,
                conjecture=conjecture,
                in_conjectured_range=in_range,
                reference=is_reference_value(index, n),
            )
        )
    return rows


def x1_sequence(max_n: int) -> List[int]:
    """n! E(X_1^(n)) for n = 1..max_n."""
    return [row.scaled for row in scaled_component_sequence(1, max_n)]


def x2_sequence(max_n: int) -> List[int]:
    """n! E(X_2^(n)) for n = 2..max_n."""
    if not isinstance(max_n, int) or max_n < 2:
        raise OutOfDomainError(f"max_n must be at least 2, got {max_n!r}")
    return [row.scaled for row in scaled_component_sequence(2, max_n)]


def scaled_expectation_triangle(max_n: int) -> List[Tuple[int, ...]]:
    """Rows n = 1..max_n of n! E(X_k^(n)), k = 1..n."""
    _require_positive(max_n, "max_n")
    return [x_expectations(n).scaled for n in range(1, max_n + 1)]


def solve_exact(matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> List[Fraction]:
    """
    Solve a square system exactly by Gaussian elimination.

    Pivots are chosen by largest absolute value in the column.

    Raises:
        SingularSystemError: If the system has no unique solution.
    """
    size = len(matrix)
    if size == 0 or len(rhs) != size or any(len(row) != size for row in matrix):
        raise SingularSystemError(f"Expected a non-empty square system, got {size} rows")
    rows = [[Fraction(v) for v in row] + [Fraction(b)] for row, b in zip(matrix, rhs)]

    for column in range(size):
        pivot = max(range(column, size), key=lambda r: abs(rows[r][column]))
        if rows[pivot][column] == 0:
            raise SingularSystemError(f"Singular system: no pivot in column {column + 1}")
        rows[column], rows[pivot] = rows[pivot], rows[column]
        for r in range(column + 1, size):
            factor = rows[r][column] / rows[column][column]
            if factor:
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[column])]

    solution = [Fraction(0)] * size
    for r in range(size - 1, -1, -1):
        tail = sum((rows[r][c] * solution[c] for c in range(r + 1, size)), Fraction(0))
        solution[r] = (rows[r][size] - tail) / rows[r][r]
    return solution


@dataclass(frozen=True)
class HoldoutCheck:
    n: int
    predicted: Fraction
    actual: int

    @property
    def matches(self) -> bool:
        return self.predicted == self.actual


@dataclass(frozen=True)
class CoefficientClaim:
    """A stated value for one binomial coefficient a_index."""

    name: str
    index: int
    expected: Fraction
    actual: Fraction

    @property
    def matches(self) -> bool:
        return self.expected == self.actual


@dataclass(frozen=True)
class BinomialFit:
    """Exact fit of n! E(X_{n-j}) = 1 + sum_{i=2}^{2j} a_i C(n, i)."""

    j: int
    coefficients: Dict[int, Fraction]
    sample_range: Tuple[int, ...]
    holdouts: Tuple[HoldoutCheck, ...] = ()
    claims: Tuple[CoefficientClaim, ...] = field(default=())

    def predict(self, n: int) -> Fraction:
        return _evaluate_binomial_form(self.coefficients, n)

    @property
    def all_positive_integers(self) -> bool:
        return all(a.denominator == 1 and a > 0 for a in self.coefficients.values())

    @property
    def holdouts_ok(self) -> bool:
        return all(check.matches for check in self.holdouts)

    @property
    def claims_ok(self) -> bool:
        return all(claim.matches for claim in self.claims)

    @property
    def ok(self) -> bool:
        return self.all_positive_integers and self.holdouts_ok and self.claims_ok


def _scaled_from_end(n: int, j: int) -> int:
    return x_expectations(n).scaled_value(n - j)


def coefficient_claims(j: int, coefficients: Dict[int, Fraction]) -> List[CoefficientClaim]:
    """The stated values of a_2j, a_2j-1, a_4, a_3 and a_2 that apply at j."""
    top = double_factorial_odd(j - 1)
    stated = [("a_2j", 2 * j, Fraction(top))]
    if j >= 2:
        stated.append(("a_2j-1", 2 * j - 1, Fraction(double_factorial_odd(j), 3) - top))
        stated.append(("a_3", 3, Fraction(2)))
    if j >= 3:
        stated.append(("a_4", 4, Fraction(9)))
    stated.append(("a_2", 2, Fraction(1)))
    return [CoefficientClaim(name, index, expected, coefficients[index]) for name, index, expected in stated]


def fit_binomial_basis(
    j: int, sample_ns: Sequence[int], holdout_ns: Optional[Sequence[int]] = None
) -> BinomialFit:
    """
    Recover a_2 .. a_2j from enumerated values of n! E(X_{n-j}).

    The smallest 2j - 1 distinct samples determine the system; the remaining
    samples, any ``holdout_ns`` and the two n following the largest sample are
    checked against the fitted form.

    Raises:
        OutOfDomainError: On too few samples or samples below 2j + 1.
        SingularSystemError: If the sampled system is singular.
    """
    _require_positive(j, "j")
    unknowns = 2 * j - 1
    distinct = sorted(set(sample_ns))
    if len(distinct) < unknowns:
        raise OutOfDomainError(f"j={j} needs at least {unknowns} distinct samples, got {len(distinct)}")
    if distinct[0] < 2 * j + 1:
        raise OutOfDomainError(f"Samples for j={j} must be at least {2 * j + 1}, got {distinct[0]}")

    solve_ns = tuple(distinct[:unknowns])
    indices = range(2, 2 * j + 1)
    matrix = [[Fraction(binomial(n, i)) for i in indices] for n in solve_ns]
    rhs = [Fraction(_scaled_from_end(n, j) - 1) for n in solve_ns]
    logger.info(f"Fitting j={j} on n={list(solve_ns)}")
    solution = solve_exact(matrix, rhs)
    coefficients = dict(zip(indices, solution))

    extra = list(distinct[unknowns:]) + list(holdout_ns or []) + [distinct[-1] + 1, distinct[-1] + 2]
    holdout_n = sorted({n for n in extra if n >= 2 * j + 1 and n not in solve_ns})
    holdouts = tuple(
        HoldoutCheck(n, _evaluate_binomial_form(coefficients, n), _scaled_from_end(n, j))
        for n in holdout_n
    )
    fit = BinomialFit(
        j=j,
        coefficients=coefficients,
        sample_range=solve_ns,
        holdouts=holdouts,
        claims=tuple(coefficient_claims(j, coefficients)),
    )
    if not fit.all_positive_integers:
        logger.warning(f"j={j}: fitted coefficients are not all positive integers")
    for check in holdouts:
        if not check.matches:
            logger.warning(f"j={j}: held-out n={check.n} predicted {check.predicted}, enumerated {check.actual}")
    return fit


def default_samples(j: int) -> List[int]:
    """2j - 1 consecutive samples starting at the smallest stated n."""
    return list(range(2 * j + 1, 4 * j))


@dataclass(frozen=True)
class AsymptoticsReport:
    """Monomial expansion of a fitted binomial form and its leading terms."""

    j: int
    polynomial: Tuple[Fraction, ...]  # constant term first
    expected_leading: Fraction
    printed_next: Fraction
    printed_polynomial: Optional[Tuple[Fraction, ...]] = None

    @property
    def degree(self) -> int:
        return len(self.polynomial) - 1

    @property
    def leading(self) -> Fraction:
        return self.polynomial[-1]

    @property
    def next_coefficient(self) -> Fraction:
        return self.polynomial[-2] if len(self.polynomial) > 1 else Fraction(0)

    @property
    def degree_ok(self) -> bool:
        return self.degree == 2 * self.j

    @property
    def leading_ok(self) -> bool:
        return self.leading == self.expected_leading

    @property
    def next_matches_printed(self) -> bool:
        return self.next_coefficient == self.printed_next

    @property
    def next_matches_sign_corrected(self) -> bool:
        return self.next_coefficient == -self.printed_next

    @property
    def matches_printed_polynomial(self) -> Optional[bool]:
        if self.printed_polynomial is None:
            return None
        return self.printed_polynomial == self.polynomial

    @property
    def ok(self) -> bool:
        return (
            self.degree_ok
            and self.leading_ok
            and self.next_matches_sign_corrected
            and self.matches_printed_polynomial is not False
        )


def _to_fraction(value) -> Fraction:
    value = Rational(value)
    return Fraction(int(value.p), int(value.q))


def expand_binomial_form(coefficients: Dict[int, Fraction]) -> Tuple[Fraction, ...]:
    """1 + sum a_i C(n, i) as monomial coefficients, constant term first."""
    n = symbols("n")
    expression = 1 + sum(
        Rational(a.numerator, a.denominator) * expand_func(sym_binomial(n, i))
        for i, a in coefficients.items()
    )
    coefficients_high_first = Poly(expression, n).all_coeffs()
    return tuple(_to_fraction(c) for c in reversed(coefficients_high_first))


def leading_asymptotics_check(j: int, fit: Optional[BinomialFit] = None) -> AsymptoticsReport:
    """
    Expand a binomial-basis fit in powers of n and compare its top terms.

    The degree should be 2j and the leading coefficient 1/(j! 2^j). The
    n^(2j-1) coefficient is compared with the stated (2j+1)/(3 2^j (j-1)!)
    and with its negation, which is what the expansion gives.
    """
    _require_positive(j, "j")
    fit = fit or fit_binomial_basis(j, default_samples(j))
    if fit.j != j:
        raise OutOfDomainError(f"Fit is for j={fit.j}, not j={j}")
    polynomial = expand_binomial_form(fit.coefficients)
    printed = reference_polynomial(j)
    report = AsymptoticsReport(
        j=j,
        polynomial=polynomial,
        expected_leading=Fraction(1, math.factorial(j) * 2 ** j),
        printed_next=Fraction(2 * j + 1, 3 * 2 ** j * math.factorial(j - 1)),
        printed_polynomial=tuple(printed) if printed is not None else None,
    )
    if not report.ok:
        logger.warning(f"Asymptotics check for j={j} does not hold: degree {report.degree}, leading {report.leading}")
    return report
