"""
The joint moment generating function of Y as an exact term map.

M^(n)(t) = sum over partitions of n of w(y) * exp(y_1 t_1 + ... + y_n t_n),
with y the multiplicity vector and w(y) its probability. A finite sum of
exponentials is held as {exponent vector: exact weight}; t is never given a
value, so every check is a comparison of term maps.
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, List, Mapping, Optional, Tuple

from .distribution import pmf_of
from .errors import OutOfDomainError
from .partitions import enumerate_partitions, to_multiplicity

logger = logging.getLogger(__name__)

ExponentVector = Tuple[int, ...]


@dataclass(frozen=True)
class TermSum:
    """A finite sum of weighted exponentials exp(<y, t>) over length-n exponents."""

    n: int
    terms: Mapping[ExponentVector, Fraction] = field(default_factory=dict)

    def __post_init__(self) -> None:
        cleaned: Dict[ExponentVector, Fraction] = {}
        for exponent, weight in self.terms.items():
            exponent = tuple(exponent)
            if len(exponent) != self.n:
                raise ValueError(f"Exponent {exponent} does not have length {self.n}")
            if weight != 0:
                cleaned[exponent] = Fraction(weight)
        object.__setattr__(self, "terms", cleaned)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[Tuple[ExponentVector, Fraction]]:
        return iter(sorted(self.terms.items(), reverse=True))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TermSum):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    def weight(self, exponent: ExponentVector) -> Fraction:
        return self.terms.get(tuple(exponent), Fraction(0))

    def evaluate_at_zero(self) -> Fraction:
        """Value at t = 0: the sum of the weights."""
        total = Fraction(0)
        for weight in self.terms.values():
            total += weight
        return total

    def partial_derivative(self, i: int) -> "TermSum":
        """
        d/dt_i: each term (y, w) becomes (y, w * y_i).

        Raises:
            OutOfDomainError: If i < 1, or i > n for n >= 1.
        """
        if not isinstance(i, int) or i < 1:
            raise OutOfDomainError(f"Derivative index must be a positive integer, got {i!r}")
        if self.n == 0:
            # the constant sum has no coordinate i
            return TermSum(0, {})
        if i > self.n:
            raise OutOfDomainError(f"Derivative index {i} outside 1..{self.n}")
        return TermSum(
            self.n,
            {y: w * y[i - 1] for y, w in self.terms.items() if y[i - 1] > 0},
        )

    def shift(self, i: int) -> "TermSum":
        """Multiply by exp(t_i)."""
        if not 1 <= i <= self.n:
            raise OutOfDomainError(f"Shift index {i} outside 1..{self.n}")
        return TermSum(
            self.n,
            {y[:i - 1] + (y[i - 1] + 1,) + y[i:]: w for y, w in self.terms.items()},
        )

    def scale(self, factor: Fraction) -> "TermSum":
        return TermSum(self.n, {y: w * factor for y, w in self.terms.items()})

    def pad_to(self, n: int) -> "TermSum":
        """Embed into length-n coordinates; the new coordinates are 0."""
        if n < self.n:
            raise OutOfDomainError(f"Cannot pad length-{self.n} exponents down to {n}")
        padding = (0,) * (n - self.n)
        return TermSum(n, {y + padding: w for y, w in self.terms.items()})

    def diff(self, other: "TermSum") -> List["TermMismatch"]:
        """Exponents whose weights differ between self (left) and other (right)."""
        exponents = sorted(set(self.terms) | set(other.terms), reverse=True)
        return [
            TermMismatch(y, self.weight(y), other.weight(y))
            for y in exponents
            if self.weight(y) != other.weight(y)
        ]


@dataclass(frozen=True, eq=False)
class SymbolicMGF(TermSum):
    """M^(n)_Y: one term per partition of n, weighted by its probability."""


@dataclass(frozen=True)
class TermMismatch:
    exponent: ExponentVector
    left: Fraction
    right: Fraction


def build_mgf(n: int) -> SymbolicMGF:
    """
    M^(n)_Y as a term map.

    n = 0 gives the single empty-exponent term with weight 1; n < 0 gives the
    zero sum.
    """
    if n < 0:
        return SymbolicMGF(0, {})
    return SymbolicMGF(n, {to_multiplicity(p).m: pmf_of(p) for p in enumerate_partitions(n)})


def partial_derivative(m: TermSum, i: int) -> TermSum:
    """d/dt_i of a term sum; see :meth:`TermSum.partial_derivative`."""
    return m.partial_derivative(i)


def recursion_rhs(n: int, i: int) -> TermSum:
    """(exp(t_i) / i) * M^(n-i)(t), embedded in length-n coordinates."""
    lower = build_mgf(n - i)
    if lower.is_zero():
        return TermSum(n, {})
    return lower.pad_to(n).shift(i).scale(Fraction(1, i))


@dataclass(frozen=True)
class RecursionVerdict:
    """Term-level comparison of dM^(n)/dt_i with (exp(t_i)/i) M^(n-i)."""

    n: int
    i: int
    left: TermSum
    right: TermSum
    mismatches: Tuple[TermMismatch, ...]

    @property
    def ok(self) -> bool:
        return not self.mismatches


def verify_derivative_recursion(n: int, i: int) -> RecursionVerdict:
    """
    Check the derivative recursion term by term.

    Raises:
        OutOfDomainError: Unless 1 <= i <= n.
    """
    if not isinstance(n, int) or n < 0:
        raise OutOfDomainError(f"n must be a nonnegative integer, got {n!r}")
    if not isinstance(i, int) or not 1 <= i <= n:
        raise OutOfDomainError(f"i must satisfy 1 <= i <= n, got n={n}, i={i!r}")
    left = build_mgf(n).partial_derivative(i)
    right = recursion_rhs(n, i)
    verdict = RecursionVerdict(n=n, i=i, left=left, right=right, mismatches=tuple(left.diff(right)))
    if not verdict.ok:
        logger.error(f"Derivative recursion fails at n={n}, i={i}: {len(verdict.mismatches)} term(s)")
    return verdict


def verify_derivative_recursion_range(max_n: int, workers: int = 1, job_manager=None) -> List[RecursionVerdict]:
    """Verdicts for every 1 <= i <= n <= max_n, ordered by (n, i)."""
    from ..core.job_manager import JobManager

    pairs = [(n, i) for n in range(1, max_n + 1) for i in range(1, n + 1)]
    manager = job_manager or JobManager()
    return manager.map_reduce(
        lambda pair: verify_derivative_recursion(*pair),
        pairs,
        combine=lambda acc, verdict: acc + [verdict],
        initial=[],
        workers=workers,
        total_chunks=len(pairs),
    )


def expectation_via_mgf(n: int, i: int) -> Fraction:
    """E(Y_i) as dM^(n)/dt_i at t = 0."""
    if not 1 <= i <= n:
        raise OutOfDomainError(f"i must satisfy 1 <= i <= n, got n={n}, i={i}")
    return build_mgf(n).partial_derivative(i).evaluate_at_zero()


def second_moment_via_mgf(n: int, i: int, j: int, mgf: Optional[SymbolicMGF] = None) -> Fraction:
    """E(Y_i Y_j) as d^2 M^(n)/dt_i dt_j at t = 0."""
    if not (1 <= i <= n and 1 <= j <= n):
        raise OutOfDomainError(f"Indices must lie in 1..{n}, got i={i}, j={j}")
    mgf = mgf if mgf is not None else build_mgf(n)
    return mgf.partial_derivative(i).partial_derivative(j).evaluate_at_zero()
