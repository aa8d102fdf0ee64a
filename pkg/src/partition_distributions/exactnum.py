"""
Exact rational arithmetic helpers.

Every probability, moment and coefficient in the package is a
``fractions.Fraction``. Fractions are normalised on construction, so equality
is structural and the text form "p/q" is unique.
"""

import math
import operator
from decimal import Decimal, localcontext
from enum import Enum
from fractions import Fraction
from typing import Iterable, Union

from .errors import ExactArithmeticError, OutOfDomainError

ExactRational = Fraction

RationalLike = Union[Fraction, int]


class Operation(str, Enum):
    """Binary operations supported by :func:`arithmetic`."""

    ADD = "add"
    SUB = "sub"
    MUL = "mul"
    DIV = "div"


_OPERATORS = {
    Operation.ADD: operator.add,
    Operation.SUB: operator.sub,
    Operation.MUL: operator.mul,
    Operation.DIV: operator.truediv,
}


def as_rational(value: RationalLike) -> Fraction:
    """Coerce an int or Fraction to a Fraction; floats are rejected."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    raise TypeError(f"Expected an exact rational, got {type(value).__name__}")


def arithmetic(a: RationalLike, b: RationalLike, op: Union[Operation, str]) -> Fraction:
    """
    Apply ``op`` to two exact rationals.

    Args:
        a: Left operand.
        b: Right operand.
        op: One of add, sub, mul, div.

    Returns:
        The exact result in canonical form.

    Raises:
        ExactArithmeticError: On division by zero.
    """
    op = Operation(op)
    left, right = as_rational(a), as_rational(b)
    if op is Operation.DIV and right == 0:
        raise ExactArithmeticError(f"Division of {format_rational(left)} by zero")
    return _OPERATORS[op](left, right)


def exact_sum(values: Iterable[RationalLike]) -> Fraction:
    """Sum exactly; the empty sum is 0."""
    total = Fraction(0)
    for value in values:
        total += value
    return total


def factorial(n: int) -> int:
    """Exact n! for n >= 0."""
    if n < 0:
        raise OutOfDomainError(f"factorial is undefined for n={n}")
    return math.factorial(n)


def double_factorial_odd(n: int) -> int:
    """
    Exact (2n+1)!! = 1 * 3 * 5 * ... * (2n+1).

    Equals (2n+1)! / (2^n n!).
    """
    if n < 0:
        raise OutOfDomainError(f"double_factorial_odd is undefined for n={n}")
    return math.prod(range(1, 2 * n + 2, 2))


def binomial(n: int, k: int) -> int:
    """C(n, k), zero outside 0 <= k <= n."""
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


def format_rational(value: RationalLike) -> str:
    """Text form "p/q", with "/q" omitted when q == 1."""
    value = as_rational(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    """Inverse of :func:`format_rational`; accepts "46", "1/120", "-1/6"."""
    text = text.strip()
    numerator, slash, denominator = text.partition("/")
    try:
        if not slash:
            return Fraction(int(numerator))
        den = int(denominator)
        if den == 0:
            raise ExactArithmeticError(f"Zero denominator in {text!r}")
        return Fraction(int(numerator), den)
    except ValueError as e:
        raise ValueError(f"Not an exact rational: {text!r}") from e


def to_decimal(value: RationalLike, significant: int = 12) -> str:
    """Decimal text of an exact rational, rounded to ``significant`` digits."""
    value = as_rational(value)
    with localcontext() as ctx:
        ctx.prec = significant
        quotient = Decimal(value.numerator) / Decimal(value.denominator)
    return format(quotient.normalize(), "f") if quotient == quotient.to_integral() else str(quotient)
