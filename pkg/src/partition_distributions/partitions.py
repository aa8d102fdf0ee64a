"""
Integer partitions and their vector views.

A partition is stored once, as its weakly decreasing part list. The
multiplicity vector m(lambda) and the zero-padded partition vector
Lambda(lambda) are derived on demand. Vectors are 1-indexed in documentation
and serialized output (m_1 first); internally they are plain tuples.
"""

import logging
import math
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterator, Sequence, Tuple

from .errors import InvalidPartitionError, OutOfDomainError

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class Partition:
    """A weakly decreasing tuple of positive parts. ``()`` is the partition of 0."""

    parts: Tuple[int, ...]

    def __post_init__(self) -> None:
        parts = tuple(self.parts)
        object.__setattr__(self, "parts", parts)
        previous = None
        for part in parts:
            if not isinstance(part, int) or isinstance(part, bool) or part < 1:
                raise InvalidPartitionError(f"Parts must be positive integers: {parts}")
            if previous is not None and part > previous:
                raise InvalidPartitionError(f"Parts must be weakly decreasing: {parts}")
            previous = part

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse "3,1,1", "(3,1,1)", "[3, 1, 1]" or an empty form."""
        body = text.strip().strip("()[]").strip()
        if not body:
            return cls(())
        try:
            return cls(tuple(int(token) for token in re.split(r"[,\s]+", body) if token))
        except ValueError as e:
            raise InvalidPartitionError(f"Cannot parse partition from {text!r}") from e

    @cached_property
    def n(self) -> int:
        """The size, i.e. the sum of the parts."""
        return sum(self.parts)

    @property
    def length(self) -> int:
        """Number of parts."""
        return len(self.parts)

    @cached_property
    def multiplicities(self) -> Dict[int, int]:
        """Sparse multiplicities: part -> count, for parts that occur."""
        counts: Dict[int, int] = {}
        for part in self.parts:
            counts[part] = counts.get(part, 0) + 1
        return counts

    def multiplicity(self, j: int) -> int:
        """m_j, the number of times j occurs as a part."""
        return self.multiplicities.get(j, 0)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __str__(self) -> str:
        return "(" + ",".join(str(part) for part in self.parts) + ")"

    def to_json(self) -> list:
        return list(self.parts)


@dataclass(frozen=True)
class MultiplicityVector:
    """(m_1, ..., m_n) with sum of j * m_j equal to n = len(m)."""

    m: Tuple[int, ...]

    def __post_init__(self) -> None:
        m = tuple(self.m)
        object.__setattr__(self, "m", m)
        if any(not isinstance(c, int) or c < 0 for c in m):
            raise InvalidPartitionError(f"Multiplicities must be nonnegative integers: {m}")
        weighted = sum(j * count for j, count in enumerate(m, start=1))
        if weighted != len(m):
            raise InvalidPartitionError(
                f"Weighted sum of multiplicities is {weighted}, expected {len(m)}: {m}"
            )

    @property
    def n(self) -> int:
        return len(self.m)

    def __getitem__(self, j: int) -> int:
        """1-indexed access: ``vector[1]`` is m_1."""
        if not 1 <= j <= len(self.m):
            raise IndexError(f"Multiplicity index {j} outside 1..{len(self.m)}")
        return self.m[j - 1]

    def to_json(self) -> list:
        return list(self.m)


@dataclass(frozen=True)
class PartitionVector:
    """Parts padded with zeros to length n."""

    entries: Tuple[int, ...]

    def __post_init__(self) -> None:
        entries = tuple(self.entries)
        object.__setattr__(self, "entries", entries)
        if any(not isinstance(e, int) or e < 0 for e in entries):
            raise InvalidPartitionError(f"Entries must be nonnegative integers: {entries}")
        if any(a < b for a, b in zip(entries, entries[1:])):
            raise InvalidPartitionError(f"Entries must be weakly decreasing: {entries}")
        if sum(entries) != len(entries):
            raise InvalidPartitionError(f"Entries of {entries} do not sum to {len(entries)}")

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, j: int) -> int:
        """1-indexed access: ``vector[1]`` is the largest part."""
        if not 1 <= j <= len(self.entries):
            raise IndexError(f"Partition vector index {j} outside 1..{len(self.entries)}")
        return self.entries[j - 1]

    def to_json(self) -> list:
        return list(self.entries)


def _validate_size(n: int) -> None:
    if not isinstance(n, int) or n < 0:
        raise OutOfDomainError(f"Partition size must be a nonnegative integer, got {n!r}")


def _reverse_lex_part_lists(n: int) -> Iterator[Tuple[int, ...]]:
    # Zoghbi-Stojmenovic ZS1: anti-lexicographic order, (n) first, (1^n) last.
    # x is 1-indexed; positions beyond m always hold 1.
    x = [1] * (n + 1)
    x[1] = n
    m = h = 1
    yield (n,)
    while x[1] != 1:
        if x[h] == 2:
            m += 1
            x[h] = 1
            h -= 1
        else:
            r = x[h] - 1
            t = m - h + 1
            x[h] = r
            while t >= r:
                h += 1
                x[h] = r
                t -= r
            if t == 0:
                m = h
            else:
                m = h + 1
                if t > 1:
                    h += 1
                    x[h] = t
        yield tuple(x[1:m + 1])


def enumerate_partitions(n: int) -> Iterator[Partition]:
    """
    Yield every partition of n exactly once in reverse-lexicographic order.

    ``(n)`` comes first and ``(1, ..., 1)`` last; n = 0 yields only the
    empty partition.
    """
    _validate_size(n)
    if n == 0:
        yield Partition(())
        return
    for parts in _reverse_lex_part_lists(n):
        yield Partition(parts)


def partition_number(n: int) -> int:
    """p(n) by Euler's pentagonal-number recurrence."""
    _validate_size(n)
    p = [1] + [0] * n
    for k in range(1, n + 1):
        total = 0
        g = 1
        while True:
            for pentagonal in (g * (3 * g - 1) // 2, g * (3 * g + 1) // 2):
                if pentagonal > k:
                    break
                sign = 1 if g % 2 else -1
                total += sign * p[k - pentagonal]
            if g * (3 * g - 1) // 2 > k:
                break
            g += 1
        p[k] = total
    return p[n]


def to_multiplicity(p: Partition) -> MultiplicityVector:
    """m(lambda): m[j] is the count of part j, for j = 1..n."""
    return MultiplicityVector(tuple(p.multiplicity(j) for j in range(1, p.n + 1)))


def from_multiplicity(m: "MultiplicityVector | Sequence[int]") -> Partition:
    """
    Rebuild the partition from its multiplicity vector.

    Raises:
        InvalidPartitionError: If the weighted sum differs from the length.
    """
    vector = m if isinstance(m, MultiplicityVector) else MultiplicityVector(tuple(m))
    parts = []
    for j in range(vector.n, 0, -1):
        parts.extend([j] * vector.m[j - 1])
    return Partition(tuple(parts))


def to_partition_vector(p: Partition) -> PartitionVector:
    """Lambda(lambda): the parts followed by n - l zeros."""
    return PartitionVector(p.parts + (0,) * (p.n - p.length))


def delete_part(p: Partition, i: int) -> Partition:
    """
    Remove one copy of part i, giving a partition of n - i.

    Restricted to partitions of n that contain i, this is a bijection onto
    the partitions of n - i; :func:`insert_part` is its inverse.

    Raises:
        OutOfDomainError: If i is not a part of p.
    """
    if p.multiplicity(i) < 1:
        raise OutOfDomainError(f"{i} is not a part of {p}")
    index = p.parts.index(i)
    return Partition(p.parts[:index] + p.parts[index + 1:])


def insert_part(mu: Partition, i: int) -> Partition:
    """Add one part i; the inverse of :func:`delete_part`."""
    if not isinstance(i, int) or i < 1:
        raise OutOfDomainError(f"Inserted part must be a positive integer, got {i!r}")
    index = 0
    while index < mu.length and mu.parts[index] >= i:
        index += 1
    return Partition(mu.parts[:index] + (i,) + mu.parts[index:])


def partitions_containing(n: int, i: int) -> Iterator[Partition]:
    """Partitions of n in which part i appears at least once."""
    return (p for p in enumerate_partitions(n) if p.multiplicity(i) > 0)


def centralizer_size(p: Partition) -> int:
    """z_lambda = prod_j j^m_j m_j!, the order of the centralizer of a permutation of type p."""
    size = 1
    for part, count in p.multiplicities.items():
        size *= part ** count * math.factorial(count)
    return size


def count_permutations_of_type(p: Partition) -> int:
    """Number of permutations of S_n with cycle type p: n! / z_lambda."""
    return math.factorial(p.n) // centralizer_size(p)
