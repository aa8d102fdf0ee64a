"""
Monte Carlo cross-validation of the exact engine.

Uniform random permutations are drawn with a Fisher-Yates shuffle, reduced to
cycle types, and the empirical pmf and moments are compared with the exact
values through z-scores and a pooled Pearson chi-square test.

Streams: trials are split into fixed chunks of SAMPLER_CHUNK_SIZE; chunk c is
drawn from PCG64 seeded with SeedSequence(seed, spawn_key=(c,)). Counts are
merged in chunk order, so a run depends on (n, trials, seed) only, never on
the number of workers.
"""

import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np
from scipy import stats

from .distribution import build_pmf, variance_y
from .errors import InsufficientTrialsError, OutOfDomainError
from .partitions import Partition, from_multiplicity
from .xmoments import x_expectations

logger = logging.getLogger(__name__)

# Frozen: changing any of these changes every seeded result.
SAMPLER_CHUNK_SIZE = 65536
SAMPLER_MAX_N = 10 ** 6
Z_THRESHOLD = 4.0
MIN_EXPECTED_COUNT = 5
CHI_SQUARE_LEVEL = 0.999

# Rows of a vectorised batch are capped at this many permutation entries.
_BATCH_ENTRIES = 1 << 22
# Above this n, cycle types are read one permutation at a time.
_VECTORISED_CYCLES_MAX_N = 64

Shuffle = Callable[[np.ndarray], np.ndarray]


def make_stream(seed: int, stream_id: int) -> np.random.Generator:
    """Independent PCG64 generator for (seed, stream_id)."""
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(stream_id,))))


def shuffle_draws(rng: np.random.Generator, n: int, batch: int) -> np.ndarray:
    """
    Swap targets for ``batch`` Fisher-Yates shuffles of size n.

    Column k holds a uniform index in [0, n - k), the partner of position
    n - 1 - k.
    """
    highs = np.arange(n, 1, -1, dtype=np.int64)
    return rng.integers(0, highs, size=(batch, n - 1), dtype=np.int64)


def fisher_yates_batch(draws: np.ndarray, swaps: Optional[int] = None) -> np.ndarray:
    """
    Apply Fisher-Yates shuffles row by row to the identity permutation.

    Args:
        draws: Swap targets from :func:`shuffle_draws`, shape (batch, n - 1).
        swaps: Number of swaps to perform; all n - 1 when None.

    Returns:
        Array of shape (batch, n) with one permutation of 0..n-1 per row.
    """
    batch, columns = draws.shape
    n = columns + 1
    perms = np.tile(np.arange(n, dtype=np.int64), (batch, 1))
    rows = np.arange(batch)
    for k in range(columns if swaps is None else swaps):
        i = n - 1 - k
        j = draws[:, k]
        held = perms[rows, i].copy()
        perms[rows, i] = perms[rows, j]
        perms[rows, j] = held
    return perms


def cycle_lengths(perm: np.ndarray) -> List[int]:
    """Cycle lengths of one permutation, in a single pass with a visited mask."""
    n = len(perm)
    visited = np.zeros(n, dtype=bool)
    lengths = []
    for start in range(n):
        if visited[start]:
            continue
        length = 0
        position = start
        while not visited[position]:
            visited[position] = True
            position = perm[position]
            length += 1
        lengths.append(length)
    return lengths


def cycle_multiplicities(perms: np.ndarray) -> np.ndarray:
    """
    Multiplicity vectors of a batch of permutations.

    Returns:
        Integer array of shape (batch, n); entry [r, j - 1] is m_j of row r.
    """
    batch, n = perms.shape
    if n > _VECTORISED_CYCLES_MAX_N:
        result = np.zeros((batch, n), dtype=np.int64)
        for row, perm in enumerate(perms):
            for length in cycle_lengths(perm):
                result[row, length - 1] += 1
        return result

    # Follow every element around its cycle; an element's cycle length is the
    # first step at which it returns to itself.
    identity = np.arange(n)
    current = perms.copy()
    element_length = np.zeros((batch, n), dtype=np.int64)
    for step in range(1, n + 1):
        element_length[(current == identity) & (element_length == 0)] = step
        current = np.take_along_axis(perms, current, axis=1)
    result = np.zeros((batch, n), dtype=np.int64)
    for length in range(1, n + 1):
        result[:, length - 1] = (element_length == length).sum(axis=1) // length
    return result


def random_cycle_type(
    n: int, rng: np.random.Generator, shuffle: Shuffle = fisher_yates_batch
) -> Partition:
    """Cycle type of one uniform random permutation of size n."""
    if not isinstance(n, int) or n < 1:
        raise OutOfDomainError(f"n must be a positive integer, got {n!r}")
    if n == 1:
        return Partition((1,))
    perm = shuffle(shuffle_draws(rng, n, 1))[0]
    return Partition(tuple(sorted(cycle_lengths(perm), reverse=True)))


def _sample_chunk(
    n: int, seed: int, chunk_index: int, size: int, shuffle: Shuffle
) -> Counter:
    if n == 1:
        return Counter({Partition((1,)): size})
    rng = make_stream(seed, chunk_index)
    batch = max(1, min(size, _BATCH_ENTRIES // n))
    counts: Counter = Counter()
    remaining = size
    while remaining:
        rows = min(batch, remaining)
        multiplicities = cycle_multiplicities(shuffle(shuffle_draws(rng, n, rows)))
        unique, frequency = np.unique(multiplicities, axis=0, return_counts=True)
        for m, count in zip(unique, frequency):
            counts[from_multiplicity([int(c) for c in m])] += int(count)
        remaining -= rows
    logger.debug(f"Chunk {chunk_index}: {size} trials, {len(counts)} distinct cycle types")
    return counts


@dataclass(frozen=True)
class EmpiricalMoment:
    """
    Empirical mean of one component against its exact value.

    ``z`` is measured in exact-model standard errors, sqrt(Var/trials), so a
    component that is never observed still gets a finite score.
    ``standard_error`` is the empirical one, reported alongside.
    """

    component: str
    index: int
    mean: float
    standard_error: float
    exact: Optional[Fraction] = None
    model_standard_error: Optional[float] = None
    z: Optional[float] = None

    @property
    def within_threshold(self) -> Optional[bool]:
        if self.exact is None:
            return None
        return abs(self.z) < Z_THRESHOLD


def _moment(
    component: str,
    index: int,
    total: int,
    total_sq: int,
    trials: int,
    exact: Optional[Fraction],
    exact_variance: Optional[Fraction],
) -> EmpiricalMoment:
    mean = Fraction(total, trials)
    if trials > 1:
        variance = (Fraction(total_sq) - trials * mean * mean) / (trials - 1)
        standard_error = math.sqrt(float(variance) / trials)
    else:
        standard_error = 0.0
    if exact is None:
        return EmpiricalMoment(component, index, float(mean), standard_error)
    model_se = math.sqrt(float(exact_variance) / trials)
    if model_se > 0:
        z = float(mean - exact) / model_se
    else:
        z = 0.0 if mean == exact else math.copysign(math.inf, mean - exact)
    return EmpiricalMoment(component, index, float(mean), standard_error, exact, model_se, z)


@dataclass(frozen=True)
class SampleRun:
    """Counts and summaries of one seeded Monte Carlo run."""

    n: int
    trials: int
    seed: int
    empirical_pmf: Dict[Partition, int]
    y_moments: Tuple[EmpiricalMoment, ...] = ()
    x_moments: Tuple[EmpiricalMoment, ...] = ()

    def frequency(self, p: Partition) -> float:
        return self.empirical_pmf.get(p, 0) / self.trials

    def sorted_pmf(self) -> List[Tuple[Partition, int]]:
        """Observed cycle types in reverse-lexicographic order."""
        return sorted(self.empirical_pmf.items(), reverse=True)

    @property
    def gated_moments(self) -> Tuple[EmpiricalMoment, ...]:
        """E(Y_i) for every i and E(X_1): the moments the concordance verdict rests on."""
        return self.y_moments + self.x_moments[:1]

    @property
    def moments_ok(self) -> bool:
        return all(m.within_threshold is not False for m in self.gated_moments)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "trials": self.trials,
            "seed": self.seed,
            "pmf": [{"partition": p.to_json(), "count": c} for p, c in self.sorted_pmf()],
            "moments": [_moment_dict(m) for m in self.y_moments + self.x_moments],
        }


def _moment_dict(moment: EmpiricalMoment) -> dict:
    return {
        "component": moment.component,
        "index": moment.index,
        "mean": moment.mean,
        "standard_error": moment.standard_error,
        "exact": moment.exact,
        "model_standard_error": moment.model_standard_error,
        "z": moment.z,
        "within_threshold": moment.within_threshold,
    }


def validate_sampling(n: int, trials: int, seed: int) -> None:
    if not isinstance(n, int) or not 1 <= n <= SAMPLER_MAX_N:
        raise OutOfDomainError(f"n must lie in 1..{SAMPLER_MAX_N}, got {n!r}")
    if not isinstance(trials, int) or trials < 1:
        raise OutOfDomainError(f"trials must be a positive integer, got {trials!r}")
    if not isinstance(seed, int) or not 0 <= seed < 2 ** 64:
        raise OutOfDomainError(f"seed must be a 64-bit unsigned integer, got {seed!r}")


def sample_cycle_types(
    n: int,
    trials: int,
    seed: int,
    workers: int = 1,
    shuffle: Shuffle = fisher_yates_batch,
    job_manager=None,
) -> Counter:
    """Cycle-type counts of ``trials`` seeded uniform permutations."""
    validate_sampling(n, trials, seed)
    from ..core.job_manager import JobManager

    chunks = [
        (index, min(SAMPLER_CHUNK_SIZE, trials - start))
        for index, start in enumerate(range(0, trials, SAMPLER_CHUNK_SIZE))
    ]
    manager = job_manager or JobManager()
    logger.info(f"Sampling n={n}, trials={trials}, seed={seed} in {len(chunks)} chunk(s), {workers} worker(s)")

    def merge(acc: Counter, part: Counter) -> Counter:
        acc.update(part)
        return acc

    return manager.map_reduce(
        lambda chunk: _sample_chunk(n, seed, chunk[0], chunk[1], shuffle),
        chunks,
        combine=merge,
        initial=Counter(),
        workers=workers,
        total_chunks=len(chunks),
    )


def empirical_moments(
    n: int,
    trials: int,
    seed: int,
    workers: int = 1,
    shuffle: Shuffle = fisher_yates_batch,
    exact_x_max_n: int = 60,
    job_manager=None,
) -> SampleRun:
    """
    Sample, then summarise E(Y_i) and E(X_j) against the exact values.

    E(Y_i) = 1/i and Var(Y_i) are closed forms and always available; exact
    E(X_j) and Var(X_j) need an enumeration and are attached only when
    n <= exact_x_max_n.
    """
    counts = sample_cycle_types(n, trials, seed, workers, shuffle, job_manager)

    y_sum: Counter = Counter()
    y_sq: Counter = Counter()
    x_sum: Counter = Counter()
    x_sq: Counter = Counter()
    for p, count in counts.items():
        for part, multiplicity in p.multiplicities.items():
            y_sum[part] += multiplicity * count
            y_sq[part] += multiplicity * multiplicity * count
        for position, part in enumerate(p.parts, start=1):
            x_sum[position] += part * count
            x_sq[position] += part * part * count

    exact_x = x_expectations(n) if n <= exact_x_max_n else None
    y_moments = tuple(
        _moment("Y", i, y_sum[i], y_sq[i], trials, Fraction(1, i), variance_y(n, i))
        for i in range(1, n + 1)
    )
    x_moments = tuple(
        _moment(
            "X", j, x_sum[j], x_sq[j], trials,
            exact_x.value(j) if exact_x else None,
            exact_x.variance(j) if exact_x else None,
        )
        for j in range(1, n + 1)
    )
    run = SampleRun(n, trials, seed, dict(counts), y_moments, x_moments)
    for moment in y_moments + x_moments:
        if moment.within_threshold is False:
            logger.warning(f"n={n}, seed={seed}: E({moment.component}_{moment.index}) has z={moment.z}")
    return run


@dataclass(frozen=True)
class PmfZScore:
    partition: Partition
    exact: Fraction
    count: int
    frequency: float
    z: float


def pmf_z_scores(run: SampleRun) -> List[PmfZScore]:
    """Binomial z-score of every cell of the exact pmf, reverse-lex order."""
    scores = []
    for p, probability in build_pmf(run.n).entries.items():
        count = run.empirical_pmf.get(p, 0)
        frequency = Fraction(count, run.trials)
        standard_error = math.sqrt(float(probability * (1 - probability)) / run.trials)
        if standard_error > 0:
            z = float(frequency - probability) / standard_error
        else:
            z = 0.0 if frequency == probability else math.copysign(math.inf, frequency - probability)
        scores.append(PmfZScore(p, probability, count, float(frequency), z))
    return scores


@dataclass(frozen=True)
class PooledCell:
    """Partitions merged into one chi-square cell."""

    partitions: Tuple[Partition, ...]
    probability: Fraction
    observed: int
    expected: Fraction


def pool_cells(
    probabilities: Dict[Partition, Fraction], observed: Dict[Partition, int], trials: int
) -> List[PooledCell]:
    """
    Merge cells, smallest probability first, until each expects >= MIN_EXPECTED_COUNT.

    A trailing group below the floor joins the previous cell.

    Raises:
        InsufficientTrialsError: If fewer than two cells reach the floor.
    """
    order = sorted(enumerate(probabilities.items()), key=lambda item: (item[1][1], item[0]))
    groups: List[List[Partition]] = []
    group: List[Partition] = []
    group_probability = Fraction(0)
    for _, (p, probability) in order:
        group.append(p)
        group_probability += probability
        if trials * group_probability >= MIN_EXPECTED_COUNT:
            groups.append(group)
            group, group_probability = [], Fraction(0)
    if group:
        if not groups:
            raise InsufficientTrialsError(
                f"{trials} trials cannot give any cell an expected count of {MIN_EXPECTED_COUNT}"
            )
        groups[-1].extend(group)
    if len(groups) < 2:
        raise InsufficientTrialsError(f"{trials} trials leave fewer than two pooled cells")

    cells = []
    for members in groups:
        probability = sum((probabilities[p] for p in members), Fraction(0))
        cells.append(
            PooledCell(
                partitions=tuple(members),
                probability=probability,
                observed=sum(observed.get(p, 0) for p in members),
                expected=trials * probability,
            )
        )
    return cells


@dataclass(frozen=True)
class ChiSquareReport:
    """Pearson chi-square of a run against the exact pmf."""

    status: str  # "tested", "skipped" or "insufficient_trials"
    dof: int = 0
    statistic: Optional[float] = None
    quantile: Optional[float] = None
    level: float = CHI_SQUARE_LEVEL
    cells: Tuple[PooledCell, ...] = field(default=())
    notice: str = ""

    @property
    def passed(self) -> Optional[bool]:
        if self.status != "tested":
            return None
        return self.statistic < self.quantile

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "statistic": self.statistic,
            "dof": self.dof,
            "quantile": self.quantile,
            "level": self.level,
            "passed": self.passed,
            "cells": len(self.cells),
            "notice": self.notice,
        }


def chi_square_report(run: SampleRun, exact_max_n: int = 60) -> ChiSquareReport:
    """
    Pooled Pearson chi-square of the run's counts against the exact pmf.

    dof is the number of pooled cells minus one; the test passes when the
    statistic is below the CHI_SQUARE_LEVEL quantile.
    """
    if run.n == 1:
        return ChiSquareReport(status="skipped", notice="n=1 has a single cell (dof 0); test skipped")
    if run.n > exact_max_n:
        return ChiSquareReport(
            status="skipped", notice=f"exact pmf is not enumerated above n={exact_max_n}; test skipped"
        )
    probabilities = build_pmf(run.n).entries
    try:
        cells = pool_cells(probabilities, run.empirical_pmf, run.trials)
    except InsufficientTrialsError as e:
        logger.warning(str(e))
        return ChiSquareReport(status="insufficient_trials", notice=str(e))

    statistic = Fraction(0)
    for cell in cells:
        statistic += (cell.observed - cell.expected) ** 2 / cell.expected
    dof = len(cells) - 1
    report = ChiSquareReport(
        status="tested",
        dof=dof,
        statistic=float(statistic),
        quantile=float(stats.chi2.ppf(CHI_SQUARE_LEVEL, dof)),
        cells=tuple(cells),
    )
    if not report.passed:
        logger.warning(f"n={run.n}, seed={run.seed}: chi-square {report.statistic:.6g} >= {report.quantile:.6g}")
    return report
