"""Scatter-plot enumerations and the scaling benchmark."""

from __future__ import annotations

import itertools
import math
import statistics
import time
from dataclasses import dataclass
from typing import Iterator

import numpy as np
from sympy.utilities.iterables import multiset_permutations

from .engine import kendall_tau_b, symmetric_weighted_tau
from .errors import DomainError
from .weights import HYPERBOLIC, WeightScheme

MAX_PERMUTATION_SIZE = 10
MAX_SKEWED_ARRANGEMENTS = math.factorial(MAX_PERMUTATION_SIZE)


def skewed_multiset(levels: int) -> list[int]:
    """Scores with ``t + 1`` copies of ``t`` for ``0 <= t < levels``, descending."""
    return [t for t in range(levels - 1, -1, -1) for _ in range(t + 1)]


def skewed_count(levels: int) -> int:
    counts = range(1, levels + 1)
    total = math.factorial(sum(counts))
    for c in counts:
        total //= math.factorial(c)
    return total


def scatter_permutations(size: int, scheme: WeightScheme) -> Iterator[tuple[float, float]]:
    """``(tau_b, weighted tau)`` of every permutation against the identity."""
    if not 1 <= size <= MAX_PERMUTATION_SIZE:
        raise DomainError(
            f"permutation size must be between 1 and {MAX_PERMUTATION_SIZE}, got {size}"
        )
    identity = np.arange(size, dtype=np.float64)
    for perm in itertools.permutations(range(size)):
        r = np.array(perm, dtype=np.float64)
        yield kendall_tau_b(r, identity), symmetric_weighted_tau(r, identity, scheme)


def scatter_skewed(levels: int, scheme: WeightScheme) -> Iterator[tuple[float, float]]:
    """Every arrangement of the skewed multiset against the descending one."""
    if levels < 1 or skewed_count(levels) > MAX_SKEWED_ARRANGEMENTS:
        raise DomainError(
            f"skewed mode enumerates at most {MAX_SKEWED_ARRANGEMENTS} arrangements; "
            f"levels={levels} gives {skewed_count(levels) if levels >= 1 else 0}"
        )
    base = skewed_multiset(levels)
    reference = np.array(base, dtype=np.float64)
    for arrangement in multiset_permutations(base):
        r = np.array(arrangement, dtype=np.float64)
        yield kendall_tau_b(r, reference), symmetric_weighted_tau(r, reference, scheme)


def max_divergence(points) -> float:
    return max(abs(b - a) for a, b in points)


@dataclass(frozen=True)
class BenchRow:
    n: int
    median_seconds: float
    ratio: float | None
    value: float


def bench_data(n: int, seed: int) -> tuple[np.ndarray, np.ndarray]:
    """Reproducible tie-free score pairs: a shuffled ramp and its noisy copy."""
    rng = np.random.default_rng(seed)
    r = rng.permutation(n).astype(np.float64)
    s = r + rng.normal(scale=n / 10, size=n)
    return r, s


def bench(
    n: int,
    repetitions: int = 3,
    doublings: int = 2,
    seed: int = 0,
    scheme: WeightScheme = HYPERBOLIC,
) -> list[BenchRow]:
    """Time :func:`symmetric_weighted_tau` at ``n, 2n, ..., 2**doublings * n``."""
    if n < 2:
        raise DomainError("bench needs n >= 2")
    symmetric_weighted_tau([1.0, 2.0], [1.0, 2.0], scheme)  # load compiled kernels
    rows: list[BenchRow] = []
    for step in range(doublings + 1):
        size = n << step
        r, s = bench_data(size, seed)
        times = []
        for _ in range(repetitions):
            start = time.perf_counter()
            value = symmetric_weighted_tau(r, s, scheme)
            times.append(time.perf_counter() - start)
        median = statistics.median(times)
        ratio = median / rows[-1].median_seconds if rows else None
        rows.append(BenchRow(size, median, ratio, value))
    return rows
