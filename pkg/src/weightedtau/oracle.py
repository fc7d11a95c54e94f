"""Quadratic brute-force reference for every quantity the engine computes.

Everything here enumerates the ``n(n-1)/2`` index pairs explicitly (in row
chunks, to bound memory) and never merges, so it shares no code path with the
engine beyond the weight functions themselves.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .engine import CorrelationBreakdown
from .errors import TiesError, UndefinedCorrelationError
from .scores import as_scores, check_lengths, check_ranks
from .weights import WeightScheme, pair_weight

_CHUNK_PAIRS = 1 << 20


class PairClass(enum.Enum):
    JOINT_TIE = "joint tie"
    LEFT_TIE = "left tie"
    RIGHT_TIE = "right tie"
    CONCORDANCE = "concordance"
    DISCORDANCE = "discordance"


def classify_pair(r_i: float, r_j: float, s_i: float, s_j: float) -> PairClass:
    if r_i == r_j:
        return PairClass.JOINT_TIE if s_i == s_j else PairClass.LEFT_TIE
    if s_i == s_j:
        return PairClass.RIGHT_TIE
    sign = (1 if r_i > r_j else -1) * (1 if s_i > s_j else -1)
    return PairClass.CONCORDANCE if sign > 0 else PairClass.DISCORDANCE


def _band(n: int, start: int, stop: int) -> tuple[np.ndarray, np.ndarray]:
    """All pairs ``i < j`` with ``start <= i < stop``."""
    rows = np.arange(start, stop)
    counts = n - 1 - rows
    i = np.repeat(rows, counts)
    offsets = np.arange(i.size) - np.repeat(np.cumsum(counts) - counts, counts)
    return i, i + 1 + offsets


@lru_cache(maxsize=32)
def _cached_pairs(n: int) -> tuple[np.ndarray, np.ndarray]:
    return _band(n, 0, n - 1)


def _pairs(n: int):
    if n * (n - 1) // 2 <= _CHUNK_PAIRS:
        yield _cached_pairs(n)
        return
    rows_per_chunk = max(1, _CHUNK_PAIRS // n)
    for start in range(0, n - 1, rows_per_chunk):
        yield _band(n, start, min(n - 1, start + rows_per_chunk))


def _weights(ranks: np.ndarray, scheme: WeightScheme, i: np.ndarray, j: np.ndarray):
    if scheme.symmetric:
        # argument order is immaterial, so skip sorting each pair's ranks
        fv = scheme.left(ranks)
        return fv[i] + fv[j] if scheme.additive else fv[i] * fv[j]
    a = np.minimum(ranks[i], ranks[j])
    b = np.maximum(ranks[i], ranks[j])
    return pair_weight(scheme, a, b)


def _prepare(r, s, ranks):
    r = as_scores(r, "r")
    s = as_scores(s, "s")
    n = check_lengths(r, s)
    return r, s, check_ranks(ranks, n), n


@dataclass(frozen=True)
class OracleReport:
    """Everything one enumeration of the pairs yields.

    ``inner``, ``norm_r`` and ``norm_s`` come straight from sign products,
    not from the breakdown identities.
    """

    breakdown: CorrelationBreakdown
    inner: float
    norm_r: float
    norm_s: float

    @property
    def tau(self) -> float:
        if self.norm_r == 0 or self.norm_s == 0:
            which = "r" if self.norm_r == 0 else "s"
            raise UndefinedCorrelationError(f"{which} has zero weighted norm")
        return self.inner / (self.norm_r * self.norm_s)


def oracle_report(r, s, ranks, scheme: WeightScheme) -> OracleReport:
    r, s, ranks, n = _prepare(r, s, ranks)
    total = left = right = joint = disc = 0.0
    inner = rr = ss = 0.0
    for i, j in _pairs(n):
        w = _weights(ranks, scheme, i, j)
        sr = np.sign(r[i] - r[j])
        sgn_s = np.sign(s[i] - s[j])
        r_tie = sr == 0
        s_tie = sgn_s == 0
        total += w.sum()
        left += np.dot(w, r_tie)
        right += np.dot(w, s_tie)
        joint += np.dot(w, r_tie & s_tie)
        disc += np.dot(w, sr * sgn_s < 0)
        inner += np.dot(sr * sgn_s, w)
        rr += np.dot(sr * sr, w)
        ss += np.dot(sgn_s * sgn_s, w)
    bd = CorrelationBreakdown(
        T=float(total), L=float(left), R=float(right), J=float(joint), D=float(disc), n=n
    )
    return OracleReport(bd, float(inner), math.sqrt(rr), math.sqrt(ss))


def oracle_breakdown(r, s, ranks, scheme: WeightScheme) -> CorrelationBreakdown:
    """Weighted totals of all pairs, ties, and discordances by enumeration.

    ``L`` and ``R`` include joint ties, matching the engine.
    """
    return oracle_report(r, s, ranks, scheme).breakdown


def oracle_inner(r, s, ranks, scheme: WeightScheme) -> float:
    """Sum over pairs of ``sgn(r_i - r_j) * sgn(s_i - s_j) * w``."""
    return oracle_report(r, s, ranks, scheme).inner


def oracle_norm(r, ranks, scheme: WeightScheme) -> float:
    return math.sqrt(oracle_inner(r, r, ranks, scheme))


def oracle_tau(r, s, ranks, scheme: WeightScheme) -> float:
    return oracle_report(r, s, ranks, scheme).tau


def oracle_ap(r, s) -> float:
    """AP correlation of ``r`` with respect to ``s`` from its definition.

    Items are visited in decreasing ``s`` order; for the item in position
    ``i >= 1`` we count how many of the ``i`` items above it in ``s`` are also
    above it in ``r``.
    """
    r = as_scores(r, "r")
    s = as_scores(s, "s")
    n = check_lengths(r, s)
    if n < 2:
        raise UndefinedCorrelationError("AP correlation needs at least two items")
    if np.unique(r).size != n or np.unique(s).size != n:
        raise TiesError("AP correlation is undefined on tied scores")
    by_s = np.argsort(-s, kind="stable")
    r_in_s_order = r[by_s]
    acc = 0.0
    for i in range(1, n):
        correct = np.count_nonzero(r_in_s_order[:i] > r_in_s_order[i])
        acc += correct / i
    return 2.0 * acc / (n - 1) - 1.0
