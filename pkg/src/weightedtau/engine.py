"""Weighted Kendall's tau in O(n log n).

The pipeline sorts the items by the first vector (second vector breaking
ties), accumulates the total weight and the weight of tied blocks, then
merge-sorts by the second vector while weighing every exchange.  Exchanges are
exactly the discordant pairs, so the correlation follows from

    inner = T - (L + R - J) - 2 D,   |r|^2 = T - L,   |s|^2 = T - R

where ``L``/``R`` are the weights of pairs tied in the first/second vector
(joint ties included) and ``J`` the weight of pairs tied in both.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Union

import numpy as np

from . import _kernels
from .errors import DomainError, UndefinedCorrelationError
from .scores import as_scores, check_lengths, check_ranks, lex_order
from .weights import CONSTANT, WeightScheme

RankSource = Literal["first", "second", "external"]
Ranks = Union[RankSource, np.ndarray, list]

# radicands below this fraction of T are treated as zero
_DEGENERATE = 1e-12


@dataclass(frozen=True)
class CorrelationBreakdown:
    """Weighted totals: all pairs, left/right/joint ties, discordances."""

    T: float
    L: float
    R: float
    J: float
    D: float
    n: int

    @property
    def C(self) -> float:
        return self.T - self.L - self.R + self.J - self.D

    @property
    def inner(self) -> float:
        return (self.T - self.L) - (self.R - self.J) - 2 * self.D

    @property
    def norm_r_squared(self) -> float:
        return self.T - self.L

    @property
    def norm_s_squared(self) -> float:
        return self.T - self.R

    def swapped(self) -> "CorrelationBreakdown":
        return CorrelationBreakdown(self.T, self.R, self.L, self.J, self.D, self.n)


@dataclass(frozen=True)
class TauResult:
    value: float
    breakdown: CorrelationBreakdown
    rank_source: RankSource


def weighted_exchange_count(items, keys, ranks, scheme: WeightScheme, descending=True):
    """Weigh the exchanges a stable merge sort performs on ``items``.

    Args:
        items: item indices in their current list order.
        keys: sort key of every item, indexed by item.
        ranks: rank of every item, indexed by item.
        scheme: weight scheme; an exchange between an item of the first and
            one of the second merged sublist weighs as the pair
            (first, second).
        descending: sort by decreasing key (the default) or increasing key.

    Returns:
        ``(exchange_weight, sorted_items)``.
    """
    items = np.array(items, dtype=np.int64)
    keys = np.asarray(keys, dtype=np.float64)
    ranks = np.asarray(ranks, dtype=np.float64)
    k = keys[items] if descending else -keys[items]
    fw = scheme.left(ranks)[items]
    gw = scheme.right(ranks)[items]
    e = _kernels.exchange_weight(k, fw, gw, items, not scheme.additive)
    return float(e), items


def tie_weights(r, s, ranks, scheme: WeightScheme, order=None):
    """Return ``(L, R, J)`` by scanning blocks of tied scores.

    ``order`` is the list sorted by decreasing ``(r, s)``; it is computed when
    omitted.  For asymmetric schemes, ranks must increase along the list.
    """
    r = np.asarray(r, dtype=np.float64)
    s = np.asarray(s, dtype=np.float64)
    ranks = np.asarray(ranks, dtype=np.float64)
    if order is None:
        order = np.lexsort((ranks, -s, -r))
    mult = not scheme.additive
    fw = scheme.left(ranks)[order]
    gw = scheme.right(ranks)[order]
    left, joint = _kernels.tie_weights(r[order], s[order], fw, gw, mult)
    by_s = np.lexsort((np.arange(len(order)), -s[order]))
    ks = s[order][by_s]
    right, _ = _kernels.tie_weights(ks, ks, fw[by_s], gw[by_s], mult)
    return float(left), float(right), float(joint)


def _breakdown(a, b, fw, gw, scheme: WeightScheme) -> CorrelationBreakdown:
    """Run the pipeline on vectors already laid out in decreasing ``(a, b)`` order.

    ``a`` is only read; ``b``, ``fw`` and ``gw`` are consumed (re-sorted by
    ``b``).
    """
    mult = not scheme.additive
    total = _kernels.total_weight(fw, gw, mult)
    left, joint = _kernels.tie_weights(a, b, fw, gw, mult)
    idx = np.arange(len(b), dtype=np.int64)
    disc = _kernels.exchange_weight(b, fw, gw, idx, mult)
    right, _ = _kernels.tie_weights(b, b, fw, gw, mult)
    return CorrelationBreakdown(
        T=float(total), L=float(left), R=float(right), J=float(joint),
        D=float(disc), n=len(b),
    )


def _lex_breakdown(a, b, scheme: WeightScheme) -> CorrelationBreakdown:
    """Breakdown with ranks equal to the lexicographic ranking by ``(a, b)``."""
    order = lex_order(a, b)
    positions = np.arange(len(a), dtype=np.float64)
    return _breakdown(
        a[order], b[order], scheme.left(positions), scheme.right(positions), scheme
    )


def _monotone(sorted_ranks: np.ndarray) -> bool:
    return bool(np.all(sorted_ranks[1:] >= sorted_ranks[:-1]))


def _external_breakdown(r, s, ranks, scheme: WeightScheme) -> CorrelationBreakdown:
    order = np.lexsort((ranks, -s, -r))
    swap = False
    if not scheme.symmetric and not _monotone(ranks[order]):
        # an asymmetric weight needs the merge list in rank order; the inner
        # product is symmetric in r and s, so sorting by s first is equally valid
        order = np.lexsort((ranks, -r, -s))
        if not _monotone(ranks[order]):
            raise DomainError(
                f"asymmetric scheme {scheme.name!r} needs ranks that follow the "
                "lexicographic order of (r, s) or of (s, r)"
            )
        swap = True
    a, b = (s, r) if swap else (r, s)
    bd = _breakdown(
        a[order], b[order], scheme.left(ranks)[order], scheme.right(ranks)[order], scheme
    )
    return bd.swapped() if swap else bd


def _check_pair(r, s):
    r = as_scores(r, "r")
    s = as_scores(s, "s")
    check_lengths(r, s)
    return r, s


def _degenerate(name: str, v: np.ndarray) -> UndefinedCorrelationError:
    if np.all(v == v[0]):
        return UndefinedCorrelationError(f"{name} is constant, so its weighted norm is zero")
    return UndefinedCorrelationError(
        f"{name} has zero weighted norm: every pair it does not tie carries zero weight"
    )


def tau_value(bd: CorrelationBreakdown, r, s) -> float:
    nr = bd.norm_r_squared
    ns = bd.norm_s_squared
    floor = _DEGENERATE * bd.T
    if not nr > floor:
        raise _degenerate("r", r)
    if not ns > floor:
        raise _degenerate("s", s)
    value = bd.inner / math.sqrt(nr * ns)
    if not math.isfinite(value):
        raise DomainError("weight scheme produced undefined pair weights for these ranks")
    return value


def compute_breakdown(r, s, ranks: Ranks, scheme: WeightScheme):
    """Validate inputs and return ``(breakdown, rank_source)``."""
    r, s = _check_pair(r, s)
    if isinstance(ranks, str):
        if ranks == "first":
            return _lex_breakdown(r, s, scheme), "first"
        if ranks == "second":
            return _lex_breakdown(s, r, scheme).swapped(), "second"
        raise DomainError(f"unknown rank source {ranks!r}")
    ranks = check_ranks(ranks, len(r))
    return _external_breakdown(r, s, ranks, scheme), "external"


def weighted_tau(r, s, ranks: Ranks, scheme: WeightScheme) -> TauResult:
    """Weighted Kendall's tau of two score vectors under a rank assignment.

    Args:
        r, s: equal-length score vectors; ties are allowed.
        ranks: a rank assignment (array of naturals/``inf``), or ``"first"``
            for the lexicographic ranking by ``(r, s)`` or ``"second"`` for
            the one by ``(s, r)``.
        scheme: weight scheme.

    Raises:
        UndefinedCorrelationError: one of the vectors has zero weighted norm.
    """
    bd, source = compute_breakdown(r, s, ranks, scheme)
    return TauResult(tau_value(bd, np.asarray(r, float), np.asarray(s, float)), bd, source)


def symmetric_tau_results(r, s, scheme: WeightScheme) -> tuple[TauResult, TauResult]:
    return weighted_tau(r, s, "first", scheme), weighted_tau(r, s, "second", scheme)


def symmetric_weighted_tau(r, s, scheme: WeightScheme) -> float:
    """Average of the weighted taus under both lexicographic rankings."""
    first, second = symmetric_tau_results(r, s, scheme)
    return (first.value + second.value) / 2


def kendall_tau_b(r, s) -> float:
    """Classical Kendall's tau-b (every pair weighs the same)."""
    return weighted_tau(r, s, "first", CONSTANT).value


def gamma_value(bd: CorrelationBreakdown) -> float:
    c, d = bd.C, bd.D
    if not c + d > _DEGENERATE * bd.T:
        raise UndefinedCorrelationError(
            "gamma is undefined: no untied pair carries positive weight"
        )
    return (c - d) / (c + d)


def goodman_kruskal_gamma(r, s, ranks: Ranks, scheme: WeightScheme) -> float:
    """Weighted Goodman-Kruskal gamma ``(C - D) / (C + D)``; ties are ignored."""
    bd, _ = compute_breakdown(r, s, ranks, scheme)
    return gamma_value(bd)
