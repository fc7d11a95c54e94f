"""Weight schemes built from one-argument functions on ranks.

A pair of items whose ranks are ``a <= b`` weighs ``f(a) + g(b)`` under an
additive scheme and ``f(a) * g(b)`` under a multiplicative one.  When ``g`` is
omitted it defaults to ``f`` and the pair weight is symmetric.

All weight functions are vectorized: they take a ``float64`` array of ranks
(possibly containing ``inf``) and return an array of nonnegative weights.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from typing import Callable

import numpy as np

from .errors import DomainError

RankFunction = Callable[[np.ndarray], np.ndarray]


class Combiner(enum.Enum):
    ADDITIVE = "add"
    MULTIPLICATIVE = "mul"


@dataclass(frozen=True)
class WeightScheme:
    name: str
    f: RankFunction
    g: RankFunction | None = None
    combiner: Combiner = Combiner.ADDITIVE

    @property
    def symmetric(self) -> bool:
        return self.g is None or self.g is self.f

    @property
    def additive(self) -> bool:
        return self.combiner is Combiner.ADDITIVE

    def left(self, ranks) -> np.ndarray:
        """Weights of the better-ranked member of a pair."""
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.asarray(self.f(np.asarray(ranks, dtype=np.float64)), dtype=np.float64)

    def right(self, ranks) -> np.ndarray:
        """Weights of the worse-ranked member of a pair."""
        fn = self.f if self.g is None else self.g
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.asarray(fn(np.asarray(ranks, dtype=np.float64)), dtype=np.float64)

    def with_combiner(self, combiner: Combiner | str) -> "WeightScheme":
        return replace(self, combiner=Combiner(combiner))

    def describe(self) -> str:
        return f"{self.name}/{self.combiner.value}"


def _hyperbolic(r):
    return 1.0 / (r + 1.0)


def _logarithmic(r):
    return 1.0 / np.log2(r + 2.0)


def _quadratic(r):
    return 1.0 / np.square(r + 1.0)


def _constant(r):
    return np.ones_like(r)


def _zero(r):
    return np.zeros_like(r)


def _reciprocal(r):
    # rank 0 is never the worse member of a pair; NaN flags a broken contract
    return np.where(r == 0, np.nan, 1.0 / r)


HYPERBOLIC = WeightScheme("hyperbolic", _hyperbolic)
LOGARITHMIC = WeightScheme("logarithmic", _logarithmic)
QUADRATIC = WeightScheme("quadratic", _quadratic)
CONSTANT = WeightScheme("constant", _constant)
AP_WEIGHT = WeightScheme("ap", _zero, _reciprocal)

SCHEMES = {s.name: s for s in (HYPERBOLIC, LOGARITHMIC, QUADRATIC, CONSTANT, AP_WEIGHT)}


def get_scheme(name: str, combiner: Combiner | str = Combiner.ADDITIVE) -> WeightScheme:
    """Look up a built-in scheme by its CLI name and attach a combiner."""
    try:
        base = SCHEMES[name]
    except KeyError:
        raise DomainError(
            f"unknown weight scheme {name!r}; choose from {', '.join(SCHEMES)}"
        ) from None
    return base.with_combiner(combiner)


def _combine(scheme: WeightScheme, left: np.ndarray, right: np.ndarray) -> np.ndarray:
    return left + right if scheme.additive else left * right


def pair_weight(scheme: WeightScheme, a, b):
    """Weight of a pair with ranks ``a <= b``; works elementwise on arrays."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if np.any(a > b):
        raise DomainError("pair_weight requires a <= b")
    w = _combine(scheme, scheme.left(a), scheme.right(b))
    if not np.all(np.isfinite(w)):
        raise DomainError(f"{scheme.name} weight is undefined for these ranks")
    return float(w) if w.ndim == 0 else w


def total_weight(scheme: WeightScheme, ranks) -> float:
    """Sum of :func:`pair_weight` over all unordered pairs of items.

    Runs in linear time for symmetric schemes.  Asymmetric schemes need the
    ranks in increasing order, so they pay for one sort.
    """
    ranks = np.asarray(ranks, dtype=np.float64)
    n = ranks.size
    if n < 2:
        return 0.0
    if scheme.symmetric:
        fv = scheme.left(ranks)
        if scheme.additive:
            return float((n - 1) * fv.sum())
        total = fv.sum()
        return float((total * total - np.dot(fv, fv)) / 2)
    ranks = np.sort(ranks)
    fv = scheme.left(ranks)
    # the best-ranked item is never the worse member of a pair
    gv = scheme.right(ranks[1:])
    pos = np.arange(n, dtype=np.float64)
    if scheme.additive:
        return float(np.dot(n - 1 - pos, fv) + np.dot(pos[1:], gv))
    before = np.cumsum(fv)[:-1]
    return float(np.dot(gv, before))


def block_weight(scheme: WeightScheme, block_ranks) -> float:
    """Total weight of the pairs inside one block of tied items."""
    return total_weight(scheme, block_ranks)
