"""AP (average precision) correlation of tie-free score vectors."""

import numpy as np

from . import _kernels
from .errors import TiesError, UndefinedCorrelationError
from .scores import as_scores, check_lengths


def _has_ties(v: np.ndarray) -> bool:
    sv = np.sort(v)
    return bool(np.any(sv[1:] == sv[:-1]))


def ap_correlation(r, s) -> float:
    """AP correlation of ``r`` with respect to the reference ranking ``s``.

    Each discordant pair weighs the reciprocal of the ``s``-rank of its worse
    item (ranks start at 0), so the total weight is ``n - 1`` and the result
    is ``(n - 1 - 2e) / (n - 1)`` where ``e`` is the exchange weight.
    """
    r = as_scores(r, "r")
    s = as_scores(s, "s")
    n = check_lengths(r, s)
    if n < 2:
        raise UndefinedCorrelationError("AP correlation needs at least two items")
    for name, v in (("r", r), ("s", s)):
        if _has_ties(v):
            raise TiesError(f"AP correlation is undefined on ties, but {name} has ties")
    order = np.argsort(-s, kind="stable")
    keys = r[order]
    ranks = np.arange(n, dtype=np.float64)
    e = _kernels.ap_exchange_weight(keys, ranks)
    total = n - 1.0
    return (total - 2.0 * e) / total


def symmetric_ap(r, s) -> float:
    return (ap_correlation(r, s) + ap_correlation(s, r)) / 2
