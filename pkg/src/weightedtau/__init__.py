"""Weighted rank correlation: weighted Kendall's tau, tau-b, gamma, AP correlation."""

from .apcorr import ap_correlation, symmetric_ap
from .engine import (
    CorrelationBreakdown,
    TauResult,
    goodman_kruskal_gamma,
    kendall_tau_b,
    symmetric_weighted_tau,
    tie_weights,
    weighted_exchange_count,
    weighted_tau,
)
from .errors import (
    DomainError,
    LengthMismatchError,
    ParseError,
    TiesError,
    UndefinedCorrelationError,
    WeightedTauError,
)
from .scores import (
    INFINITE_RANK,
    lex_rank,
    parse_ranks,
    parse_scores,
    read_ranks,
    read_scores,
    truncate_ranks,
)
from .weights import (
    AP_WEIGHT,
    CONSTANT,
    HYPERBOLIC,
    LOGARITHMIC,
    QUADRATIC,
    Combiner,
    WeightScheme,
    block_weight,
    get_scheme,
    pair_weight,
    total_weight,
)

__version__ = "0.1.0"
