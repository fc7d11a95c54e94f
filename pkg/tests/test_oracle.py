import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weightedtau import CONSTANT, HYPERBOLIC, QUADRATIC, get_scheme, lex_rank, pair_weight
from weightedtau import oracle
from weightedtau.errors import TiesError, UndefinedCorrelationError
from weightedtau.oracle import (
    PairClass,
    classify_pair,
    oracle_ap,
    oracle_breakdown,
    oracle_inner,
    oracle_norm,
    oracle_report,
    oracle_tau,
)


def loop_breakdown(r, s, ranks, scheme):
    """Pure-Python pair loop, independent of the vectorized oracle."""
    out = dict.fromkeys(PairClass, 0.0)
    total = 0.0
    for i, j in itertools.combinations(range(len(r)), 2):
        lo, hi = sorted((ranks[i], ranks[j]))
        w = pair_weight(scheme, lo, hi)
        total += w
        out[classify_pair(r[i], r[j], s[i], s[j])] += w
    return total, out


@pytest.mark.parametrize(
    "args, expected",
    [
        ((1, 1, 2, 2), PairClass.JOINT_TIE),
        ((1, 1, 2, 3), PairClass.LEFT_TIE),
        ((1, 2, 3, 3), PairClass.RIGHT_TIE),
        ((1, 2, 3, 4), PairClass.CONCORDANCE),
        ((2, 1, 3, 4), PairClass.DISCORDANCE),
    ],
)
def test_classify_pair(args, expected):
    assert classify_pair(*args) is expected


def test_breakdown_example():
    bd = oracle_breakdown([1, 1, 2], [1, 2, 2], [2, 1, 0], CONSTANT)
    assert (bd.T, bd.L, bd.R, bd.J, bd.D) == (6, 2, 2, 0, 0)
    assert bd.C == 2


def test_tau_examples():
    assert oracle_tau([1, 2, 3], [1, 2, 3], [2, 1, 0], HYPERBOLIC) == pytest.approx(1.0)
    assert oracle_tau([1, 2, 3], [3, 2, 1], [2, 1, 0], HYPERBOLIC) == pytest.approx(-1.0)
    with pytest.raises(UndefinedCorrelationError):
        oracle_tau([1, 1, 1], [1, 2, 3], [0, 1, 2], HYPERBOLIC)


def test_norm_of_tie_free_vector_is_sqrt_total():
    ranks = [2, 0, 1, 3]
    assert oracle_norm([5, 9, 7, 1], ranks, QUADRATIC) ** 2 == pytest.approx(
        oracle_breakdown([5, 9, 7, 1], [5, 9, 7, 1], ranks, QUADRATIC).T
    )


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_vectorized_matches_pair_loop(data):
    n = data.draw(st.integers(2, 14))
    r = data.draw(st.lists(st.integers(0, 3), min_size=n, max_size=n))
    s = data.draw(st.lists(st.integers(0, 3), min_size=n, max_size=n))
    scheme = get_scheme(
        data.draw(st.sampled_from(["hyperbolic", "logarithmic", "quadratic", "constant"])),
        data.draw(st.sampled_from(["add", "mul"])),
    )
    ranks = lex_rank(r, s)
    bd = oracle_breakdown(r, s, ranks, scheme)
    total, classes = loop_breakdown(r, s, ranks, scheme)
    approx = lambda x: pytest.approx(x, rel=1e-12, abs=1e-12)  # noqa: E731
    assert bd.T == approx(total)
    assert bd.J == approx(classes[PairClass.JOINT_TIE])
    assert bd.L - bd.J == approx(classes[PairClass.LEFT_TIE])
    assert bd.R - bd.J == approx(classes[PairClass.RIGHT_TIE])
    assert bd.D == approx(classes[PairClass.DISCORDANCE])
    assert bd.C == approx(classes[PairClass.CONCORDANCE])


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4)), min_size=2, max_size=30))
def test_identities(pairs):
    r, s = map(list, zip(*pairs))
    ranks = lex_rank(s, r)
    rep = oracle_report(r, s, ranks, HYPERBOLIC)
    bd = rep.breakdown
    assert rep.inner == pytest.approx(bd.inner, rel=1e-12, abs=1e-12)
    assert rep.norm_r**2 == pytest.approx(bd.norm_r_squared, rel=1e-12, abs=1e-12)
    assert rep.norm_s**2 == pytest.approx(bd.norm_s_squared, rel=1e-12, abs=1e-12)
    assert oracle_inner(r, s, ranks, HYPERBOLIC) == pytest.approx(
        oracle_inner(s, r, ranks, HYPERBOLIC)
    )


def test_chunked_enumeration_matches(monkeypatch):
    rng = np.random.default_rng(0)
    r = rng.integers(0, 5, 90).astype(float)
    s = rng.integers(0, 5, 90).astype(float)
    ranks = lex_rank(r, s)
    whole = oracle_breakdown(r, s, ranks, QUADRATIC)
    monkeypatch.setattr(oracle, "_CHUNK_PAIRS", 37)
    chunked = oracle_breakdown(r, s, ranks, QUADRATIC)
    for field in "TLRJD":
        assert getattr(chunked, field) == pytest.approx(getattr(whole, field), rel=1e-12)


def test_oracle_ap_examples():
    assert oracle_ap([1, 2, 3], [1, 2, 3]) == 1.0
    assert oracle_ap([3, 2, 1], [1, 2, 3]) == -1.0
    # r in s order is [3, 1, 2]: the second item has 1 of 1 above it, the third 1 of 2
    assert oracle_ap([2, 1, 3], [1, 2, 3]) == pytest.approx(2 / 2 * (1 / 1 + 1 / 2) - 1)


def test_oracle_ap_rejects_ties():
    with pytest.raises(TiesError):
        oracle_ap([1, 1, 2], [1, 2, 3])
    with pytest.raises(UndefinedCorrelationError):
        oracle_ap([1], [1])
