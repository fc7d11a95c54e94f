import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from weightedtau import INFINITE_RANK, lex_rank, parse_ranks, parse_scores, truncate_ranks
from weightedtau.errors import DomainError, LengthMismatchError, ParseError
from weightedtau.scores import check_ranks, format_score, read_scores


def test_parse_plain_and_scientific():
    assert parse_scores(b"1.0\n2.5\n-3e2\n").tolist() == [1.0, 2.5, -300.0]


def test_parse_column():
    assert parse_scores("a\t1\nb\t2\n", column=1, delimiter="\t").tolist() == [1.0, 2.0]


def test_parse_column_custom_delimiter():
    assert parse_scores("x,7\ny,-1.5\n", column=1, delimiter=",").tolist() == [7.0, -1.5]


def test_parse_error_reports_line():
    with pytest.raises(ParseError) as info:
        parse_scores("1\nx\n")
    assert info.value.line == 2
    assert "line 2" in str(info.value)


def test_parse_missing_column():
    with pytest.raises(ParseError) as info:
        parse_scores("a\t1\nb\n", column=1)
    assert info.value.line == 2


def test_crlf_and_blank_lines():
    assert parse_scores(b"1\r\n\r\n2\r\n   \n3").tolist() == [1.0, 2.0, 3.0]


@pytest.mark.parametrize("literal", ["nan", "NaN", "inf", "-Infinity", "1e400"])
def test_non_finite_is_domain_error(literal):
    with pytest.raises(DomainError):
        parse_scores(f"1\n{literal}\n")


@pytest.mark.parametrize("text", ["", "\n\n", b""])
def test_empty_input(text):
    with pytest.raises(DomainError):
        parse_scores(text)


def test_rejects_python_only_float_syntax():
    with pytest.raises(ParseError):
        parse_scores("1_000\n")


def test_invalid_utf8():
    with pytest.raises(ParseError):
        parse_scores(b"\xff\xfe1\n")


def test_read_scores(tmp_path):
    path = tmp_path / "s.tsv"
    path.write_bytes(b"id\t0.5\nid2\t1e-3\n")
    assert read_scores(path, column=1).tolist() == [0.5, 0.001]


@given(st.lists(st.floats(allow_nan=False, allow_infinity=False), min_size=1, max_size=50))
def test_format_parse_round_trip(values):
    text = "\n".join(format_score(v) for v in values)
    parsed = parse_scores(text)
    assert [float(x) for x in parsed] == values


def test_parse_ranks():
    ranks = parse_ranks("2\ninf\n0\n1\n")
    assert ranks[1] == INFINITE_RANK
    assert ranks.tolist()[::2] == [2.0, 0.0]


@pytest.mark.parametrize("text", ["0\n0\n", "1\n2\n", "0\n-1\n", "0\n1.5\n"])
def test_parse_ranks_rejects_invalid(text):
    with pytest.raises((DomainError, ParseError)):
        parse_ranks(text)


def test_check_ranks_length():
    with pytest.raises(LengthMismatchError):
        check_ranks([0, 1], n=3)


def test_lex_rank_examples():
    assert lex_rank([3, 1, 2], [0, 0, 0]).tolist() == [0, 2, 1]
    assert lex_rank([1, 1], [5, 7]).tolist() == [1, 0]
    assert lex_rank([1, 1], [2, 2]).tolist() == [0, 1]


def test_lex_rank_length_mismatch():
    with pytest.raises(LengthMismatchError):
        lex_rank([1, 2], [1])


small_scores = st.lists(st.integers(-3, 3), min_size=1, max_size=40)


@given(st.data())
def test_lex_rank_properties(data):
    r = data.draw(small_scores)
    s = data.draw(st.lists(st.integers(-3, 3), min_size=len(r), max_size=len(r)))
    ranks = lex_rank(r, s)
    n = len(r)
    assert sorted(ranks.tolist()) == list(range(n))
    by_rank = np.argsort(ranks)
    for a, b in zip(by_rank, by_rank[1:]):
        assert (r[a], s[a], -a) > (r[b], s[b], -b)


def test_lex_rank_matches_brute_force():
    rng = np.random.default_rng(3)
    r = rng.integers(0, 3, 60).astype(float)
    s = rng.integers(0, 3, 60).astype(float)
    ranks = lex_rank(r, s)
    for i in range(60):
        better = sum(1 for j in range(60) if (r[j], s[j], -j) > (r[i], s[i], -i))
        assert ranks[i] == better


@pytest.mark.parametrize(
    "ranks, k, expected",
    [
        ([0, 1, 2], 2, [0, 1, math.inf]),
        ([0, 1, 2], 0, [math.inf] * 3),
        ([2, 0, 1], 1, [math.inf, 0, math.inf]),
    ],
)
def test_truncate_examples(ranks, k, expected):
    assert truncate_ranks(ranks, k).tolist() == expected


@given(st.permutations(list(range(12))), st.integers(0, 15))
def test_truncate_idempotent(perm, k):
    once = truncate_ranks(perm, k)
    assert np.array_equal(truncate_ranks(once, k), once)
    check_ranks(once)
