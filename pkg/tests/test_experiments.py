import pytest

from weightedtau import HYPERBOLIC, QUADRATIC
from weightedtau import experiments
from weightedtau.errors import DomainError


def test_skewed_multiset():
    assert experiments.skewed_multiset(3) == [2, 2, 2, 1, 1, 0]
    assert experiments.skewed_count(3) == 60
    assert experiments.skewed_count(4) == 12600


def test_permutation_scatter():
    points = list(experiments.scatter_permutations(4, HYPERBOLIC))
    assert len(points) == 24
    assert points[0] == pytest.approx((1.0, 1.0))
    assert points[-1] == pytest.approx((-1.0, -1.0))
    assert all(-1 - 1e-12 <= w <= 1 + 1e-12 for _, w in points)


def test_skewed_scatter():
    points = list(experiments.scatter_skewed(3, QUADRATIC))
    assert len(points) == 60
    # arrangements come in ascending order, so the reference itself is last
    assert points[-1] == pytest.approx((1.0, 1.0))
    assert points[0][0] < 0 and points[0][1] < 0


def test_divergence_grows_with_steeper_weights():
    flat = experiments.max_divergence(experiments.scatter_permutations(6, HYPERBOLIC))
    steep = experiments.max_divergence(experiments.scatter_permutations(6, QUADRATIC))
    assert 0 < flat < steep


@pytest.mark.parametrize("size", [0, 11])
def test_permutation_size_bounds(size):
    with pytest.raises(DomainError):
        next(experiments.scatter_permutations(size, HYPERBOLIC))


def test_skewed_bounds():
    with pytest.raises(DomainError):
        next(experiments.scatter_skewed(6, HYPERBOLIC))


def test_bench_rows():
    rows = experiments.bench(200, repetitions=1, doublings=2, seed=3)
    assert [row.n for row in rows] == [200, 400, 800]
    assert rows[0].ratio is None and rows[1].ratio > 0
    again = experiments.bench(200, repetitions=1, doublings=2, seed=3)
    assert [row.value for row in rows] == [row.value for row in again]


def test_bench_data_is_tie_free():
    r, s = experiments.bench_data(1000, 0)
    assert len(set(r)) == len(set(s)) == 1000
