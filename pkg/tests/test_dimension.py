from __future__ import annotations

from fractions import Fraction as F

import mpmath
import pytest

from ietlab.dimension import (
    argmin_interval,
    default_window,
    dimension_series,
    frostman_check,
    frostman_constant,
    liminf_estimate,
    log_fraction,
    lower_series,
    sig15,
    upper_series,
)

PAIRS = [(i, j) for i in (3, 5, 6) for j in (3, 5, 6) if i != j]


def test_log_fraction_precision():
    x = F(3**200, 7**150)
    with mpmath.workdps(80):
        ref = 200 * mpmath.log(3) - 150 * mpmath.log(7)
        assert abs(log_fraction(x) - ref) < mpmath.mpf(10) ** -50
    with pytest.raises(ValueError):
        log_fraction(F(0))


def test_same_index_lower_is_one(lab_a6):
    assert all(v == 1 for v in lower_series(lab_a6, 3, 3, 4))


def test_k_range(lab_a6):
    with pytest.raises(ValueError):
        upper_series(lab_a6, 3, 5, 7)


@pytest.mark.parametrize("i, j", PAIRS)
def test_brackets_exact(lab_a6, i, j):
    ds = dimension_series(lab_a6, i, j, 6)
    assert ds.passed, ds.failures
    for k in range(7):
        assert ds.upper[k] <= 1
        assert ds.upper[k] <= ds.lower[k] <= ds.upper[k] + ds.gap[k]


def test_k2_value(lab_a6):
    ds = dimension_series(lab_a6, 3, 5, 2)
    assert 0 < ds.lower[2] <= 1
    assert ds.lower[2] - ds.upper[2] <= ds.gap[2]
    # regression baselines
    assert sig15(ds.lower[2]) == "0.476451789828504"
    assert sig15(ds.upper[2]) == "0.476350425088226"


def test_upper_tail_min_trend(lab_a6):
    u4 = liminf_estimate(upper_series(lab_a6, 3, 6, 4), 3)
    u6 = liminf_estimate(upper_series(lab_a6, 3, 6, 6), 3)
    assert u4 <= u6 <= 1


@pytest.mark.parametrize("i, j, k, t", [(3, 5, 3, 3), (6, 3, 3, 6), (5, 6, 2, 5)])
def test_argmin(lab_a6, i, j, k, t):
    assert argmin_interval(lab_a6, i, j, k) == t


def test_liminf_estimate():
    assert liminf_estimate([2, 2, 2]) == 2
    assert liminf_estimate([5, 4, 3, 1, 1, 1], 3) == 1
    assert default_window(6) == 2
    with pytest.raises(ValueError):
        liminf_estimate([])
    with pytest.raises(ValueError):
        liminf_estimate([1, 2], 3)


def test_frostman_trivial(lab_a6):
    assert frostman_check(lab_a6, 3, 5, 0, 1, 4).passed
    assert frostman_check(lab_a6, 5, 5, 1, 1, 4).passed


def test_frostman_observed_constant(lab_a6):
    ds = dimension_series(lab_a6, 3, 5, 6)
    alpha = F(mpmath.nstr(ds.lower_tail_min - mpmath.mpf("0.05"), 6))
    C = frostman_constant(lab_a6, 3, 5, alpha, 6)
    C = F(mpmath.nstr(C * mpmath.mpf("1.000001"), 15))
    assert frostman_check(lab_a6, 3, 5, alpha, C, 6).passed
    # a constant well below the observed one must fail
    assert not frostman_check(lab_a6, 3, 5, alpha, C / 2, 6).passed


def test_frostman_irrational_alpha_path(lab_a6):
    assert frostman_check(lab_a6, 3, 5, F(1, 10**6), 1, 3).passed


def test_csv_header(lab_a6):
    text = dimension_series(lab_a6, 3, 5, 2).to_csv()
    lines = text.splitlines()
    assert lines[0] == "k,lower,upper,gap_bound,lambda_i,lambda_j,b"
    assert len(lines) == 4
    assert lines[1].split(",")[6] == "1"


def test_pair_validation(lab_a6):
    with pytest.raises(ValueError):
        dimension_series(lab_a6, 3, 3, 2)
    with pytest.raises(ValueError):
        dimension_series(lab_a6, 2, 3, 2)
