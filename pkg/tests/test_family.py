from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ietlab import intmat
from ietlab.family import (
    FamilyError,
    ParameterSchedule,
    base_permutation,
    cycle_word,
    loop_word,
    odd_candidates,
    schedule,
    theta_closed_form,
    validate_family,
)
from ietlab.rauzy import RunWord, word_transition


@pytest.mark.parametrize(
    "n, bottom",
    [(4, (4, 3, 2, 1)), (6, (6, 3, 2, 5, 4, 1)), (8, (8, 3, 2, 5, 4, 7, 6, 1))],
)
def test_base_permutation(n, bottom):
    p = base_permutation(n)
    assert p.top == tuple(range(1, n + 1))
    assert p.bottom == bottom
    assert p.is_irreducible()


@pytest.mark.parametrize("n", [5, 7, 9])
def test_odd_base_refused(n):
    with pytest.raises(FamilyError):
        base_permutation(n)
    assert all(c.is_irreducible() for c in odd_candidates(n))


def test_small_n_rejected():
    with pytest.raises(FamilyError):
        base_permutation(3)
    with pytest.raises(FamilyError):
        cycle_word(1, 1, 3)


def test_loop_words():
    assert str(loop_word(4, 7, 6)) == "1 0^7 1 0^2"
    w = loop_word(2, 3, 6)
    assert str(w) == "1^3 0^3 1 0^2"
    assert len(w) == 9


def test_cycle_word_n4():
    w = cycle_word(2, 1, 4)
    assert str(w) == "0 1 0^2 1 0^2 1^3"
    assert len(w) == 10


def test_cycle_word_n6():
    assert cycle_word(2, 1, 6) == RunWord.parse("0 1 0^2 1 0^2 1^3 0^2 1 0^2 1^5")


def test_cycle_word_odd_leads_with_10():
    assert str(cycle_word(2, 2, 5)).startswith("1 0 ")


@pytest.mark.parametrize("n", [4, 6, 8])
@pytest.mark.parametrize("a, c", [(1, 1), (3, 2), (7, 3)])
def test_closed_form_columns(n, a, c):
    m = theta_closed_form(a, c, n)
    assert intmat.column(m, 1) == (1,) + (0,) * (n - 2) + (1,)
    for k in range(3, n, 2):
        col = [0] * n
        col[0], col[-1] = c, c + 1
        for r in range(2, n, 2):
            col[r - 1] = 1
        col[k - 2], col[k - 1] = 2, a + 1
        assert intmat.column(m, k) == tuple(col)
        # odd column = preceding even column + e_k
        assert intmat.column(m, k) == tuple(x + (i == k - 1) for i, x in enumerate(intmat.column(m, k - 1)))


def test_closed_form_n6_column_sums():
    a, c = 56, 8
    sums = intmat.column_sums(theta_closed_form(a, c, 6))
    assert sums == (2, 2 * c + a + 4, 2 * c + a + 5, 2 * c + a + 4, 2 * c + a + 5, 2 * c + 3)
    assert sums == (2, 76, 77, 76, 77, 19)


@pytest.mark.parametrize("n, a, c", [(4, 1, 1), (6, 3, 2), (6, 2, 1), (8, 7, 3)])
def test_validate_family_even(n, a, c):
    chk = validate_family(n, a, c)
    assert chk.ok
    assert chk.first_difference is None


def test_validate_family_odd_reports_mismatch():
    chk = validate_family(5, 2, 2)
    assert not chk.ok
    assert not chk.closes


def test_closed_form_odd_column_rule():
    m = theta_closed_form(2, 2, 5)
    assert intmat.column(m, 4) == tuple(x + (i == 3) for i, x in enumerate(intmat.column(m, 5)))


def test_schedule_values():
    s = schedule(6, 7, 8, 3)
    assert s.c == (8, 392, 19208)
    assert s.a == (56, 2744, 134456)
    assert s.cycle(2) == (2744, 392)
    assert s.to_dict()["a"] == ["56", "2744", "134456"]


def test_schedule_default_c1():
    assert schedule(6, 24, m=2).c1 == 576


@pytest.mark.parametrize("kwargs", [dict(p=6, c1=40), dict(p=7, c1=7), dict(p=7, c1=8, m=-1)])
def test_schedule_rejects(kwargs):
    with pytest.raises(FamilyError):
        ParameterSchedule(6, kwargs["p"], kwargs["c1"], kwargs.get("m", 1))


def test_schedule_word_concatenates_cycles():
    s = schedule(6, 7, 8, 2)
    assert s.word() == cycle_word(56, 8, 6) + cycle_word(2744, 392, 6)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([4, 6, 8]), st.integers(1, 10**12), st.integers(1, 10**12))
def test_closed_form_matches_fast_path(n, a, c):
    end, m = word_transition(base_permutation(n), cycle_word(a, c, n))
    assert end == base_permutation(n)
    assert m == theta_closed_form(a, c, n)
    assert intmat.det(m) == 1
