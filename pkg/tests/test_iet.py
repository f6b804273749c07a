from __future__ import annotations

from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ietlab.iet import (
    DomainError,
    Iet,
    Permutation,
    PermutationError,
    build_iet,
    evaluate,
    keane_prefix_check,
    locate,
    orbit_counts,
)


def test_identity_breakpoints():
    iet = build_iet((1, 2), (F(1, 3), F(2, 3)))
    assert iet.breakpoints == (0, F(1, 3), 1)


def test_rotation_image_breakpoints():
    iet = build_iet((2, 1), (F(1, 3), F(2, 3)))
    assert iet.image_breakpoints == (0, F(2, 3), 1)


def test_three_interval_layout():
    iet = build_iet((3, 1, 2), (F(1, 10), F(5, 10), F(4, 10)))
    assert iet.breakpoints == (0, F(1, 10), F(6, 10), 1)
    assert iet.permuted_lengths() == (F(5, 10), F(4, 10), F(1, 10))


def test_evaluate_and_locate():
    rot = build_iet((2, 1), (F(1, 3), F(2, 3)))
    assert evaluate(rot, 0) == F(2, 3)
    iet = build_iet((3, 1, 2), (F(1, 10), F(5, 10), F(4, 10)))
    assert evaluate(iet, F(1, 20)) == F(19, 20)
    assert locate(iet, F(7, 10)) == 3


def test_half_open_boundary_goes_right():
    iet = build_iet((3, 1, 2), (F(1, 10), F(5, 10), F(4, 10)))
    assert locate(iet, F(1, 10)) == 2
    assert locate(iet, 0) == 1


def test_domain_errors():
    iet = build_iet((2, 1), (F(1, 2), F(1, 2)))
    with pytest.raises(DomainError):
        iet(1)
    with pytest.raises(DomainError):
        iet(F(-1, 5))


def test_bad_inputs():
    with pytest.raises(PermutationError):
        Permutation.from_images((1, 1, 2))
    with pytest.raises(ValueError):
        build_iet((2, 1), (1, 0))
    with pytest.raises(TypeError):
        build_iet((2, 1), (0.5, 0.5))
    with pytest.raises(ValueError):
        build_iet((2, 1), (1, 1, 1))


def test_images_roundtrip():
    p = Permutation.from_images((3, 1, 2))
    assert p.images == (3, 1, 2)
    assert p.bottom == (2, 3, 1)


def test_orbit_counts_rotation():
    iet = build_iet((2, 1), (F(1, 2), F(1, 2)))
    assert orbit_counts(iet, F(1, 4), 4) == (2, 2)


def test_keane_prefix():
    assert not keane_prefix_check(build_iet((2, 1), (F(1, 2), F(1, 2))), 2)
    # 987/1597 approximates 1/phi; no short connection
    golden = build_iet((2, 1), (F(987, 2584), F(1597, 2584)))
    assert keane_prefix_check(golden, 10)


def test_irreducibility():
    assert Permutation.from_bottom((4, 3, 2, 1)).is_irreducible()
    assert not Permutation.from_bottom((1, 3, 2)).is_irreducible()


lengths_st = st.lists(st.fractions(min_value=F(1, 100), max_value=10), min_size=2, max_size=6)


@given(lengths_st, st.randoms(use_true_random=False))
def test_bijection_on_breakpoints(lengths, rnd):
    n = len(lengths)
    images = list(range(1, n + 1))
    rnd.shuffle(images)
    iet = build_iet(images, lengths)
    # the map sends each domain interval exactly onto its image interval
    for label in range(1, n + 1):
        lo, hi = iet.interval(label)
        assert (iet(lo), iet(lo) + (hi - lo)) == iet.image_interval(label)
    assert iet.image_breakpoints[-1] == iet.total


@given(lengths_st)
def test_normalized_total(lengths):
    iet = Iet(Permutation.from_images(list(range(len(lengths), 0, -1))), tuple(lengths))
    assert iet.normalized().total == 1
