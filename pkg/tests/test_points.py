import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from tropfw.errors import DimensionError, ValidationError
from tropfw.points import (DataSet, TropicalPoint, WeightVector,
                           asym_distance, asym_distance_general, normalize)

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def test_normalize_zero_sum():
    p = normalize([1, 2, 3])
    assert sum(p.coords) == 0
    assert p.coords == (Fraction(-1), Fraction(0), Fraction(1))


def test_point_rejects_nonzero_sum():
    with pytest.raises(ValidationError):
        TropicalPoint((Fraction(1), Fraction(1), Fraction(1)))


def test_point_rejects_dim_one():
    with pytest.raises(DimensionError):
        TropicalPoint((Fraction(0),))


def test_weights_positive_and_normalized():
    w = WeightVector.normalized([1, 2, 3])
    assert sum(w) == 1
    assert w[2] == Fraction(1, 2)
    with pytest.raises(ValidationError):
        WeightVector.normalized([1, 0])
    with pytest.raises(ValidationError):
        WeightVector((Fraction(1, 2), Fraction(1, 3)))


def test_uniform_weights():
    w = WeightVector.uniform(4)
    assert all(x == Fraction(1, 4) for x in w)


@given(st.lists(rationals, min_size=2, max_size=5), rationals)
def test_distance_invariant_under_shift(raw, c):
    # The distance only depends on the projective classes.
    x = normalize(raw)
    shifted = [v + c for v in raw]
    assert asym_distance_general(shifted, x.coords) == asym_distance_general(
        raw, x.coords
    )
    assert asym_distance_general(x.coords, shifted) == asym_distance_general(
        x.coords, raw
    )


@given(st.lists(rationals, min_size=2, max_size=5),
       st.lists(rationals, min_size=2, max_size=5))
def test_distance_nonneg_and_identity(a, b):
    n = min(len(a), len(b))
    x, y = normalize(a[:n]), normalize(b[:n])
    d = asym_distance(x, y)
    assert d >= 0
    assert (d == 0) == (x == y)


def test_distance_hand_value():
    # n * max_j(x_j - y_j) with x=(1,-1,0), y=(0,0,0): 3 * 1 = 3.
    x = normalize([1, -1, 0])
    y = normalize([0, 0, 0])
    assert asym_distance(x, y) == 3
    assert asym_distance(y, x) == 3  # here max(y-x) = 1 as well


def test_asymmetry_example():
    # d(x,y) != d(y,x) in general.
    x = normalize([2, -1, -1])
    y = normalize([0, 0, 0])
    assert asym_distance(x, y) == 6
    assert asym_distance(y, x) == 3


@given(st.lists(rationals, min_size=2, max_size=4),
       st.lists(rationals, min_size=2, max_size=4),
       st.lists(rationals, min_size=2, max_size=4))
def test_triangle_inequality(a, b, c):
    n = min(len(a), len(b), len(c))
    x, y, z = normalize(a[:n]), normalize(b[:n]), normalize(c[:n])
    assert asym_distance(x, z) <= asym_distance(x, y) + asym_distance(y, z)


def test_general_form_agrees_on_representatives():
    rng = random.Random(11)
    for _ in range(100):
        n = rng.randint(2, 5)
        a = [Fraction(rng.randint(-9, 9), rng.randint(1, 12)) for _ in range(n)]
        b = [Fraction(rng.randint(-9, 9), rng.randint(1, 12)) for _ in range(n)]
        x, y = normalize(a), normalize(b)
        # sum(y - x) + n * max(x - y), evaluated on raw representatives.
        expect = sum(bb - aa for aa, bb in zip(a, b)) + n * max(
            aa - bb for aa, bb in zip(a, b)
        )
        assert asym_distance_general(a, b) == expect
        assert asym_distance(x, y) == expect


def test_dataset_shape_and_labels():
    V = DataSet.from_rows([[0, 0, 0], [1, -1, 0]])
    assert (V.m, V.n) == (2, 3)
    with pytest.raises(DimensionError):
        DataSet.from_rows([[0, 0], [0, 0, 0]])
