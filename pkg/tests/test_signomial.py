import random
from fractions import Fraction

from tropfw.points import DataSet, WeightVector, asym_distance, normalize
from tropfw.signomial import (TropicalLinearForm, WeightedObjective, argmax_set,
                              eval_form, eval_objective, on_hypersurface)

from .gen import random_dataset, random_point, random_weights


def test_form_value_is_distance_over_n():
    v = normalize([0, 0, 0])
    x = normalize([1, -1, 0])
    form = TropicalLinearForm(v)
    assert eval_form(form, x) == asym_distance(x, v) / 3


def test_argmax_and_tie():
    v = normalize([1, -1, 0])
    assert argmax_set(TropicalLinearForm(v), normalize([0, 0, 0])) == frozenset({1})
    # x = v gives a full tie.
    assert argmax_set(TropicalLinearForm(v), v) == frozenset({0, 1, 2})


def test_form_invariant_under_representative_shift():
    rng = random.Random(3)
    for _ in range(50):
        n = rng.randint(2, 5)
        v = random_point(rng, n)
        x = random_point(rng, n)
        c = Fraction(rng.randint(-5, 5), rng.randint(1, 7))
        form = TropicalLinearForm(v)
        assert eval_form(form, x.shifted(c)) == eval_form(form, x) + c
        assert argmax_set(form, x.shifted(c)) == argmax_set(form, x)


def test_objective_value_hand_computed():
    # V = {(0,0,0), (1,-1,0)}, w = (1/3, 2/3), x = (1/3,-2/3,1/3):
    # factor 1: max(1/3,-2/3,1/3) = 1/3; factor 2: max(-2/3,1/3,1/3) = 1/3.
    V = DataSet.from_rows([[0, 0, 0], [1, -1, 0]])
    w = WeightVector((Fraction(1, 3), Fraction(2, 3)))
    obj = WeightedObjective(V, w)
    x = normalize([Fraction(1, 3), Fraction(-2, 3), Fraction(1, 3)])
    assert eval_objective(obj, x) == Fraction(1, 3)


def test_objective_matches_weighted_distances():
    rng = random.Random(5)
    for _ in range(40):
        m, n = rng.randint(1, 4), rng.randint(2, 4)
        V = random_dataset(rng, m, n)
        w = random_weights(rng, m)
        x = random_point(rng, n)
        obj = WeightedObjective(V, w)
        expect = sum(
            wi * asym_distance(x, v) for wi, v in zip(w, V)
        ) / Fraction(n)
        assert eval_objective(obj, x) == expect


def test_hypersurface_is_weight_independent():
    rng = random.Random(9)
    V = random_dataset(rng, 3, 3)
    for _ in range(60):
        x = random_point(rng, 3)
        onoff = [
            on_hypersurface(WeightedObjective(V, random_weights(rng, 3)), x)
            for _ in range(3)
        ]
        assert len(set(onoff)) == 1
        # union-of-ties characterization
        assert onoff[0] == any(
            len(argmax_set(TropicalLinearForm(v), x)) >= 2 for v in V
        )
