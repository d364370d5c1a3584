"""Tropical linear forms centered at data points and the weighted objective.

The objective is always evaluated in factored form, one max per data
point; it is never expanded into monomials.  Ties are exact rational
equalities.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DimensionError, ValidationError
from .points import DataSet, TropicalPoint, WeightVector
from .rationals import parse_rational


@dataclass(frozen=True)
class TropicalLinearForm:
    """max_j (x_j - v_j) for a fixed center v."""

    center: TropicalPoint

    @property
    def dim(self) -> int:
        return self.center.dim


def _coords(x, dim) -> tuple[Fraction, ...]:
    if isinstance(x, TropicalPoint):
        coords = x.coords
    else:
        coords = tuple(parse_rational(c) for c in x)
    if len(coords) != dim:
        raise DimensionError(f"dimension mismatch: {len(coords)} vs {dim}")
    return coords


def eval_form(form: TropicalLinearForm, x) -> Fraction:
    """Value of the form at x; equals the asymmetric distance over n."""
    coords = _coords(x, form.dim)
    return max(c - v for c, v in zip(coords, form.center.coords))


def argmax_set(form: TropicalLinearForm, x) -> frozenset[int]:
    """0-based coordinate indices attaining the max of the form at x."""
    coords = _coords(x, form.dim)
    diffs = [c - v for c, v in zip(coords, form.center.coords)]
    top = max(diffs)
    return frozenset(j for j, d in enumerate(diffs) if d == top)


@dataclass(frozen=True)
class WeightedObjective:
    """The weighted Fermat-Weber objective: sum_i w_i max_j (x_j - v_ij)."""

    data: DataSet
    weights: WeightVector

    def __post_init__(self):
        if self.weights.m != self.data.m:
            raise ValidationError("one weight per data point required")

    @property
    def forms(self) -> tuple[TropicalLinearForm, ...]:
        return tuple(TropicalLinearForm(v) for v in self.data)


def eval_objective(obj: WeightedObjective, x) -> Fraction:
    """Objective value at x; minimizing it over zero-sum vectors is the
    Fermat-Weber problem."""
    total = Fraction(0)
    for w, form in zip(obj.weights, obj.forms):
        total += w * eval_form(form, x)
    return total


def on_hypersurface(obj: WeightedObjective, x) -> bool:
    """True iff some centered form has a tie at x.

    Weight-independent: ties of the weighted product are the union of the
    per-factor ties.
    """
    return any(len(argmax_set(form, x)) >= 2 for form in obj.forms)
