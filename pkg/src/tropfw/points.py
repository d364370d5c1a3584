"""Points of the tropical projective torus and the asymmetric distance.

A point of the torus is stored by its unique zero-sum representative.  All
coordinates are exact rationals; mixed-dimension operations raise, never
broadcast.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import DimensionError, ValidationError
from .rationals import parse_rational


def _as_fractions(raw: Iterable) -> tuple[Fraction, ...]:
    return tuple(parse_rational(c) for c in raw)


@dataclass(frozen=True)
class TropicalPoint:
    """A torus point, represented by its zero-sum coordinate vector."""

    coords: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coords) < 2:
            raise DimensionError("tropical points need dimension >= 2")
        if sum(self.coords) != 0:
            raise ValidationError("coordinates must sum to zero; use normalize()")

    @property
    def dim(self) -> int:
        return len(self.coords)

    def shifted(self, c) -> tuple[Fraction, ...]:
        """A non-canonical representative: coords + c * (1, ..., 1)."""
        c = parse_rational(c)
        return tuple(x + c for x in self.coords)

    def __getitem__(self, j: int) -> Fraction:
        return self.coords[j]

    def __iter__(self):
        return iter(self.coords)


def normalize(raw: Sequence) -> TropicalPoint:
    """Project a raw coordinate vector onto the zero-sum hyperplane.

    Subtracts the mean of the coordinates; idempotent.
    """
    coords = _as_fractions(raw)
    n = len(coords)
    if n < 2:
        raise DimensionError("tropical points need dimension >= 2")
    mean = sum(coords) / n
    return TropicalPoint(tuple(c - mean for c in coords))


def _check_same_dim(x: TropicalPoint, y: TropicalPoint):
    if x.dim != y.dim:
        raise DimensionError(f"dimension mismatch: {x.dim} vs {y.dim}")


def asym_distance(x: TropicalPoint, y: TropicalPoint) -> Fraction:
    """n * max_j (x_j - y_j) for zero-sum representatives.

    Asymmetric in general: d(x, y) != d(y, x) is possible.
    """
    _check_same_dim(x, y)
    n = x.dim
    return n * max(a - b for a, b in zip(x.coords, y.coords))


def asym_distance_general(x: Sequence, y: Sequence) -> Fraction:
    """Distance between arbitrary representatives.

    n * max_j (x_j - y_j) + sum_j (y_j - x_j); invariant under adding a
    multiple of the all-ones vector to either argument.
    """
    xs = _as_fractions(x)
    ys = _as_fractions(y)
    if len(xs) != len(ys):
        raise DimensionError(f"dimension mismatch: {len(xs)} vs {len(ys)}")
    if len(xs) < 2:
        raise DimensionError("tropical points need dimension >= 2")
    n = len(xs)
    return n * max(a - b for a, b in zip(xs, ys)) + sum(b - a for a, b in zip(xs, ys))


@dataclass(frozen=True)
class DataSet:
    """A list of m torus points of a common dimension, optionally labeled.

    Duplicate points are allowed; a data set is a multiset.
    """

    points: tuple[TropicalPoint, ...]
    labels: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        if not self.points:
            raise ValidationError("data set must contain at least one point")
        n = self.points[0].dim
        for p in self.points:
            if p.dim != n:
                raise DimensionError("all data points must share one dimension")
        if self.labels is not None and len(self.labels) != len(self.points):
            raise ValidationError("labels must match the number of points")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence], labels=None) -> "DataSet":
        pts = tuple(normalize(r) for r in rows)
        return cls(pts, tuple(labels) if labels is not None else None)

    @property
    def m(self) -> int:
        return len(self.points)

    @property
    def n(self) -> int:
        return self.points[0].dim

    def __getitem__(self, i: int) -> TropicalPoint:
        return self.points[i]

    def __iter__(self):
        return iter(self.points)


@dataclass(frozen=True)
class WeightVector:
    """m strictly positive rationals summing to exactly 1."""

    weights: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.weights:
            raise ValidationError("weight vector must be nonempty")
        for w in self.weights:
            if w <= 0:
                raise ValidationError(f"weights must be strictly positive, got {w}")
        if sum(self.weights) != 1:
            raise ValidationError("weights must sum to exactly 1; use normalized()")

    @classmethod
    def normalized(cls, raw: Iterable) -> "WeightVector":
        """Rescale positive raw weights so they sum to 1."""
        ws = _as_fractions(raw)
        total = sum(ws)
        if total <= 0 or any(w <= 0 for w in ws):
            raise ValidationError("weights must be strictly positive")
        return cls(tuple(w / total for w in ws))

    @classmethod
    def uniform(cls, m: int) -> "WeightVector":
        if m < 1:
            raise ValidationError("need at least one weight")
        return cls((Fraction(1, m),) * m)

    @property
    def m(self) -> int:
        return len(self.weights)

    def __getitem__(self, i: int) -> Fraction:
        return self.weights[i]

    def __iter__(self):
        return iter(self.weights)
