from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .knots import (DEGREE, InvalidCurveError, basis, basis_weights,
                    clamped_uniform_knots, parameter_grid)

MIN_POINTS = 4
MAX_POINTS = 6
MIN_CURVES = 1
MAX_CURVES = 3


def _frozen(values, columns):
    array = np.array(values, dtype=float).reshape(-1, columns)
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class SplineCurve2D:
    """Open cubic B-spline on clamped uniform knots.

    ``control_points`` is an (m, 2) read-only array of normalized image
    coordinates (x, y); the knot vector is derived from m.
    """

    control_points: np.ndarray
    degree: int = DEGREE

    def __post_init__(self):
        object.__setattr__(self, 'control_points', _frozen(self.control_points, 2))
        if self.degree != DEGREE:
            raise InvalidCurveError(
                f'Only cubic curves are supported, got degree {self.degree}.')
        if not MIN_POINTS <= self.m <= MAX_POINTS:
            raise InvalidCurveError(
                f'Curves take {MIN_POINTS} to {MAX_POINTS} control points, got {self.m}.')
        if not np.all(np.isfinite(self.control_points)):
            raise InvalidCurveError('Control points must be finite.')

    @property
    def m(self):
        return len(self.control_points)

    @property
    def knots(self):
        return clamped_uniform_knots(self.m, self.degree)

    def to_dict(self):
        return {'control_points': self.control_points.tolist()}

    @classmethod
    def from_dict(cls, data):
        return cls(np.asarray(data['control_points'], dtype=float))


@dataclass(frozen=True)
class CurveSet:
    """Unordered bag of 1-3 curves."""

    curves: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, 'curves', tuple(self.curves))
        if len(self.curves) > MAX_CURVES:
            raise InvalidCurveError(
                f'A curve set holds at most {MAX_CURVES} curves, got {len(self.curves)}.')

    def __len__(self):
        return len(self.curves)

    def __iter__(self):
        return iter(self.curves)

    def __getitem__(self, index):
        return self.curves[index]

    @property
    def counts(self):
        return [curve.m for curve in self.curves]

    def to_dict(self):
        return {'curves': [curve.to_dict() for curve in self.curves]}

    @classmethod
    def from_dict(cls, data):
        return cls(tuple(SplineCurve2D.from_dict(c) for c in data['curves']))


def combine(weights, control_points):
    """Row-wise weighted sum of control points, summed in control-point order."""
    points = weights[:, 0, None] * control_points[0]
    for i in range(1, control_points.shape[0]):
        points = points + weights[:, i, None] * control_points[i]
    return points


def eval_curve(curve, t):
    """Point on ``curve`` at parameter ``t`` (clamped to [0, 1])."""
    return combine(basis_weights([t], curve.m), curve.control_points)[0]


def eval_derivative(curve, ts, order=1):
    """Derivatives of the given order at an array of parameters, shape (len(ts), 2)."""
    return combine(basis_weights(ts, curve.m, nu=order), curve.control_points)


def eval_many(curve, ts):
    return combine(basis_weights(ts, curve.m), curve.control_points)


def sample_curve(curve, k):
    """``k`` samples at t_k = k / (K - 1); row k equals ``eval_curve(curve, t_k)``."""
    return eval_many(curve, parameter_grid(k))


@lru_cache(maxsize=64)
def _basis_matrix(m, k):
    entries = basis_weights(parameter_grid(k), m)
    entries.setflags(write=False)
    return entries


def basis_matrix(m, k):
    """Returns the fixed (K, m) basis matrix for a uniform parameter grid.

    entries[k][i] = N_{i,3}(t_k); the matrix is cached and read-only.
    """
    if not MIN_POINTS <= m <= MAX_POINTS:
        raise InvalidCurveError(
            f'Basis matrices are built for {MIN_POINTS} to {MAX_POINTS} points, got {m}.')
    return _basis_matrix(m, k)


def basis_row(m, t):
    """Scalar Cox-de Boor weights for one parameter (reference path)."""
    knots = clamped_uniform_knots(m)
    return np.array([basis(i, DEGREE, t, knots) for i in range(m)])


def de_boor_point(control_points, t, knots=None, p=DEGREE):
    """Independent de Boor evaluation of a point, used as an oracle."""
    control_points = np.asarray(control_points, dtype=float)
    m = len(control_points)
    knots = clamped_uniform_knots(m, p) if knots is None else np.asarray(knots)
    t = min(max(float(t), 0.0), 1.0)
    # span index s with knots[s] <= t < knots[s + 1], last non-empty span at t = 1
    s = p
    while s < m - 1 and t >= knots[s + 1]:
        s += 1
    d = [control_points[j + s - p].copy() for j in range(p + 1)]
    for r in range(1, p + 1):
        for j in range(p, r - 1, -1):
            left = knots[j + s - p]
            right = knots[j + 1 + s - r]
            alpha = 0.0 if right == left else (t - left) / (right - left)
            d[j] = (1.0 - alpha) * d[j - 1] + alpha * d[j]
    return d[p]
