from functools import lru_cache

import numpy as np
from scipy.interpolate import BSpline

DEGREE = 3


class InvalidCurveError(ValueError):
    pass


def clamped_uniform_knots(m, p=DEGREE):
    """Returns the clamped uniform knot vector for ``m`` control points.

    (p+1)-fold knots at 0 and 1, ``m - p - 1`` uniform interior knots.
    """
    if m < p + 1:
        raise InvalidCurveError(
            f'A degree {p} spline needs at least {p + 1} control points, got {m}.')
    interior = [k / (m - p) for k in range(1, m - p)]
    return np.array([0.0] * (p + 1) + interior + [1.0] * (p + 1))


def _ratio(num, den):
    # 0/0 := 0 on repeated knots
    if den == 0.0:
        return 0.0
    return num / den


def basis(i, p, t, knots):
    """Cox-de Boor recursion for N_{i,p}(t), ``t`` clamped to [0, 1].

    The last non-empty span is closed on the right so that the basis
    still sums to one at t = 1.
    """
    t = min(max(float(t), 0.0), 1.0)
    if p == 0:
        if knots[i] <= t < knots[i + 1]:
            return 1.0
        last = knots[-1]
        if t == last and knots[i] < knots[i + 1] == last:
            return 1.0
        return 0.0
    left = _ratio((t - knots[i]) * basis(i, p - 1, t, knots), knots[i + p] - knots[i])
    right = _ratio((knots[i + p + 1] - t) * basis(i + 1, p - 1, t, knots),
                   knots[i + p + 1] - knots[i + 1])
    return left + right


def basis_derivative(i, p, t, knots, order=1):
    """Derivative of the given order of N_{i,p} at ``t``."""
    if order == 0:
        return basis(i, p, t, knots)
    if p == 0:
        return 0.0
    left = _ratio(basis_derivative(i, p - 1, t, knots, order - 1), knots[i + p] - knots[i])
    right = _ratio(basis_derivative(i + 1, p - 1, t, knots, order - 1),
                   knots[i + p + 1] - knots[i + 1])
    return p * (left - right)


@lru_cache(maxsize=None)
def _unit_spline(m, nu):
    # identity coefficients turn a vector-valued spline into its design matrix
    spline = BSpline(clamped_uniform_knots(m), np.eye(m), DEGREE)
    return spline.derivative(nu) if nu else spline


def basis_weights(ts, m, nu=0):
    """Returns the (len(ts), m) matrix of basis values (or ``nu``-th derivatives).

    Each row depends only on its own parameter, so evaluating one parameter
    or a whole grid yields identical rows.
    """
    ts = np.clip(np.atleast_1d(np.asarray(ts, dtype=float)), 0.0, 1.0)
    if not 4 <= m:
        raise InvalidCurveError(f'Control-point count {m} is below {DEGREE + 1}.')
    return np.asarray(_unit_spline(m, nu)(ts))


def parameter_grid(k):
    """Uniform parameters t_k = k / (K - 1), k = 0..K-1."""
    if k < 2:
        raise InvalidCurveError(f'Sampling needs at least two samples, got {k}.')
    return np.arange(k) / (k - 1)
