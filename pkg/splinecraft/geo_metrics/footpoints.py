from dataclasses import dataclass

import numpy as np

from ..spline_core import basis_matrix, combine, eval_derivative, eval_many, parameter_grid

MIN_CANDIDATES = 50


@dataclass(frozen=True)
class FootpointSet:
    """Per-target foot-point parameter on the curve and squared distance."""

    params: np.ndarray
    distances: np.ndarray

    @property
    def objective(self):
        return float(np.mean(self.distances))


def _chunks(n, size=4096):
    for start in range(0, n, size):
        yield slice(start, min(n, start + size))


def footpoints(targets, curve, n_dense=1000):
    """Projects targets onto ``curve``.

    Each target takes the nearest of ``n_dense`` uniform-parameter samples,
    then one Newton step on t (clamped to [0, 1]); the refined parameter is
    kept only where it does not increase the squared distance.
    """
    if n_dense < MIN_CANDIDATES:
        raise ValueError(f'n_dense must be at least {MIN_CANDIDATES}, got {n_dense}.')
    targets = np.asarray(targets, dtype=float)
    dense = combine(basis_matrix(curve.m, n_dense), curve.control_points)
    grid = parameter_grid(n_dense)

    nearest = np.empty(len(targets), dtype=int)
    coarse = np.empty(len(targets))
    for rows in _chunks(len(targets)):
        squared = np.sum((targets[rows, None, :] - dense[None, :, :]) ** 2, axis=2)
        nearest[rows] = np.argmin(squared, axis=1)
        coarse[rows] = squared[np.arange(squared.shape[0]), nearest[rows]]
    params = grid[nearest]

    residual = dense[nearest] - targets
    first = eval_derivative(curve, params, 1)
    second = eval_derivative(curve, params, 2)
    gradient = np.sum(first * residual, axis=1)
    hessian = np.sum(first * first, axis=1) + np.sum(second * residual, axis=1)
    gauss_newton = np.sum(first * first, axis=1)
    # fall back to the Gauss-Newton curvature where the full Hessian is not positive
    curvature = np.where(hessian > 0, hessian, gauss_newton)
    step = np.divide(gradient, curvature, out=np.zeros_like(gradient), where=curvature > 0)
    refined = np.clip(params - step, 0.0, 1.0)
    refined_distances = np.sum((eval_many(curve, refined) - targets) ** 2, axis=1)

    better = refined_distances <= coarse
    return FootpointSet(
        params=np.where(better, refined, params),
        distances=np.where(better, refined_distances, coarse))
