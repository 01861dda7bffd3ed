import numpy as np
from scipy.spatial import cKDTree


class UndefinedMetricError(ValueError):
    pass


class CountMismatchError(ValueError):
    pass


def _points(points, name):
    points = np.asarray(points, dtype=float)
    if points.ndim != 2 or len(points) == 0:
        raise UndefinedMetricError(f'{name} must be a non-empty (n, d) point set.')
    return points


def nearest_neighbours(p, q):
    """Nearest point of ``q`` (index, squared distance) for every point of ``p``."""
    p = _points(p, 'P')
    q = _points(q, 'Q')
    if p.shape[1] != q.shape[1]:
        raise UndefinedMetricError(
            f'Point sets differ in dimension: {p.shape[1]} vs {q.shape[1]}.')
    _, index = cKDTree(q).query(p)
    squared = np.sum((p - q[index]) ** 2, axis=1)
    return index, squared


def chamfer(p, q):
    """Symmetric Chamfer distance: mean squared NN distance P->Q plus Q->P."""
    _, p_to_q = nearest_neighbours(p, q)
    _, q_to_p = nearest_neighbours(q, p)
    return float(np.mean(p_to_q)) + float(np.mean(q_to_p))


def mse_control_points(pred, gt):
    """Sum over the sequence of squared control-point distances."""
    if pred.m != gt.m:
        raise CountMismatchError(f'Control-point counts differ: {pred.m} vs {gt.m}.')
    return float(np.sum((pred.control_points - gt.control_points) ** 2))
