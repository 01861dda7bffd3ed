import enum
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from ..spline_core import sample_curve
from .chamfer import chamfer, mse_control_points

MATCH_SAMPLES = 100


class InvalidCostError(ValueError):
    pass


class SetSizeError(ValueError):
    pass


class CostKind(enum.Enum):
    ED = 'ed'
    CHAMFER = 'chamfer'


@dataclass(frozen=True)
class Assignment:
    """``perm[j]`` is the target index assigned to prediction j."""

    perm: tuple
    cost: float

    @property
    def inverse(self):
        inverse = [0] * len(self.perm)
        for j, k in enumerate(self.perm):
            inverse[k] = j
        return tuple(inverse)


def assignment_cost(cost, perm):
    total = 0.0
    for j, k in enumerate(perm):
        total += cost[j][k]
    return float(total)


def _optimum(cost):
    if cost.size == 0:
        return 0.0
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].sum())


def hungarian(cost):
    """Minimal-cost assignment of a square matrix.

    Among optimal permutations the lexicographically smallest is returned:
    rows are fixed in order, each to the smallest column that still admits
    an optimal completion.
    """
    cost = np.asarray(cost, dtype=float)
    if cost.ndim != 2 or cost.shape[0] != cost.shape[1] or cost.shape[0] < 1:
        raise InvalidCostError(f'Cost matrix must be square and non-empty, got {cost.shape}.')
    if not np.all(np.isfinite(cost)):
        raise InvalidCostError('Cost matrix has non-finite entries.')
    n = cost.shape[0]
    best = _optimum(cost)
    tolerance = 1e-12 * max(1.0, abs(best), float(np.abs(cost).max()))
    perm, prefix = [], 0.0
    free = list(range(n))
    for j in range(n):
        for k in free:
            rest = [c for c in free if c != k]
            tail = _optimum(cost[np.ix_(range(j + 1, n), rest)])
            if prefix + cost[j, k] + tail <= best + tolerance:
                perm.append(k)
                prefix += cost[j, k]
                free = rest
                break
    perm = tuple(perm)
    return Assignment(perm=perm, cost=assignment_cost(cost, perm))


def match_rectangular(cost):
    """Hungarian over a zero-padded square matrix; pairs touching padding are dropped."""
    cost = np.asarray(cost, dtype=float)
    rows, cols = cost.shape
    n = max(rows, cols)
    if n == 0:
        return []
    padded = np.zeros((n, n))
    padded[:rows, :cols] = cost
    assignment = hungarian(padded)
    return [(j, k) for j, k in enumerate(assignment.perm) if j < rows and k < cols]


def match_cost_matrix(pred, gt, cost_kind=CostKind.ED, samples=MATCH_SAMPLES):
    cost_kind = CostKind(cost_kind)
    if cost_kind is CostKind.ED:
        return np.array([[mse_control_points(p, g) for g in gt] for p in pred])
    pred_samples = [sample_curve(p, samples) for p in pred]
    gt_samples = [sample_curve(g, samples) for g in gt]
    return np.array([[chamfer(p, g) for g in gt_samples] for p in pred_samples])


def hungarian_match(pred, gt, cost_kind=CostKind.ED):
    """Optimal bijection between predicted and ground-truth curve sets."""
    if len(pred) != len(gt):
        raise SetSizeError(f'Curve sets differ in size: {len(pred)} vs {len(gt)}.')
    return hungarian(match_cost_matrix(pred, gt, cost_kind))
