from dataclasses import dataclass

import numpy as np

from ..autodiff import ContractError, Tensor, ops
from ..geo_metrics import CostKind, hungarian_match, nearest_neighbours
from ..spline_core import SplineCurve2D, basis_matrix
from .rnn import CONTINUE, STOP

MATCH_SAMPLES = 100


@dataclass(frozen=True)
class LossWeights:
    lam: float = 0.1
    lam_curve: float = 0.1
    lam_point: float = 0.1


def stop_nll(steps):
    """NLL of CONTINUE at every step but the last, STOP at the last."""
    last = len(steps) - 1
    terms = [ops.nll(step.stop_logits, STOP if k == last else CONTINUE)
             for k, step in enumerate(steps)]
    return ops.sum(ops.stack(terms))


def _position_error(predicted, target):
    return ops.sum(ops.square(ops.sub(predicted, Tensor(target))))


def loss_l1(steps, curve, lam=0.1):
    """Position error of a teacher-forced point sequence plus lam * stop NLL."""
    if len(steps) != curve.m:
        raise ContractError(f'{len(steps)} predicted points for a curve of {curve.m}.')
    positions = ops.stack([step.position for step in steps])
    return ops.add(_position_error(positions, curve.control_points),
                   ops.mul(lam, stop_nll(steps)))


def _predicted_curves(steps):
    return [SplineCurve2D(step.positions()) for step in steps]


def loss_l2(steps, label, lam=0.1):
    """Hungarian-matched control-point error plus lam * curve-stop NLL.

    The matching is computed on the current values and held fixed for the
    backward pass.
    """
    if len(steps) != len(label):
        raise ContractError(f'{len(steps)} predicted curves for a label of {len(label)}.')
    assignment = hungarian_match(_predicted_curves(steps), label, CostKind.ED)
    position = ops.sum(ops.stack([
        _position_error(step.control_points, label[k].control_points)
        for step, k in zip(steps, assignment.perm)]))
    return ops.add(position, ops.mul(lam, stop_nll(steps)))


def chamfer_loss(predicted, target):
    """Chamfer distance with gradients to ``predicted``; neighbour indices are held fixed."""
    target = np.asarray(target, dtype=float)
    to_target, _ = nearest_neighbours(predicted.values, target)
    to_predicted, _ = nearest_neighbours(target, predicted.values)
    forward = ops.sub(predicted, Tensor(target[to_target]))
    backward = ops.sub(Tensor(target), ops.gather_rows(predicted, to_predicted))
    return ops.add(ops.mean(ops.sum(ops.square(forward), axis=1)),
                   ops.mean(ops.sum(ops.square(backward), axis=1)))


def loss_chamfer3d(predicted, target):
    return chamfer_loss(predicted, target)


def _curve_distance(positions, curve):
    """ED for equal point counts, otherwise Chamfer between the sampled curves."""
    if positions.shape[0] == curve.m:
        return _position_error(positions, curve.control_points)
    basis = Tensor(basis_matrix(positions.shape[0], MATCH_SAMPLES))
    target = basis_matrix(curve.m, MATCH_SAMPLES) @ curve.control_points
    return chamfer_loss(ops.matmul(basis, positions), target)


def loss_l3(steps, label, lam_curve=0.1, lam_point=0.1):
    """Matched curve error + lam_curve * curve-stop NLL + lam_point * point-stop NLL."""
    if len(steps) != len(label):
        raise ContractError(f'{len(steps)} predicted curves for a label of {len(label)}.')
    assignment = hungarian_match(_predicted_curves(steps), label, CostKind.CHAMFER)
    position = ops.sum(ops.stack([
        _curve_distance(ops.stack([point.position for point in step.points]), label[k])
        for step, k in zip(steps, assignment.perm)]))
    point_stops = ops.sum(ops.stack([stop_nll(step.points) for step in steps]))
    return ops.add(ops.add(position, ops.mul(lam_curve, stop_nll(steps))),
                   ops.mul(lam_point, point_stops))
