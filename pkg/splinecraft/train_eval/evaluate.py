import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np
import pandas as pd
from tqdm import tqdm

from ..classic_fit import (FitConfig, FitFailedError, curves_chamfer, fit_curveset,
                           multi_start_fit, multi_start_fit_curveset, targets_from_image)
from ..geo_metrics import CostKind, chamfer, match_cost_matrix, match_rectangular
from ..models import ModelKind
from ..spline_core import CurveSet

logger = logging.getLogger(__name__)

NOT_APPLICABLE = 'N/A'
REPORT_FIELDS = ('mse', 'point_acc', 'curve_acc', 'chamfer_nn', 'chamfer_nn_init',
                 'chamfer_random_init', 'n_instances')


@dataclass(frozen=True)
class EvalReport:
    """Evaluation summary; ``None`` marks a field that does not apply to the mode.

    ``mode`` stays out of the serialized report.
    """

    mode: str
    n_instances: int
    mse: Optional[float] = None
    point_acc: Optional[float] = None
    curve_acc: Optional[float] = None
    chamfer_nn: Optional[float] = None
    chamfer_nn_init: Optional[float] = None
    chamfer_random_init: Optional[float] = None

    def to_dict(self):
        values = asdict(self)
        return {key: NOT_APPLICABLE if values[key] is None else values[key]
                for key in REPORT_FIELDS}


def matching_cost(pred, label):
    """ED cost when every curve has the same point count, Chamfer otherwise."""
    if len(set(pred.counts + label.counts)) == 1:
        return match_cost_matrix(pred, label, CostKind.ED)
    return match_cost_matrix(pred, label, CostKind.CHAMFER)


def matched_squared_error(pred, label):
    """(sum of squared control-point errors, points compared) over matched curves.

    Pairs with unequal point counts do not contribute.
    """
    pairs = match_rectangular(matching_cost(pred, label))
    error, points = 0.0, 0
    for j, k in pairs:
        if pred[j].m == label[k].m:
            error += float(np.sum((pred[j].control_points - label[k].control_points) ** 2))
            points += label[k].m
    return error, points


def matched_point_counts(pred, label):
    """(correct point counts, matched pairs) over matched curves."""
    pairs = match_rectangular(matching_cost(pred, label))
    return sum(pred[j].m == label[k].m for j, k in pairs), len(pairs)


def nn_init_fit(targets, pred, fit_cfg):
    """Fits from the network prediction; a fit that raises the Chamfer is discarded."""
    start = curves_chamfer(pred, targets)
    fitted = [result.curve for result in fit_curveset(targets, pred, fit_cfg)]
    score = curves_chamfer(fitted, targets)
    return (CurveSet(tuple(fitted)), score) if score <= start else (pred, start)


def random_init_fit(targets, n_curves, fit_cfg):
    if n_curves == 1:
        return multi_start_fit(targets, fit_cfg).final_chamfer
    results = multi_start_fit_curveset(targets, n_curves, fit_cfg)
    return curves_chamfer([result.curve for result in results], targets)


def evaluate_scene(predictor, record, kind, fit_cfg=None):
    """Per-instance metrics of one 2D scene."""
    label = record.label
    forced = predictor.predict_teacher_forced(record)
    pred = predictor.predict(record)
    targets = targets_from_image(record.image)
    error, points = matched_squared_error(forced, label)
    correct_points, matched = matched_point_counts(pred, label)
    row = {
        'squared_error': error,
        'points_compared': points,
        'pred_curves': len(pred),
        'true_curves': len(label),
        'curve_count_ok': len(pred) == len(label),
        'pred_points': pred[0].m if kind is ModelKind.V else None,
        'true_points': label[0].m if kind is ModelKind.V else None,
        'point_counts_ok': correct_points,
        'pairs_matched': matched,
        'chamfer_nn': curves_chamfer(pred, targets),
        'chamfer_nn_init': None,
        'chamfer_random_init': None,
    }
    if fit_cfg is not None:
        try:
            row['chamfer_nn_init'] = nn_init_fit(targets, pred, fit_cfg)[1]
            row['chamfer_random_init'] = random_init_fit(targets, len(label), fit_cfg)
        except FitFailedError as e:
            logger.warning('Classical fit failed: %s', e)
    return row


def evaluate_surface(predictor, record):
    prediction = predictor.predict(record)
    return {'chamfer_nn': chamfer(prediction.points, record.cloud)}


def _mean(column):
    values = pd.to_numeric(column, errors='coerce').dropna()
    return float(values.mean()) if len(values) else None


def summarize(rows, kind):
    """EvalReport from a per-instance DataFrame."""
    n = len(rows)
    if kind.is_3d:
        return EvalReport(mode=kind.value, n_instances=n,
                          chamfer_nn=_mean(rows['chamfer_nn']))
    points = int(rows['points_compared'].sum())
    curve_acc = 100.0 * float(rows['curve_count_ok'].mean())
    if kind is ModelKind.V:
        point_acc = 100.0 * float(np.mean(rows['pred_points'] == rows['true_points']))
    elif kind is ModelKind.MV:
        matched = int(rows['pairs_matched'].sum())
        point_acc = 100.0 * int(rows['point_counts_ok'].sum()) / matched if matched else 0.0
    else:
        point_acc = None
    return EvalReport(
        mode=kind.value,
        n_instances=n,
        mse=float(rows['squared_error'].sum()) / points if points else None,
        point_acc=point_acc,
        curve_acc=None if kind is ModelKind.V else curve_acc,
        chamfer_nn=_mean(rows['chamfer_nn']),
        chamfer_nn_init=_mean(rows['chamfer_nn_init']),
        chamfer_random_init=_mean(rows['chamfer_random_init']))


def instance_rows(predictor, records, kind, fit_cfg=None, workers=1, progress=False):
    """Per-instance metrics as a DataFrame, one row per record in input order."""
    def measure(record):
        if kind.is_3d:
            return evaluate_surface(predictor, record)
        return evaluate_scene(predictor, record, kind, fit_cfg)

    with ThreadPoolExecutor(max_workers=max(1, workers)) as executor:
        rows = list(tqdm(executor.map(measure, records), total=len(records),
                         disable=not progress, desc=f'eval {kind.value}'))
    frame = pd.DataFrame(rows)
    frame.insert(0, 'instance', range(len(rows)))
    return frame


def evaluate(predictor, records, kind, fit_cfg=None, workers=1, progress=False,
             with_fits=True):
    """Returns (EvalReport, per-instance DataFrame) for a test set."""
    kind = ModelKind(kind)
    if not records:
        raise ValueError('No instances to evaluate.')
    fit_cfg = (fit_cfg or FitConfig()) if with_fits and not kind.is_3d else None
    rows = instance_rows(predictor, records, kind, fit_cfg, workers, progress)
    report = summarize(rows, kind)
    logger.info('Evaluated %s on %s instances: %s', kind.value, report.n_instances,
                report.to_dict())
    return report, rows
