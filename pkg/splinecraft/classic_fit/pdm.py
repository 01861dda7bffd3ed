import logging

import numpy as np

from ..geo_metrics import chamfer, footpoints, nearest_neighbours
from ..spline_core import (MAX_POINTS, MIN_POINTS, CurveSet, InvalidCurveError,
                           SplineCurve2D, basis_weights, sample_curve)
from ..synth_data import canonical_order
from .fit_config import FitResult

logger = logging.getLogger(__name__)

CHAMFER_SAMPLES = 100
EXACT_FIT = 1e-30
POINT_COUNTS = tuple(range(MIN_POINTS, MAX_POINTS + 1))


class NumericalFailureError(ArithmeticError):
    pass


class FitFailedError(RuntimeError):
    pass


def targets_from_image(image, threshold=0.5):
    """Lit pixels (intensity > threshold) as pixel-centre points in [0, 1]^2."""
    rows, cols = np.nonzero(image.pixels > threshold)
    return np.column_stack([(cols + 0.5) / image.size, (rows + 0.5) / image.size])


def curves_chamfer(curves, targets, k=CHAMFER_SAMPLES):
    """Chamfer between the union of sampled curves and the targets."""
    samples = np.vstack([sample_curve(curve, k) for curve in curves])
    return chamfer(samples, targets)


def _solve_control_points(targets, params, previous, regularizer):
    """Closed-form update: min_C sum ||B C - Q||^2 + reg ||C - C_prev||^2."""
    design = basis_weights(params, len(previous))
    normal = design.T @ design + regularizer * np.eye(len(previous))
    rhs = design.T @ targets + regularizer * previous
    try:
        solution = np.linalg.solve(normal, rhs)
    except np.linalg.LinAlgError as e:
        raise NumericalFailureError(f'Singular normal equations: {e}') from e
    if not np.all(np.isfinite(solution)):
        raise NumericalFailureError('Normal equations produced non-finite control points.')
    return solution


def _try_step(targets, control, step, objective, cfg):
    """First of step, step/2, ... step/2^max_halvings that lowers the objective."""
    for halving in range(cfg.max_halvings + 1):
        candidate = control + step / 2.0 ** halving
        try:
            curve = SplineCurve2D(candidate)
        except InvalidCurveError:
            continue
        projection = footpoints(targets, curve, cfg.n_dense)
        if projection.objective < objective:
            return candidate, projection
    return None, None


def fit_pdm(targets, init, cfg):
    """Point-distance minimisation of ``init`` against ``targets``.

    Alternates foot-point projection with a regularised least-squares solve
    for the control points; the objective is the mean squared foot-point
    distance and never increases.
    """
    targets = np.asarray(targets, dtype=float)
    if len(targets) < init.m:
        raise FitFailedError(
            f'{len(targets)} targets cannot determine {init.m} control points.')
    control = init.control_points.copy()
    projection = footpoints(targets, init, cfg.n_dense)
    objective = projection.objective
    history = [objective]
    converged, reason, iterations = False, 'max_iters', 0

    while iterations < cfg.max_iters:
        if objective <= EXACT_FIT:
            converged, reason = True, 'exact'
            break
        iterations += 1
        solution = _solve_control_points(targets, projection.params, control, cfg.regularizer)
        candidate, candidate_projection = _try_step(
            targets, control, solution - control, objective, cfg)
        if candidate is None:
            converged, reason = True, 'step halving exhausted'
            break
        decrease = (objective - candidate_projection.objective) / objective
        control, projection = candidate, candidate_projection
        objective = projection.objective
        history.append(objective)
        if decrease < cfg.rel_tol:
            converged, reason = True, 'relative tolerance'
            break

    curve = SplineCurve2D(control)
    logger.debug('PDM m=%s stopped after %s iterations (%s), objective %.3e.',
                 curve.m, iterations, reason, objective)
    return FitResult(
        curve=curve,
        objective_history=tuple(history),
        iterations=iterations,
        final_chamfer=chamfer(sample_curve(curve, CHAMFER_SAMPLES), targets),
        converged=converged)


def random_init(rng, m, targets=None, box=None):
    """Control points drawn uniformly over the targets' bounding box."""
    if not MIN_POINTS <= m <= MAX_POINTS:
        raise InvalidCurveError(
            f'random_init takes {MIN_POINTS} to {MAX_POINTS} points, got {m}.')
    if box is None:
        targets = np.asarray(targets, dtype=float)
        box = (targets.min(axis=0), targets.max(axis=0))
    low, high = (np.asarray(corner, dtype=float) for corner in box)
    return SplineCurve2D(canonical_order(rng.uniform(low, high, size=(m, 2))))


def multi_start_fit(targets, cfg, counts=POINT_COUNTS):
    """Best PDM fit over m in ``counts`` x ``cfg.restarts`` random inits.

    Run (m, r) is seeded by (cfg.seed, m, r) so a larger restart budget
    always contains the runs of a smaller one.
    """
    targets = np.asarray(targets, dtype=float)
    best, failures = None, []
    for m in counts:
        for restart in range(cfg.restarts):
            rng = np.random.default_rng([cfg.seed, m, restart])
            try:
                result = fit_pdm(targets, random_init(rng, m, targets), cfg)
            except (NumericalFailureError, FitFailedError) as e:
                failures.append(f'm={m} restart={restart}: {e}')
                continue
            if best is None or result.final_chamfer < best.final_chamfer:
                best = result
    if best is None:
        raise FitFailedError('Every multi-start run failed: ' + '; '.join(failures))
    logger.debug('Multi-start winner m=%s chamfer %.3e (%s failed runs).',
                 best.m, best.final_chamfer, len(failures))
    return best


def split_targets(targets, curves, k=CHAMFER_SAMPLES):
    """Assigns every target to its nearest curve; returns one index array per curve."""
    targets = np.asarray(targets, dtype=float)
    distances = np.column_stack([nearest_neighbours(targets, sample_curve(curve, k))[1]
                                 for curve in curves])
    owner = np.argmin(distances, axis=1)
    return [np.flatnonzero(owner == j) for j in range(len(curves))]


def fit_curveset(targets, init, cfg):
    """Fits every curve of ``init`` to the targets nearest to it.

    Curves that receive fewer targets than control points, or whose fit
    fails numerically, come back unfitted and flagged.
    """
    targets = np.asarray(targets, dtype=float)
    results = []
    for curve, indices in zip(init, split_targets(targets, init)):
        subset = targets[indices]
        if len(subset) < curve.m:
            warning = f'only {len(subset)} targets for {curve.m} control points'
            logger.warning('Skipping curve fit: %s.', warning)
            results.append(FitResult(curve=curve, skipped=True, warning=warning))
            continue
        try:
            results.append(fit_pdm(subset, curve, cfg))
        except NumericalFailureError as e:
            logger.warning('Curve fit failed: %s', e)
            results.append(FitResult(curve=curve, warning=str(e),
                                     final_chamfer=chamfer(sample_curve(curve, 100), subset)))
    return results


def multi_start_fit_curveset(targets, n, cfg):
    """Random multi-start for ``n`` curves; each restart draws m per curve."""
    targets = np.asarray(targets, dtype=float)
    best, best_score = None, np.inf
    for restart in range(cfg.restarts):
        rng = np.random.default_rng([cfg.seed, n, restart])
        init = CurveSet(tuple(
            random_init(rng, int(rng.choice(POINT_COUNTS)), targets) for _ in range(n)))
        results = fit_curveset(targets, init, cfg)
        score = curves_chamfer([result.curve for result in results], targets)
        if score < best_score:
            best, best_score = results, score
    return best
