import logging
from collections import Counter
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from tqdm import tqdm

from ..spline_core import (AXIS_MARGIN, GENERATOR_POINTS, HEIGHT_RANGE, CurveSet,
                           InvalidCurveError, InvalidSurfaceError, SplineCurve2D,
                           SurfaceKind, SurfaceSpec, evaluate_surface, sample_curve)
from .gen_config import Mode
from .raster import rasterize, render_surface
from .records import Instance3D, Scene2D

logger = logging.getLogger(__name__)

GENERATOR_X_RANGE = (0.15, 0.95)
GENERATOR_Y_GAP = 0.05


class GenerationError(RuntimeError):
    pass


def as_stored(values):
    """Rounds values to the f32 precision of the dataset format."""
    return np.asarray(values, dtype=np.float32).astype(float)


def canonical_order(points):
    """Reverses the sequence unless the first point has the smaller x (ties: y)."""
    points = np.asarray(points, dtype=float)
    first, last = tuple(points[0]), tuple(points[-1])
    return points[::-1].copy() if last < first else points


def gen_curve(rng, point_count_range=(4, 6), min_point_separation=0.08,
              margin=0.05, max_rejections=1000):
    """Random open cubic curve with consecutive points at least
    ``min_point_separation`` apart.
    """
    lo, hi = point_count_range
    m = int(rng.integers(lo, hi + 1))
    points = []
    rejections = 0
    while len(points) < m:
        candidate = as_stored(rng.uniform(margin, 1.0 - margin, size=2))
        too_close = points and np.linalg.norm(candidate - points[-1]) < min_point_separation
        closes = (len(points) == m - 1
                  and np.linalg.norm(candidate - points[0]) < min_point_separation)
        if too_close or closes:
            rejections += 1
            if rejections >= max_rejections:
                raise GenerationError(
                    f'Gave up after {rejections} rejected control points '
                    f'(separation {min_point_separation}).')
            continue
        points.append(candidate)
    return SplineCurve2D(canonical_order(points))


def gen_scene(rng, config):
    lo, hi = config.curve_count_range
    n = int(rng.integers(lo, hi + 1))
    curves = CurveSet(tuple(
        gen_curve(rng, config.point_count_range, config.min_point_separation,
                  config.margin, config.max_rejections)
        for _ in range(n)))
    return Scene2D(image=rasterize(curves, config.size).quantized(), label=curves)


def gen_generator(rng, kind, max_rejections=1000):
    """Five-point generator with strictly decreasing y (gaps >= 0.05)."""
    x = as_stored(rng.uniform(*GENERATOR_X_RANGE, size=GENERATOR_POINTS))
    for _ in range(max_rejections):
        y = as_stored(np.sort(rng.uniform(0.05, 0.95, size=GENERATOR_POINTS))[::-1])
        if np.all(-np.diff(y) >= GENERATOR_Y_GAP):
            break
    else:
        raise GenerationError(f'No generator y-sequence after {max_rejections} draws.')
    height = 0.0
    if kind is SurfaceKind.EXTRUSION:
        height = float(as_stored(rng.uniform(*HEIGHT_RANGE)))
    return SurfaceSpec(SplineCurve2D(np.column_stack([x, y])), kind, height).validate()


def gen_surface_instance(rng, config, grid=None):
    """Surface spec, a cloud sampled over the jittered (t, s) grid, optional image."""
    if not config.mode.is_3d:
        raise GenerationError(f'Mode {config.mode.value} does not generate surfaces.')
    kind = SurfaceKind.REVOLUTION if config.mode is Mode.REV else SurfaceKind.EXTRUSION
    spec = gen_generator(rng, kind, config.max_rejections)
    n_t, n_s = grid or ((32, 64) if kind is SurfaceKind.REVOLUTION else (32, 32))
    cells = rng.integers(0, [n_t, n_s], size=(config.cloud_size, 2))
    jitter = rng.uniform(0.0, 1.0, size=(config.cloud_size, 2))
    params = (cells + jitter) / [n_t, n_s]
    params[:, 0] = np.clip(params[:, 0], 0.0, 1.0)
    cloud = evaluate_surface(spec, params)
    if config.noise > 0:
        cloud = cloud + rng.normal(0.0, config.noise, size=cloud.shape)
    image = render_surface(spec, config.size).quantized() if config.with_image else None
    return Instance3D(spec=spec, cloud=cloud, image=image, params=params)


def make_record(config, index):
    rng = np.random.default_rng(config.record_seed(index))
    if config.mode.is_3d:
        return gen_surface_instance(rng, config)
    return gen_scene(rng, config)


def generate_dataset(config, workers=1, progress=False):
    """Generates ``config.count`` records; record i only depends on seed ^ i."""
    indices = range(config.count)
    with ThreadPoolExecutor(max_workers=max(1, workers)) as executor:
        records = executor.map(lambda index: make_record(config, index), indices)
        records = list(tqdm(records, total=config.count, disable=not progress,
                            desc=f'gen {config.mode.value}'))
    logger.info('Generated %s %s records (seed %s).', len(records), config.mode.value,
                config.seed)
    return records


def validate_record(record, margin=0.05):
    """Raises GenerationError when a record breaks a label invariant."""
    try:
        if isinstance(record, Instance3D):
            record.spec.validate()
            if record.spec.kind is SurfaceKind.REVOLUTION and np.any(
                    record.spec.generator.control_points[:, 0] < AXIS_MARGIN):
                raise GenerationError('Generator touches the revolution axis.')
            return record
        if not 1 <= len(record.label) <= 3:
            raise GenerationError(f'Scene has {len(record.label)} curves.')
        for curve in record.label:
            points = curve.control_points
            if np.any(points < margin - 1e-6) or np.any(points > 1.0 - margin + 1e-6):
                raise GenerationError('Control point outside the generation margin.')
            if tuple(points[-1]) < tuple(points[0]):
                raise GenerationError('Curve is not in canonical order.')
        if rasterize(record.label, record.image.size).quantized() != record.image:
            raise GenerationError('Stored image does not match its label.')
    except (InvalidCurveError, InvalidSurfaceError) as e:
        raise GenerationError(str(e)) from e
    return record


def dataset_summary(records):
    """Count histograms of a dataset (curves per scene, points per curve, kinds)."""
    curve_counts, point_counts, kinds = Counter(), Counter(), Counter()
    for record in records:
        if isinstance(record, Instance3D):
            kinds[record.spec.kind.value] += 1
            point_counts[record.spec.generator.m] += 1
        else:
            curve_counts[len(record.label)] += 1
            point_counts.update(record.label.counts)
    return {
        'records': len(records),
        'curves_per_scene': dict(sorted(curve_counts.items())),
        'points_per_curve': dict(sorted(point_counts.items())),
        'kinds': dict(sorted(kinds.items())),
    }


def label_samples(label, k=100):
    """All curve samples of a label stacked into one point set."""
    return np.vstack([sample_curve(curve, k) for curve in label])
