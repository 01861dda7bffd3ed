import numpy as np

from ..models import ModelConfig
from ..spline_core import CurveSet, SplineCurve2D, SurfaceKind, SurfaceSpec

TINY_MODEL = ModelConfig(
    feature_dim=8, conv_channels=(2, 2), point_mlp=(4, 8), head_hidden=8,
    attention_hidden=8, recon_hidden=8, image_size=16, revolution_grid=(6, 8),
    extrusion_grid=(6, 4), seed=0)

GENERATOR = np.array([[0.5, 0.9], [0.6, 0.7], [0.7, 0.5], [0.6, 0.3], [0.5, 0.1]])


def random_curve(rng, m=None):
    m = m or int(rng.integers(4, 7))
    return SplineCurve2D(rng.uniform(0.05, 0.95, size=(m, 2)))


def random_curveset(rng, n, m=None):
    return CurveSet(tuple(random_curve(rng, m) for _ in range(n)))


def surface_spec(kind=SurfaceKind.REVOLUTION, height=0.6):
    return SurfaceSpec(SplineCurve2D(GENERATOR), kind,
                       height if kind is SurfaceKind.EXTRUSION else 0.0)
