import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..autodiff import Tensor, ops
from ..spline_core import (AXIS_MARGIN, GENERATOR_POINTS, HEIGHT_RANGE, SplineCurve2D,
                           SurfaceKind, SurfaceSpec, basis_matrix, parameter_grid)
from .base import SplineModel
from .encoders import PointEncoder
from .layers import add_mlp, mlp
from .losses import loss_chamfer3d

MIN_Y_GAP = 1e-4


@dataclass
class Recon3dOutput:
    control_points: Tensor
    points: Tensor
    kind: SurfaceKind
    height: Optional[Tensor] = None

    def spec(self):
        height = 0.0 if self.height is None else self.height.item()
        generator = SplineCurve2D(self.control_points.values)
        return SurfaceSpec(generator, self.kind, height).validate()


def sweep_parameters(kind, n):
    """Sweep coordinates matching spline_core.revolve / extrude."""
    if kind is SurfaceKind.REVOLUTION:
        return 2.0 * math.pi * np.arange(n) / n
    return parameter_grid(n) if n > 1 else np.zeros(1)


def decode_generator(raw):
    """Head output -> (5, 2) generator with strictly decreasing y.

    x = m + (1 - 2m) sigmoid(r) keeps clear of the axis; y starts in the same
    band and falls by softplus(d) + MIN_Y_GAP per point.
    """
    n = GENERATOR_POINTS
    span = 1.0 - 2.0 * AXIS_MARGIN
    x = ops.add(AXIS_MARGIN, ops.mul(span, ops.sigmoid(raw[0:n])))
    y0 = ops.add(AXIS_MARGIN, ops.mul(span, ops.sigmoid(raw[n:n + 1])))
    drops = ops.cumsum(ops.add(ops.softplus(raw[n + 1:2 * n]), MIN_Y_GAP))
    y = ops.concat([y0, ops.sub(y0, drops)])
    return ops.concat([ops.reshape(x, (n, 1)), ops.reshape(y, (n, 1))], axis=1)


def decode_height(raw):
    low, high = HEIGHT_RANGE
    return ops.add(low, ops.mul(high - low, ops.sigmoid(raw[2 * GENERATOR_POINTS])))


def surface_points(control_points, kind, k, n_sweep, height=None):
    """Sweep grid of the generator through fixed linear maps (sweep-major)."""
    profile = ops.matmul(Tensor(basis_matrix(GENERATOR_POINTS, k)), control_points)
    x = ops.reshape(profile[:, 0], (1, k))
    y = ops.reshape(profile[:, 1], (1, k))
    sweep = sweep_parameters(kind, n_sweep)[:, None]
    ones = np.ones((n_sweep, 1))
    if kind is SurfaceKind.REVOLUTION:
        columns = [ops.mul(np.cos(sweep), x), ops.mul(ones, y), ops.mul(np.sin(sweep), x)]
    else:
        columns = [ops.mul(ones, x), ops.mul(ones, y),
                   ops.mul(ops.mul(sweep, height), np.ones((1, k)))]
    return ops.concat([ops.reshape(c, (n_sweep * k, 1)) for c in columns], axis=1)


class Recon3dModel(SplineModel):
    """Encoder -> dense head -> constrained generator -> sampled surface."""

    def __init__(self, config, kind, store=None):
        self.kind = kind
        super().__init__(config, store)

    @property
    def surface_kind(self):
        return self.kind.surface_kind

    def build(self):
        if self.kind.uses_points:
            self.encoder = PointEncoder(self.store, self.config)
        else:
            super().build()
        outputs = 2 * GENERATOR_POINTS + (self.surface_kind is SurfaceKind.EXTRUSION)
        add_mlp(self.store, 'recon_head',
                (self.config.feature_dim, self.config.recon_hidden, outputs))

    @property
    def grid(self):
        if self.surface_kind is SurfaceKind.REVOLUTION:
            return self.config.revolution_grid
        return self.config.extrusion_grid

    def model_input(self, record):
        return record.cloud if self.kind.uses_points else record.image

    def target(self, record):
        return record.cloud

    def encode(self, inputs):
        if self.kind.uses_points:
            return [self.encoder.encode(cloud) for cloud in inputs]
        return [features.vector for features in self.encoder.encode(inputs)]

    def run(self, features, label=None):
        raw = mlp(self.store, 'recon_head', features, 2)
        control_points = decode_generator(raw)
        height = decode_height(raw) if self.surface_kind is SurfaceKind.EXTRUSION else None
        k, n_sweep = self.grid
        points = surface_points(control_points, self.surface_kind, k, n_sweep, height)
        return Recon3dOutput(control_points=control_points, points=points,
                             kind=self.surface_kind, height=height)

    def loss(self, features, target, weights):
        return loss_chamfer3d(self.run(features).points, target)

    def predict(self, model_input):
        return self.forward(model_input)

    def predict_teacher_forced(self, model_input, label):
        return self.forward(model_input)

    def attention_maps(self, model_input):
        return []
