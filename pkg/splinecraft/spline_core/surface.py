import enum
import math
from dataclasses import dataclass

import numpy as np

from .curve import SplineCurve2D, combine, eval_many, sample_curve
from .knots import basis_weights, parameter_grid

GENERATOR_POINTS = 5
AXIS_MARGIN = 0.05
HEIGHT_RANGE = (0.3, 1.0)


class InvalidSurfaceError(ValueError):
    pass


class SurfaceKind(enum.Enum):
    REVOLUTION = 'rev'
    EXTRUSION = 'ext'

    @property
    def code(self):
        return 0 if self is SurfaceKind.REVOLUTION else 1

    @classmethod
    def from_code(cls, code):
        return cls.REVOLUTION if code == 0 else cls.EXTRUSION


@dataclass(frozen=True)
class SurfaceSpec:
    """Generator curve plus the way it is swept into a surface.

    Revolution turns the generator 360 degrees about the y-axis (x = 0);
    extrusion translates it along +z by ``height``.
    """

    generator: SplineCurve2D
    kind: SurfaceKind
    height: float = 0.0

    def validate(self):
        points = self.generator.control_points
        if self.generator.m != GENERATOR_POINTS:
            raise InvalidSurfaceError(
                f'Generators have {GENERATOR_POINTS} control points, got {self.generator.m}.')
        if not np.all(np.diff(points[:, 1]) < 0):
            raise InvalidSurfaceError('Generator y-coordinates must be strictly decreasing.')
        if self.kind is SurfaceKind.REVOLUTION and np.any(points[:, 0] < AXIS_MARGIN):
            raise InvalidSurfaceError(
                f'Revolution generators must stay at x >= {AXIS_MARGIN} from the axis.')
        if self.kind is SurfaceKind.EXTRUSION and not self.height > 0:
            raise InvalidSurfaceError(f'Extrusion height must be positive, got {self.height}.')
        return self

    def to_dict(self):
        return {
            'kind': self.kind.value,
            'height': float(self.height),
            'control_points': self.generator.control_points.tolist()}

    @classmethod
    def from_dict(cls, data):
        return cls(
            generator=SplineCurve2D.from_dict(data),
            kind=SurfaceKind(data['kind']),
            height=float(data.get('height', 0.0)))


def _sweep_parameters(n):
    # revolution: theta uniform over [0, 2pi); extrusion: h uniform over [0, 1]
    return np.arange(n) / n


def revolve(spec, n_theta=64, k=32):
    """Returns the (n_theta * K, 3) revolution grid, theta-major.

    point(theta, t) = (x(t) cos(theta), y(t), x(t) sin(theta)).
    """
    if spec.kind is not SurfaceKind.REVOLUTION:
        raise InvalidSurfaceError('revolve() needs a revolution spec.')
    spec.validate()
    profile = sample_curve(spec.generator, k)
    theta = 2.0 * math.pi * _sweep_parameters(n_theta)
    x = np.outer(np.cos(theta), profile[:, 0])
    z = np.outer(np.sin(theta), profile[:, 0])
    y = np.broadcast_to(profile[:, 1], x.shape)
    return np.stack([x.ravel(), y.ravel(), z.ravel()], axis=1)


def extrude(spec, n_h=32, k=32):
    """Returns the (n_h * K, 3) extrusion grid, h-major.

    point(h, t) = (x(t), y(t), h * height) with h uniform in [0, 1];
    a single layer sits at z = 0.
    """
    if spec.kind is not SurfaceKind.EXTRUSION:
        raise InvalidSurfaceError('extrude() needs an extrusion spec.')
    spec.validate()
    profile = sample_curve(spec.generator, k)
    levels = parameter_grid(n_h) if n_h > 1 else np.zeros(1)
    z = np.repeat(levels * spec.height, k)
    xy = np.tile(profile, (n_h, 1))
    return np.column_stack([xy, z])


def sweep(spec, n_sweep, k):
    if spec.kind is SurfaceKind.REVOLUTION:
        return revolve(spec, n_sweep, k)
    return extrude(spec, n_sweep, k)


def evaluate_surface(spec, params):
    """Surface points at arbitrary (t, s) parameters, s in [0, 1)."""
    params = np.atleast_2d(np.asarray(params, dtype=float))
    profile = eval_many(spec.generator, params[:, 0])
    if spec.kind is SurfaceKind.REVOLUTION:
        theta = 2.0 * math.pi * params[:, 1]
        return np.column_stack([
            profile[:, 0] * np.cos(theta), profile[:, 1], profile[:, 0] * np.sin(theta)])
    return np.column_stack([profile, params[:, 1] * spec.height])


def surface_normals(spec, params):
    """Unit normals (cross product of the two partial derivatives)."""
    params = np.atleast_2d(np.asarray(params, dtype=float))
    control_points = spec.generator.control_points
    profile = combine(basis_weights(params[:, 0], spec.generator.m), control_points)
    tangent = combine(basis_weights(params[:, 0], spec.generator.m, nu=1), control_points)
    if spec.kind is SurfaceKind.REVOLUTION:
        theta = 2.0 * math.pi * params[:, 1]
        cos, sin = np.cos(theta), np.sin(theta)
        d_t = np.column_stack([tangent[:, 0] * cos, tangent[:, 1], tangent[:, 0] * sin])
        d_s = np.column_stack([-profile[:, 0] * sin, np.zeros(len(cos)), profile[:, 0] * cos])
    else:
        d_t = np.column_stack([tangent, np.zeros(len(tangent))])
        d_s = np.tile([0.0, 0.0, spec.height], (len(tangent), 1))
    normals = np.cross(d_t, d_s)
    lengths = np.linalg.norm(normals, axis=1, keepdims=True)
    return normals / np.where(lengths > 0, lengths, 1.0)
