import math
from dataclasses import dataclass

import numpy as np

from ..spline_core import SurfaceKind, evaluate_surface, sample_curve, surface_normals

LIGHT_DIRECTION = np.ones(3) / math.sqrt(3.0)
AMBIENT = 0.1


@dataclass(frozen=True)
class RasterImage:
    """Square grayscale image, row-major, intensities in [0, 1].

    Column index follows x and row index follows y of the normalized
    image coordinates; pixel (row, col) covers [col, col+1) / size.
    """

    pixels: np.ndarray

    def __post_init__(self):
        pixels = np.array(self.pixels, dtype=float)
        if pixels.ndim != 2 or pixels.shape[0] != pixels.shape[1]:
            raise ValueError(f'Images are square 2D arrays, got shape {pixels.shape}.')
        pixels.setflags(write=False)
        object.__setattr__(self, 'pixels', pixels)

    @property
    def size(self):
        return self.pixels.shape[0]

    @property
    def width(self):
        return self.pixels.shape[1]

    @property
    def height(self):
        return self.pixels.shape[0]

    def to_bytes(self):
        return np.rint(np.clip(self.pixels, 0.0, 1.0) * 255.0).astype(np.uint8)

    @classmethod
    def from_bytes(cls, data):
        return cls(np.asarray(data, dtype=np.uint8).astype(float) / 255.0)

    def quantized(self):
        """The image as it round-trips through 8-bit storage."""
        return RasterImage.from_bytes(self.to_bytes())

    def __eq__(self, other):
        return isinstance(other, RasterImage) and np.array_equal(self.pixels, other.pixels)


def splat(image, points, weights=None):
    """Accumulates bilinear splats of (x, y) points into ``image`` in place."""
    size = image.shape[0]
    weights = np.ones(len(points)) if weights is None else weights
    px = points[:, 0] * size - 0.5
    py = points[:, 1] * size - 0.5
    x0 = np.floor(px).astype(int)
    y0 = np.floor(py).astype(int)
    fx = px - x0
    fy = py - y0
    for dy, wy in ((0, 1.0 - fy), (1, fy)):
        for dx, wx in ((0, 1.0 - fx), (1, fx)):
            rows, cols = y0 + dy, x0 + dx
            inside = (rows >= 0) & (rows < size) & (cols >= 0) & (cols < size)
            np.add.at(image, (rows[inside], cols[inside]), (weights * wy * wx)[inside])
    return image


def rasterize(curves, size=128):
    """Draws a curve set with 4 * size uniform-parameter samples per curve.

    Each sample is splatted bilinearly into its four neighbouring pixels;
    intensities accumulate and are clamped to 1. Background is 0.
    """
    image = np.zeros((size, size))
    for curve in curves:
        splat(image, sample_curve(curve, 4 * size))
    return RasterImage(np.minimum(image, 1.0))


def project(points, size):
    """Orthographic projection along +z onto pixel coordinates (col, row).

    The view window spans x in [-1, 1] and y in [-0.5, 1.5], one unit of
    model space covering size / 2 pixels.
    """
    scale = size / 2.0
    cols = (points[:, 0] + 1.0) * scale
    rows = (1.5 - points[:, 1]) * scale
    return cols, rows


def render_surface(spec, size=128, density=2):
    """Renders a depth-buffered, Lambert-shaded point-splat image of ``spec``."""
    n_t = density * size
    n_s = 2 * density * size
    t, s = np.meshgrid(np.arange(n_t) / (n_t - 1), np.arange(n_s) / n_s, indexing='ij')
    if spec.kind is SurfaceKind.EXTRUSION:
        s = s * n_s / (n_s - 1)
    params = np.column_stack([t.ravel(), s.ravel()])
    points = evaluate_surface(spec, params)
    normals = surface_normals(spec, params)
    shade = AMBIENT + (1.0 - AMBIENT) * np.abs(normals @ LIGHT_DIRECTION)

    cols, rows = project(points, size)
    cols = np.floor(cols).astype(int)
    rows = np.floor(rows).astype(int)
    inside = (rows >= 0) & (rows < size) & (cols >= 0) & (cols < size)
    flat = rows[inside] * size + cols[inside]
    depth_values = points[inside, 2]
    shade = shade[inside]

    depth = np.full(size * size, -np.inf)
    np.maximum.at(depth, flat, depth_values)
    visible = depth_values >= depth[flat]
    image = np.zeros(size * size)
    np.maximum.at(image, flat[visible], shade[visible])
    return RasterImage(np.clip(image, 0.0, 1.0).reshape(size, size))
