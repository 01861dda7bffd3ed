from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..spline_core import CurveSet, SurfaceSpec
from .raster import RasterImage


@dataclass(frozen=True)
class Scene2D:
    image: RasterImage
    label: CurveSet


@dataclass(frozen=True)
class Instance3D:
    """A surface spec with its sampled cloud.

    ``params`` holds the (t, s) surface parameters of every cloud point
    when known (generated records); it is not stored on disk.
    """

    spec: SurfaceSpec
    cloud: np.ndarray
    image: Optional[RasterImage] = None
    params: Optional[np.ndarray] = None
