import numpy as np

from ..spline_core import CurveSet, SplineCurve2D
from .base import SplineModel
from .config import ModelKind
from .losses import loss_l1
from .rnn import PointRnn


class PointRnnModel(SplineModel):
    """Single curve, variable point count: the image feature drives a point GRU."""

    kind = ModelKind.V

    def build(self):
        super().build()
        self.rnn = PointRnn(self.store, self.config, self.config.feature_dim)

    def run(self, features, label=None):
        count = None if label is None else label[0].m
        return self.rnn.roll(features.vector, count=count)

    def loss(self, features, target, weights):
        return loss_l1(self.run(features, target), target[0], weights.lam)

    def to_curveset(self, steps):
        positions = np.array([step.position.values for step in steps])
        return CurveSet((SplineCurve2D(positions),))

    def attention_maps(self, model_input):
        return []
