from ..autodiff import ops
from ..spline_core import GENERATOR_POINTS
from .base import SplineModel
from .config import ModelKind
from .layers import add_mlp, mlp
from .losses import loss_l2
from .rnn import AttentionRnn

CURVE_POINTS = GENERATOR_POINTS


class CurveRnnModel(SplineModel):
    """Several curves of five points; each attention step emits a whole curve."""

    kind = ModelKind.M

    def build(self):
        super().build()
        self.rnn = AttentionRnn(self.store, self.config)
        add_mlp(self.store, 'curve_head',
                (self.config.feature_dim, self.config.head_hidden, 2 * CURVE_POINTS))

    def emit(self, h, index):
        positions = mlp(self.store, 'curve_head', h, 2)
        return {'control_points': ops.reshape(positions, (CURVE_POINTS, 2))}

    def run(self, features, label=None):
        count = None if label is None else len(label)
        return self.rnn.roll(features, self.emit, count=count)

    def loss(self, features, target, weights):
        return loss_l2(self.run(features, target), target, weights.lam)
