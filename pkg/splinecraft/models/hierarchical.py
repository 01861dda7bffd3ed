from ..autodiff import ops
from .base import SplineModel
from .config import ModelKind
from .layers import add_dense, dense
from .losses import loss_l3
from .rnn import AttentionRnn, PointRnn


class HierarchicalModel(SplineModel):
    """Curve RNN over attention emitting a curve vector, point RNN per curve.

    Training rolls the teacher counts: outer steps = curves in the label,
    inner steps = control points of the label curve at the same position.
    """

    kind = ModelKind.MV

    def build(self):
        super().build()
        dim = self.config.feature_dim
        self.curve_rnn = AttentionRnn(self.store, self.config)
        add_dense(self.store, 'curve_vector', dim, dim)
        add_dense(self.store, 'point_seed', dim, dim)
        self.point_rnn = PointRnn(self.store, self.config, dim)

    def run(self, features, label=None):
        counts = None if label is None else label.counts

        def emit(h, index):
            vector = dense(self.store, 'curve_vector', h, ops.tanh)
            seed = dense(self.store, 'point_seed', vector, ops.tanh)
            count = None if counts is None else counts[index]
            return {'vector': vector,
                    'points': self.point_rnn.roll(vector, h0=seed, count=count)}
        return self.curve_rnn.roll(
            features, emit, count=None if label is None else len(label))

    def loss(self, features, target, weights):
        return loss_l3(self.run(features, target), target,
                       weights.lam_curve, weights.lam_point)
