from ..autodiff import ParameterStore
from ..spline_core import CurveSet, SplineCurve2D
from .encoders import ImageEncoder


class SplineModel:
    """Parameters plus the forward passes of one model kind.

    Subclasses build their layers in ``build`` and implement ``run`` (the
    recurrence over one encoded input, teacher-forced when ``label`` is given)
    and ``loss``.
    """

    kind = None

    def __init__(self, config, store=None):
        self.config = config
        self.store = store if store is not None else ParameterStore(config.seed)
        self.build()

    def build(self):
        self.encoder = ImageEncoder(self.store, self.config)

    def model_input(self, record):
        return record.image

    def target(self, record):
        return record.label

    def encode(self, inputs):
        return self.encoder.encode(inputs)

    def run(self, features, label=None):
        raise NotImplementedError

    def loss(self, features, target, weights):
        raise NotImplementedError

    def forward(self, model_input, label=None):
        return self.run(self.encode([model_input])[0], label)

    def to_curveset(self, steps):
        return CurveSet(tuple(SplineCurve2D(step.positions()) for step in steps))

    def predict(self, model_input):
        return self.to_curveset(self.forward(model_input))

    def predict_teacher_forced(self, model_input, label):
        return self.to_curveset(self.forward(model_input, label))

    def attention_maps(self, model_input):
        """One (x, y) map per outer step, for models with attention."""
        side = int(round(self.config.sites ** 0.5))
        return [step.attention.reshape(side, side)
                for step in self.forward(model_input) if hasattr(step, 'attention')]
