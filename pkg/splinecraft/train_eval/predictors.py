from dataclasses import dataclass

import numpy as np

from ..spline_core import SurfaceKind, sweep


@dataclass(frozen=True)
class SurfacePrediction:
    spec: object
    points: np.ndarray


class Predictor:
    """What evaluation needs from a model.

    ``predict`` runs free (0.5 stop thresholds); ``predict_teacher_forced``
    rolls the label's counts. 2D predictors return CurveSets, 3D ones
    SurfacePredictions.
    """

    def predict(self, record):
        raise NotImplementedError

    def predict_teacher_forced(self, record):
        raise NotImplementedError


class NetworkPredictor(Predictor):

    def __init__(self, model):
        self.model = model

    @property
    def kind(self):
        return self.model.kind

    def predict(self, record):
        prediction = self.model.predict(self.model.model_input(record))
        if self.kind.is_3d:
            return SurfacePrediction(prediction.spec(), prediction.points.values.copy())
        return prediction

    def predict_teacher_forced(self, record):
        if self.kind.is_3d:
            return self.predict(record)
        return self.model.predict_teacher_forced(self.model.model_input(record), record.label)


class OraclePredictor(Predictor):
    """Returns the labels themselves; evaluates the harness, not a model."""

    def __init__(self, kind, grid=None):
        self.kind = kind
        self.grid = grid

    def predict(self, record):
        if self.kind.is_3d:
            k, n_sweep = self.grid or ((32, 64) if record.spec.kind is SurfaceKind.REVOLUTION
                                       else (32, 32))
            return SurfacePrediction(record.spec, sweep(record.spec, n_sweep, k))
        return record.label

    def predict_teacher_forced(self, record):
        return self.predict(record)
