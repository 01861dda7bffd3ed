from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy import special

from ..autodiff import Tensor, gru_cell, gru_parameter_shapes, ops
from ..spline_core import MAX_CURVES, MAX_POINTS, MIN_POINTS
from .layers import add_dense, add_mlp, dense, mlp

CONTINUE, STOP = 0, 1
STOP_THRESHOLD = 0.5


def stop_probability(logits):
    return float(special.softmax(logits.values)[STOP])


@dataclass
class PointStep:
    position: Tensor
    stop_logits: Tensor

    @property
    def stop_prob(self):
        return stop_probability(self.stop_logits)


@dataclass
class CurveStep:
    """One outer step of a curve recurrence.

    ``control_points`` is set by the multi-curve model, ``points`` by the
    hierarchical one; ``attention`` holds the softmax weights over the sites.
    """

    stop_logits: Tensor
    attention: np.ndarray
    control_points: Optional[Tensor] = None
    vector: Optional[Tensor] = None
    points: list = field(default_factory=list)

    @property
    def stop_prob(self):
        return stop_probability(self.stop_logits)

    def positions(self):
        if self.control_points is not None:
            return self.control_points.values
        return np.array([step.position.values for step in self.points])


def stops(count, limit, steps):
    """Teacher-forced: after ``count`` steps. Free-running: past the threshold or at limit."""
    if count is not None:
        return len(steps) >= count
    return len(steps) >= limit or steps[-1].stop_prob > STOP_THRESHOLD


class PointRnn:
    """GRU over a constant input emitting (x, y) and CONTINUE/STOP logits per step."""

    def __init__(self, store, config, input_dim, prefix='point_rnn'):
        self.store = store
        self.prefix = prefix
        self.hidden_dim = config.feature_dim
        store.add_many(gru_parameter_shapes(input_dim, config.feature_dim, f'{prefix}.gru'))
        add_mlp(store, f'{prefix}.head', (config.feature_dim, config.head_hidden, 4))

    def step(self, x, h):
        h = gru_cell(x, h, self.store, f'{self.prefix}.gru')
        out = mlp(self.store, f'{self.prefix}.head', h, 2)
        return h, PointStep(position=out[0:2], stop_logits=out[2:4])

    def roll(self, x, h0=None, count=None):
        """Emits ``count`` steps, or at inference between MIN_POINTS and MAX_POINTS."""
        h = Tensor(np.zeros(self.hidden_dim)) if h0 is None else h0
        steps = []
        while True:
            h, step = self.step(x, h)
            steps.append(step)
            if count is None and len(steps) < MIN_POINTS:
                continue
            if stops(count, MAX_POINTS, steps):
                return steps


class AttentionRnn:
    """Outer curve recurrence: attention over image sites feeding a GRU."""

    def __init__(self, store, config, prefix='curve_rnn'):
        self.store = store
        self.prefix = prefix
        channels = config.conv_channels[-1]
        hidden, attention = config.feature_dim, config.attention_hidden
        add_dense(store, f'{prefix}.init', channels, hidden)
        store.add_many(gru_parameter_shapes(channels, hidden, f'{prefix}.gru'))
        store.add(f'{prefix}.att.w_sites', (channels, attention))
        store.add(f'{prefix}.att.w_hidden', (hidden, attention))
        store.add(f'{prefix}.att.b', (attention,), init='zeros')
        store.add(f'{prefix}.att.v', (attention, 1))
        add_dense(store, f'{prefix}.stop', hidden, 2)

    def initial_hidden(self, features):
        return dense(self.store, f'{self.prefix}.init', features.pooled, ops.tanh)

    def attend(self, sites, projected_sites, h):
        """Softmax weights over the d sites and the weighted site feature."""
        p = f'{self.prefix}.att'
        from_hidden = ops.matmul(h, self.store[f'{p}.w_hidden'])
        hidden = ops.relu(ops.add(ops.add(projected_sites, from_hidden), self.store[f'{p}.b']))
        scores = ops.reshape(ops.matmul(hidden, self.store[f'{p}.v']), (sites.shape[0],))
        weights = ops.softmax(scores)
        return weights, ops.matmul(weights, sites)

    def roll(self, features, emit, count=None):
        """Runs the recurrence; ``emit(h)`` turns a hidden state into CurveStep fields."""
        projected = ops.matmul(features.sites, self.store[f'{self.prefix}.att.w_sites'])
        h = self.initial_hidden(features)
        steps = []
        while True:
            weights, context = self.attend(features.sites, projected, h)
            h = gru_cell(context, h, self.store, f'{self.prefix}.gru')
            stop_logits = dense(self.store, f'{self.prefix}.stop', h)
            steps.append(CurveStep(stop_logits=stop_logits, attention=weights.values.copy(),
                                   **emit(h, len(steps))))
            if stops(count, MAX_CURVES, steps):
                return steps
