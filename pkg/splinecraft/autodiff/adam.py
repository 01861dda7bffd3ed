from dataclasses import dataclass, field

import numpy as np

from .tensor import ShapeError


@dataclass
class AdamState:
    """Adam hyper-parameters plus per-parameter moment buffers.

    With ``decoupled`` the weight decay is applied directly to the parameters
    (AdamW) instead of being folded into the gradient.
    """

    lr: float = 1e-4
    weight_decay: float = 1e-4
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    decoupled: bool = False
    step: int = 0
    first: dict = field(default_factory=dict)
    second: dict = field(default_factory=dict)


def adam_step(params, grads, state):
    """Updates ``params`` (name -> Tensor) in place from ``grads`` (name -> array)."""
    state.step += 1
    bias1 = 1.0 - state.beta1 ** state.step
    bias2 = 1.0 - state.beta2 ** state.step
    for name, param in params.items():
        g = np.asarray(grads[name], dtype=np.float64)
        if g.shape != param.shape:
            raise ShapeError(
                f'adam_step: gradient {g.shape} for {name} of shape {param.shape}.')
        if state.weight_decay and not state.decoupled:
            g = g + state.weight_decay * param.values
        m = state.first.get(name, np.zeros(param.shape))
        v = state.second.get(name, np.zeros(param.shape))
        m = state.beta1 * m + (1.0 - state.beta1) * g
        v = state.beta2 * v + (1.0 - state.beta2) * g * g
        state.first[name], state.second[name] = m, v
        update = state.lr * (m / bias1) / (np.sqrt(v / bias2) + state.eps)
        if state.weight_decay and state.decoupled:
            update = update + state.lr * state.weight_decay * param.values
        param.values = param.values - update
    return params
