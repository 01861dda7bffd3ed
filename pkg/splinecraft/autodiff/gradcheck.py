import numpy as np

from .tensor import Tape

STEP = 1e-5


def numerical_gradient(fn, values, h=STEP):
    """Central differences of the scalar ``fn()`` with respect to ``values``.

    ``values`` is perturbed in place and restored entry by entry.
    """
    grad = np.zeros(values.shape)
    flat, out = values.reshape(-1), grad.reshape(-1)
    for i in range(flat.size):
        saved = flat[i]
        flat[i] = saved + h
        upper = fn()
        flat[i] = saved - h
        lower = fn()
        flat[i] = saved
        out[i] = (upper - lower) / (2.0 * h)
    return grad


def relative_error(analytic, numeric, floor=1e-8):
    scale = max(np.linalg.norm(analytic), np.linalg.norm(numeric), floor)
    return float(np.linalg.norm(analytic - numeric) / scale)


def gradcheck(loss_fn, params, h=STEP):
    """Largest relative error between tape and finite-difference gradients.

    ``loss_fn()`` must build a scalar tensor from the current values of the
    ``params`` leaves.
    """
    with Tape() as tape:
        loss = loss_fn()
        analytic = tape.backward(loss, params)

    def value():
        return loss_fn().item()
    return max(relative_error(analytic[p], numerical_gradient(value, p.values, h))
               for p in params)
