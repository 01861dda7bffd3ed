import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
from scipy import special

from .tensor import ShapeError, as_tensor, record


def _unbroadcast(grad, shape):
    """Sums ``grad`` down to ``shape`` (reverses numpy broadcasting)."""
    while grad.ndim > len(shape):
        grad = grad.sum(axis=0)
    for axis, size in enumerate(shape):
        if size == 1 and grad.shape[axis] != 1:
            grad = grad.sum(axis=axis, keepdims=True)
    return grad


def _broadcast_shape(op, a, b):
    try:
        return np.broadcast_shapes(a.shape, b.shape)
    except ValueError:
        raise ShapeError(f'{op}: shapes {a.shape} and {b.shape} do not broadcast.') from None


# elementwise

def add(a, b):
    a, b = as_tensor(a), as_tensor(b)
    _broadcast_shape('add', a, b)
    return record('add', (a, b), a.values + b.values,
                  lambda g: (_unbroadcast(g, a.shape), _unbroadcast(g, b.shape)))


def sub(a, b):
    a, b = as_tensor(a), as_tensor(b)
    _broadcast_shape('sub', a, b)
    return record('sub', (a, b), a.values - b.values,
                  lambda g: (_unbroadcast(g, a.shape), -_unbroadcast(g, b.shape)))


def mul(a, b):
    a, b = as_tensor(a), as_tensor(b)
    _broadcast_shape('mul', a, b)
    return record('mul', (a, b), a.values * b.values,
                  lambda g: (_unbroadcast(g * b.values, a.shape),
                             _unbroadcast(g * a.values, b.shape)))


def neg(a):
    a = as_tensor(a)
    return record('neg', (a,), -a.values, lambda g: (-g,))


def square(a):
    a = as_tensor(a)
    return record('square', (a,), a.values ** 2, lambda g: (2.0 * g * a.values,))


def relu(a):
    a = as_tensor(a)
    return record('relu', (a,), np.maximum(a.values, 0.0), lambda g: (g * (a.values > 0),))


def sigmoid(a):
    a = as_tensor(a)
    s = special.expit(a.values)
    return record('sigmoid', (a,), s, lambda g: (g * s * (1.0 - s),))


def tanh(a):
    a = as_tensor(a)
    t = np.tanh(a.values)
    return record('tanh', (a,), t, lambda g: (g * (1.0 - t * t),))


def exp(a):
    a = as_tensor(a)
    e = np.exp(a.values)
    return record('exp', (a,), e, lambda g: (g * e,))


def log(a):
    a = as_tensor(a)
    with np.errstate(divide='ignore', invalid='ignore'):
        values = np.log(a.values)
    return record('log', (a,), values, lambda g: (g / a.values,))


def softplus(a):
    a = as_tensor(a)
    return record('softplus', (a,), np.logaddexp(0.0, a.values),
                  lambda g: (g * special.expit(a.values),))


def softmax(a, axis=-1):
    a = as_tensor(a)
    s = special.softmax(a.values, axis=axis)

    def backward(g):
        return (s * (g - np.sum(g * s, axis=axis, keepdims=True)),)
    return record('softmax', (a,), s, backward)


# linear algebra and shape

def matmul(a, b):
    """``a @ b`` for a of any rank and b a vector or a matrix."""
    a, b = as_tensor(a), as_tensor(b)
    if a.ndim == 0 or b.ndim not in (1, 2) or a.shape[-1] != b.shape[0]:
        raise ShapeError(f'matmul: shapes {a.shape} and {b.shape} are not aligned.')
    k = b.shape[0]

    def backward(g):
        if b.ndim == 2:
            grad_a = g @ b.values.T
            grad_b = a.values.reshape(-1, k).T @ g.reshape(-1, b.shape[1])
        else:
            grad_a = np.multiply.outer(g, b.values)
            grad_b = a.values.reshape(-1, k).T @ np.reshape(g, -1)
        return grad_a, grad_b
    return record('matmul', (a, b), a.values @ b.values, backward)


def transpose(a):
    a = as_tensor(a)
    if a.ndim != 2:
        raise ShapeError(f'transpose takes a matrix, got shape {a.shape}.')
    return record('transpose', (a,), a.values.T, lambda g: (g.T,))


def reshape(a, shape):
    a = as_tensor(a)
    try:
        values = a.values.reshape(shape)
    except ValueError:
        raise ShapeError(f'reshape: cannot view shape {a.shape} as {tuple(shape)}.') from None
    return record('reshape', (a,), values, lambda g: (g.reshape(a.shape),))


def concat(tensors, axis=0):
    tensors = [as_tensor(t) for t in tensors]
    try:
        values = np.concatenate([t.values for t in tensors], axis=axis)
    except ValueError:
        shapes = ', '.join(str(t.shape) for t in tensors)
        raise ShapeError(f'concat: shapes {shapes} do not join on axis {axis}.') from None
    cuts = np.cumsum([t.shape[axis] for t in tensors])[:-1]

    def backward(g):
        return tuple(np.split(g, cuts, axis=axis))
    return record('concat', tensors, values, backward)


def stack(tensors):
    return concat([reshape(t, (1,) + t.shape) for t in map(as_tensor, tensors)], axis=0)


def slice_tensor(a, key):
    a = as_tensor(a)
    try:
        values = a.values[key]
    except IndexError as e:
        raise ShapeError(f'slice: {e} for shape {a.shape}.') from None

    def backward(g):
        grad = np.zeros(a.shape)
        np.add.at(grad, key, g)
        return (grad,)
    return record('slice', (a,), values, backward)


def gather_rows(a, indices):
    """Rows ``a[indices]``; repeated indices accumulate in the gradient."""
    return slice_tensor(a, np.asarray(indices, dtype=int))


# reductions

def _expand(g, shape, axis, keepdims):
    if axis is not None and not keepdims:
        g = np.expand_dims(g, axis)
    return np.broadcast_to(g, shape)


def sum(a, axis=None, keepdims=False):
    a = as_tensor(a)
    return record('sum', (a,), np.sum(a.values, axis=axis, keepdims=keepdims),
                  lambda g: (np.array(_expand(g, a.shape, axis, keepdims)),))


def mean(a, axis=None, keepdims=False):
    a = as_tensor(a)
    count = a.size if axis is None else np.prod([a.shape[i] for i in np.atleast_1d(axis)])
    return record('mean', (a,), np.mean(a.values, axis=axis, keepdims=keepdims),
                  lambda g: (_expand(g, a.shape, axis, keepdims) / count,))


def max(a, axis=0):
    """Maximum along ``axis``; the gradient goes to the first maximal entry."""
    a = as_tensor(a)
    winners = np.expand_dims(np.argmax(a.values, axis=axis), axis)
    values = np.take_along_axis(a.values, winners, axis=axis).squeeze(axis)

    def backward(g):
        grad = np.zeros(a.shape)
        np.put_along_axis(grad, winners, np.expand_dims(g, axis), axis=axis)
        return (grad,)
    return record('max', (a,), values, backward)


def cumsum(a, axis=0):
    a = as_tensor(a)

    def backward(g):
        return (np.flip(np.cumsum(np.flip(g, axis), axis=axis), axis),)
    return record('cumsum', (a,), np.cumsum(a.values, axis=axis), backward)


def mean_pool_spatial(a):
    """Mean over the trailing (H, W) axes of a (..., C, H, W) feature map."""
    a = as_tensor(a)
    if a.ndim < 3:
        raise ShapeError(f'mean_pool_spatial takes (..., C, H, W), got shape {a.shape}.')
    return mean(a, axis=(-2, -1))


# convolution

def _batched(x):
    if x.ndim == 3:
        return x.values[None], True
    if x.ndim == 4:
        return x.values, False
    raise ShapeError(f'Feature maps are (C, H, W) or (N, C, H, W), got shape {x.shape}.')


def conv2d(x, w, b=None):
    """3x3 convolution, stride 1, zero padding; ``w`` is (out, in, 3, 3)."""
    x, w = as_tensor(x), as_tensor(w)
    inputs, single = _batched(x)
    if w.ndim != 4 or w.shape[2:] != (3, 3) or w.shape[1] != inputs.shape[1]:
        raise ShapeError(f'conv2d: kernel {w.shape} does not fit input {x.shape}.')
    b = as_tensor(np.zeros(w.shape[0]) if b is None else b)
    if b.shape != (w.shape[0],):
        raise ShapeError(f'conv2d: bias {b.shape} does not fit kernel {w.shape}.')

    height, width = inputs.shape[2:]
    padded = np.pad(inputs, ((0, 0), (0, 0), (1, 1), (1, 1)))
    windows = sliding_window_view(padded, (3, 3), axis=(2, 3))
    out = np.tensordot(windows, w.values, axes=([1, 4, 5], [1, 2, 3]))
    out = out.transpose(0, 3, 1, 2) + b.values[:, None, None]

    def backward(g):
        g = g[None] if single else g
        grad_w = np.tensordot(g, windows, axes=([0, 2, 3], [0, 2, 3]))
        grad_b = g.sum(axis=(0, 2, 3))
        grad_padded = np.zeros(padded.shape)
        for i in range(3):
            for j in range(3):
                grad_padded[:, :, i:i + height, j:j + width] += np.einsum(
                    'nohw,oc->nchw', g, w.values[:, :, i, j])
        grad_x = grad_padded[:, :, 1:-1, 1:-1]
        return (grad_x[0] if single else grad_x), grad_w, grad_b
    return record('conv2d', (x, w, b), out[0] if single else out, backward)


def maxpool2d(x):
    """2x2 max pooling, stride 2, over the trailing (H, W) axes."""
    x = as_tensor(x)
    *lead, height, width = x.shape
    if x.ndim < 2 or height % 2 or width % 2:
        raise ShapeError(f'maxpool2d needs even spatial dims, got shape {x.shape}.')
    blocks = (x.values.reshape(*lead, height // 2, 2, width // 2, 2)
              .swapaxes(-3, -2).reshape(*lead, height // 2, width // 2, 4))
    winners = np.argmax(blocks, axis=-1)[..., None]
    values = np.take_along_axis(blocks, winners, axis=-1)[..., 0]

    def backward(g):
        grad = np.zeros(blocks.shape)
        np.put_along_axis(grad, winners, g[..., None], axis=-1)
        grad = (grad.reshape(*lead, height // 2, width // 2, 2, 2)
                .swapaxes(-3, -2).reshape(x.shape))
        return (grad,)
    return record('maxpool2d', (x,), values, backward)


# composites

def linear(x, weight, bias):
    """``x @ weight + bias`` with weight stored (in, out)."""
    return add(matmul(x, weight), bias)


def nll(logits, target):
    """Negative log-likelihood of class ``target``: logsumexp(logits) - logits[target]."""
    logits = as_tensor(logits)
    if logits.ndim != 1 or not 0 <= target < logits.shape[0]:
        raise ShapeError(f'nll: class {target} for logits of shape {logits.shape}.')
    value = special.logsumexp(logits.values) - logits.values[target]

    def backward(g):
        grad = special.softmax(logits.values)
        grad[target] -= 1.0
        return (g * grad,)
    return record('nll', (logits,), value, backward)


def squared_distance_sum(a, b):
    return sum(square(sub(a, b)))

