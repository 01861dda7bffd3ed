"""
Dense f64 tensors with reverse-mode differentiation.

Operations record onto the innermost active ``Tape`` (a per-thread stack
entered with ``with Tape() as tape:``) whenever one of their inputs tracks
gradients. ``tape.backward(loss)`` replays the records in reverse.
"""

import threading

import numpy as np


class ShapeError(ValueError):
    pass


class NonFiniteError(ArithmeticError):
    pass


class ContractError(RuntimeError):
    pass


_local = threading.local()


def active_tape():
    stack = getattr(_local, 'tapes', None)
    return stack[-1] if stack else None


class Node:
    __slots__ = ('op', 'inputs', 'output', 'backward', 'tape')

    def __init__(self, op, inputs, output, backward, tape=None):
        self.tape = tape
        self.op = op
        self.inputs = inputs
        self.output = output
        self.backward = backward


class Tensor:
    """A shaped f64 buffer, optionally a gradient leaf or a recorded result."""

    __array_priority__ = 100

    def __init__(self, values, requires_grad=False, name=None):
        self.values = np.array(values, dtype=np.float64, order='C')
        self.requires_grad = requires_grad
        self.name = name
        self.node = None

    @property
    def shape(self):
        return self.values.shape

    @property
    def ndim(self):
        return self.values.ndim

    @property
    def size(self):
        return self.values.size

    @property
    def tracked(self):
        return self.requires_grad or self.node is not None

    def item(self):
        if self.size != 1:
            raise ContractError(f'item() needs a single value, tensor has shape {self.shape}.')
        return float(self.values.reshape(-1)[0])

    def numpy(self):
        return self.values.copy()

    def detach(self):
        return Tensor(self.values)

    def __repr__(self):
        label = f' {self.name!r}' if self.name else ''
        return f'<Tensor{label} shape={self.shape} tracked={self.tracked}>'

    def __len__(self):
        return self.shape[0]

    # operator sugar; the implementations live in ops

    def __add__(self, other):
        from . import ops
        return ops.add(self, other)

    def __radd__(self, other):
        from . import ops
        return ops.add(other, self)

    def __sub__(self, other):
        from . import ops
        return ops.sub(self, other)

    def __rsub__(self, other):
        from . import ops
        return ops.sub(other, self)

    def __mul__(self, other):
        from . import ops
        return ops.mul(self, other)

    def __rmul__(self, other):
        from . import ops
        return ops.mul(other, self)

    def __truediv__(self, other):
        from . import ops
        return ops.mul(self, 1.0 / np.asarray(other, dtype=np.float64))

    def __neg__(self):
        from . import ops
        return ops.neg(self)

    def __matmul__(self, other):
        from . import ops
        return ops.matmul(self, other)

    def __rmatmul__(self, other):
        from . import ops
        return ops.matmul(other, self)

    def __getitem__(self, key):
        from . import ops
        return ops.slice_tensor(self, key)

    @property
    def T(self):
        from . import ops
        return ops.transpose(self)

    def sum(self, axis=None, keepdims=False):
        from . import ops
        return ops.sum(self, axis=axis, keepdims=keepdims)

    def mean(self, axis=None, keepdims=False):
        from . import ops
        return ops.mean(self, axis=axis, keepdims=keepdims)

    def reshape(self, *shape):
        from . import ops
        if len(shape) == 1 and isinstance(shape[0], (tuple, list)):
            shape = tuple(shape[0])
        return ops.reshape(self, shape)


def as_tensor(value):
    return value if isinstance(value, Tensor) else Tensor(value)


def record(op, inputs, values, backward):
    """Wraps ``values`` as the result of ``op``; records it when an input tracks.

    ``backward`` maps the output gradient to one gradient per input (``None``
    for inputs that need none).
    """
    values = np.asarray(values, dtype=np.float64)
    if not np.all(np.isfinite(values)):
        raise NonFiniteError(f'{op} produced non-finite values.')
    out = Tensor(values)
    tape = active_tape()
    if tape is not None and any(t.tracked for t in inputs):
        out.node = tape.append(Node(op, tuple(inputs), out, backward, tape))
    return out


class Tape:
    """Append-only op record. Single-threaded; each thread has its own stack."""

    def __init__(self):
        self.nodes = []

    def __enter__(self):
        if not hasattr(_local, 'tapes'):
            _local.tapes = []
        _local.tapes.append(self)
        return self

    def __exit__(self, *exc):
        _local.tapes.remove(self)
        return False

    def __len__(self):
        return len(self.nodes)

    def append(self, node):
        self.nodes.append(node)
        return node

    def backward(self, loss, params=()):
        """Gradients of the scalar ``loss`` for every tracked leaf it reaches.

        Returns a dict keyed by leaf tensor; leaves listed in ``params`` that
        the loss does not depend on map to zeros.
        """
        if loss.size != 1:
            raise ContractError(f'backward needs a scalar loss, got shape {loss.shape}.')
        if loss.node is None or loss.node.tape is not self:
            raise ContractError('The loss was not recorded on this tape.')

        grads = {id(loss): np.ones(loss.shape)}
        leaves = {}
        for node in reversed(self.nodes):
            g = grads.pop(id(node.output), None)
            if g is None:
                continue
            for tensor, grad in zip(node.inputs, node.backward(g)):
                if grad is None or not tensor.tracked:
                    continue
                if tensor.node is None:
                    leaves[id(tensor)] = tensor
                key = id(tensor)
                grads[key] = grads[key] + grad if key in grads else np.array(grad, dtype=float)

        result = {leaf: grads[key] for key, leaf in leaves.items()}
        for param in params:
            if param not in result:
                result[param] = np.zeros(param.shape)
        return result
