from . import ops
from .tensor import ShapeError

GATES = ('z', 'r', 'h')


def gru_parameter_shapes(input_dim, hidden_dim, prefix='gru'):
    """Names and shapes of a GRU cell: W_* (hidden, input), U_* (hidden, hidden), b_*."""
    shapes = {}
    for gate in GATES:
        shapes[f'{prefix}.W_{gate}'] = (hidden_dim, input_dim)
        shapes[f'{prefix}.U_{gate}'] = (hidden_dim, hidden_dim)
        shapes[f'{prefix}.b_{gate}'] = (hidden_dim,)
    return shapes


def gru_cell(x, h, params, prefix='gru'):
    """One GRU step.

        z = sigmoid(W_z x + U_z h + b_z)
        r = sigmoid(W_r x + U_r h + b_r)
        h~ = tanh(W_h x + U_h (r * h) + b_h)
        h' = (1 - z) * h + z * h~
    """
    W = {gate: params[f'{prefix}.W_{gate}'] for gate in GATES}
    U = {gate: params[f'{prefix}.U_{gate}'] for gate in GATES}
    b = {gate: params[f'{prefix}.b_{gate}'] for gate in GATES}
    if W['z'].shape[1] != x.shape[-1] or U['z'].shape[1] != h.shape[-1]:
        raise ShapeError(
            f'gru_cell: input {x.shape} / hidden {h.shape} do not fit '
            f'W {W["z"].shape} / U {U["z"].shape}.')

    def gate(name, hidden):
        return ops.add(ops.add(ops.matmul(W[name], x), ops.matmul(U[name], hidden)), b[name])

    z = ops.sigmoid(gate('z', h))
    r = ops.sigmoid(gate('r', h))
    candidate = ops.tanh(gate('h', ops.mul(r, h)))
    return ops.add(ops.mul(ops.sub(1.0, z), h), ops.mul(z, candidate))
