from ..autodiff import ops


def add_dense(store, prefix, n_in, n_out):
    store.add(f'{prefix}.w', (n_in, n_out))
    store.add(f'{prefix}.b', (n_out,), init='zeros')


def dense(store, prefix, x, activation=None):
    out = ops.linear(x, store[f'{prefix}.w'], store[f'{prefix}.b'])
    return activation(out) if activation else out


def add_mlp(store, prefix, widths):
    for i, (n_in, n_out) in enumerate(zip(widths[:-1], widths[1:])):
        add_dense(store, f'{prefix}.{i}', n_in, n_out)


def mlp(store, prefix, x, layers, final_activation=None):
    """Dense layers with relu between them; the last one uses ``final_activation``."""
    for i in range(layers):
        last = i == layers - 1
        x = dense(store, f'{prefix}.{i}', x, final_activation if last else ops.relu)
    return x
