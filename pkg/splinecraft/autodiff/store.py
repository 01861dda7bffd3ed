import numpy as np

from .tensor import ShapeError, Tensor


class ParameterStore:
    """Ordered, named gradient leaves with seeded initialisation."""

    def __init__(self, seed=0):
        self.rng = np.random.default_rng(seed)
        self._params = {}

    def add(self, name, shape, init='glorot'):
        if name in self._params:
            raise KeyError(f'Parameter {name!r} already exists.')
        shape = tuple(shape)
        if init == 'zeros':
            values = np.zeros(shape)
        elif init == 'glorot':
            values = self.rng.uniform(-1.0, 1.0, size=shape) * _glorot_limit(shape)
        else:
            raise ValueError(f'Unknown initialiser {init!r}.')
        self._params[name] = Tensor(values, requires_grad=True, name=name)
        return self._params[name]

    def add_many(self, shapes):
        for name, shape in shapes.items():
            self.add(name, shape, init='zeros' if len(shape) == 1 else 'glorot')

    def __getitem__(self, name):
        return self._params[name]

    def __contains__(self, name):
        return name in self._params

    def __iter__(self):
        return iter(self._params)

    def __len__(self):
        return len(self._params)

    def items(self):
        return self._params.items()

    def values(self):
        return self._params.values()

    def names(self):
        return list(self._params)

    def count(self):
        return int(sum(p.size for p in self._params.values()))

    def grads_by_name(self, gradients):
        """Re-keys a tape gradient map by parameter name (zeros where absent)."""
        return {name: gradients.get(param, np.zeros(param.shape))
                for name, param in self._params.items()}

    def state_dict(self):
        return {name: param.values.copy() for name, param in self._params.items()}

    def load_state_dict(self, arrays):
        missing = set(self._params) - set(arrays)
        if missing:
            raise KeyError(f'Missing parameters: {sorted(missing)}.')
        for name, param in self._params.items():
            values = np.asarray(arrays[name], dtype=np.float64)
            if values.shape != param.shape:
                raise ShapeError(
                    f'Parameter {name!r} has shape {param.shape}, loaded {values.shape}.')
            param.values = values.copy()


def _glorot_limit(shape):
    if len(shape) == 4:
        receptive = shape[2] * shape[3]
        fan_in, fan_out = shape[1] * receptive, shape[0] * receptive
    elif len(shape) == 2:
        fan_in, fan_out = shape
    else:
        fan_in = fan_out = shape[0]
    return np.sqrt(6.0 / (fan_in + fan_out))
