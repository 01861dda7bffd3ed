import numpy as np

from ..models import ModelKind
from ..spline_core import GENERATOR_POINTS
from ..synth_data import Instance3D, Scene2D, read_dataset


class DatasetModeError(ValueError):
    pass


def split_indices(n, seed, train_fraction=0.7):
    """Seeded shuffle of range(n) cut into disjoint train / test index arrays."""
    order = np.random.default_rng([seed, n]).permutation(n)
    cut = int(round(train_fraction * n))
    return np.sort(order[:cut]), np.sort(order[cut:])


def check_mode(records, kind):
    """Raises DatasetModeError unless every record suits a model of ``kind``."""
    expected = Instance3D if kind.is_3d else Scene2D
    for index, record in enumerate(records):
        if not isinstance(record, expected):
            raise DatasetModeError(
                f'Record {index} is a {type(record).__name__}; mode {kind.value} '
                f'needs {expected.__name__} records.')
        if kind.is_3d:
            if record.spec.kind is not kind.surface_kind:
                raise DatasetModeError(
                    f'Record {index} is a {record.spec.kind.value} surface; '
                    f'mode {kind.value} reconstructs {kind.surface_kind.value}.')
            if not kind.uses_points and record.image is None:
                raise DatasetModeError(f'Record {index} has no image for mode {kind.value}.')
        elif kind is ModelKind.V and len(record.label) != 1:
            raise DatasetModeError(f'Record {index} has {len(record.label)} curves; '
                                   'mode V trains on single curves.')
        elif kind is ModelKind.M and any(m != GENERATOR_POINTS for m in record.label.counts):
            raise DatasetModeError(f'Record {index} has point counts {record.label.counts}; '
                                   f'mode M emits {GENERATOR_POINTS}-point curves.')
    return records


def load_split(path, kind, seed, train_fraction=0.7):
    records = check_mode(read_dataset(path), kind)
    train, test = split_indices(len(records), seed, train_fraction)
    return [records[i] for i in train], [records[i] for i in test]
