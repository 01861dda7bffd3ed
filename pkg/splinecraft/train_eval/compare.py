import logging
from dataclasses import dataclass

import numpy as np

from ..classic_fit import FitConfig
from .evaluate import instance_rows

logger = logging.getLogger(__name__)

COLUMNS = ['instance', 'chamfer_nn', 'chamfer_nn_init', 'chamfer_random_init']


@dataclass
class InitComparison:
    """Per-instance Chamfer of the prediction and of both fits, plus their summary."""

    rows: object

    @property
    def means(self):
        return {column: float(self.rows[column].mean()) for column in COLUMNS[1:]}

    @property
    def ratio(self):
        means = self.means
        if means['chamfer_random_init'] == 0:
            return None
        return means['chamfer_nn_init'] / means['chamfer_random_init']

    @property
    def nn_init_wins(self):
        """Share of instances where the NN-init fit beats the random multi-start fit."""
        return float(np.mean(self.rows['chamfer_nn_init'] < self.rows['chamfer_random_init']))

    def summary(self):
        means = self.means
        return {
            'n_instances': len(self.rows),
            'mean_chamfer_nn': means['chamfer_nn'],
            'mean_chamfer_nn_init': means['chamfer_nn_init'],
            'mean_chamfer_random_init': means['chamfer_random_init'],
            'ratio_nn_init_to_random_init': self.ratio,
            'nn_init_wins': self.nn_init_wins,
            'nn_init_not_worse_than_nn': means['chamfer_nn_init'] <= means['chamfer_nn'],
            'ordering_nn_init_random_init_nn': (
                means['chamfer_nn_init'] < means['chamfer_random_init'] < means['chamfer_nn']),
        }

    def to_csv(self, path):
        self.rows.to_csv(path, encoding='utf-8', index=False)


def compare_init(predictor, records, kind, fit_cfg=None, workers=1, progress=False):
    """Network prediction vs classical fits from the prediction and from random starts."""
    if kind.is_3d:
        raise ValueError(f'Initialisation comparison needs a 2D mode, got {kind.value}.')
    rows = instance_rows(predictor, records, kind, fit_cfg or FitConfig(), workers, progress)
    rows = rows.dropna(subset=COLUMNS[1:])
    comparison = InitComparison(rows=rows[COLUMNS].reset_index(drop=True))
    logger.info('Init comparison over %s instances: %s', len(comparison.rows),
                comparison.summary())
    return comparison
