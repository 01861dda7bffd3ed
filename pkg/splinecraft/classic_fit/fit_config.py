from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from ..spline_core import SplineCurve2D


class FitConfigError(ValueError):
    pass


@dataclass(frozen=True)
class FitConfig:
    max_iters: int = 200
    rel_tol: float = 1e-7
    n_dense: int = 1000
    regularizer: float = 1e-8
    restarts: int = 10
    max_halvings: int = 10
    seed: int = 0

    def __post_init__(self):
        for name in ('max_iters', 'rel_tol', 'n_dense', 'regularizer', 'restarts'):
            if not getattr(self, name) > 0:
                raise FitConfigError(f'{name} must be positive, got {getattr(self, name)}.')
        if not self.rel_tol < 1:
            raise FitConfigError(f'rel_tol must be below 1, got {self.rel_tol}.')

    @classmethod
    def from_settings(cls, **options):
        from django.conf import settings
        values = dict(settings.SPLINECRAFT_FIT)
        values.update({k: v for k, v in options.items() if v is not None})
        return cls(**values)

    def with_options(self, **options):
        return replace(self, **options)


@dataclass(frozen=True)
class FitResult:
    """Outcome of one PDM fit.

    ``objective_history`` starts with the objective of the initial curve and
    holds one entry per accepted update; ``skipped`` marks curves that were
    not fitted because too few targets were assigned to them.
    """

    curve: SplineCurve2D
    objective_history: tuple = field(default_factory=tuple)
    iterations: int = 0
    final_chamfer: float = float('nan')
    converged: bool = False
    skipped: bool = False
    warning: Optional[str] = None

    @property
    def m(self):
        return self.curve.m

    def to_dict(self):
        return {
            'control_points': self.curve.control_points.tolist(),
            'm': self.m,
            'objective_history': [float(v) for v in self.objective_history],
            'iterations': self.iterations,
            'final_chamfer': None if np.isnan(self.final_chamfer) else self.final_chamfer,
            'converged': self.converged,
            'skipped': self.skipped,
            'warning': self.warning,
        }
