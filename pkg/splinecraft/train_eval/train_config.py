from dataclasses import dataclass, replace
from typing import Optional

from ..models import LossWeights, ModelKind


class TrainConfigError(ValueError):
    pass


@dataclass(frozen=True)
class TrainConfig:
    mode: ModelKind = ModelKind.V
    dataset: Optional[str] = None
    checkpoint: Optional[str] = None
    loss_log: Optional[str] = None
    batch_size: int = 32
    lr: float = 1e-4
    weight_decay: float = 1e-4
    lam: float = 0.1
    lam_curve: float = 0.1
    lam_point: float = 0.1
    max_steps: int = 20000
    eval_every: int = 1000
    log_every: int = 100
    train_fraction: float = 0.7
    decoupled_decay: bool = False
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, 'mode', ModelKind(self.mode))
        if self.batch_size < 1:
            raise TrainConfigError(f'batch_size must be at least 1, got {self.batch_size}.')
        if not self.lr > 0 or self.weight_decay < 0:
            raise TrainConfigError('lr must be positive and weight_decay non-negative.')
        if min(self.max_steps, self.eval_every, self.log_every) < 1:
            raise TrainConfigError('max_steps, eval_every and log_every must be positive.')
        if not 0 < self.train_fraction < 1:
            raise TrainConfigError(
                f'train_fraction must lie in (0, 1), got {self.train_fraction}.')

    @property
    def loss_weights(self):
        return LossWeights(lam=self.lam, lam_curve=self.lam_curve, lam_point=self.lam_point)

    @classmethod
    def from_settings(cls, mode, **options):
        from django.conf import settings
        values = dict(settings.SPLINECRAFT_TRAINING)
        values.update({k: v for k, v in options.items() if v is not None})
        return cls(mode=mode, **values)

    def with_options(self, **options):
        return replace(self, **options)

    def to_dict(self):
        return {
            'mode': self.mode.value, 'dataset': self.dataset, 'checkpoint': self.checkpoint,
            'batch_size': self.batch_size, 'lr': self.lr, 'weight_decay': self.weight_decay,
            'lam': self.lam, 'lam_curve': self.lam_curve, 'lam_point': self.lam_point,
            'max_steps': self.max_steps, 'eval_every': self.eval_every,
            'train_fraction': self.train_fraction, 'seed': self.seed}
