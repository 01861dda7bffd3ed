import logging
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from tqdm import tqdm

from ..autodiff import AdamState, NonFiniteError, Tape, adam_step, ops
from ..models import ModelConfig, build_model, save_model
from .splits import check_mode, load_split
from .train_config import TrainConfigError

logger = logging.getLogger(__name__)

# independent rng streams
DATA_ORDER_STREAM = 1


class TrainingAbortedError(RuntimeError):
    pass


@dataclass
class TrainResult:
    model: object
    losses: list = field(default_factory=list)
    log: list = field(default_factory=list)

    @property
    def steps(self):
        return len(self.losses)


def loss_line(step, loss):
    return f'step {step} loss {loss:.17g}'


def batch_indices(n, batch_size, rng):
    """Endless seeded epochs of shuffled mini-batch index arrays."""
    while True:
        order = rng.permutation(n)
        for start in range(0, n, batch_size):
            yield order[start:start + batch_size]


def batch_loss(model, batch, weights):
    """Mean loss over a batch, recorded on the active tape."""
    features = model.encode([model.model_input(record) for record in batch])
    losses = [model.loss(f, model.target(record), weights)
              for f, record in zip(features, batch)]
    return ops.mean(ops.stack(losses))


def train_step(model, batch, weights, state):
    """Forward, backward and one Adam update; returns the batch loss."""
    params = list(model.store.values())
    with Tape() as tape:
        loss = batch_loss(model, batch, weights)
    gradients = tape.backward(loss, params)
    adam_step(model.store, model.store.grads_by_name(gradients), state)
    return loss.item()


def train(cfg, records=None, model=None, model_config=None, progress=False):
    """Trains a model of ``cfg.mode`` with teacher-forced counts.

    ``records`` defaults to the training part of the split of ``cfg.dataset``.
    """
    if records is None:
        if cfg.dataset is None:
            raise TrainConfigError('No dataset given.')
        records, _ = load_split(cfg.dataset, cfg.mode, cfg.seed, cfg.train_fraction)
    check_mode(records, cfg.mode)
    if not records:
        raise TrainConfigError('The training set is empty.')
    if model is None:
        config = (model_config or ModelConfig()).with_options(seed=cfg.seed)
        model = build_model(cfg.mode, config)

    state = AdamState(lr=cfg.lr, weight_decay=cfg.weight_decay, decoupled=cfg.decoupled_decay)
    rng = np.random.default_rng([cfg.seed, DATA_ORDER_STREAM])
    batches = batch_indices(len(records), cfg.batch_size, rng)
    result = TrainResult(model=model)
    logger.info('Training %s on %s records, %s parameters.',
                cfg.mode.value, len(records), model.store.count())

    for step in tqdm(range(1, cfg.max_steps + 1), disable=not progress, desc='train'):
        batch = [records[i] for i in next(batches)]
        try:
            loss = train_step(model, batch, cfg.loss_weights, state)
        except NonFiniteError as e:
            raise TrainingAbortedError(f'step {step}: {e}') from e
        if not np.isfinite(loss):
            raise TrainingAbortedError(f'step {step}: loss is {loss}.')
        result.losses.append(loss)
        if step % cfg.log_every == 0:
            result.log.append(loss_line(step, loss))
            logger.info(result.log[-1])
        if cfg.checkpoint and (step % cfg.eval_every == 0 or step == cfg.max_steps):
            save_model(cfg.checkpoint, model, {'train': cfg.to_dict(), 'step': step})

    if cfg.loss_log:
        Path(cfg.loss_log).write_text(''.join(line + '\n' for line in result.log))
    return result
