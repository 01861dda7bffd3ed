import logging

from ..autodiff import CheckpointError, ParameterStore, load_checkpoint, save_checkpoint
from .config import ModelConfig, ModelKind
from .curve_rnn import CurveRnnModel
from .hierarchical import HierarchicalModel
from .point_rnn import PointRnnModel
from .recon3d import Recon3dModel

logger = logging.getLogger(__name__)

MODELS_2D = {
    ModelKind.V: PointRnnModel,
    ModelKind.M: CurveRnnModel,
    ModelKind.MV: HierarchicalModel,
}


def build_model(kind, config, store=None):
    kind = ModelKind(kind)
    if kind.is_3d:
        return Recon3dModel(config, kind, store)
    return MODELS_2D[kind](config, store)


def save_model(path, model, extra=None):
    config = {'model': model.config.to_dict(), **(extra or {})}
    save_checkpoint(path, model.store, model.kind.value, config)
    logger.info('Saved %s checkpoint (%s parameters) to %s.',
                model.kind.value, model.store.count(), path)


def load_model(path):
    """Rebuilds the model recorded in a checkpoint and loads its parameters."""
    manifest, arrays = load_checkpoint(path)
    try:
        kind = ModelKind(manifest['kind'])
        config = ModelConfig.from_dict(manifest['config']['model'])
    except (KeyError, TypeError, ValueError) as e:
        raise CheckpointError(f'Checkpoint {path} does not describe a model: {e}') from e
    model = build_model(kind, config, ParameterStore(config.seed))
    try:
        model.store.load_state_dict(arrays)
    except (KeyError, ValueError) as e:
        raise CheckpointError(
            f'Checkpoint {path} does not fit a {kind.value} model: {e}') from e
    return model, manifest
