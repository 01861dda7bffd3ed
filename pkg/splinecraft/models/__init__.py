from .base import SplineModel
from .config import ModelConfig, ModelKind
from .curve_rnn import CurveRnnModel
from .encoders import ImageEncoder, ImageFeatures, PointEncoder, image_batch
from .factory import build_model, load_model, save_model
from .hierarchical import HierarchicalModel
from .losses import (LossWeights, chamfer_loss, loss_chamfer3d, loss_l1, loss_l2, loss_l3,
                     stop_nll)
from .point_rnn import PointRnnModel
from .recon3d import (Recon3dModel, Recon3dOutput, decode_generator, surface_points,
                      sweep_parameters)
from .rnn import CONTINUE, STOP, STOP_THRESHOLD, AttentionRnn, CurveStep, PointRnn, PointStep
