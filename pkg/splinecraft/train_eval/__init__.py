from .compare import InitComparison, compare_init
from .evaluate import (NOT_APPLICABLE, EvalReport, evaluate, evaluate_scene, evaluate_surface,
                       instance_rows, matched_point_counts, matched_squared_error,
                       nn_init_fit, random_init_fit, summarize)
from .predictors import NetworkPredictor, OraclePredictor, Predictor, SurfacePrediction
from .splits import DatasetModeError, check_mode, load_split, split_indices
from .train_config import TrainConfig, TrainConfigError
from .trainer import (TrainingAbortedError, TrainResult, batch_indices, batch_loss, loss_line,
                      train, train_step)
