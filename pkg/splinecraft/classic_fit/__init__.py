from .fit_config import FitConfig, FitConfigError, FitResult
from .pdm import (CHAMFER_SAMPLES, POINT_COUNTS, FitFailedError, NumericalFailureError,
                  curves_chamfer, fit_curveset, fit_pdm, multi_start_fit,
                  multi_start_fit_curveset, random_init, split_targets, targets_from_image)
