from .curve import (MAX_CURVES, MAX_POINTS, MIN_CURVES, MIN_POINTS, CurveSet,
                    SplineCurve2D, basis_matrix, basis_row, combine, de_boor_point,
                    eval_curve, eval_derivative, eval_many, sample_curve)
from .knots import (DEGREE, InvalidCurveError, basis, basis_derivative, basis_weights,
                    clamped_uniform_knots, parameter_grid)
from .surface import (AXIS_MARGIN, GENERATOR_POINTS, HEIGHT_RANGE, InvalidSurfaceError,
                      SurfaceKind, SurfaceSpec, evaluate_surface, extrude, revolve,
                      surface_normals, sweep)
