from .chamfer import (CountMismatchError, UndefinedMetricError, chamfer, mse_control_points,
                      nearest_neighbours)
from .footpoints import MIN_CANDIDATES, FootpointSet, footpoints
from .hungarian import (Assignment, CostKind, InvalidCostError, SetSizeError,
                        assignment_cost, hungarian, hungarian_match, match_cost_matrix,
                        match_rectangular)
