"""Certified fixed-point solving for enriched interpolative Kannan operators.

The package estimates the contraction constant of an operator by sampling
(certification), runs the Krasnoselskii iteration with computable a-priori and
a-posteriori error bounds, checks stability properties of the computed fixed
point (well-posedness, periodic-point coincidence, Ulam-Hyers), and solves
variational inequalities over convex sets via projection.
"""

from .certify import (Certificate, CertifyConfig, Witness, estimate_constant,
                      ratio, refute, search)
from .config import (ProblemConfig, build_certify_config, build_iteration_config,
                     build_operator, build_set, build_space, build_vip_problem,
                     demo_config, dump_config, load_config, loads_config)
from .demos import DEMOS, Demo, get_demo
from .errors import (ConfigError, DegenerateOperatorError, DimensionMismatchError,
                     DivergenceError, EnrichedFPError, NumericOverflowError,
                     ParameterError, PreconditionError)
from .iteration import (BoundCheck, BoundReport, FixedPointResult, IterationConfig,
                        StopRule, Trace, asymptotic_regularity, check_bounds, solve)
from .operators import (AffineOperator, AveragedOperator, CustomOperator,
                        IteratedOperator, Operator, ProjectedOperator, averaged,
                        iterate_n)
from .sets import (Ball, Box, ConvexSet, Halfspace, Simplex, contains, project,
                   sample_points)
from .space import WeightedSpace, euclidean
from .stability import (StabilityReport, periodic_point_check, ulam_hyers_check,
                        wellposed_check)
from .vip import VipProblem, solve_vip, vi_residual, vip_operator

__version__ = "0.1.0"

__all__ = [
    "Certificate", "CertifyConfig", "Witness", "estimate_constant", "ratio",
    "refute", "search",
    "ProblemConfig", "build_certify_config", "build_iteration_config",
    "build_operator", "build_set", "build_space", "build_vip_problem",
    "demo_config", "dump_config", "load_config", "loads_config",
    "DEMOS", "Demo", "get_demo",
    "ConfigError", "DegenerateOperatorError", "DimensionMismatchError",
    "DivergenceError", "EnrichedFPError", "NumericOverflowError",
    "ParameterError", "PreconditionError",
    "BoundCheck", "BoundReport", "FixedPointResult", "IterationConfig",
    "StopRule", "Trace", "asymptotic_regularity", "check_bounds", "solve",
    "AffineOperator", "AveragedOperator", "CustomOperator", "IteratedOperator",
    "Operator", "ProjectedOperator", "averaged", "iterate_n",
    "Ball", "Box", "ConvexSet", "Halfspace", "Simplex", "contains", "project",
    "sample_points",
    "WeightedSpace", "euclidean",
    "StabilityReport", "periodic_point_check", "ulam_hyers_check",
    "wellposed_check",
    "VipProblem", "solve_vip", "vi_residual", "vip_operator",
    "__version__",
]
