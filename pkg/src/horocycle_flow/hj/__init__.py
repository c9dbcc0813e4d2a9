from .catalog import (
    HJFamily,
    HJSolution,
    adhoc_x,
    evaluate,
    gradient,
    kinetic_catalog,
    magnetic_catalog,
)
from .checks import (
    LevelConditionError,
    check_closed,
    check_exact,
    check_graph_invariance,
    check_level,
    curl,
    fd_step,
    finite_difference_gradient,
    foliation_to_graph,
    gradient_mismatch,
    graph_deviation,
    graph_level_deviation,
    parallel_graph_invariance,
    residual,
    square_loop,
    stokes_area,
)
from .pipeline import Callback, Check, SummaryCallback, ToleranceCallback, run_checks
from .verify import ResidualReport, invariance_starts, verify_solution

__all__ = [
    "HJFamily",
    "HJSolution",
    "adhoc_x",
    "evaluate",
    "gradient",
    "kinetic_catalog",
    "magnetic_catalog",
    "LevelConditionError",
    "check_closed",
    "check_exact",
    "check_graph_invariance",
    "check_level",
    "curl",
    "fd_step",
    "finite_difference_gradient",
    "foliation_to_graph",
    "gradient_mismatch",
    "graph_deviation",
    "graph_level_deviation",
    "parallel_graph_invariance",
    "residual",
    "square_loop",
    "stokes_area",
    "Callback",
    "Check",
    "SummaryCallback",
    "ToleranceCallback",
    "run_checks",
    "ResidualReport",
    "invariance_starts",
    "verify_solution",
]
