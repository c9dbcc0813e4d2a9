from .integrator import (
    BoundaryEscapeError,
    StepSizeError,
    Trajectory,
    TrajectorySample,
    integrate,
    rk4_step,
)
from .period import (
    CRITICAL_LEVEL,
    LevelError,
    NoReturnError,
    PeriodSample,
    detect_period,
    level_state,
    relative_spread,
    sample_periods,
    subcritical_period,
)
from .vector_fields import (
    Bundle,
    StateLike,
    VectorField,
    as_state_array,
    covariant_acceleration,
    el_vector_field,
    ham_vector_field,
    state_from_array,
)

__all__ = [
    "BoundaryEscapeError",
    "StepSizeError",
    "Trajectory",
    "TrajectorySample",
    "integrate",
    "rk4_step",
    "CRITICAL_LEVEL",
    "LevelError",
    "NoReturnError",
    "PeriodSample",
    "detect_period",
    "level_state",
    "relative_spread",
    "sample_periods",
    "subcritical_period",
    "Bundle",
    "StateLike",
    "VectorField",
    "as_state_array",
    "covariant_acceleration",
    "el_vector_field",
    "ham_vector_field",
    "state_from_array",
]
