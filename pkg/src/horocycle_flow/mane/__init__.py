from .mane import (
    ClosedCurve,
    CriticalEstimate,
    CurveLeavesDomainError,
    Parametrization,
    average_action,
    circle_curve,
    circle_family,
    estimate_critical_value,
    lower_bound,
    lower_bound_values,
    upper_bound,
    upper_bound_integrand,
)

__all__ = [
    "ClosedCurve",
    "CriticalEstimate",
    "CurveLeavesDomainError",
    "Parametrization",
    "average_action",
    "circle_curve",
    "circle_family",
    "estimate_critical_value",
    "lower_bound",
    "lower_bound_values",
    "upper_bound",
    "upper_bound_integrand",
]
