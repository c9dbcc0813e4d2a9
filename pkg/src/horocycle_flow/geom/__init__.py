from .geom import (
    ETA,
    Y_MIN,
    BoundaryError,
    Covector,
    DegenerateParameterError,
    GridSpec,
    HalfPlanePoint,
    HorocycleFlowError,
    OneForm,
    Real,
    TangentVector,
    area_form,
    christoffel_acceleration,
    dual_norm,
    eta,
    lorentz_force,
    metric_inner,
    metric_norm,
    sample_points,
)

__all__ = [
    "ETA",
    "Y_MIN",
    "BoundaryError",
    "Covector",
    "DegenerateParameterError",
    "GridSpec",
    "HalfPlanePoint",
    "HorocycleFlowError",
    "OneForm",
    "Real",
    "TangentVector",
    "area_form",
    "christoffel_acceleration",
    "dual_norm",
    "eta",
    "lorentz_force",
    "metric_inner",
    "metric_norm",
    "sample_points",
]
