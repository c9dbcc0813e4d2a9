from .closed_forms import (
    INFINITY,
    CurveParams,
    Foliation,
    TangencyPoint,
    foliation_unit_field,
    geodesic_center_unit_field,
    geodesic_circle,
    geodesic_endpoint_unit_field,
    geodesic_vertical,
    horocycle,
    horocycle_invert,
    horocycle_unit_field,
    polar_geodesic,
    polar_horocycle,
    polar_horocycle_invert,
    tangency,
    vertical_unit_field,
)

__all__ = [
    "INFINITY",
    "CurveParams",
    "Foliation",
    "TangencyPoint",
    "foliation_unit_field",
    "geodesic_center_unit_field",
    "geodesic_circle",
    "geodesic_endpoint_unit_field",
    "geodesic_vertical",
    "horocycle",
    "horocycle_invert",
    "horocycle_unit_field",
    "polar_geodesic",
    "polar_horocycle",
    "polar_horocycle_invert",
    "tangency",
    "vertical_unit_field",
]
