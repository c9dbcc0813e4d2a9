from .mechanics import (
    CotangentState,
    SystemKind,
    TangentState,
    energy,
    hamiltonian,
    hamiltonian_norm_form,
    lagrangian,
    legendre,
    legendre_inverse,
    momentum_x,
)

__all__ = [
    "CotangentState",
    "SystemKind",
    "TangentState",
    "energy",
    "hamiltonian",
    "hamiltonian_norm_form",
    "lagrangian",
    "legendre",
    "legendre_inverse",
    "momentum_x",
]
