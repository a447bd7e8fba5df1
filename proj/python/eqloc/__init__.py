"""Equivariant localization on toric and spherical varieties."""

from ._eqloc import (
    NonIntegralResult,
    em_table,
    euler_characteristic,
    gkm_violations,
    integrate,
    lattice_point_sum,
    run_cli,
    surface_violations,
)

__all__ = [
    "NonIntegralResult",
    "em_table",
    "euler_characteristic",
    "gkm_violations",
    "integrate",
    "lattice_point_sum",
    "run_cli",
    "surface_violations",
]
