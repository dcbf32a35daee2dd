"""Rotational elasticity on periodic grids: coframes and spinors, torsion measures,
energies, plane-wave solutions and Weyl-equation checks."""

from .coframe_spinor import (
    DegenerateSpinorError,
    InvalidCoframeError,
    coframe_to_spinor,
    rigid_rotate,
    spinor_to_coframe,
    spinor_to_density,
    validate_coframe,
)
from .energetics import ElasticModuli, InadmissibleModuliError
from .fields import ModeSum, PlaneWave
from .grid import GridSpec
from .planewave import solve_plane_waves, wave_speeds
from .tensor_algebra import PAULI, PauliSet, hodge_star

__version__ = "0.1.0"

__all__ = [
    "DegenerateSpinorError",
    "ElasticModuli",
    "GridSpec",
    "InadmissibleModuliError",
    "InvalidCoframeError",
    "ModeSum",
    "PAULI",
    "PauliSet",
    "PlaneWave",
    "coframe_to_spinor",
    "hodge_star",
    "rigid_rotate",
    "solve_plane_waves",
    "spinor_to_coframe",
    "spinor_to_density",
    "validate_coframe",
    "wave_speeds",
]
