"""Angular velocity and torsion measures computed directly from a spinor field.

Every quantity here is a ratio ``i (conj(xi) B d xi - c.c.) / rho`` with a
Hermitian B, which equals ``-2 Im(conj(xi) B d xi) / rho``; the imaginary part
is taken directly, so results are real by construction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .coframe_spinor import RHO_MIN, spinor_to_density
from .fields import SpinorJet, spinor_jet
from .grid import GridSpec
from .tensor_algebra import pauli_bilinear


def bilinears(jet: SpinorJet, rho_min: float = RHO_MIN) -> tuple[np.ndarray, np.ndarray]:
    """Density and ``z[..., a, b] = conj(xi) sigma_b d_a xi`` for a = 0..3, b = 1..3."""
    rho = spinor_to_density(jet.values, rho_min)
    z = np.moveaxis(pauli_bilinear(jet.values[None], jet.d1), 0, -2)
    return rho, z


def _require_time(jet: SpinorJet):
    if not jet.has_time:
        raise ValueError("angular velocity needs a time derivative: use a spacetime grid or an analytic field")


@dataclass(frozen=True)
class SpinorGeometry:
    """Pointwise rho, f, v, *T and (when time derivatives exist) omega of a spinor field."""

    rho: np.ndarray
    f: np.ndarray
    v: np.ndarray
    dual_T: np.ndarray
    omega: np.ndarray | None


def _dual_T(rho, z):
    imz = z[..., 1:, :].imag  # rows: spatial derivative direction
    trace = np.trace(imz, axis1=-2, axis2=-1)
    return (-2.0 * imz + 2.0 * trace[..., None, None] * np.eye(3)) / rho[..., None, None]


def _f(rho, z):
    return 4.0 * np.trace(z[..., 1:, :].imag, axis1=-2, axis2=-1) / rho


def _v(rho, z):
    # v_a = 2 eps_bca Im(conj(xi) sigma^b d_c xi) / rho
    m = z[..., 1:, :].imag
    v = np.stack([m[..., 2, 1] - m[..., 1, 2], m[..., 0, 2] - m[..., 2, 0], m[..., 1, 0] - m[..., 0, 1]], axis=-1)
    return 2.0 * v / rho[..., None]


def _omega(rho, z):
    return -2.0 * z[..., 0, :].imag / rho[..., None]


def geometry_from_jet(jet: SpinorJet, rho_min: float = RHO_MIN) -> SpinorGeometry:
    rho, z = bilinears(jet, rho_min)
    omega = _omega(rho, z) if jet.has_time else None
    return SpinorGeometry(rho, _f(rho, z), _v(rho, z), _dual_T(rho, z), omega)


def spinor_geometry(xi, grid: GridSpec, scheme: str = "central", rho_min: float = RHO_MIN) -> SpinorGeometry:
    return geometry_from_jet(spinor_jet(xi, grid, scheme), rho_min)


def omega_from_spinor(xi, grid: GridSpec, scheme: str = "central", rho_min: float = RHO_MIN) -> np.ndarray:
    """``omega_a = i (conj(xi) s_a d_0 xi - c.c.) / rho``."""
    jet = spinor_jet(xi, grid, scheme)
    _require_time(jet)
    return _omega(*bilinears(jet, rho_min))


def f_from_spinor(xi, grid: GridSpec, scheme: str = "central", rho_min: float = RHO_MIN) -> np.ndarray:
    """``f = -2i (conj(xi) s^a d_a xi - c.c.) / rho``."""
    return _f(*bilinears(spinor_jet(xi, grid, scheme), rho_min))


def v_from_spinor(xi, grid: GridSpec, scheme: str = "central", rho_min: float = RHO_MIN) -> np.ndarray:
    """``v_a = -i eps_bca (conj(xi) s^b d^c xi - c.c.) / rho``."""
    return _v(*bilinears(spinor_jet(xi, grid, scheme), rho_min))


def dual_torsion_from_spinor(xi, grid: GridSpec, scheme: str = "central", rho_min: float = RHO_MIN) -> np.ndarray:
    """``*T_ab = i (conj(xi) s_b d_a xi - c.c. - (conj(xi) s^c d_c xi - c.c.) g_ab) / rho``.

    Invariant under xi -> lambda(x) xi for any positive function lambda.
    """
    return _dual_T(*bilinears(spinor_jet(xi, grid, scheme), rho_min))
