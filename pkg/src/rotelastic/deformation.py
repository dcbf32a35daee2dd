"""Torsion-based deformation measures of a coframe field on a periodic grid.

Coframe fields are real arrays of shape ``grid.shape + (3, 3)`` whose last-but-one
axis enumerates the covectors theta^j.  All tensors carry their slots as
trailing axes, in the order the indices are written.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .coframe_spinor import validate_coframe
from .grid import GridSpec, derivative
from .tensor_algebra import EPS, check_antisymmetric, hodge_star, wedge

PAIR_TOL = 1e-8


def _coframe(theta, grid: GridSpec, validate: bool) -> np.ndarray:
    theta = grid.check_values(np.asarray(theta, dtype=float), (3, 3))
    return validate_coframe(theta) if validate else theta


def coframe_jet(theta, grid: GridSpec, scheme: str = "central", validate: bool = True) -> np.ndarray:
    """Spatial gradients ``K^j_ab = d_a theta^j_b``, trailing axes (j, a, b)."""
    theta = _coframe(theta, grid, validate)
    d = np.stack([derivative(theta, grid, a, scheme) for a in (1, 2, 3)], axis=-2)
    # d[..., j, a, b]: derivative along a of theta^j_b
    return d


def build_K(theta, grid: GridSpec, scheme: str = "central", validate: bool = True) -> np.ndarray:
    """``K_abc = sum_j theta^j_a d_b theta^j_c``; antisymmetric in a and c."""
    theta = _coframe(theta, grid, validate)
    jet = coframe_jet(theta, grid, scheme, validate=False)
    return np.einsum("...ja,...jbc->...abc", theta, jet)


def build_T(theta, grid: GridSpec, scheme: str = "central", validate: bool = True) -> np.ndarray:
    """Torsion ``T = delta_jk theta^j (x) d theta^k``; antisymmetric in its last two slots."""
    return T_from_K(build_K(theta, grid, scheme, validate), tol=None)


def T_from_K(K, tol: float | None = PAIR_TOL) -> np.ndarray:
    K = np.asarray(K)
    if tol is not None:
        check_antisymmetric(K, (-3, -1), tol, "K")
    return K - np.swapaxes(K, -1, -2)


def K_from_T(T, tol: float | None = PAIR_TOL) -> np.ndarray:
    """Contortion from torsion, ``K_abc = (T_abc + T_cab - T_bca) / 2``."""
    T = np.asarray(T)
    if tol is not None:
        check_antisymmetric(T, (-2, -1), tol, "T")
    T_cab = np.einsum("...cab->...abc", T)
    T_bca = np.einsum("...bca->...abc", T)
    return 0.5 * (T + T_cab - T_bca)


def jet_from_K(theta, K) -> np.ndarray:
    """Recover ``d_a theta^j_b = theta^{j c} K_cab``, trailing axes (j, a, b)."""
    return np.einsum("...jc,...cab->...jab", np.asarray(theta), np.asarray(K))


def star_torsion(T) -> np.ndarray:
    """``*T_ab = T_a^{cd} eps_cdb / 2`` (Hodge star on the last pair)."""
    return hodge_star(np.asarray(T), 2, tol=np.inf)


def unstar_torsion(dual_T) -> np.ndarray:
    """``T_abc = *T_a^d eps_dbc``."""
    return np.einsum("...ad,dbc->...abc", np.asarray(dual_T), EPS)


def curl(covector_field, grid: GridSpec, scheme: str = "central") -> np.ndarray:
    """``(curl u)_b = eps_bcd d_c u_d`` for a trailing covector axis."""
    grad = np.stack([derivative(covector_field, grid, a, scheme) for a in (1, 2, 3)], axis=-2)
    return np.einsum("bcd,...cd->...b", EPS, grad)


def dual_torsion(theta, grid: GridSpec, scheme: str = "central", validate: bool = True) -> np.ndarray:
    """Dislocation density ``*T = sum_j theta^j (x) curl theta^j``."""
    theta = _coframe(theta, grid, validate)
    return np.einsum("...ja,...jb->...ab", theta, curl(theta, grid, scheme))


def dual_torsion_explicit(theta, grid: GridSpec, scheme: str = "central", validate: bool = True) -> np.ndarray:
    """Entry-by-entry component formula for ``*T``, kept as an independent check."""
    theta = _coframe(theta, grid, validate)
    jet = coframe_jet(theta, grid, scheme, validate=False)

    def d(a, b):  # sum over j is taken below; d(a, b)[..., j] = d_a theta^j_b
        return jet[..., :, a - 1, b - 1]

    def t(a):
        return theta[..., :, a - 1]

    out = np.empty(theta.shape[:-2] + (3, 3))
    for row in (1, 2, 3):
        out[..., row - 1, 0] = np.sum(t(row) * d(2, 3) - t(row) * d(3, 2), axis=-1)
        out[..., row - 1, 1] = np.sum(t(row) * d(3, 1) - t(row) * d(1, 3), axis=-1)
        out[..., row - 1, 2] = np.sum(t(row) * d(1, 2) - t(row) * d(2, 1), axis=-1)
    return out


@dataclass(frozen=True)
class IrreducibleParts:
    """Axial (trace), vector (antisymmetric) and tensor (symmetric trace-free) pieces."""

    axial: np.ndarray
    vector: np.ndarray
    tensor: np.ndarray

    def total(self) -> np.ndarray:
        return self.axial + self.vector + self.tensor


def decompose(dual_T) -> IrreducibleParts:
    P = np.asarray(dual_T, dtype=float)
    trace = np.trace(P, axis1=-2, axis2=-1)
    axial = trace[..., None, None] / 3.0 * np.eye(3)
    Pt = np.swapaxes(P, -1, -2)
    vector = 0.5 * (P - Pt)
    tensor = 0.5 * (P + Pt) - axial
    return IrreducibleParts(axial, vector, tensor)


def scalar_f(dual_T) -> np.ndarray:
    """Pseudoscalar ``f = *T^a_a``."""
    return np.trace(np.asarray(dual_T), axis1=-2, axis2=-1)


def vector_v(dual_T) -> np.ndarray:
    """``v_a = *T^{bc} eps_bca``."""
    return np.einsum("...bc,bca->...a", np.asarray(dual_T), EPS)


def scalar_f_explicit(theta, grid: GridSpec, scheme: str = "central", validate: bool = True) -> np.ndarray:
    """f written out in coframe components and first derivatives."""
    theta = _coframe(theta, grid, validate)
    jet = coframe_jet(theta, grid, scheme, validate=False)
    t = lambda a: theta[..., :, a - 1]  # noqa: E731
    d = lambda a, b: jet[..., :, a - 1, b - 1]  # noqa: E731
    terms = (
        t(1) * d(2, 3) - t(1) * d(3, 2)
        + t(2) * d(3, 1) - t(2) * d(1, 3)
        + t(3) * d(1, 2) - t(3) * d(2, 1)
    )
    return terms.sum(axis=-1)


def vector_v_explicit(theta, grid: GridSpec, scheme: str = "central", validate: bool = True) -> np.ndarray:
    theta = _coframe(theta, grid, validate)
    jet = coframe_jet(theta, grid, scheme, validate=False)
    t = lambda a: theta[..., :, a - 1]  # noqa: E731
    d = lambda a, b: jet[..., :, a - 1, b - 1]  # noqa: E731
    v1 = t(2) * d(1, 2) - t(2) * d(2, 1) - t(3) * d(3, 1) + t(3) * d(1, 3)
    v2 = t(3) * d(2, 3) - t(3) * d(3, 2) - t(1) * d(1, 2) + t(1) * d(2, 1)
    v3 = t(1) * d(3, 1) - t(1) * d(1, 3) - t(2) * d(2, 3) + t(2) * d(3, 2)
    return np.stack([v1.sum(-1), v2.sum(-1), v3.sum(-1)], axis=-1)


def angular_velocity(theta, grid: GridSpec, scheme: str = "central", validate: bool = True) -> np.ndarray:
    """``omega = *(delta_jk theta^j ^ d_0 theta^k) / 2`` on a spacetime grid."""
    if not grid.time:
        raise ValueError("angular velocity needs a grid with a time axis")
    theta = _coframe(theta, grid, validate)
    dt = derivative(theta, grid, 0, scheme)
    two_form = wedge(theta, dt).sum(axis=-3)
    return 0.5 * hodge_star(two_form, 2, tol=np.inf)


def screw_coframe(grid: GridSpec, k: float) -> np.ndarray:
    """Coframe rotating about axis 3 at rate k along x3; its *T is diag(-k, -k, 0)."""
    z = np.broadcast_to(grid.coordinates[3], grid.shape)
    c, s = np.cos(k * z), np.sin(k * z)
    theta = np.zeros(grid.shape + (3, 3))
    theta[..., 0, 0], theta[..., 0, 1] = c, s
    theta[..., 1, 0], theta[..., 1, 1] = -s, c
    theta[..., 2, 2] = 1.0
    return theta
