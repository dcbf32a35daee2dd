"""Closed-form plane waves ``xi = exp(-i p.x) zeta``: quantities, reduced Lagrangian, solutions."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .energetics import ElasticModuli
from .tensor_algebra import PAULI

SPEED_ZERO = 1e-14
NEAR_DEGENERATE = 1e-7
ZETA_MIN = 1e-300

TYPE1 = "Type1"
TYPE2_CIRCLE = "Type2Circle"
SPHERE = "SphereDegenerate"


class ZeroSpinorError(ValueError):
    pass


def _zeta(zeta) -> np.ndarray:
    z = np.asarray(zeta, dtype=complex).reshape(2)
    if not np.all(np.isfinite(z)):
        raise ValueError("spinor has non-finite entries")
    if np.vdot(z, z).real <= ZETA_MIN:
        raise ZeroSpinorError("plane wave needs a nonzero spinor")
    return z


def four_momentum(p) -> np.ndarray:
    """Validate a 4-momentum (p0, p1, p2, p3)."""
    p = np.asarray(p, dtype=float).reshape(4)
    if not np.all(np.isfinite(p)):
        raise ValueError("momentum has non-finite entries")
    return p


def four_current(zeta) -> tuple[float, np.ndarray]:
    """``j_alpha = conj(zeta) sigma_alpha zeta`` split as (j0, j)."""
    z = _zeta(zeta)
    j = np.einsum("a,kab,b->k", z.conj(), PAULI.lower, z).real
    return float(j[0]), j[1:]


@dataclass(frozen=True)
class PlaneWaveQuantities:
    """Constant values of rho, f, v, *T and omega for a plane wave."""

    rho: float
    f: float
    v: np.ndarray
    dual_T: np.ndarray
    omega: np.ndarray


def plane_wave_quantities(zeta, p) -> PlaneWaveQuantities:
    j0, j = four_current(zeta)
    p = four_momentum(p)
    q = p[1:]
    jp = float(j @ q)
    dual_T = 2.0 * (np.outer(q, j) - jp * np.eye(3)) / j0
    return PlaneWaveQuantities(
        rho=j0,
        f=-4.0 * jp / j0,
        v=2.0 * np.cross(q, j) / j0,
        dual_T=dual_T,
        omega=2.0 * p[0] * j / j0,
    )


def _axial_coeff(m: ElasticModuli) -> float:
    return 4.0 / 3.0 * m.c_ax - 0.5 * m.c_vec + m.c_ten / 6.0


def reduced_lagrangian(zeta, p, m: ElasticModuli) -> float:
    """Lagrangian density of a plane wave in terms of its 4-momentum and 4-current."""
    j0, j = four_current(zeta)
    p = four_momentum(p)
    q = p[1:]
    jj = float(j @ j)
    return (
        2.0 / j0 * (m.c_vec + m.c_ten) * float(q @ q) * jj
        + 4.0 / j0 * _axial_coeff(m) * float(j @ q) ** 2
        - 4.0 / j0 * m.c_kin * p[0] ** 2 * jj
    )


def critical_residual(zeta, p, m: ElasticModuli) -> np.ndarray:
    """Dotted spinor G with ``dL = G . d(conj zeta) + c.c.``; plane-wave solutions have G = 0.

    ``p`` may be a stack of 4-momenta with shape (..., 4); G then has shape (..., 2).
    """
    z = _zeta(zeta)
    j0, j = four_current(z)
    p = np.asarray(p, dtype=float)
    if p.shape[-1:] != (4,) or not np.all(np.isfinite(p)):
        raise ValueError("momentum must be finite with trailing length 4")
    q = p[..., 1:]
    sj = np.einsum("k,kab,b->a", j, PAULI.spatial, z)  # j^alpha sigma_alpha zeta
    sp = np.einsum("...k,kab,b->...a", q, PAULI.spatial, z)
    s0 = PAULI.lower[0] @ z
    cvt = m.c_vec + m.c_ten
    C = _axial_coeff(m)
    qq = np.sum(q * q, axis=-1)[..., None]
    jp = (q @ j)[..., None]
    jj = float(j @ j)
    p0sq = (p[..., 0] ** 2)[..., None]
    return (
        4.0 / j0 * cvt * qq * sj
        - 2.0 / j0**2 * cvt * qq * jj * s0
        + 8.0 / j0 * C * jp * sp
        - 4.0 / j0**2 * C * jp**2 * s0
        - 8.0 / j0 * m.c_kin * p0sq * sj
        + 4.0 / j0**2 * m.c_kin * p0sq * jj * s0
    )


def critical_residual_standard(p, m: ElasticModuli) -> np.ndarray:
    """Two-component form of G for zeta = (1, 0), written with the wave speeds."""
    p = four_momentum(p)
    s = wave_speeds(m)
    q = p[1:]
    d = (8.0 * m.c_ax - 3.0 * m.c_vec + m.c_ten) / (6.0 * m.c_kin)  # v1^2 - v2^2
    top = s.v2**2 * float(q @ q) + d * q[2] ** 2 - p[0] ** 2
    bottom = d * 2.0 * q[2] * (q[0] + 1j * q[1])
    return 4.0 * m.c_kin * np.array([top, bottom], dtype=complex)


@dataclass(frozen=True)
class WaveSpeeds:
    v1: float
    v2: float
    near_degenerate: bool = False

    @property
    def equal(self) -> bool:
        return self.v1 == self.v2


def wave_speeds(m: ElasticModuli) -> WaveSpeeds:
    v1 = float(np.sqrt((4.0 * m.c_ax + 2.0 * m.c_ten) / (3.0 * m.c_kin)))
    v2 = float(np.sqrt((m.c_vec + m.c_ten) / (2.0 * m.c_kin)))
    near = any(0.0 < v < NEAR_DEGENERATE for v in (v1, v2))
    return WaveSpeeds(v1, v2, near)


@dataclass(frozen=True)
class SolutionFamily:
    """One branch of plane-wave solutions for zeta = (1, 0), or its rotated image.

    ``samples`` holds representative 4-momenta (p0, p1, p2, p3), one per row.
    ``axis`` is the unit symmetry axis of the family (the 3-axis before rotation):
    Type1 points lie on it, the Type2 circle lies in the plane normal to it.
    """

    branch: str
    p0: float
    speed: float
    radius: float
    axis: np.ndarray
    samples: np.ndarray
    zeta: np.ndarray = field(default_factory=lambda: np.array([1.0, 0.0], dtype=complex))
    near_degenerate: bool = False

    def describe(self) -> dict:
        out = {"branch": self.branch, "speed": self.speed, "radius": self.radius, "axis": self.axis.tolist()}
        if self.branch == TYPE1:
            out["axis_values"] = [self.p0 / self.speed, -self.p0 / self.speed]
        return out


def _classify(m: ElasticModuli) -> tuple[WaveSpeeds, bool, bool, bool]:
    s = wave_speeds(m)
    has1 = s.v1 >= SPEED_ZERO
    has2 = s.v2 >= SPEED_ZERO
    gap = 8.0 * m.c_ax - 3.0 * m.c_vec + m.c_ten
    scale = 8.0 * m.c_ax + 3.0 * m.c_vec + m.c_ten
    equal = has1 and has2 and abs(gap) <= 1e-14 * scale
    near = s.near_degenerate or (has1 and has2 and not equal and abs(gap) <= NEAR_DEGENERATE * scale)
    return WaveSpeeds(s.v1, s.v2, near), has1, has2, equal


def sphere_points(n: int) -> np.ndarray:
    """Deterministic near-uniform unit vectors (Fibonacci lattice)."""
    k = np.arange(n) + 0.5
    z = 1.0 - 2.0 * k / n
    r = np.sqrt(1.0 - z**2)
    phi = np.pi * (3.0 - np.sqrt(5.0)) * k
    return np.stack([r * np.cos(phi), r * np.sin(phi), z], axis=1)


def solve_plane_waves(m: ElasticModuli, p0: float, n_samples: int = 8, zeta=None) -> list[SolutionFamily]:
    """All plane-wave solution families at frequency p0, with sampled momenta.

    For ``zeta`` other than (1, 0) the families are rotated by the SO(3) image of
    the gauge transformation taking zeta to (1, 0).
    """
    p0 = float(p0)
    if p0 == 0.0 or not np.isfinite(p0):
        raise ValueError("static solutions (p0 = 0) are excluded; need a finite nonzero p0")
    if n_samples < 1:
        raise ValueError("n_samples must be positive")
    speeds, has1, has2, equal = _classify(m)
    e3 = np.array([0.0, 0.0, 1.0])
    fams = []
    if equal:
        r = abs(p0) / speeds.v1
        fams.append((SPHERE, speeds.v1, r, r * sphere_points(n_samples)))
    else:
        if has1:
            r = abs(p0) / speeds.v1
            fams.append((TYPE1, speeds.v1, r, np.array([[0.0, 0.0, p0 / speeds.v1], [0.0, 0.0, -p0 / speeds.v1]])))
        if has2:
            r = abs(p0) / speeds.v2
            phi = 2 * np.pi * np.arange(n_samples) / n_samples
            circ = np.stack([r * np.cos(phi), r * np.sin(phi), np.zeros_like(phi)], axis=1)
            fams.append((TYPE2_CIRCLE, speeds.v2, r, circ))

    if zeta is None:
        R = np.eye(3)
        z = np.array([1.0, 0.0], dtype=complex)
    else:
        z = _zeta(zeta)
        _, _, R = normalize_and_gauge(z)
    out = []
    for branch, v, r, pts in fams:
        pts = pts @ R  # rows: R^T p
        mom = np.column_stack([np.full(len(pts), p0), pts])
        out.append(SolutionFamily(branch, p0, v, r, R.T @ e3, mom, z, speeds.near_degenerate))
    return out


def expected_branches(m: ElasticModuli) -> list[str]:
    """Branch tags a correct solver must emit for these moduli."""
    _, has1, has2, equal = _classify(m)
    if equal:
        return [SPHERE]
    return [b for b, ok in ((TYPE1, has1), (TYPE2_CIRCLE, has2)) if ok]


def normalize_and_gauge(zeta) -> tuple[float, np.ndarray, np.ndarray]:
    """Return (scale, U, R) with U in SU(2), ``U zeta / scale = (1, 0)``.

    R in SO(3) is defined by ``U^dagger sigma_a U = R_ab sigma_b`` so that the
    spatial current transforms as ``j(U zeta) = R j(zeta)`` and
    ``L(zeta; p) = L(U zeta; R p)``.
    """
    z = _zeta(zeta)
    scale = float(np.linalg.norm(z))
    a, b = z / scale
    U = np.array([[a.conjugate(), b.conjugate()], [-b, a]])
    return scale, U, gauge_rotation(U)


def gauge_rotation(U) -> np.ndarray:
    U = np.asarray(U, dtype=complex)
    conj = np.einsum("ba,kbc,cd->kad", U.conj(), PAULI.spatial, U)
    return 0.5 * np.einsum("kab,lba->kl", conj, PAULI.spatial).real


@dataclass(frozen=True)
class PlaneWaveCheck:
    residual: np.ndarray
    residual_norm: float
    lagrangian: float
    scale: float
    is_solution: bool


def check_plane_wave(zeta, p, m: ElasticModuli, tol: float = 1e-10) -> PlaneWaveCheck:
    """Is ``exp(-i p.x) zeta`` a solution?  Residual norm compared against tol * 4 c_kin p0^2 |zeta|."""
    z = _zeta(zeta)
    p = four_momentum(p)
    G = critical_residual(z, p, m)
    norm = float(np.linalg.norm(G))
    scale = 4.0 * m.c_kin * max(p[0] ** 2, float(p[1:] @ p[1:]), 1.0) * float(np.linalg.norm(z))
    return PlaneWaveCheck(G, norm, reduced_lagrangian(z, p, m), scale, norm <= tol * scale)
