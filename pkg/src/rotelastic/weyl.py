"""The two Weyl operators and their relation to purely axial rotational elasticity."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .coframe_spinor import RHO_MIN
from .energetics import ElasticModuli
from .fields import ModeSum, PlaneWave, is_analytic, spinor_jet
from .grid import GridSpec
from .planewave import critical_residual, wave_speeds
from .tensor_algebra import PAULI
from .variational import euler_lagrange_F

# the temporal Pauli matrix with upper index is minus the identity
assert np.array_equal(PAULI.upper[0], -np.eye(2)), "unexpected sign of sigma^0"


class WeylSign(Enum):
    PLUS = 1
    MINUS = -1

    @classmethod
    def parse(cls, value) -> "WeylSign":
        if isinstance(value, cls):
            return value
        key = {"+": "PLUS", "plus": "PLUS", "1": "PLUS", "-": "MINUS", "minus": "MINUS", "-1": "MINUS"}.get(
            str(value).strip().lower()
        )
        if key is None:
            raise ValueError(f"unknown Weyl sign {value!r}")
        return cls[key]


class PreconditionError(ValueError):
    pass


def require_axial_normalized(m: ElasticModuli):
    if not m.is_normalized_axial():
        raise PreconditionError(
            "need purely axial moduli (c_vec = c_ten = 0) with c_kin = 4/3 c_ax, got "
            f"c_ax={m.c_ax}, c_vec={m.c_vec}, c_ten={m.c_ten}, c_kin={m.c_kin}"
        )


def weyl_operator_plane(zeta, p, sign) -> np.ndarray:
    """``(-+ p0 + sigma.p) zeta``: the Weyl residual of a plane wave without its phase.

    ``p`` may be a stack of 4-momenta with shape (..., 4).
    """
    s = WeylSign.parse(sign)
    z = np.asarray(zeta, dtype=complex).reshape(2)
    p = np.asarray(p, dtype=float)
    return -s.value * p[..., 0:1] * z + np.einsum("...k,kab,b->...a", p[..., 1:], PAULI.spatial, z)


def weyl_residual(xi, grid: GridSpec, sign, scheme: str = "spectral") -> np.ndarray:
    """``i (+-sigma^0 d_0 + sigma^a d_a) xi`` on the grid."""
    s = WeylSign.parse(sign)
    if isinstance(xi, StationaryField):
        xi = xi.field(grid)
    jet = spinor_jet(xi, grid, scheme)
    if not jet.has_time:
        raise ValueError("the Weyl operator needs a time derivative")
    out = s.value * np.einsum("ab,...b->...a", PAULI.upper[0], jet.d1[0])
    for a in (1, 2, 3):
        out = out + np.einsum("ab,...b->...a", PAULI.upper[a], jet.d1[a])
    return 1j * out


@dataclass(frozen=True)
class WeylWave:
    sign: WeylSign
    p: np.ndarray  # (p0, p1, p2, p3)


def weyl_plane_waves(p0: float) -> list[WeylWave]:
    """Momenta of Weyl plane waves with spinor (1, 0), one per sign branch."""
    p0 = float(p0)
    if p0 == 0.0 or not np.isfinite(p0):
        raise ValueError("need a finite nonzero p0")
    return [
        WeylWave(WeylSign.PLUS, np.array([p0, 0.0, 0.0, p0])),
        WeylWave(WeylSign.MINUS, np.array([p0, 0.0, 0.0, -p0])),
    ]


def momentum_lattice(p0: float, n: int = 41, extent: float = 2.0) -> np.ndarray:
    """Cubic lattice of 3-momenta covering ``|p_i| <= extent |p0|``; contains (0, 0, +-p0) exactly when
    (n - 1) / (2 extent) is an integer."""
    half = (n - 1) // 2
    ticks = (np.arange(n) - half) / half * extent
    axes = np.meshgrid(ticks, ticks, ticks, indexing="ij")
    return abs(p0) * np.stack([a.ravel() for a in axes], axis=1)


@dataclass(frozen=True)
class Theorem2Report:
    p0: float
    v1: float
    v2: float
    elasticity_zeros: np.ndarray
    weyl_zeros: np.ndarray
    expected: np.ndarray
    n_points: int

    @property
    def passed(self) -> bool:
        same = _same_rows(self.elasticity_zeros, self.weyl_zeros) and _same_rows(self.weyl_zeros, self.expected)
        return same and abs(self.v1 - 1.0) <= 1e-14 and self.v2 == 0.0


def _same_rows(a, b) -> bool:
    a, b = np.asarray(a), np.asarray(b)
    if a.shape != b.shape:
        return False
    key = lambda r: tuple(r)  # noqa: E731
    return np.array_equal(np.array(sorted(a.tolist(), key=key)), np.array(sorted(b.tolist(), key=key)))


def theorem2_crosscheck(p0: float, m: ElasticModuli, n: int = 41, tol: float = 1e-10) -> Theorem2Report:
    """Compare zero sets of the plane-wave critical residual (zeta = (1, 0)) and of both Weyl branches."""
    require_axial_normalized(m)
    p0 = float(p0)
    if p0 == 0.0:
        raise ValueError("need a nonzero p0")
    lattice = momentum_lattice(p0, n)
    z = np.array([1.0, 0.0], dtype=complex)
    scale = max(p0**2, 1.0)
    P = np.column_stack([np.full(len(lattice), p0), lattice])
    g_norm = np.linalg.norm(critical_residual(z, P, m), axis=-1)
    el = lattice[g_norm <= tol * 4.0 * m.c_kin * scale]
    w_norm = np.min([np.linalg.norm(weyl_operator_plane(z, P, s), axis=-1) for s in WeylSign], axis=0)
    we = lattice[w_norm <= tol * max(abs(p0), 1.0)]
    s = wave_speeds(m)
    expected = np.array([w.p[1:] for w in weyl_plane_waves(p0)])
    return Theorem2Report(p0, s.v1, s.v2, np.array(el).reshape(-1, 3), np.array(we).reshape(-1, 3), expected, len(lattice))


@dataclass(frozen=True)
class StationaryField:
    """``xi(x0, x) = exp(-i p0 x0) eta(x)`` with eta a spatial ModeSum or spatial sample array."""

    p0: float
    eta: object

    def __post_init__(self):
        if float(self.p0) == 0.0:
            raise ValueError("stationary fields need p0 != 0")
        object.__setattr__(self, "p0", float(self.p0))
        if is_analytic(self.eta):
            modes = self.eta.modes if isinstance(self.eta, PlaneWave) else self.eta
            if np.any(modes.momenta[:, 0] != 0.0):
                raise ValueError("eta must not depend on time")

    @property
    def analytic(self) -> bool:
        return is_analytic(self.eta)

    def modes(self) -> ModeSum:
        eta = self.eta.modes if isinstance(self.eta, PlaneWave) else self.eta
        moms = eta.momenta.copy()
        moms[:, 0] = self.p0
        return ModeSum(eta.amplitudes, moms)

    def field(self, grid: GridSpec):
        """Analytic ModeSum if eta is analytic, else samples on the spacetime grid."""
        if self.analytic:
            return self.modes()
        if not grid.time:
            raise ValueError("sampling a stationary field needs a spacetime grid")
        eta = grid.spatial_grid.check_values(np.asarray(self.eta, dtype=complex), (2,))
        phase = np.exp(-1j * self.p0 * grid.coordinates[0])
        return phase[..., None] * eta[None]


def weyl_spinor(direction, sign, p0: float) -> np.ndarray:
    """Unit spinor zeta with ``(-+p0 + |p0| sigma.d) zeta = 0`` for unit direction d."""
    s = WeylSign.parse(sign)
    d = np.asarray(direction, dtype=float)
    d = d / np.linalg.norm(d)
    sd = np.einsum("k,kab->ab", d, PAULI.spatial)
    w, V = np.linalg.eigh(sd)
    target = s.value * np.sign(p0)
    z = V[:, int(np.argmin(abs(w - target)))]
    k = int(np.argmax(abs(z)))
    return z * (abs(z[k]) / z[k])  # fix the phase: largest entry real positive


def weyl_superposition(p0: float, directions, amplitudes, sign="plus", k: float | None = None) -> StationaryField:
    """Sum of same-frequency Weyl plane waves on one sign branch, wave vectors ``k d`` (k = |p0|)."""
    k = abs(p0) if k is None else float(k)
    if not np.isclose(k, abs(p0), rtol=1e-14, atol=0):
        raise ValueError("Weyl plane waves need |p| = |p0|")
    amps, moms = [], []
    for d, c in zip(directions, amplitudes):
        d = np.asarray(d, dtype=float)
        d = d / np.linalg.norm(d)
        amps.append(c * weyl_spinor(d, sign, p0))
        moms.append(np.r_[0.0, k * d])
    return StationaryField(p0, ModeSum(np.array(amps), np.array(moms)))


@dataclass(frozen=True)
class Theorem3Report:
    weyl_max: float
    F_max: float
    mask_fraction: float
    rho_max: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.F_max < self.tol


def theorem3_check(
    field: StationaryField,
    m: ElasticModuli,
    grid: GridSpec,
    sign="plus",
    scheme: str = "spectral",
    mask_frac: float = 0.1,
    tol: float = 1e-5,
    require_axial: bool = True,
) -> Theorem3Report:
    """Weyl residual and Euler-Lagrange residual of a stationary field on the mask rho >= mask_frac * max rho.

    ``require_axial=False`` allows negative controls with other moduli.
    """
    if require_axial:
        require_axial_normalized(m)
    if not grid.time:
        raise ValueError("theorem3_check needs a spacetime grid")
    xi = field.field(grid)
    samples = xi.sample(grid) if is_analytic(xi) else xi
    rho = np.sum(np.abs(samples) ** 2, axis=-1)
    mask = rho >= mask_frac * rho.max()
    if not np.any(mask) or rho.max() <= RHO_MIN:
        raise ValueError("field vanishes on the evaluation mask")
    # derivatives from samples so both residuals use the chosen scheme
    data = samples if scheme != "exact" else xi
    weyl = np.linalg.norm(weyl_residual(data, grid, sign, scheme), axis=-1)
    F = np.linalg.norm(euler_lagrange_F(data, grid, m, scheme), axis=-1)
    return Theorem3Report(
        float(weyl[mask].max()), float(F[mask].max()), float(mask.mean()), float(rho.max()), tol
    )
