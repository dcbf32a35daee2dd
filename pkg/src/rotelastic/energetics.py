"""Elastic moduli, energies, Lagrangian density and action on sampled fields."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import deformation
from .coframe_spinor import RHO_MIN
from .grid import GridSpec, integrate
from .spinor_repr import SpinorGeometry, spinor_geometry
from .tensor_algebra import inner_rank2


class InadmissibleModuliError(ValueError):
    pass


@dataclass(frozen=True)
class ElasticModuli:
    """Moduli weighting the axial, vector and tensor torsion pieces, plus the kinetic modulus."""

    c_ax: float
    c_vec: float
    c_ten: float
    c_kin: float

    def __post_init__(self):
        vals = [float(x) for x in (self.c_ax, self.c_vec, self.c_ten, self.c_kin)]
        for name, val in zip(("c_ax", "c_vec", "c_ten", "c_kin"), vals):
            if not np.isfinite(val):
                raise InadmissibleModuliError(f"{name} must be finite, got {val}")
            object.__setattr__(self, name, val)
        if min(vals[:3]) < 0:
            raise InadmissibleModuliError("c_ax, c_vec and c_ten must be nonnegative")
        if sum(vals[:3]) <= 0:
            raise InadmissibleModuliError("c_ax, c_vec and c_ten must not all vanish")
        if vals[3] <= 0:
            raise InadmissibleModuliError("c_kin must be positive")

    @classmethod
    def purely_axial(cls, c_ax: float = 0.75) -> "ElasticModuli":
        """Axial-only material with the time scale fixed by c_kin = 4/3 c_ax."""
        return cls(c_ax, 0.0, 0.0, 4.0 * c_ax / 3.0)

    @property
    def is_purely_axial(self) -> bool:
        return self.c_vec == 0.0 and self.c_ten == 0.0

    def is_normalized_axial(self, rtol: float = 1e-14) -> bool:
        return self.is_purely_axial and abs(self.c_kin - 4.0 * self.c_ax / 3.0) <= rtol * self.c_kin

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.c_ax, self.c_vec, self.c_ten, self.c_kin)


def potential_density_irreducible(dual_T, m: ElasticModuli) -> np.ndarray:
    """``c_ax |ax|^2 + c_vec |vec|^2 + c_ten |ten|^2`` pointwise (per unit density)."""
    parts = deformation.decompose(dual_T)
    return (
        m.c_ax * inner_rank2(parts.axial, parts.axial)
        + m.c_vec * inner_rank2(parts.vector, parts.vector)
        + m.c_ten * inner_rank2(parts.tensor, parts.tensor)
    )


def potential_density_simplified(dual_T, m: ElasticModuli) -> np.ndarray:
    """``(c_ax - c_ten)/3 f^2 + (c_vec - c_ten)/2 |v|^2 + c_ten *T:*T`` pointwise."""
    f = deformation.scalar_f(dual_T)
    v = deformation.vector_v(dual_T)
    return (
        (m.c_ax - m.c_ten) / 3.0 * f**2
        + (m.c_vec - m.c_ten) / 2.0 * np.sum(v**2, axis=-1)
        + m.c_ten * inner_rank2(dual_T, dual_T)
    )


def _rho_field(rho, grid: GridSpec) -> np.ndarray:
    rho = np.broadcast_to(np.asarray(rho, dtype=float), grid.shape)
    if np.any(~(rho > 0)):
        raise ValueError("density must be positive everywhere")
    return rho


def kinetic_energy(omega, rho, grid: GridSpec, m: ElasticModuli):
    """``c_kin * integral |omega|^2 rho`` per time slice (scalar on spatial grids)."""
    omega = grid.check_values(omega, (3,))
    rho = _rho_field(rho, grid)
    dens = m.c_kin * np.sum(omega**2, axis=-1) * rho
    return integrate(dens, grid, over_time=False)


def potential_energy(dual_T, rho, grid: GridSpec, m: ElasticModuli, method: str = "irreducible"):
    """Potential energy per time slice, by either of the two equivalent formulas."""
    dual_T = grid.check_values(dual_T, (3, 3))
    rho = _rho_field(rho, grid)
    if method == "irreducible":
        dens = potential_density_irreducible(dual_T, m)
    elif method == "simplified":
        dens = potential_density_simplified(dual_T, m)
    else:
        raise ValueError(f"unknown method {method!r}")
    return integrate(dens * rho, grid, over_time=False)


def lagrangian_bracket(f, v, dual_T, omega, m: ElasticModuli) -> np.ndarray:
    """The Lagrangian density divided by rho; vanishes where the density equation holds."""
    return (
        (m.c_ax - m.c_ten) / 3.0 * f**2
        + (m.c_vec - m.c_ten) / 2.0 * np.sum(v**2, axis=-1)
        + m.c_ten * inner_rank2(dual_T, dual_T)
        - m.c_kin * np.sum(omega**2, axis=-1)
    )


def lagrangian_from_geometry(geo: SpinorGeometry, m: ElasticModuli) -> np.ndarray:
    if geo.omega is None:
        raise ValueError("the Lagrangian needs a time derivative: use a spacetime grid or an analytic field")
    return lagrangian_bracket(geo.f, geo.v, geo.dual_T, geo.omega, m) * geo.rho


def lagrangian_density(xi, grid: GridSpec, m: ElasticModuli, scheme: str = "central", rho_min: float = RHO_MIN):
    """Pointwise Lagrangian density of a spinor field (sampled array or analytic field)."""
    return lagrangian_from_geometry(spinor_geometry(xi, grid, scheme, rho_min), m)


def lagrangian_density_coframe(theta, rho, grid: GridSpec, m: ElasticModuli, scheme: str = "central"):
    """Pointwise Lagrangian density of a (coframe, density) field on a spacetime grid."""
    rho = _rho_field(rho, grid)
    dual_T = deformation.dual_torsion(theta, grid, scheme)
    omega = deformation.angular_velocity(theta, grid, scheme, validate=False)
    f = deformation.scalar_f(dual_T)
    v = deformation.vector_v(dual_T)
    return lagrangian_bracket(f, v, dual_T, omega, m) * rho


def action(xi, grid: GridSpec, m: ElasticModuli, scheme: str = "central", rho_min: float = RHO_MIN) -> float:
    """Spacetime Riemann sum of the Lagrangian density."""
    if not grid.time:
        raise ValueError("the action needs a spacetime grid")
    return integrate(lagrangian_density(xi, grid, m, scheme, rho_min), grid)


def density_EL_residual(xi, grid: GridSpec, m: ElasticModuli, scheme: str = "central", rho_min: float = RHO_MIN):
    """Residual of the field equation obtained by varying the density: L / rho."""
    geo = spinor_geometry(xi, grid, scheme, rho_min)
    if geo.omega is None:
        raise ValueError("the density equation needs a time derivative")
    return lagrangian_bracket(geo.f, geo.v, geo.dual_T, geo.omega, m)
