"""Euler-Lagrange residual of the spinor action and independent checks of it.

The Lagrangian is written as ``L = sum_J A_J W_J^2`` over 16 rows
(f, v1..v3, *T11..*T33 row-major, omega1..omega3), where
``W_J = -2 Im(conj(xi) B_J^alpha d_alpha xi) / sqrt(rho)`` equals sqrt(rho) times
the corresponding geometric quantity.  Every B_J^alpha is a real combination
of the spatial Pauli matrices and is stored as coefficients C[J, alpha, beta].
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import energetics
from .coframe_spinor import RHO_MIN, spinor_to_density
from .energetics import ElasticModuli
from .fields import SpinorJet, is_analytic, spinor_jet
from .grid import GridSpec, derivative
from .tensor_algebra import EPS, PAULI, pauli_apply, pauli_bilinear

ROWS = ("f",) + tuple(f"v{a}" for a in (1, 2, 3)) + tuple(
    f"T{a}{b}" for a in (1, 2, 3) for b in (1, 2, 3)
) + tuple(f"omega{a}" for a in (1, 2, 3))
STEP_RANGE = (1e-9, 1e-2)


def _coefficients() -> np.ndarray:
    C = np.zeros((16, 4, 3))
    for g in range(3):
        C[0, g + 1, g] = -2.0  # f: B^g = -2 sigma^g
    for a in range(3):
        for g in range(3):
            for b in range(3):
                C[1 + a, g + 1, b] = -EPS[b, g, a]  # v_a: B^g = -eps_{b g a} sigma^b
    for a in range(3):
        for b in range(3):
            J = 4 + 3 * a + b
            C[J, a + 1, b] += 1.0  # *T_ab: sigma_b delta_{g a}
            if a == b:
                for g in range(3):
                    C[J, g + 1, g] -= 1.0  # - sigma^g delta_ab
    for a in range(3):
        C[13 + a, 0, a] = 1.0  # omega_a: B^0 = sigma_a
    C.setflags(write=False)
    return C


COEFFS = _coefficients()


@dataclass(frozen=True)
class CoefficientTables:
    """Weights A (16,) and matrices B (16, 4, 2, 2) with their Pauli coefficients C."""

    A: np.ndarray
    C: np.ndarray

    @property
    def B(self) -> np.ndarray:
        return np.einsum("Jab,bcd->Jacd", self.C, PAULI.spatial)

    def restricted(self, rows) -> "CoefficientTables":
        """Copy with A zeroed outside ``rows`` (names from ROWS or indices)."""
        keep = np.zeros(16, dtype=bool)
        for r in rows:
            keep[ROWS.index(r) if isinstance(r, str) else int(r)] = True
        return CoefficientTables(np.where(keep, self.A, 0.0), self.C)


def build_tables(m: ElasticModuli) -> CoefficientTables:
    A = np.empty(16)
    A[0] = (m.c_ax - m.c_ten) / 3.0
    A[1:4] = (m.c_vec - m.c_ten) / 2.0
    A[4:13] = m.c_ten
    A[13:16] = -m.c_kin
    return CoefficientTables(A, COEFFS)


def _tables(m) -> CoefficientTables:
    return m if isinstance(m, CoefficientTables) else build_tables(m)


def _sigma_bilinear(jet: SpinorJet) -> np.ndarray:
    """``S[..., alpha, beta] = conj(xi) sigma_beta d_alpha xi``."""
    return np.moveaxis(pauli_bilinear(jet.values[None], jet.d1), 0, -2)


def _contract_C(C: np.ndarray, S: np.ndarray) -> np.ndarray:
    """``sum_{alpha, beta} C[J, alpha, beta] S[..., alpha, beta]`` with trailing axis J."""
    return S.reshape(S.shape[:-2] + (-1,)) @ C.reshape(len(C), -1).T


def _W(jet: SpinorJet, C: np.ndarray, rho_min: float):
    rho = spinor_to_density(jet.values, rho_min)
    S = _sigma_bilinear(jet)
    W = -2.0 * _contract_C(C, S.imag) / np.sqrt(rho)[..., None]
    return rho, W


def assemble_W(xi, grid: GridSpec, tables=None, scheme: str = "central", rho_min: float = RHO_MIN) -> np.ndarray:
    """The 16 components W_J at every grid point, trailing axis J."""
    C = COEFFS if tables is None else tables.C
    return _W(spinor_jet(xi, grid, scheme), C, rho_min)[1]


def lagrangian_from_tables(xi, grid: GridSpec, tables, scheme: str = "central", rho_min: float = RHO_MIN):
    """``sum_J A_J W_J^2`` pointwise."""
    W = assemble_W(xi, grid, _tables(tables), scheme, rho_min)
    return W**2 @ _tables(tables).A


def euler_lagrange_F(xi, grid: GridSpec, m, scheme: str = "spectral", rho_min: float = RHO_MIN) -> np.ndarray:
    """Dotted spinor field F with ``dS = integral (F . d(conj xi) + c.c.)``.

    Sampled schemes use the divergence form, which is the exact gradient of the
    discretized action because the difference operators are skew-adjoint.
    The ``exact`` scheme differentiates analytic fields in closed form.
    """
    t = _tables(m)
    if scheme != "exact" and not grid.time:
        raise ValueError("the Euler-Lagrange residual needs a spacetime grid (or the exact scheme)")
    jet = spinor_jet(xi, grid, scheme, second=(scheme == "exact"))
    xi_v = jet.values
    rho, W = _W(jet, t.C, rho_min)
    sq = np.sqrt(rho)
    L = W**2 @ t.A
    # M^alpha = sum_J A_J W_J B_J^alpha, stored as Pauli coefficients mc[..., alpha, beta]
    mc = ((W * t.A) @ t.C.reshape(16, -1)).reshape(W.shape[:-1] + (4, 3))
    local = np.zeros_like(xi_v)
    for a in range(4):
        local += pauli_apply(mc[..., a, :], jet.d1[a])
    F = 2j * local / sq[..., None] - L[..., None] * xi_v / rho[..., None]
    if scheme == "exact":
        F += 2j * _divergence_exact(jet, t, rho, W, mc)
    else:
        for a in grid.directions:
            flux = pauli_apply(mc[..., a, :], xi_v) / sq[..., None]
            F += 2j * derivative(flux, grid, a, scheme)
    return F


def _divergence_exact(jet: SpinorJet, t: CoefficientTables, rho, W, mc) -> np.ndarray:
    """``sum_alpha d_alpha(M^alpha xi / sqrt(rho))`` by the chain rule on an analytic jet."""
    xi, d1, d2 = jet.values, jet.d1, jet.d2
    sq = np.sqrt(rho)
    out = np.zeros_like(xi)
    for a in range(4):
        drho = 2.0 * np.einsum("...c,...c->...", xi.conj(), d1[a]).real
        # d_a S[b, beta] = d_a conj(xi) sigma_beta d_b xi + conj(xi) sigma_beta d_a d_b xi
        dS = np.moveaxis(pauli_bilinear(d1[a][None], d1) + pauli_bilinear(xi[None], d2[a]), 0, -2)
        dW = -2.0 * _contract_C(t.C, dS.imag) / sq[..., None] - W * (drho / (2 * rho))[..., None]
        dmc = (dW * t.A) @ t.C[:, a, :]
        term = pauli_apply(dmc, xi) + pauli_apply(mc[..., a, :], d1[a])
        out += term / sq[..., None] - pauli_apply(mc[..., a, :], xi) * (drho / (2 * rho * sq))[..., None]
    return out


def reduced_G(zeta, p, m) -> np.ndarray:
    """Constant spinor G for the plane wave ``exp(-i p.x) zeta`` from the W machinery."""
    t = _tables(m)
    z = np.asarray(zeta, dtype=complex).reshape(2)
    p = np.asarray(p, dtype=float).reshape(4)
    j0 = float(np.vdot(z, z).real)
    if j0 <= 0:
        raise ValueError("plane wave needs a nonzero spinor")
    Bp = np.einsum("Jab,a->Jb", t.C, p)  # Pauli coefficients of B_J^alpha p_alpha
    Bpz = np.einsum("Jb,bcd,d->Jc", Bp, PAULI.spatial, z)
    W = 2.0 * (Bpz @ z.conj()).real / np.sqrt(j0)
    L = float(t.A @ W**2)
    return 4.0 * np.einsum("J,J,Jc->c", t.A, W, Bpz) / np.sqrt(j0) - L * z / j0


def coloring_period(n: int) -> int:
    """Smallest period >= 3 dividing n; points of one colour have disjoint central stencils."""
    for k in range(3, n + 1):
        if n % k == 0:
            return k
    raise ValueError(f"axis length {n} has no divisor >= 3")


def _lagrangian_for(m, grid: GridSpec, rho_min: float):
    if isinstance(m, CoefficientTables):
        return lambda field: lagrangian_from_tables(field, grid, m, "central", rho_min)
    return lambda field: energetics.lagrangian_density(field, grid, m, "central", rho_min)


def fd_action_gradient(xi, grid: GridSpec, m, step: float = 1e-5, rho_min: float = RHO_MIN) -> np.ndarray:
    """Central-difference gradient of the Riemann-sum action (central scheme), as a dotted spinor.

    Each grid value's four real components are perturbed by +-step.  Points of
    one colour class (a residue class modulo the colouring period on every
    axis) are perturbed together: their stencil neighbourhoods do not overlap,
    so the change of the action restricted to each neighbourhood belongs to a
    single point.
    """
    if not (STEP_RANGE[0] <= step <= STEP_RANGE[1]):
        raise ValueError(f"step must lie in [{STEP_RANGE[0]}, {STEP_RANGE[1]}], got {step}")
    if not grid.time:
        raise ValueError("the action needs a spacetime grid")
    base = xi.sample(grid) if is_analytic(xi) else grid.check_values(np.asarray(xi, dtype=complex), (2,))
    lag = _lagrangian_for(m, grid, rho_min)
    periods = [coloring_period(k) for k in grid.n]
    idx = np.meshgrid(*[np.arange(k) % per for k, per in zip(grid.n, periods)], indexing="ij", sparse=True)
    grad = np.zeros(grid.shape + (4,))
    for colour in np.ndindex(*periods):
        mask = np.ones(grid.shape, dtype=bool)
        for ax, c in enumerate(colour):
            mask &= idx[ax] == c
        for comp in range(4):
            delta = np.zeros(grid.shape + (2,), dtype=complex)
            delta[..., comp // 2] = step * (1.0 if comp % 2 == 0 else 1j)
            delta *= mask[..., None]
            dL = lag(base + delta) - lag(base - delta)
            local = dL.copy()
            for ax in range(len(grid.n)):
                local += np.roll(dL, 1, axis=ax) + np.roll(dL, -1, axis=ax)
            grad[..., comp] += np.where(mask, local, 0.0)
    grad /= 2 * step  # derivative of sum L over cells; dS = dV * this
    return 0.5 * (grad[..., 0::2] + 1j * grad[..., 1::2])
