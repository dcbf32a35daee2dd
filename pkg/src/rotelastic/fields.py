"""Spinor fields: sampled arrays and analytic sums of plane-wave modes.

Analytic fields are what the ``exact`` derivative scheme works with: their
first and second derivatives are evaluated in closed form instead of by
differencing samples.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .grid import GridSpec, derivative


@dataclass(frozen=True)
class ModeSum:
    """``xi(x) = sum_k c_k exp(-i p_k . x)`` with p . x = p0 x0 + p1 x1 + p2 x2 + p3 x3."""

    amplitudes: np.ndarray  # (K, 2) complex
    momenta: np.ndarray  # (K, 4) real

    def __post_init__(self):
        amps = np.atleast_2d(np.asarray(self.amplitudes, dtype=complex))
        moms = np.atleast_2d(np.asarray(self.momenta, dtype=float))
        if amps.shape[1:] != (2,) or moms.shape[1:] != (4,) or len(amps) != len(moms):
            raise ValueError("ModeSum needs (K, 2) amplitudes and (K, 4) momenta")
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "momenta", moms)

    def __add__(self, other: "ModeSum") -> "ModeSum":
        other = as_modes(other)
        return ModeSum(
            np.concatenate([self.amplitudes, other.amplitudes]),
            np.concatenate([self.momenta, other.momenta]),
        )

    def scaled(self, factor: complex) -> "ModeSum":
        return ModeSum(self.amplitudes * factor, self.momenta)

    def time_reversed(self) -> "ModeSum":
        """Field ``xi(-x0, x)``."""
        moms = self.momenta.copy()
        moms[:, 0] *= -1
        return ModeSum(self.amplitudes, moms)

    def _phases(self, grid: GridSpec):
        x = grid.coordinates
        for c, p in zip(self.amplitudes, self.momenta):
            arg = p[0] * x[0] + p[1] * x[1] + p[2] * x[2] + p[3] * x[3]
            yield c, p, np.broadcast_to(np.exp(-1j * arg), grid.shape)

    def sample(self, grid: GridSpec) -> np.ndarray:
        out = np.zeros(grid.shape + (2,), dtype=complex)
        for c, _, ph in self._phases(grid):
            out += ph[..., None] * c
        return out

    def jet(self, grid: GridSpec, second: bool = False):
        """Values, first derivatives (4, ...) and optionally second derivatives (4, 4, ...)."""
        vals = np.zeros(grid.shape + (2,), dtype=complex)
        d1 = np.zeros((4,) + vals.shape, dtype=complex)
        d2 = np.zeros((4, 4) + vals.shape, dtype=complex) if second else None
        for c, p, ph in self._phases(grid):
            term = ph[..., None] * c
            vals += term
            for a in range(4):
                if p[a] != 0.0:
                    d1[a] += -1j * p[a] * term
            if second:
                for a in range(4):
                    for b in range(4):
                        if p[a] != 0.0 and p[b] != 0.0:
                            d2[a, b] += -p[a] * p[b] * term
        return vals, d1, d2


@dataclass(frozen=True)
class PlaneWave:
    """Plane-wave spinor field ``exp(-i p . x) zeta`` with constant zeta != 0."""

    zeta: np.ndarray
    p: np.ndarray

    def __post_init__(self):
        zeta = np.asarray(self.zeta, dtype=complex).reshape(2)
        p = np.asarray(self.p, dtype=float).reshape(4)
        if not np.any(zeta != 0):
            raise ValueError("plane wave needs a nonzero spinor")
        object.__setattr__(self, "zeta", zeta)
        object.__setattr__(self, "p", p)

    @property
    def modes(self) -> ModeSum:
        return ModeSum(self.zeta[None, :], self.p[None, :])

    def sample(self, grid: GridSpec) -> np.ndarray:
        return self.modes.sample(grid)

    def jet(self, grid: GridSpec, second: bool = False):
        return self.modes.jet(grid, second)

    def phase(self, grid: GridSpec) -> np.ndarray:
        """``exp(-i p . x)`` on the grid."""
        x = grid.coordinates
        arg = sum(self.p[a] * x[a] for a in range(4))
        return np.broadcast_to(np.exp(-1j * arg), grid.shape)

    def time_reversed(self) -> "PlaneWave":
        p = self.p.copy()
        p[0] *= -1
        return PlaneWave(self.zeta, p)


def as_modes(field) -> ModeSum:
    if isinstance(field, ModeSum):
        return field
    if isinstance(field, PlaneWave):
        return field.modes
    raise TypeError(f"not an analytic spinor field: {type(field).__name__}")


def is_analytic(field) -> bool:
    return isinstance(field, (ModeSum, PlaneWave))


@dataclass(frozen=True)
class SpinorJet:
    """A spinor field with its first (and optionally second) spacetime derivatives.

    ``d1[alpha]`` is the derivative along direction alpha = 0..3; entries the
    source cannot provide (time on a spatial grid) are zero and ``has_time``
    is False.
    """

    grid: GridSpec
    values: np.ndarray
    d1: np.ndarray
    d2: np.ndarray | None
    has_time: bool


def spinor_jet(xi, grid: GridSpec, scheme: str = "central", second: bool = False) -> SpinorJet:
    if scheme == "exact":
        if not is_analytic(xi):
            raise ValueError("the exact scheme needs an analytic field (PlaneWave or ModeSum)")
        vals, d1, d2 = xi.jet(grid, second)
        return SpinorJet(grid, vals, d1, d2, has_time=True)
    vals = xi.sample(grid) if is_analytic(xi) else grid.check_values(np.asarray(xi, dtype=complex), (2,))
    d1 = np.zeros((4,) + vals.shape, dtype=complex)
    for a in grid.directions:
        d1[a] = derivative(vals, grid, a, scheme)
    d2 = None
    if second:
        d2 = np.zeros((4, 4) + vals.shape, dtype=complex)
        for a in grid.directions:
            for b in grid.directions:
                d2[a, b] = derivative(d1[b], grid, a, scheme)
    return SpinorJet(grid, vals, d1, d2, has_time=grid.time)


def random_smooth_spinor(
    rng: np.random.Generator,
    grid: GridSpec,
    n_modes: int = 4,
    kmax: int = 1,
    amplitude: float = 0.5,
    time_modes: bool | None = None,
) -> ModeSum:
    """Random band-limited periodic spinor field, bounded away from zero.

    A unit background spinor plus ``n_modes`` lattice modes with |k_i| <= kmax
    whose amplitudes sum to at most ``amplitude`` < 1, so |xi| >= 1 - amplitude.
    """
    if not 0 <= amplitude < 1:
        raise ValueError("amplitude must be in [0, 1)")
    time_modes = grid.time if time_modes is None else time_modes
    base = rng.normal(size=2) + 1j * rng.normal(size=2)
    base /= np.linalg.norm(base)
    amps = [base]
    moms = [np.zeros(4)]
    weights = rng.uniform(0.2, 1.0, size=n_modes)
    weights *= amplitude / weights.sum()
    L = grid.L if grid.time else (2 * np.pi,) + grid.L
    for w in weights:
        c = rng.normal(size=2) + 1j * rng.normal(size=2)
        amps.append(w * c / np.linalg.norm(c))
        k = rng.integers(-kmax, kmax + 1, size=4).astype(float)
        if not time_modes:
            k[0] = 0.0
        moms.append(2 * np.pi * k / np.asarray(L))
    return ModeSum(np.array(amps), np.array(moms))
