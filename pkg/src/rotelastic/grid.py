"""Periodic sampling grids and derivative schemes.

Field arrays are stored row-major with axis order (t, x1, x2, x3) followed by
the pointwise component axes.  Spatial-only grids drop the leading time axis.
Sample ``i`` along an axis sits at coordinate ``i * L / n``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

SCHEMES = ("central", "spectral", "exact")


@dataclass(frozen=True)
class GridSpec:
    """Periodic box.  With ``time=True`` the first entry of ``n`` and ``L`` is the time axis."""

    n: tuple[int, ...]
    L: tuple[float, ...]
    time: bool = False

    def __post_init__(self):
        object.__setattr__(self, "n", tuple(int(k) for k in self.n))
        object.__setattr__(self, "L", tuple(float(x) for x in self.L))
        expected = 4 if self.time else 3
        if len(self.n) != expected or len(self.L) != expected:
            raise ValueError(f"grid needs {expected} axes (time={self.time}), got n={self.n}, L={self.L}")
        if min(self.n) < 4:
            raise ValueError(f"grid needs at least 4 points per axis, got {self.n}")
        if not all(x > 0 for x in self.L):
            raise ValueError(f"box lengths must be positive, got {self.L}")

    @classmethod
    def spatial(cls, n: int | tuple[int, int, int], L: float | tuple[float, float, float] = 2 * np.pi):
        n = (n,) * 3 if np.isscalar(n) else tuple(n)
        L = (L,) * 3 if np.isscalar(L) else tuple(L)
        return cls(n, L, time=False)

    @classmethod
    def spacetime(cls, n: int | tuple, L: float | tuple = 2 * np.pi):
        n = (n,) * 4 if np.isscalar(n) else tuple(n)
        L = (L,) * 4 if np.isscalar(L) else tuple(L)
        return cls(n, L, time=True)

    @property
    def shape(self) -> tuple[int, ...]:
        return self.n

    @property
    def spacing(self) -> tuple[float, ...]:
        return tuple(length / k for length, k in zip(self.L, self.n))

    @property
    def size(self) -> int:
        return int(np.prod(self.n))

    @property
    def cell_volume(self) -> float:
        """Spatial cell volume h1 h2 h3."""
        return float(np.prod(self.spacing[-3:]))

    @property
    def spatial_grid(self) -> "GridSpec":
        return GridSpec(self.n[-3:], self.L[-3:], time=False) if self.time else self

    def axis(self, alpha: int) -> int:
        """Array axis holding spacetime direction ``alpha`` (0 = time, 1..3 = space)."""
        if alpha == 0:
            if not self.time:
                raise ValueError("grid has no time axis")
            return 0
        if alpha not in (1, 2, 3):
            raise ValueError(f"direction must be 0..3, got {alpha}")
        return alpha if self.time else alpha - 1

    @property
    def directions(self) -> tuple[int, ...]:
        return (0, 1, 2, 3) if self.time else (1, 2, 3)

    @cached_property
    def coordinates(self) -> tuple[np.ndarray, ...]:
        """Four broadcastable coordinate arrays (x0, x1, x2, x3); x0 is 0 on spatial grids."""
        axes = [np.arange(k) * h for k, h in zip(self.n, self.spacing)]
        mesh = np.meshgrid(*axes, indexing="ij", sparse=True)
        if self.time:
            return tuple(mesh)
        return (np.zeros((1, 1, 1)),) + tuple(mesh)

    def wavenumbers(self, alpha: int) -> np.ndarray:
        ax = self.axis(alpha)
        return 2 * np.pi * np.fft.fftfreq(self.n[ax], d=self.spacing[ax])

    def check_values(self, values: np.ndarray, trailing: tuple[int, ...]) -> np.ndarray:
        values = np.asarray(values)
        if values.shape != self.n + trailing:
            raise ValueError(f"field shape {values.shape} does not match grid {self.n} + {trailing}")
        return values


def derivative(values: np.ndarray, grid: GridSpec, alpha: int, scheme: str = "central") -> np.ndarray:
    """Periodic derivative along spacetime direction ``alpha``.

    ``central`` is the second-order stencil (f[i+1] - f[i-1]) / 2h; ``spectral``
    multiplies Fourier coefficients by i k with the Nyquist mode dropped.  Both
    are skew-adjoint on the periodic grid.
    """
    ax = grid.axis(alpha)
    h = grid.spacing[ax]
    if scheme == "central":
        return (np.roll(values, -1, axis=ax) - np.roll(values, 1, axis=ax)) / (2 * h)
    if scheme == "spectral":
        n = grid.n[ax]
        k = grid.wavenumbers(alpha)
        if n % 2 == 0:
            k[n // 2] = 0.0
        shape = [1] * values.ndim
        shape[ax] = n
        out = np.fft.ifft(np.fft.fft(values, axis=ax) * (1j * k).reshape(shape), axis=ax)
        return out.real if np.isrealobj(values) else out
    if scheme == "exact":
        raise ValueError("exact derivatives need an analytic field, not sampled values")
    raise ValueError(f"unknown derivative scheme {scheme!r}; expected one of {SCHEMES}")


def gradient(values: np.ndarray, grid: GridSpec, scheme: str = "central", directions=None) -> np.ndarray:
    """Stack of derivatives along ``directions`` (default: all grid directions) on a new axis 0."""
    directions = grid.directions if directions is None else directions
    return np.stack([derivative(values, grid, a, scheme) for a in directions], axis=0)


def integrate(values: np.ndarray, grid: GridSpec, over_time: bool = True) -> np.ndarray | float:
    """Riemann sum over the grid axes of a pointwise scalar field.

    With a time axis and ``over_time=False`` the result is one value per time
    slice.  numpy's pairwise summation gives a fixed reduction order.
    """
    values = np.asarray(values)
    if values.shape[: len(grid.n)] != grid.n:
        raise ValueError(f"field shape {values.shape} does not match grid {grid.n}")
    dv = grid.cell_volume
    if grid.time and not over_time:
        return np.sum(values.reshape(grid.n[0], -1), axis=1) * dv
    if grid.time:
        dv *= grid.spacing[0]
    return float(np.sum(values.ravel()) * dv)


def fd_order(errors, ns) -> float:
    """Observed convergence order from errors measured at successive grid sizes."""
    e = np.asarray(errors, dtype=float)
    n = np.asarray(ns, dtype=float)
    return float(np.log(e[-2] / e[-1]) / np.log(n[-1] / n[-2]))
