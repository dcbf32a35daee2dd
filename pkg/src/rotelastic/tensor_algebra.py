"""Small-dimension tensor and spinor primitives in 3D Euclidean space.

Index convention: tensor indices are written 1..3 in docstrings and error
messages and stored 0..2 in arrays (index ``k`` lives at position ``k - 1``).
Spacetime quantities use 0 for time, so position ``alpha`` holds index
``alpha`` there.

Functions accept leading batch dimensions wherever it is natural: the tensor
slots are always the trailing axes.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

import numpy as np

ANTISYMMETRY_TOL = 1e-12


def _levi_civita_array() -> np.ndarray:
    eps = np.zeros((3, 3, 3))
    for a, b, c in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        eps[a, b, c] = 1.0
        eps[a, c, b] = -1.0
    return eps


#: Totally antisymmetric symbol with ``EPS[0, 1, 2] == +1``.
EPS = _levi_civita_array()
EPS.setflags(write=False)


def _check_index(i: int) -> int:
    if isinstance(i, (bool, np.bool_)) or int(i) != i or not 1 <= i <= 3:
        raise IndexError(f"tensor index must be one of 1, 2, 3; got {i!r}")
    return int(i) - 1


def levi_civita(alpha: int, beta: int, gamma: int) -> int:
    """Sign of the permutation (alpha, beta, gamma) of (1, 2, 3), or 0."""
    a, b, c = (_check_index(i) for i in (alpha, beta, gamma))
    return int(EPS[a, b, c])


def component(tensor, *indices: int):
    """Bounds-checked 1-based component access, ``component(K, 1, 2, 3)``."""
    tensor = np.asarray(tensor)
    if len(indices) > tensor.ndim:
        raise IndexError(f"{len(indices)} indices given for a rank-{tensor.ndim} tensor")
    pos = tuple(_check_index(i) for i in indices)
    lead = (Ellipsis,) if len(indices) < tensor.ndim else ()
    return tensor[lead + pos] if lead else tensor[pos]


def is_antisymmetric(tensor, axes: tuple[int, int], tol: float = ANTISYMMETRY_TOL) -> bool:
    t = np.asarray(tensor)
    return bool(np.all(np.abs(t + np.swapaxes(t, *axes)) <= tol))


def check_antisymmetric(tensor, axes: tuple[int, int], tol: float = ANTISYMMETRY_TOL, what: str = "tensor"):
    t = np.asarray(tensor)
    err = np.max(np.abs(t + np.swapaxes(t, *axes)), initial=0.0)
    if err > tol:
        raise ValueError(f"{what} is not antisymmetric in axes {axes} (max violation {err:.3e} > {tol:.1e})")
    return t


def hodge_star(R, r: int | None = None, tol: float = ANTISYMMETRY_TOL) -> np.ndarray:
    """Hodge dual of a totally antisymmetric rank-``r`` tensor.

    ``(*R)_{a_{r+1}..a_3} = R^{a_1..a_r} eps_{a_1..a_3} / r!``.  The last ``r``
    axes of ``R`` are the tensor slots; when ``r`` is omitted the whole array
    is taken as the tensor.  Applying the star twice is the identity.
    """
    R = np.asarray(R)
    if r is None:
        r = R.ndim
    if not 0 <= r <= 3:
        raise ValueError(f"rank must be 0..3, got {r}")
    if r > R.ndim or any(s != 3 for s in R.shape[R.ndim - r:]):
        raise ValueError(f"expected trailing shape {(3,) * r}, got {R.shape}")
    for i in range(r):
        for j in range(i + 1, r):
            check_antisymmetric(R, (R.ndim - r + i, R.ndim - r + j), tol, "argument of hodge_star")
    if r == 0:
        return R[..., None, None, None] * EPS
    letters = "abc"
    sub_in = "..." + letters[:r]
    sub_out = "..." + letters[r:]
    return np.einsum(f"{sub_in},abc->{sub_out}", R, EPS) / factorial(r)


def wedge(a, b) -> np.ndarray:
    """Exterior product of two covectors, ``(a^b)_{ij} = a_i b_j - a_j b_i``."""
    a = np.asarray(a)
    b = np.asarray(b)
    outer = a[..., :, None] * b[..., None, :]
    return outer - np.swapaxes(outer, -1, -2)


def inner_rank2(P, Q) -> np.ndarray:
    """Euclidean inner product ``P_ij Q^ij`` of real rank-2 tensors."""
    return np.einsum("...ij,...ij->...", np.asarray(P), np.asarray(Q))


def norm_rank2(P) -> np.ndarray:
    return np.sqrt(inner_rank2(P, P))


@dataclass(frozen=True)
class PauliSet:
    """Pauli matrices with lowered and raised spacetime index, plus the metric spinor.

    ``lower[0]`` is the identity and ``upper[0] = -lower[0]``; spatial matrices
    are the same with either index position.  Rows carry the dotted index.
    """

    lower: np.ndarray
    upper: np.ndarray
    metric: np.ndarray

    @classmethod
    def standard(cls) -> "PauliSet":
        lower = np.array(
            [
                [[1, 0], [0, 1]],
                [[0, 1], [1, 0]],
                [[0, -1j], [1j, 0]],
                [[1, 0], [0, -1]],
            ],
            dtype=complex,
        )
        upper = lower.copy()
        upper[0] = -lower[0]
        metric = np.array([[0, -1], [1, 0]], dtype=complex)
        for arr in (lower, upper, metric):
            arr.setflags(write=False)
        return cls(lower=lower, upper=upper, metric=metric)

    @property
    def spatial(self) -> np.ndarray:
        """``sigma_1, sigma_2, sigma_3`` stacked, shape (3, 2, 2)."""
        return self.lower[1:]


PAULI = PauliSet.standard()
# Weyl operators depend on this sign; guard against edits.
assert np.array_equal(PAULI.upper[0], -np.eye(2))


def pauli_bilinear(x, y) -> np.ndarray:
    """``conj(x) sigma_k y`` for the spatial Pauli matrices, trailing axis k.

    Written out componentwise; x and y broadcast over their leading axes.
    """
    x, y = np.asarray(x), np.asarray(y)
    xc0, xc1 = x[..., 0].conj(), x[..., 1].conj()
    y0, y1 = y[..., 0], y[..., 1]
    a, b = xc0 * y1, xc1 * y0
    return np.stack([a + b, 1j * (b - a), xc0 * y0 - xc1 * y1], axis=-1)


def pauli_apply(coef, spinor) -> np.ndarray:
    """``sum_k coef[..., k] sigma_k spinor`` written out componentwise."""
    coef, spinor = np.asarray(coef), np.asarray(spinor)
    c1, c2, c3 = coef[..., 0], coef[..., 1], coef[..., 2]
    s0, s1 = spinor[..., 0], spinor[..., 1]
    return np.stack([c3 * s0 + (c1 - 1j * c2) * s1, (c1 + 1j * c2) * s0 - c3 * s1], axis=-1)
