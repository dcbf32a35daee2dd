"""Spinor <-> (coframe, density) equivalence and rigid rotations of coframes.

A coframe is stored as a real (..., 3, 3) array whose row ``j`` is the
covector theta^j.  A spinor is a complex (..., 2) array.
"""

from __future__ import annotations

import numpy as np

from .tensor_algebra import PAULI

COFRAME_TOL = 1e-10
RHO_MIN = 1e-12


class DegenerateSpinorError(ValueError):
    """A spinor whose density falls below the configured floor."""

    def __init__(self, message: str, indices=()):
        super().__init__(message)
        self.indices = tuple(int(i) for i in indices)


class InvalidCoframeError(ValueError):
    pass


def _flat_bad(mask: np.ndarray, limit: int = 10) -> list[int]:
    return [int(i) for i in np.flatnonzero(mask.ravel())[:limit]]


def spinor_to_density(xi, rho_min: float = RHO_MIN) -> np.ndarray:
    """``rho = |xi^1|^2 + |xi^2|^2``; raises on points with rho <= rho_min."""
    xi = np.asarray(xi)
    if xi.shape[-1:] != (2,):
        raise ValueError(f"spinor arrays need a trailing axis of length 2, got {xi.shape}")
    rho = np.einsum("...a,...a->...", xi.conj(), xi).real
    bad = ~(rho > rho_min)
    if np.any(bad):
        idx = _flat_bad(np.atleast_1d(bad))
        raise DegenerateSpinorError(
            f"degenerate spinor (density <= {rho_min:g}) at flat index {idx[0]}"
            + (f" and {int(bad.sum()) - 1} more" if bad.sum() > 1 else ""),
            idx,
        )
    return rho


def spinor_to_coframe(xi, rho_min: float = RHO_MIN) -> np.ndarray:
    """Orthonormal positively oriented coframe built from a nonvanishing spinor.

    theta^3_a = conj(xi) s_a xi / rho and
    (theta^1 + i theta^2)_a = (eps s_0 xi)^T s_a xi / rho.
    """
    xi = np.asarray(xi, dtype=complex)
    rho = spinor_to_density(xi, rho_min)
    sig = PAULI.spatial
    theta3 = np.einsum("...a,kab,...b->...k", xi.conj(), sig, xi).real
    lowered = np.einsum("cb,ba,...a->...c", PAULI.metric, PAULI.lower[0], xi)
    theta12 = np.einsum("...c,kcd,...d->...k", lowered, sig, xi)
    theta = np.stack([theta12.real, theta12.imag, theta3], axis=-2)
    return theta / rho[..., None, None]


def coframe_errors(theta) -> tuple[np.ndarray, np.ndarray]:
    """Pointwise orthonormality and orientation defects of a coframe array."""
    theta = np.asarray(theta, dtype=float)
    gram = np.einsum("...ja,...jb->...ab", theta, theta)
    ortho = np.max(np.abs(gram - np.eye(3)), axis=(-2, -1))
    orient = np.abs(np.linalg.det(theta) - 1.0)
    return ortho, orient


def validate_coframe(theta, tol: float = COFRAME_TOL) -> np.ndarray:
    theta = np.asarray(theta, dtype=float)
    if theta.shape[-2:] != (3, 3):
        raise InvalidCoframeError(f"coframe arrays need trailing shape (3, 3), got {theta.shape}")
    ortho, orient = coframe_errors(theta)
    if np.any(ortho > tol):
        idx = _flat_bad(np.atleast_1d(ortho > tol))
        raise InvalidCoframeError(
            f"coframe violates orthonormality by {np.max(ortho):.3e} (flat index {idx[0]})"
        )
    if np.any(orient > tol):
        idx = _flat_bad(np.atleast_1d(orient > tol))
        raise InvalidCoframeError(f"coframe is not positively oriented (flat index {idx[0]})")
    return theta


def _canonical_sign(q: np.ndarray, tiny: float = 1e-12) -> np.ndarray:
    # first component with |q_i| > tiny is made positive
    nonzero = np.abs(q) > tiny
    first = np.argmax(nonzero, axis=-1)
    lead = np.take_along_axis(q, first[..., None], axis=-1)[..., 0]
    sign = np.where(lead < 0, -1.0, 1.0)
    return q * sign[..., None]


def coframe_to_spinor(theta, rho, tol: float = COFRAME_TOL) -> np.ndarray:
    """Inverse of :func:`spinor_to_coframe` / :func:`spinor_to_density`.

    Writes the unit spinor as the real 4-vector q = (Re xi^1, Im xi^1,
    Re xi^2, Im xi^2), reads the Gram matrix q q^T off the coframe entries and
    extracts q from its row with the largest diagonal entry.  The sign of the
    result is fixed so that the first nonzero entry of q is positive.
    """
    theta = validate_coframe(theta, tol)
    rho = np.asarray(rho, dtype=float)
    if np.any(~(rho > 0)):
        raise ValueError("density must be positive")
    t12 = theta[..., 0, :] + 1j * theta[..., 1, :]
    t3 = theta[..., 2, :]
    aa = 0.5 * (1.0 + t3[..., 2])  # |a|^2
    bb = 0.5 * (1.0 - t3[..., 2])  # |b|^2
    a2 = 0.5 * (t12[..., 0] - 1j * t12[..., 1])  # a^2
    b2 = 0.5 * (-t12[..., 0] - 1j * t12[..., 1])  # b^2
    ab = -0.5 * t12[..., 2]  # a b
    cab = 0.5 * (t3[..., 0] + 1j * t3[..., 1])  # conj(a) b

    gram = np.empty(theta.shape[:-2] + (4, 4))
    gram[..., 0, 0] = 0.5 * (aa + a2.real)
    gram[..., 1, 1] = 0.5 * (aa - a2.real)
    gram[..., 0, 1] = gram[..., 1, 0] = 0.5 * a2.imag
    gram[..., 2, 2] = 0.5 * (bb + b2.real)
    gram[..., 3, 3] = 0.5 * (bb - b2.real)
    gram[..., 2, 3] = gram[..., 3, 2] = 0.5 * b2.imag
    gram[..., 0, 2] = gram[..., 2, 0] = 0.5 * (ab + cab).real
    gram[..., 1, 3] = gram[..., 3, 1] = 0.5 * (cab - ab).real
    gram[..., 0, 3] = gram[..., 3, 0] = 0.5 * (ab + cab).imag
    gram[..., 1, 2] = gram[..., 2, 1] = 0.5 * (ab - cab).imag

    diag = np.diagonal(gram, axis1=-2, axis2=-1)
    pivot = np.argmax(diag, axis=-1)
    row = np.take_along_axis(gram, pivot[..., None, None], axis=-2)[..., 0, :]
    q = row / np.sqrt(np.take_along_axis(diag, pivot[..., None], axis=-1))
    q /= np.linalg.norm(q, axis=-1, keepdims=True)
    q = _canonical_sign(q)
    xi = np.stack([q[..., 0] + 1j * q[..., 1], q[..., 2] + 1j * q[..., 3]], axis=-1)
    return xi * np.sqrt(rho)[..., None]


def validate_rotation(O, tol: float = COFRAME_TOL) -> np.ndarray:
    O = np.asarray(O, dtype=float)
    if O.shape != (3, 3):
        raise ValueError(f"rotation must be a 3x3 matrix, got shape {O.shape}")
    if np.max(np.abs(O @ O.T - np.eye(3))) > tol or abs(np.linalg.det(O) - 1.0) > tol:
        raise ValueError("matrix is not special orthogonal")
    return O


def rigid_rotate(theta, O) -> np.ndarray:
    """Apply the constant rotation theta^j -> O^j_k theta^k to every point."""
    O = validate_rotation(O)
    return np.einsum("jk,...ka->...ja", O, np.asarray(theta, dtype=float))


def rotation_matrix(axis: int, angle: float) -> np.ndarray:
    """Matrix mixing rows of a coframe: rotation by ``angle`` about basis axis 1, 2 or 3.

    For axis 3 this is [[c, -s, 0], [s, c, 0], [0, 0, 1]].
    """
    i = {1: 0, 2: 1, 3: 2}[axis]
    j, k = (i + 1) % 3, (i + 2) % 3
    c, s = np.cos(angle), np.sin(angle)
    O = np.eye(3)
    O[j, j] = O[k, k] = c
    O[j, k] = -s
    O[k, j] = s
    return O


def random_rotation(rng: np.random.Generator) -> np.ndarray:
    """Uniform random element of SO(3) via a random unit quaternion."""
    w, x, y, z = rng.normal(size=4) / 1.0
    n = np.sqrt(w * w + x * x + y * y + z * z)
    w, x, y, z = w / n, x / n, y / n, z / n
    return np.array(
        [
            [1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w)],
            [2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w)],
            [2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y)],
        ]
    )
