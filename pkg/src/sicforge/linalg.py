"""Small dense complex matrices and vectors.

Double precision throughout; the matrices here are at most 11x11 with
entries that are roots of unity over sqrt(p), so fixed tolerances are safe.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import DimMismatch, NotUnitary

EQ_TOL = 1e-9
CLUSTER_TOL = 1e-7
TWO_PI = 2 * np.pi


def as_vector(v) -> np.ndarray:
    v = np.asarray(v, dtype=complex)
    if v.ndim != 1:
        raise ValueError(f"expected a 1-d vector, got shape {v.shape}")
    return v


def normalize(v) -> np.ndarray:
    v = as_vector(v)
    return v / np.linalg.norm(v)


def is_unit(v, tol: float = 1e-10) -> bool:
    return abs(np.linalg.norm(v) - 1) <= tol


def is_unitary(U, tol: float = EQ_TOL) -> bool:
    U = np.asarray(U)
    return np.abs(U.conj().T @ U - np.eye(U.shape[0])).max() <= tol


def _check_unitary(U) -> np.ndarray:
    U = np.asarray(U, dtype=complex)
    if U.ndim != 2 or U.shape[0] != U.shape[1] or not is_unitary(U):
        raise NotUnitary("matrix is not unitary within tolerance")
    return U


def overlap(u, v) -> float:
    """|<u|v>|."""
    u, v = as_vector(u), as_vector(v)
    if u.shape != v.shape:
        raise DimMismatch(f"dimensions {u.shape[0]} and {v.shape[0]} differ")
    return abs(np.vdot(u, v))


def proj_equal(u, v, tol: float = EQ_TOL) -> bool:
    """Equality of unit vectors up to a global phase."""
    return overlap(u, v) >= 1 - tol


def phase_normalize(M) -> np.ndarray:
    """Divide by the phase of the first entry of largest modulus."""
    M = np.asarray(M, dtype=complex)
    flat = M.ravel()
    mags = np.abs(flat)
    i = int(np.flatnonzero(mags >= mags.max() - 1e-12)[0])
    return M * (abs(flat[i]) / flat[i])


def proj_equal_matrix(A, B, tol: float = EQ_TOL) -> bool:
    """A = c B for some unit c, for matrices of equal Frobenius norm."""
    A, B = np.asarray(A, dtype=complex), np.asarray(B, dtype=complex)
    ip = np.vdot(B, A)
    if abs(ip) < 1e-12:
        return False
    return float(np.abs(A - ip / abs(ip) * B).max()) <= tol


@dataclass
class Spectrum:
    """Clustered eigenphases of a unitary, up to its overall phase.

    ``phases[i]`` has multiplicity ``multiplicities[i]`` with orthonormal
    eigenvectors in the columns of ``vectors[i]``.  ``scale`` is the unit
    complex number the matrix was multiplied by before reading off phases.
    """

    phases: np.ndarray
    multiplicities: tuple[int, ...]
    vectors: list[np.ndarray]
    scale: complex

    def __iter__(self):
        return iter(zip(self.phases, self.multiplicities))

    def pattern(self) -> tuple[int, ...]:
        return tuple(sorted(self.multiplicities, reverse=True))

    def residual(self, U) -> float:
        """max ||U v - lambda v|| over all reported eigenpairs."""
        U = np.asarray(U)
        worst = 0.0
        for theta, V in zip(self.phases, self.vectors):
            lam = np.exp(1j * theta) / self.scale
            worst = max(worst, np.abs(U @ V - lam * V).max())
        return float(worst)


def unitary_spectrum(U, cluster_tol: float = CLUSTER_TOL) -> Spectrum:
    """Eigenphases with multiplicities.

    The matrix is first made unimodular, then rotated by a power of
    exp(2 pi i/d) so the smallest phase lies in [0, 2 pi/d).  This pins the
    overall phase up to the ambiguity a unimodular normalization leaves.
    """
    U = _check_unitary(U)
    d = U.shape[0]
    # a unitary matrix is normal, so its complex Schur form is diagonal
    T, Q = scipy.linalg.schur(U, output="complex")
    lam = np.diag(T)
    scale = np.exp(-1j * np.angle(np.linalg.det(U)) / d)
    theta = np.mod(np.angle(lam * scale), TWO_PI)
    m = np.floor(theta.min() / (TWO_PI / d))
    rot = np.exp(-1j * TWO_PI * m / d)
    scale = scale * rot
    theta = np.mod(np.angle(lam * scale), TWO_PI)
    theta[theta > TWO_PI - cluster_tol] -= TWO_PI

    order = np.argsort(theta)
    clusters: list[list[int]] = []
    for i in order:
        if clusters and theta[i] - theta[clusters[-1][-1]] <= cluster_tol:
            clusters[-1].append(i)
        else:
            clusters.append([i])
    phases = np.array([np.mod(theta[c[0]], TWO_PI) for c in clusters])
    mults = tuple(len(c) for c in clusters)
    vectors = [Q[:, c] for c in clusters]
    return Spectrum(phases, mults, vectors, complex(scale))


def is_monomial(U, tol: float = EQ_TOL) -> bool:
    U = _check_unitary(U)
    nz = np.abs(U) > tol
    return bool((nz.sum(axis=0) == 1).all() and (nz.sum(axis=1) == 1).all())


# -- JSON: complex entries as [re, im] pairs, row-major ---------------------


def vector_to_json(v) -> list[list[float]]:
    return [[float(z.real), float(z.imag)] for z in as_vector(v)]


def vector_from_json(data) -> np.ndarray:
    arr = np.asarray(data, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError("vector JSON must be a list of [re, im] pairs")
    return arr[:, 0] + 1j * arr[:, 1]


def matrix_to_json(M) -> list[list[list[float]]]:
    M = np.asarray(M, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in M]


def matrix_from_json(data) -> np.ndarray:
    arr = np.asarray(data, dtype=float)
    if arr.ndim != 3 or arr.shape[2] != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError("matrix JSON must be a square array of [re, im] pairs")
    return arr[..., 0] + 1j * arr[..., 1]
