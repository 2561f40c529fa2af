"""Displacement operators D_k = tau^(k1 k2) X^k1 Z^k2 and the fiducial condition.

Phases are tracked as integer exponents of tau = -exp(i pi/d) =
exp(i pi (d+1)/d).  For odd d tau has order d; for d = 2 it has order 4.
Matrices are built from exact angles so long products do not drift.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import DimMismatch, NotFiducial
from .linalg import as_vector


def tau_order(d: int) -> int:
    return d if d % 2 else 2 * d


def tau_power(e: int, d: int) -> complex:
    n = (e * (d + 1)) % (2 * d)
    return complex(np.exp(1j * np.pi * n / d))


def omega_power(e: int, d: int) -> complex:
    return complex(np.exp(2j * np.pi * (e % d) / d))


@lru_cache(maxsize=None)
def _table(d: int) -> np.ndarray:
    """All displacement operators, indexed [k1, k2]."""
    T = np.zeros((d, d, d, d), dtype=complex)
    r = np.arange(d)
    for k1 in range(d):
        for k2 in range(d):
            # D_k |e_r> = tau^(k1 k2 + 2 k2 r) |e_{r+k1}>
            e = (k1 * k2 + 2 * k2 * r) * (d + 1) % (2 * d)
            T[k1, k2, (r + k1) % d, r] = np.exp(1j * np.pi * e / d)
    T.setflags(write=False)
    return T


def shift(d: int) -> np.ndarray:
    return _table(d)[1, 0]


def clock(d: int) -> np.ndarray:
    return _table(d)[0, 1]


def displacement(k, d: int) -> np.ndarray:
    k1, k2 = (int(x) % d for x in k)
    return _table(d)[k1, k2]


def all_displacements(d: int, include_identity: bool = True) -> np.ndarray:
    """Stack of D_k in row-major k order, shape (d*d, d, d)."""
    T = _table(d).reshape(d * d, d, d)
    return T if include_identity else T[1:]


def displacement_product(k, q, d: int) -> tuple[int, tuple[int, int]]:
    """(e, r) with D_k D_q = tau^e D_r, r = k + q mod d, e reduced mod the order of tau.

    For odd d this is e = <k, q> = k2 q1 - k1 q2.
    """
    k1, k2 = (int(x) % d for x in k)
    q1, q2 = (int(x) % d for x in q)
    r1, r2 = (k1 + q1) % d, (k2 + q2) % d
    e = k1 * k2 + q1 * q2 + 2 * k2 * q1 - r1 * r2
    return e % tau_order(d), (r1, r2)


def expectation_moduli(psi) -> np.ndarray:
    """|<psi|D_k|psi>|^2 as a (d, d) array."""
    psi = as_vector(psi)
    d = psi.shape[0]
    a = np.einsum("i,kij,j->k", psi.conj(), all_displacements(d), psi)
    return (np.abs(a) ** 2).reshape(d, d)


def fiducial_deviation(psi) -> float:
    d = len(psi)
    m = expectation_moduli(psi).ravel()[1:]
    return float(np.abs(m - 1 / (d + 1)).max())


def is_fiducial(psi, tol: float = 1e-9) -> tuple[bool, float]:
    """Whether every |<psi|D_k psi>|^2, k != 0, equals 1/(d+1) within ``tol``."""
    dev = fiducial_deviation(psi)
    return dev <= tol, dev


def hw_frame_operator(psi) -> np.ndarray:
    """sum_k D_k |psi><psi| D_k^dagger."""
    psi = as_vector(psi)
    W = all_displacements(len(psi)) @ psi
    return W.T @ W.conj()


@dataclass
class SicCandidate:
    """d^2 unit vectors, compared projectively."""

    vectors: np.ndarray
    provenance: dict = field(default_factory=dict)

    def __post_init__(self):
        V = np.asarray(self.vectors, dtype=complex)
        if V.ndim != 2:
            raise ValueError("vectors must be a 2-d array (n, d)")
        self.vectors = V

    @property
    def dim(self) -> int:
        return self.vectors.shape[1]

    def __len__(self):
        return self.vectors.shape[0]

    def gram(self) -> np.ndarray:
        return self.vectors.conj() @ self.vectors.T

    def fidelities(self) -> np.ndarray:
        return np.abs(self.gram()) ** 2

    def index_of(self, v, tol: float = 1e-8) -> int | None:
        f = np.abs(self.vectors.conj() @ as_vector(v)) ** 2
        hits = np.flatnonzero(f >= 1 - tol)
        return int(hits[0]) if len(hits) == 1 else None

    def matching(self, other: SicCandidate, tol: float = 1e-8) -> np.ndarray | None:
        """perm with self[i] ~ other[perm[i]], or None if the sets differ."""
        if other.vectors.shape != self.vectors.shape:
            return None
        F = np.abs(self.vectors.conj() @ other.vectors.T) ** 2 >= 1 - tol
        if not ((F.sum(axis=0) == 1).all() and (F.sum(axis=1) == 1).all()):
            return None
        return F.argmax(axis=1)

    def same_set(self, other: SicCandidate, tol: float = 1e-8) -> bool:
        return self.matching(other, tol) is not None

    def transformed(self, U, antiunitary: bool = False, **provenance) -> SicCandidate:
        V = self.vectors.conj() if antiunitary else self.vectors
        return SicCandidate(V @ np.asarray(U).T, provenance or dict(self.provenance))


def hw_orbit(psi) -> np.ndarray:
    psi = as_vector(psi)
    return all_displacements(len(psi)) @ psi


def sic_from_fiducial(psi, tol: float = 1e-9) -> SicCandidate:
    psi = as_vector(psi)
    ok, dev = is_fiducial(psi, tol)
    if not ok:
        raise NotFiducial(f"not a fiducial vector (deviation {dev:.3e})")
    return SicCandidate(hw_orbit(psi), {"source": "hw_orbit"})


def check_dim(a, b):
    if len(a) != len(b):
        raise DimMismatch(f"dimensions {len(a)} and {len(b)} differ")


def unimodular_hw_d2() -> list[np.ndarray]:
    """The eight elements +-I, +-iX, +-iZ, +-XZ with exact entries."""
    I = np.eye(2, dtype=complex)
    X = np.array([[0, 1], [1, 0]], dtype=complex)
    Z = np.array([[1, 0], [0, -1]], dtype=complex)
    base = [I, 1j * X, 1j * Z, X @ Z]
    return [s * M for M in base for s in (1, -1)]


def qubit_fiducial() -> np.ndarray:
    """A d = 2 fiducial; its HW orbit is a regular tetrahedron on the Bloch sphere."""
    return np.array([np.sqrt((3 + np.sqrt(3)) / 6), np.exp(1j * np.pi / 4) * np.sqrt((3 - np.sqrt(3)) / 6)])
