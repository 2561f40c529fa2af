"""Clifford (anti)unitaries from affine-symplectic labels.

For odd p the label (F, chi) maps to D_chi V_F, with

    beta != 0:  V_F = p^-1/2 sum_{r,s} tau^(beta^-1 (alpha s^2 - 2 r s + delta r^2)) |r><s|
    beta == 0:  V_F = sum_s tau^(alpha gamma s^2) |alpha s><s|

The beta == 0 form is what the factorisation F = F1 F2 with
F1 = (0, -1; 1, 0) produces after the Gauss sums collapse.  Labels with
det F = -1 are antiunitary: (F, chi) = (F J, chi) o (J, 0), where J = diag(1, -1)
acts as entrywise complex conjugation.  An antiunitary op is stored as the
unitary M with action psi -> M conj(psi).

Everything is at collineation level; matrices carry whatever global phase the
formulas give.
"""

from __future__ import annotations

import random
from collections import Counter
from itertools import product

import numpy as np

from . import symplectic as sp
from .errors import DimMismatch, SynthesisCheckFailed
from .linalg import as_vector, matrix_to_json, phase_normalize, proj_equal_matrix, unitary_spectrum
from .symplectic import AffineSymplectic, ConjClassLabel
from .weyl import all_displacements, displacement, omega_power

SYNTH_TOL = 1e-8
J_MAT = (1, 0, 0, -1)


def v_matrix(F: sp.Mat2, p: int) -> np.ndarray:
    """V_F for det F = 1."""
    a, b, c, d = (x % p for x in F)
    if (a * d - b * c) % p != 1:
        raise ValueError(f"V_F needs det F = 1, got {F}")
    r = np.arange(p)
    if b:
        bi = pow(b, -1, p)
        e = bi * (a * r[None, :] ** 2 - 2 * np.outer(r, r) + d * r[:, None] ** 2)
        # tau^e = exp(i pi e (p+1)/p), reduced exactly before the exponential
        n = (e * (p + 1)) % (2 * p)
        return np.exp(1j * np.pi * n / p) / np.sqrt(p)
    M = np.zeros((p, p), dtype=complex)
    n = (a * c * r**2 * (p + 1)) % (2 * p)
    M[(a * r) % p, r] = np.exp(1j * np.pi * n / p)
    return M


def _unitary_part(label: AffineSymplectic) -> np.ndarray:
    p = label.p
    F = label.F if label.det == 1 else sp.mat_mul(label.F, J_MAT, p)
    return displacement(label.chi, p) @ v_matrix(F, p)


class CliffordOp:
    """A Clifford collineation element: unitary part plus conjugation flag.

    ``label`` is None for p = 2, where ops are built from H and S directly.
    """

    __slots__ = ("label", "antiunitary", "_matrix")

    def __init__(self, label: AffineSymplectic | None, antiunitary: bool | None = None, matrix=None):
        if label is None and matrix is None:
            raise ValueError("an unlabeled op needs an explicit matrix")
        if antiunitary is None:
            antiunitary = label is not None and label.det == -1
        self.label = label
        self.antiunitary = bool(antiunitary)
        self._matrix = None if matrix is None else np.asarray(matrix, dtype=complex)

    @property
    def matrix(self) -> np.ndarray:
        if self._matrix is None:
            self._matrix = _unitary_part(self.label)
        return self._matrix

    @property
    def dim(self) -> int:
        return self.label.p if self.label is not None else self.matrix.shape[0]

    def compose(self, other: CliffordOp) -> CliffordOp:
        """self o other: (A,a) o (B,b) = (A conj(B) if a else A B, a xor b)."""
        B = other.matrix.conj() if self.antiunitary else other.matrix
        label = None
        if self.label is not None and other.label is not None:
            label = self.label.compose(other.label)
        return CliffordOp(label, self.antiunitary ^ other.antiunitary, self.matrix @ B)

    __mul__ = compose

    def inverse(self) -> CliffordOp:
        M = self.matrix.conj().T
        if self.antiunitary:
            M = M.conj()
        label = self.label.inverse() if self.label is not None else None
        return CliffordOp(label, self.antiunitary, M)

    def act(self, psi) -> np.ndarray:
        return act_on_vector(self, psi)

    def conjugate_matrix(self, A) -> np.ndarray:
        """U A U^-1 for the (anti)unitary U."""
        A = np.asarray(A)
        if self.antiunitary:
            A = A.conj()
        return self.matrix @ A @ self.matrix.conj().T

    def key(self):
        return self.label.key() if self.label is not None else _collineation_key(self.matrix, self.antiunitary)

    def __repr__(self):
        tag = "anti" if self.antiunitary else ""
        return f"CliffordOp({self.label!r}{', ' + tag if tag else ''})"

    def to_json(self) -> dict:
        out = {"antiunitary": self.antiunitary, "matrix": matrix_to_json(self.matrix)}
        if self.label is not None:
            F = self.label.F
            out["F"] = [[F[0], F[1]], [F[2], F[3]]]
            out["chi"] = list(self.label.chi)
        return out


def conjugation_deviation(op: CliffordOp) -> float:
    """max_k ||U D_k U^-1 - omega^<chi,Fk> D_Fk||."""
    lab = op.label
    p = lab.p
    worst = 0.0
    for k in product(range(p), repeat=2):
        Fk = lab.act(k)
        lhs = op.conjugate_matrix(displacement(k, p))
        rhs = omega_power(sp.symplectic_form(lab.chi, Fk, p), p) * displacement(Fk, p)
        worst = max(worst, float(np.abs(lhs - rhs).max()))
    return worst


def synthesize(label: AffineSymplectic, check: bool = True) -> CliffordOp:
    if label.p == 2:
        raise ValueError("the label map needs odd p; use clifford_group_d2 for p = 2")
    op = CliffordOp(label)
    if check:
        dev = conjugation_deviation(op)
        if dev > SYNTH_TOL:
            raise SynthesisCheckFailed(f"conjugation law off by {dev:.3e} for {label!r}")
    return op


def act_on_vector(op: CliffordOp, psi) -> np.ndarray:
    psi = as_vector(psi)
    if psi.shape[0] != op.dim:
        raise DimMismatch(f"operator dimension {op.dim}, vector dimension {psi.shape[0]}")
    return op.matrix @ (psi.conj() if op.antiunitary else psi)


def complex_conjugation(p: int) -> CliffordOp:
    """The bare conjugation J: label (J, 0) for odd p."""
    if p == 2:
        return CliffordOp(None, True, np.eye(2))
    return CliffordOp(AffineSymplectic(J_MAT, (0, 0), p), True, np.eye(p))


def enumerate_clifford(p: int, extended: bool = False, cap: int = sp.DEFAULT_CAP,
                       spot_checks: int = 500, seed: int = 0) -> list[CliffordOp]:
    """Every element of the (extended) Clifford collineation group, matrices lazy.

    ``spot_checks`` random pairs are tested for label/matrix compatibility.
    """
    if p == 2:
        return clifford_group_d2(extended)
    kind = "ESL_affine" if extended else "SL_affine"
    ops = [CliffordOp(g) for g in sp.enumerate_group(p, kind, cap)]
    rng = random.Random(seed)
    for _ in range(spot_checks):
        g, h = rng.choice(ops), rng.choice(ops)
        gh = g.compose(h)
        direct = CliffordOp(gh.label)
        if gh.antiunitary != direct.antiunitary or not proj_equal_matrix(gh.matrix, direct.matrix):
            raise SynthesisCheckFailed(f"composition mismatch for {g.label!r} o {h.label!r}")
    return ops


def _collineation_key(M, antiunitary: bool, digits: int = 8):
    N = np.round(phase_normalize(M), digits) + 0.0
    return (bool(antiunitary), tuple(np.concatenate([N.real.ravel(), N.imag.ravel()])))


def clifford_group_d2(extended: bool = False) -> list[CliffordOp]:
    """Closure of H and S (plus conjugation if extended); 24 or 48 collineations."""
    H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
    S = np.diag([1, 1j])
    gens = [CliffordOp(None, False, H), CliffordOp(None, False, S)]
    if extended:
        gens.append(CliffordOp(None, True, np.eye(2)))
    ident = CliffordOp(None, False, np.eye(2))
    seen = {ident.key(): ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = s.compose(g)
                k = h.key()
                if k not in seen:
                    seen[k] = h
                    nxt.append(h)
        frontier = nxt
    return list(seen.values())


def hw_collineations(p: int) -> list[CliffordOp]:
    """The displacement operators as ops, row-major in k."""
    if p == 2:
        return [CliffordOp(None, False, D) for D in all_displacements(2)]
    return [CliffordOp(AffineSymplectic.translation(k, p)) for k in product(range(p), repeat=2)]


# -- spectra ----------------------------------------------------------------


def expected_pattern(label: ConjClassLabel, p: int) -> tuple[int, ...]:
    """Eigenvalue multiplicities predicted for a class representative.

    a has the (p-1)st roots of unity with 1 doubled; b has all but one of the
    (p+1)st roots; a^l and b^m take the corresponding powers.  The (c_i, (k,0))
    classes are nondegenerate like the clock operator.
    """
    fam = label.family
    if fam == "One":
        return (p,)
    if fam == "Z":
        return ((p + 1) // 2, (p - 1) // 2)
    if fam in ("C1", "C2"):
        return (2,) * ((p - 1) // 2) + (1,)
    if fam in ("A", "B"):
        n = p - 1 if fam == "A" else p + 1
        exps = list(range(n)) + [0] if fam == "A" else list(range(1, n))
        counts = Counter(j * label.index % n for j in exps)
        return tuple(sorted(counts.values(), reverse=True))
    return (1,) * p


def spectrum_census(p: int) -> dict[ConjClassLabel, tuple[int, ...]]:
    """Multiplicity pattern (descending) of one representative per class."""
    if p not in (3, 5, 7, 11):
        raise ValueError("spectrum census is defined for p in {3, 5, 7, 11}")
    out = {}
    for lab, g in class_representatives_sorted(p):
        out[lab] = unitary_spectrum(synthesize(g).matrix).pattern()
    return out


def class_representatives_sorted(p: int):
    reps = sp.class_representatives(p, "SL_affine")
    return sorted(reps.items(), key=lambda kv: kv[0].sort_key())
