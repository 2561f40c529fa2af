"""SIC verification, Clifford symmetry and stability groups, orbits, and
geometric-phase invariants.

All searches are exhaustive over the (extended) Clifford collineation group,
which for p = 3, 5, 7 has at most 65856 elements.  A group element g is a
symmetry of a SIC when its action maps the vector set onto itself up to
phases.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

import numpy as np

from . import symplectic as sp
from .clifford import CliffordOp, enumerate_clifford, hw_collineations
from .errors import DimMismatch, Undecided, VanishingTrace
from .hw_subgroups import HWSubgroup, hw_witness, list_hw_subgroups, permuting_unitary
from .weyl import SicCandidate, hw_orbit

SIC_TOL = 1e-9
MATCH_TOL = 1e-8
PHASE_CLUSTER_TOL = 1e-6
TRACE_FLOOR = 1e-6


@lru_cache(maxsize=None)
def clifford_table(p: int, extended: bool) -> tuple[CliffordOp, ...]:
    return tuple(enumerate_clifford(p, extended))


def verify_sic(c: SicCandidate, tol: float = SIC_TOL) -> tuple[bool, float]:
    """Pairwise law |<a|b>|^2 = 1/(d+1), unit norms, and (1/d) sum |v><v| = I."""
    d, V = c.dim, c.vectors
    if len(c) != d * d:
        return False, float("inf")
    F = c.fidelities()
    target = np.full((d * d, d * d), 1 / (d + 1))
    np.fill_diagonal(target, 1.0)
    dev = float(np.abs(F - target).max())
    frame = V.T @ V.conj() / d
    dev = max(dev, float(np.abs(frame - np.eye(d)).max()))
    return dev <= tol, dev


def same_sic(a: SicCandidate, b: SicCandidate, tol: float = MATCH_TOL) -> bool:
    return a.same_set(b, tol)


def _image(op: CliffordOp, V: np.ndarray) -> np.ndarray:
    """Rows of V mapped by op."""
    return (V.conj() if op.antiunitary else V) @ op.matrix.T


def _maps_onto(op: CliffordOp, c: SicCandidate, target: SicCandidate, tol: float = MATCH_TOL):
    """Permutation if op(c) equals target as a projective set, else None."""
    first = _image(op, c.vectors[:1])[0]
    if np.max(np.abs(target.vectors.conj() @ first) ** 2) < 1 - tol:
        return None
    img = SicCandidate(_image(op, c.vectors))
    return img.matching(target, tol)


def op_closure(gens: list[CliffordOp], p: int) -> dict:
    ident = CliffordOp(sp.AffineSymplectic.identity(p)) if p > 2 else CliffordOp(None, False, np.eye(2))
    seen = {ident.key(): ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = s.compose(g)
                if h.key() not in seen:
                    seen[h.key()] = h
                    nxt.append(h)
        frontier = nxt
    return seen


def generating_set(elements: list[CliffordOp], p: int) -> list[CliffordOp]:
    """Greedy small generating set, deterministic in the element order."""
    gens: list[CliffordOp] = []
    reached = op_closure(gens, p)
    target = len(elements)
    for e in sorted(elements, key=lambda op: (op.label.order() if op.label else 0, op.key()), reverse=True):
        if len(reached) == target:
            break
        if e.key() not in reached:
            gens.append(e)
            reached = op_closure(gens, p)
    return gens


@dataclass
class SymmetryReport:
    elements: list[CliffordOp]
    permutations: list[tuple[int, ...]]
    hw_subgroups: list[HWSubgroup] = field(default_factory=list)
    normal_hw: list[HWSubgroup] = field(default_factory=list)
    generators: list[CliffordOp] = field(default_factory=list)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def n_hw(self) -> int:
        return len(self.hw_subgroups)

    @property
    def n_normal_hw(self) -> int:
        return len(self.normal_hw)

    def labels(self) -> frozenset:
        return frozenset(e.label for e in self.elements)

    def is_abelian(self) -> bool:
        return sp.is_abelian(self.labels())

    def to_json(self) -> dict:
        gens = []
        for g in self.generators:
            j = g.to_json()
            if g.label is not None:
                j.pop("matrix")
            gens.append(j)
        return {"order": self.order, "n_hw": self.n_hw, "n_normal_hw": self.n_normal_hw, "generators": gens}


def symmetry_group(c: SicCandidate, extended: bool = False) -> SymmetryReport:
    """All Clifford collineations permuting the vectors of ``c`` projectively."""
    p = c.dim
    elements, perms = [], []
    for op in clifford_table(p, extended):
        perm = _maps_onto(op, c, c)
        if perm is not None:
            elements.append(op)
            perms.append(tuple(int(i) for i in perm))
    report = SymmetryReport(elements, perms)
    report.generators = generating_set(elements, p)
    if p > 2:
        labels = report.labels()
        report.hw_subgroups = [H for H in list_hw_subgroups(p) if H.members <= labels]
        report.normal_hw = [H for H in report.hw_subgroups
                            if all(frozenset(m.conjugate(g.label) for m in H.members) == H.members
                                   for g in report.generators)]
    else:
        keys = {e.key() for e in elements}
        paulis = hw_collineations(2)
        if all(P.key() in keys for P in paulis):
            report.hw_subgroups = [None]
            report.normal_hw = [None]
    return report


def stability_group(psi, extended: bool = False, tol: float = MATCH_TOL) -> list[CliffordOp]:
    """Clifford collineations fixing psi up to phase."""
    psi = np.asarray(psi, dtype=complex)
    out = []
    for op in clifford_table(len(psi), extended):
        w = op.matrix @ (psi.conj() if op.antiunitary else psi)
        if abs(np.vdot(psi, w)) ** 2 >= 1 - tol:
            out.append(op)
    return out


def clifford_orbit(c: SicCandidate, extended: bool = False) -> list[tuple[SicCandidate, CliffordOp]]:
    """Distinct images of ``c`` under the Clifford group, each with one op producing it."""
    found: list[tuple[SicCandidate, CliffordOp]] = []
    for op in clifford_table(c.dim, extended):
        v = _image(op, c.vectors[:1])[0]
        if any(s.index_of(v, MATCH_TOL) is not None and _maps_onto(op, c, s) is not None for s, _ in found):
            continue
        found.append((SicCandidate(_image(op, c.vectors), {"op": op}), op))
    return found


def orbit_of_fiducial(psi, extended: bool = False) -> list[SicCandidate]:
    """Distinct SICs g(HW orbit of psi) over the Clifford group."""
    base = SicCandidate(hw_orbit(psi))
    return [s for s, _ in clifford_orbit(base, extended)]


# -- geometric phases -------------------------------------------------------


def bargmann_trace(a, b, c) -> complex:
    """tr(rho_a rho_b rho_c) = <a|b><b|c><c|a>."""
    return complex(np.vdot(a, b) * np.vdot(b, c) * np.vdot(c, a))


def bargmann_phase(a, b, c) -> float:
    T = bargmann_trace(a, b, c)
    if abs(T) < TRACE_FLOOR:
        raise VanishingTrace(f"|tr(rho1 rho2 rho3)| = {abs(T):.2e} is too small for a phase")
    return abs(float(np.angle(T)))


def cluster_values(values, tol: float = PHASE_CLUSTER_TOL) -> list[tuple[float, int]]:
    vals = np.sort(np.asarray(values, dtype=float))
    out: list[list] = []
    for v in vals:
        if out and v - out[-1][2] <= tol:
            out[-1][1] += 1
            out[-1][2] = v
        else:
            out.append([v, 1, v])
    return [(float(v0), n) for v0, n, _ in out]


@dataclass
class PhaseProfile:
    """Phases of the triples through one anchor vector."""

    triples: list[tuple[int, int, float]]
    phases: list[tuple[float, int]]
    moment_deviation: float
    modulus_deviation: float
    anchor: int = 0

    @property
    def phi_min(self) -> float:
        return self.phases[0][0]

    def multiplicities(self) -> list[int]:
        return [n for _, n in self.phases]

    def matches(self, other: PhaseProfile, tol: float = PHASE_CLUSTER_TOL) -> bool:
        if self.multiplicities() != other.multiplicities():
            return False
        return all(abs(a - b) <= tol for (a, _), (b, _) in zip(self.phases, other.phases))

    def to_json(self) -> dict:
        return {"phases": [{"value": v, "multiplicity": n} for v, n in self.phases], "phi_min": self.phi_min}


def phase_profile(c: SicCandidate, anchor: int = 0) -> PhaseProfile:
    """Bargmann phases of the (d^2-1 choose 2) triples containing the anchor.

    Each triple is cross-checked against tr[(r1+r2+r3)^3] = 15/2 + (3/4) cos(phi)
    and |tr(r1 r2 r3)| = 1/8, which hold for every SIC triple at d = 3.
    """
    d = c.dim
    V = c.vectors
    a = V[anchor]
    others = [i for i in range(len(V)) if i != anchor]
    triples = []
    moment_dev = modulus_dev = 0.0
    for j, k in combinations(others, 2):
        T = bargmann_trace(a, V[j], V[k])
        phi = bargmann_phase(a, V[j], V[k])
        triples.append((j, k, phi))
        if d == 3:
            R = sum(np.outer(v, v.conj()) for v in (a, V[j], V[k]))
            m = np.trace(R @ R @ R).real
            moment_dev = max(moment_dev, abs(m - (7.5 + 0.75 * np.cos(phi))))
            modulus_dev = max(modulus_dev, abs(abs(T) - 0.125))
    phases = cluster_values([t[2] for t in triples])
    return PhaseProfile(triples, phases, float(moment_dev), float(modulus_dev), anchor)


def triple_phase_multiset(c: SicCandidate) -> np.ndarray:
    """Sorted phases of all triples; invariant under (anti)unitaries and relabeling."""
    G = c.gram()
    n = len(c)
    i, j, k = np.array(list(combinations(range(n), 3))).T
    T = G[i, j] * G[j, k] * G[k, i]
    return np.sort(np.abs(np.angle(T)))


# -- equivalence -----------------------------------------------------------


@dataclass
class Equivalence:
    equivalent: bool
    witness: CliffordOp | None = None
    reason: str = ""
    invariants: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"equivalent": self.equivalent, "reason": self.reason, **self.invariants}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        return out


def _conjugators(p: int) -> list[CliffordOp]:
    """Unitaries tried between Clifford orbits: identity, plus U and U^2 at p = 3."""
    if p == 2:
        return [CliffordOp(None, False, np.eye(2))]
    if p != 3:
        return [CliffordOp(sp.AffineSymplectic.identity(p))]
    U = permuting_unitary(3)
    return [CliffordOp(None, False, np.linalg.matrix_power(U, s)) for s in range(3)]


def equivalent(c1: SicCandidate, c2: SicCandidate, extended: bool = True) -> Equivalence:
    """Witness that c2 = W(c1), or a separating invariant.

    W is searched as g2^-1 U^s g1 with g1, g2 Clifford and, at d = 3,
    U the permuting unitary (U^3 is Clifford so s in {0, 1, 2} suffices).
    """
    if c1.dim != c2.dim:
        raise DimMismatch(f"dimensions {c1.dim} and {c2.dim} differ")
    p = c1.dim
    orbit1 = clifford_orbit(c1, extended)
    orbit2 = clifford_orbit(c2, extended)
    for M in _conjugators(p):
        for s1, g1 in orbit1:
            moved = SicCandidate(_image(M, s1.vectors))
            for s2, g2 in orbit2:
                if moved.same_set(s2):
                    W = g2.inverse().compose(M).compose(g1)
                    if SicCandidate(_image(W, c1.vectors)).same_set(c2):
                        return Equivalence(True, W, "witness")
    if p == 3:
        f1, f2 = phase_profile(c1), phase_profile(c2)
        inv = {"phi_min": [f1.phi_min, f2.phi_min]}
        if not f1.matches(f2):
            return Equivalence(False, None, "phase profiles differ", inv)
    else:
        m1, m2 = triple_phase_multiset(c1), triple_phase_multiset(c2)
        gap = float(np.abs(m1 - m2).max())
        if gap > PHASE_CLUSTER_TOL:
            return Equivalence(False, None, "triple phase multisets differ", {"max_gap": gap})
    raise Undecided("no witness found and the phase invariants agree")


def symmetry_orders_by_hw(c: SicCandidate, extended: bool = False) -> list[dict]:
    """Symmetry order inside the Clifford group of each HW group the SIC's symmetry contains.

    The Clifford group of H = W D W^dagger is W C W^dagger, so its symmetries of c
    are those of W^dagger c inside the standard Clifford group.
    """
    base = symmetry_group(c, extended)
    out = []
    hw_all = list_hw_subgroups(c.dim)
    for H in base.hw_subgroups:
        W = hw_witness(H)
        moved = c.transformed(W.conj().T)
        rep = symmetry_group(moved, extended)
        out.append({"hw_index": hw_all.index(H), "standard": H.is_standard,
                    "normal": H in base.normal_hw, "order": rep.order})
    return out
