"""The d = 3 landscape: the fiducial family psi_f(t) = (0, 1, -e^{it})/sqrt 2,
its orbit classification, equivalences, and regrouped ("hidden") SICs.

Orbit facts used for canonicalisation:
  * J psi_f(t) = psi_f(-t), and psi_f(t + 2pi/3) = Z psi_f(t) up to phase, so
    every extended-Clifford orbit meets [0, pi/3] exactly once;
  * U^dagger psi_f(t) = psi_f(t + 2pi/9) with U the permuting unitary, so SICs at
    t, 2pi/9 - t and 2pi/9 + t are equivalent and [0, pi/9] indexes the classes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import networkx as nx
import numpy as np

from . import symplectic as sp
from .clifford import CliffordOp, synthesize
from .errors import NotASic, TooLarge
from .hw_subgroups import permuting_unitary
from .sic import clifford_table, orbit_of_fiducial, phase_profile, verify_sic
from .weyl import SicCandidate, clock, hw_orbit, shift

D = 3
SNAP = 1e-9
T_PERIOD = 2 * np.pi / 3
CLASS_PERIOD = 2 * np.pi / 9
# matrices F_1..F_4 labelling the four SIC pairs of a generic orbit
PAIR_F = {1: (1, 0, 0, 1), 2: (0, 1, 2, 0), 3: (0, 1, 2, 1), 4: (0, 1, 2, 2)}


def family_fiducial(t: float) -> np.ndarray:
    return np.array([0, 1, -np.exp(1j * t)]) / np.sqrt(2)


def family_sic(t: float) -> SicCandidate:
    return SicCandidate(hw_orbit(family_fiducial(t)), {"t": float(t)})


def _fold(t: float, period: float, snap: float = SNAP) -> float:
    s = float(np.mod(t, period))
    s = min(s, period - s)
    if abs(s) < snap:
        return 0.0
    if abs(s - period / 2) < snap:
        return period / 2
    return s


@dataclass(frozen=True)
class FamilyPoint:
    t: float
    canonical_t: float
    class_rep: float

    @property
    def phi_min(self) -> float:
        return np.pi / 3 - 3 * self.class_rep

    @property
    def kind(self) -> str:
        if abs(self.canonical_t) < SNAP:
            return "exceptional_0"
        if abs(self.canonical_t - np.pi / 3) < SNAP:
            return "exceptional_pi3"
        return "generic"


def canonicalize_t(t: float, snap: float = SNAP) -> FamilyPoint:
    """Orbit representative in [0, pi/3] and equivalence-class representative in [0, pi/9].

    Values within ``snap`` of a fold endpoint are set to the endpoint.
    """
    return FamilyPoint(float(t), _fold(t, T_PERIOD, snap), _fold(t, CLASS_PERIOD, snap))


def orbit_sic_count(t: float) -> int:
    kind = canonicalize_t(t).kind
    return {"exceptional_0": 1, "exceptional_pi3": 4, "generic": 8}[kind]


def contains_vector(c: SicCandidate, v) -> bool:
    return c.index_of(v) is not None


# -- U-dagger cycles ---------------------------------------------------------


def equivalence_triple(t: float) -> list[dict]:
    """Images under U^dagger of the six SICs A+-, B+-, C+-.

    X+- is the HW orbit of psi_f(+-t_X) with t_A = t, t_B = 2pi/9 - t,
    t_C = 2pi/9 + t.  The expected cycles are A+ -> C+ -> B- and A- -> B+ -> C-.
    """
    base = {"A": t, "B": CLASS_PERIOD - t, "C": CLASS_PERIOD + t}
    sics = {f"{n}{s}": family_sic(sign * base[n]) for n in "ABC" for s, sign in (("+", 1), ("-", -1))}
    Ud = permuting_unitary(3).conj().T
    expected = [("A+", "C+"), ("C+", "B-"), ("A-", "B+"), ("B+", "C-")]
    out = []
    for src, dst in expected:
        img = sics[src].transformed(Ud)
        ok, dev = verify_sic(img)
        sign = 1 if dst[1] == "+" else -1
        t_dst = sign * base[dst[0]]
        out.append({
            "source": src, "target": dst, "is_sic": ok, "deviation": dev,
            "matches_target": img.same_set(sics[dst]),
            "contains_family_vector": contains_vector(img, family_fiducial(t_dst)),
            "target_canonical_t": canonicalize_t(t_dst).canonical_t,
        })
    return out


# -- regrouping ---------------------------------------------------------------


def mixed_t_sic(t0: float, t1: float, t2: float) -> SicCandidate:
    """Z^k X^j psi_f(t_j) for j, k in 0..2 (j outer)."""
    X, Z = shift(D), clock(D)
    ts = (t0, t1, t2)
    vecs = [np.linalg.matrix_power(Z, k) @ np.linalg.matrix_power(X, j) @ family_fiducial(ts[j])
            for j in range(3) for k in range(3)]
    return SicCandidate(np.array(vecs), {"mode": "mixed_t", "t": [float(x) for x in ts]})


def mixed_t_witness(t0: float, t1: float, t2: float) -> tuple[np.ndarray, float]:
    """(W, t) with W mapping the mixed SIC onto the HW orbit of psi_f(t), t the mean."""
    t = (t0 + t1 + t2) / 3
    return np.diag([1, np.exp(1j * (t - t2)), np.exp(1j * (2 * t - t0 - t2))]), t


def pair_regroup(t: float, pattern: str, k1: int, pair: int) -> SicCandidate:
    """Nine vectors drawn from the pair [F_k, 0] psi_f(+-t).

    Pattern A uses +t, +t, -t in the three X-slots, pattern B uses +t, -t, -t.
    """
    if pattern not in ("A", "B"):
        raise ValueError("pattern must be 'A' or 'B'")
    if pair not in PAIR_F:
        raise ValueError("pair must be 1..4")
    signs = (1, 1, -1) if pattern == "A" else (1, -1, -1)
    X, Z = shift(D), clock(D)
    VF = synthesize(sp.AffineSymplectic(PAIR_F[pair], (0, 0), D)).matrix
    vecs = []
    for k2 in range(3):
        for slot in range(3):
            M = np.linalg.matrix_power(Z, k2) @ np.linalg.matrix_power(X, (k1 + slot) % 3)
            vecs.append(VF @ M @ family_fiducial(signs[slot] * t))
    c = SicCandidate(np.array(vecs), {"mode": f"pair_regroup_{pattern}", "t": float(t), "k1": k1, "pair": pair})
    ok, dev = verify_sic(c)
    if not ok:
        raise NotASic(f"regrouped set is not a SIC (deviation {dev:.2e})")
    return c


def hidden_sics(t: float) -> list[SicCandidate]:
    """The distinct SICs from pair_regroup over patterns, k1 and pairs."""
    out: list[SicCandidate] = []
    for pattern, k1, pair in product("AB", range(3), PAIR_F):
        c = pair_regroup(t, pattern, k1, pair)
        if not any(c.same_set(o) for o in out):
            out.append(c)
    return out


def orbit_fiducials(t: float) -> np.ndarray:
    """All distinct fiducials on the extended-Clifford orbit of psi_f(t)."""
    psi = family_fiducial(t)
    out: list[np.ndarray] = []
    for op in clifford_table(D, True):
        v = op.act(psi)
        if not any(abs(np.vdot(u, v)) ** 2 > 1 - 1e-8 for u in out):
            out.append(v)
    return np.array(out)


@dataclass
class RegroupReport:
    t: float
    n_fiducials: int
    sics: list[SicCandidate]
    orbit_sics: list[SicCandidate]
    hidden: list[SicCandidate] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"t": self.t, "n_fiducials": self.n_fiducials, "n_sics": len(self.sics),
                "n_orbit_sics": len(self.orbit_sics), "n_hidden": len(self.hidden)}


def regroup_census(t: float, max_cliques: int = 10**6) -> RegroupReport:
    """Every 9-subset of the orbit's fiducials forming a SIC.

    A 9-subset is a SIC iff its vectors are pairwise at fidelity 1/4, since
    nine equiangular lines at that angle in C^3 are automatically complete.  The
    search is therefore over 9-cliques of the fidelity-1/4 graph.
    """
    F = orbit_fiducials(t)
    G = np.abs(F.conj() @ F.T) ** 2
    g = nx.Graph()
    g.add_nodes_from(range(len(F)))
    i, j = np.nonzero(np.triu(np.abs(G - 0.25) < 1e-8, 1))
    g.add_edges_from(zip(i.tolist(), j.tolist()))
    cliques = []
    for n, cl in enumerate(nx.find_cliques(g)):
        if n >= max_cliques:
            raise TooLarge(f"more than {max_cliques} maximal cliques")
        if len(cl) == 9:
            cliques.append(sorted(cl))
    cliques.sort()
    sics = []
    for cl in cliques:
        c = SicCandidate(F[cl], {"indices": cl})
        if verify_sic(c)[0]:
            sics.append(c)
    orbit = orbit_of_fiducial(family_fiducial(t), extended=True)
    hidden = [c for c in sics if not any(c.same_set(o) for o in orbit)]
    return RegroupReport(float(t), len(F), sics, orbit, hidden)


# -- invariants ----------------------------------------------------------------


TABLE_TRIPLES = {
    "I,Z,Z2": ((0, 0), (0, 1), (0, 2)),
    "I,X,Z": ((0, 0), (1, 0), (0, 1)),
    "I,X,X2": ((0, 0), (1, 0), (2, 0)),
    "I,X,X2Z": ((0, 0), (1, 0), (2, 1)),
    "I,X,X2Z2": ((0, 0), (1, 0), (2, 2)),
}


def table_phases(t: float) -> dict[str, float]:
    """Phases of the five reference triples [X^a Z^b] psi_f(t)."""
    from .sic import bargmann_phase

    X, Z = shift(D), clock(D)
    psi = family_fiducial(t)

    def vec(ab):
        return np.linalg.matrix_power(X, ab[0]) @ np.linalg.matrix_power(Z, ab[1]) @ psi

    return {name: bargmann_phase(*(vec(ab) for ab in tri)) for name, tri in TABLE_TRIPLES.items()}


def predicted_table_phases(t: float) -> dict[str, float]:
    def fold(x):
        x = np.mod(x + np.pi, 2 * np.pi) - np.pi
        return abs(float(x))

    return {"I,Z,Z2": np.pi, "I,X,Z": np.pi / 3, "I,X,X2": fold(np.pi - 3 * t),
            "I,X,X2Z": fold(np.pi / 3 - 3 * t), "I,X,X2Z2": fold(np.pi / 3 + 3 * t)}


def atlas_record(t: float, census: bool = True) -> dict:
    fp = canonicalize_t(t)
    prof = phase_profile(family_sic(t))
    rec = {"t_input": fp.t, "canonical_t": fp.canonical_t, "class_rep": fp.class_rep,
           "phi_min": prof.phi_min, "orbit_size": len(orbit_of_fiducial(family_fiducial(t), extended=True))}
    if census:
        rec["n_hidden"] = len(regroup_census(t).hidden)
    return rec


def clifford_op_from_label(F, chi=(0, 0)) -> CliffordOp:
    return synthesize(sp.AffineSymplectic(tuple(F), tuple(chi), D))


def identify_fiducial(psi, tol: float = 1e-6) -> FamilyPoint:
    """Locate a d = 3 fiducial on the family: find g with g psi = psi_f(t) up to phase."""
    psi = np.asarray(psi, dtype=complex)
    psi = psi / np.linalg.norm(psi)
    for op in clifford_table(D, True):
        w = op.act(psi)
        if abs(w[0]) < tol and abs(abs(w[1]) - abs(w[2])) < tol:
            t = float(np.angle(-w[2] / w[1]))
            if abs(np.vdot(family_fiducial(t), w)) ** 2 > 1 - tol:
                return canonicalize_t(t)
    raise NotASic("vector is not on any orbit of the d = 3 family")
