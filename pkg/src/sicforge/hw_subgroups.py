"""Heisenberg-Weyl subgroups of the Clifford collineation group, odd p.

Every order-p^2 subgroup lies in one of the p+1 Sylow p-subgroups
P_j = {(F, chi) : F in Q_j}, which has order p^3 and a centre of order p
(<Z> for j = 1).  So the order-p^2 subgroups of P_j are exactly <z, g> with
z generating the centre and g outside it.  Such
a subgroup is projectively abelian by construction; it is a copy of the HW
group iff its generators fail to commute as matrices, i.e. their group
commutator is a nontrivial scalar.  That excludes exactly the conjugates of the
diagonal group <Z, V>.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np

from . import symplectic as sp
from . import zmod
from .clifford import CliffordOp, synthesize
from .errors import IndexOutOfRange, SicForgeError
from .linalg import proj_equal_matrix
from .symplectic import AffineSymplectic
from .weyl import all_displacements, clock, shift, tau_power

Members = frozenset


@dataclass(frozen=True)
class HWSubgroup:
    """An order-p^2 subgroup <z, g> of collineations, z generating the centre."""

    generators: tuple[AffineSymplectic, AffineSymplectic]
    members: Members

    @property
    def p(self) -> int:
        return self.generators[0].p

    @property
    def is_standard(self) -> bool:
        return all(m.F == (1, 0, 0, 1) for m in self.members)

    def ops(self) -> list[CliffordOp]:
        return [CliffordOp(m) for m in sorted(self.members, key=AffineSymplectic.key)]

    def conjugate(self, g: AffineSymplectic) -> HWSubgroup:
        a, b = (x.conjugate(g) for x in self.generators)
        return HWSubgroup((a, b), frozenset(m.conjugate(g) for m in self.members))

    def sort_key(self):
        return min(m.key() for m in self.members if m.F != (1, 0, 0, 1)) if not self.is_standard else ()

    def __contains__(self, g):
        return g in self.members


def generated_pair(z: AffineSymplectic, g: AffineSymplectic) -> frozenset:
    p = z.p
    zs = [z.power(a) for a in range(p)]
    gs = [g.power(b) for b in range(p)]
    return frozenset(x.compose(y) for x in zs for y in gs)


def is_hw_like(H: HWSubgroup, tol: float = 1e-9) -> bool:
    """Size p^2 and a nontrivial scalar matrix commutator between the generators."""
    p = H.p
    if len(H.members) != p * p:
        return False
    a, b = (synthesize(x, check=False).matrix for x in H.generators)
    comm = a @ b @ a.conj().T @ b.conj().T
    c = comm[0, 0]
    scalar = np.abs(comm - c * np.eye(p)).max() <= tol
    return bool(scalar and abs(c - 1) > tol)


def sylow_P(p: int, j: int) -> frozenset[AffineSymplectic]:
    """P_j = {(F, chi) : F in Q_j}, order p^3, for 1 <= j <= p+1."""
    zmod.check_prime(p, odd=True)
    if not 1 <= j <= p + 1:
        raise IndexOutOfRange(f"j must lie in 1..{p + 1}")
    Q = sp.sylow_Q(p, j)
    return frozenset(AffineSymplectic(q.F, chi, p) for q in Q for chi in product(range(p), repeat=2))


def centre(G: frozenset) -> frozenset:
    return frozenset(z for z in G if all(z.compose(g) == g.compose(z) for g in G))


def order_p2_subgroups(p: int, j: int) -> list[HWSubgroup]:
    """The p+1 order-p^2 subgroups of P_j, each written as <z, g>."""
    P = sylow_P(p, j)
    Q = sp.sylow_Q(p, j)
    # the centre is generated by a translation along the line Q_j fixes
    chi = next(k for k in product(range(p), repeat=2) if k != (0, 0) and all(q.act(k) == k for q in Q))
    z = AffineSymplectic.translation(chi, p)
    C = generated_pair(z, AffineSymplectic.identity(p))
    found: list[HWSubgroup] = []
    covered = set(C)
    for g in sorted(P - C, key=AffineSymplectic.key):
        if g in covered:
            continue
        S = generated_pair(z, g)
        covered |= S
        found.append(HWSubgroup((z, g), S))
    return found


@lru_cache(maxsize=None)
def list_hw_subgroups(p: int) -> tuple[HWSubgroup, ...]:
    """All p^2 HW subgroups; the standard one first."""
    zmod.check_prime(p, odd=True)
    found: dict[frozenset, HWSubgroup] = {}
    for j in range(1, p + 2):
        for H in order_p2_subgroups(p, j):
            if H.members not in found and is_hw_like(H):
                found[H.members] = H
    std = [H for H in found.values() if H.is_standard]
    rest = sorted((H for H in found.values() if not H.is_standard), key=HWSubgroup.sort_key)
    return tuple(std + rest)


def standard_hw(p: int) -> HWSubgroup:
    return list_hw_subgroups(p)[0]


def v_matrix_unimodular(p: int) -> np.ndarray:
    """V = diag(tau^(s^2)), rescaled to det 1 when p = 3."""
    V = np.diag([tau_power(s * s, p) for s in range(p)])
    if p == 3:
        V = np.exp(4j * np.pi / 9) * V
    return V


def permuting_unitary(p: int) -> np.ndarray:
    """Diagonal U with U^j Z U^-j = Z and U^j X U^-j = V^j X."""
    zmod.check_prime(p, odd=True)
    if p == 3:
        return np.diag(np.exp(-2j * np.pi * np.arange(3) / 9))
    partial = np.cumsum(np.arange(p) ** 2)
    return np.diag([tau_power(int(e), p) for e in partial])


def permuting_deviation(p: int) -> float:
    U = permuting_unitary(p)
    V, X, Z = v_matrix_unimodular(p), shift(p), clock(p)
    worst = 0.0
    Uj = np.eye(p, dtype=complex)
    Vj = np.eye(p, dtype=complex)
    for _ in range(p):
        worst = max(worst, np.abs(Uj @ Z @ Uj.conj().T - Z).max(), np.abs(Uj @ X @ Uj.conj().T - Vj @ X).max())
        Uj, Vj = U @ Uj, V @ Vj
    return float(worst)


def _sylow_index(H: HWSubgroup) -> int:
    p = H.p
    for j in range(1, p + 2):
        if H.members <= sylow_P(p, j):
            return j
    raise SicForgeError("subgroup lies in no Sylow p-subgroup")


def hw_witness(H: HWSubgroup) -> np.ndarray:
    """Unitary W with W D_k W^dagger in H (projectively) for every k."""
    p = H.p
    if H.is_standard:
        return np.eye(p, dtype=complex)
    j = _sylow_index(H)
    Q1, Qj = sp.sylow_Q(p, 1), sp.sylow_Q(p, j)
    # G conjugates P_j onto P_1
    G = next(x for x in sp.enumerate_group(p, "SL") if frozenset(q.conjugate(x) for q in Qj) == Q1)
    H1 = H.conjugate(G)
    g = next(m for m in H1.members if m.chi[0] != 0)
    l = g.F[2] * zmod.inverse(g.chi[0], p) % p
    Ul = np.linalg.matrix_power(permuting_unitary(p), l)
    Gm = synthesize(G, check=False).matrix
    return Gm.conj().T @ Ul


def witness_deviation(H: HWSubgroup, W) -> float:
    """Largest distance from W D_k W^dagger to the nearest member matrix, projectively."""
    mats = [op.matrix for op in H.ops()]
    worst = 0.0
    for D in all_displacements(H.p):
        M = W @ D @ W.conj().T
        best = min(_proj_distance(M, A) for A in mats)
        worst = max(worst, best)
    return worst


def _proj_distance(A, B) -> float:
    ip = np.vdot(B, A)
    if abs(ip) < 1e-12:
        return float(np.abs(A).max() + np.abs(B).max())
    return float(np.abs(A - ip / abs(ip) * B).max())


def extra_hw_orbits(p: int, extended: bool = False) -> list[list[HWSubgroup]]:
    """Orbits of the p^2 - 1 non-standard HW subgroups under Clifford conjugation.

    Breadth-first over the group generators only.
    """
    hw = list_hw_subgroups(p)[1:]
    by_members = {H.members: H for H in hw}
    gens = sp.generators(p, "ESL_affine" if extended else "SL_affine")
    unseen = dict(by_members)
    orbits = []
    for H in hw:
        if H.members not in unseen:
            continue
        orbit = [H]
        del unseen[H.members]
        queue = deque([H])
        while queue:
            K = queue.popleft()
            for g in gens:
                M = frozenset(m.conjugate(g) for m in K.members)
                if M in unseen:
                    orbit.append(unseen.pop(M))
                    queue.append(by_members[M])
        orbits.append(sorted(orbit, key=HWSubgroup.sort_key))
    return orbits


def normalizer_in_clifford(H: HWSubgroup, extended: bool = False) -> list[AffineSymplectic]:
    kind = "ESL_affine" if extended else "SL_affine"
    return [g for g in sp.enumerate_group(H.p, kind) if frozenset(m.conjugate(g) for m in H.members) == H.members]


def hw_report(p: int) -> dict:
    orbits = extra_hw_orbits(p)
    return {"p": p, "hw_count": len(list_hw_subgroups(p)), "orbit_sizes": sorted(len(o) for o in orbits)}


def proj_equal_hw_generator(p: int, j: int) -> bool:
    """V^j X matrix is proj-equal to its label synthesis (sanity link to the table)."""
    label = AffineSymplectic((1, 0, j % p, 1), (1, j % p), p)
    V = v_matrix_unimodular(p)
    return proj_equal_matrix(np.linalg.matrix_power(V, j) @ shift(p), synthesize(label).matrix)
