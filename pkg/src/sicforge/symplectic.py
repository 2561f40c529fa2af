"""SL(2,p), ESL(2,p) and their semidirect products with (Z_p)^2.

Elements are exact residue tuples.  A 2x2 matrix is stored row-major as
``(alpha, beta, gamma, delta)`` and a translation as ``(k1, k2)``.  The
product rule is ``(F1, chi1) * (F2, chi2) = (F1 F2, chi1 + F1 chi2)``.

Conjugacy classes are computed two ways: :func:`classify` reduces an element
to a canonical class representative with exact invariants, while
:func:`conjugacy_orbits` partitions a group by breadth-first conjugation.
The second is the oracle for the first.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable

from . import zmod
from .errors import IndexOutOfRange, ModulusMismatch, TooLarge

Mat2 = tuple[int, int, int, int]
Vec2 = tuple[int, int]

KINDS = ("SL", "ESL", "SL_affine", "ESL_affine")
DEFAULT_CAP = 10**6


def mat_mul(A: Mat2, B: Mat2, p: int) -> Mat2:
    a, b, c, d = A
    e, f, g, h = B
    return ((a * e + b * g) % p, (a * f + b * h) % p, (c * e + d * g) % p, (c * f + d * h) % p)


def mat_det(A: Mat2, p: int) -> int:
    return (A[0] * A[3] - A[1] * A[2]) % p


def mat_inv(A: Mat2, p: int) -> Mat2:
    a, b, c, d = A
    r = zmod.inverse(mat_det(A, p), p)
    return (d * r % p, -b * r % p, -c * r % p, a * r % p)


def mat_vec(A: Mat2, v: Vec2, p: int) -> Vec2:
    return ((A[0] * v[0] + A[1] * v[1]) % p, (A[2] * v[0] + A[3] * v[1]) % p)


def mat_pow(A: Mat2, n: int, p: int) -> Mat2:
    R: Mat2 = (1, 0, 0, 1)
    for _ in range(n):
        R = mat_mul(R, A, p)
    return R


def symplectic_form(k: Vec2, q: Vec2, p: int) -> int:
    """<k, q> = k2 q1 - k1 q2 (mod p)."""
    return (k[1] * q[0] - k[0] * q[1]) % p


@dataclass(frozen=True, slots=True)
class AffineSymplectic:
    F: Mat2
    chi: Vec2
    p: int

    def __post_init__(self):
        if mat_det(self.F, self.p) not in (1, self.p - 1):
            raise ValueError(f"det(F) must be +-1 mod {self.p}: {self.F}")

    @classmethod
    def linear(cls, F: Iterable[int], p: int) -> AffineSymplectic:
        return cls(tuple(x % p for x in F), (0, 0), p)

    @classmethod
    def translation(cls, chi: Iterable[int], p: int) -> AffineSymplectic:
        return cls((1, 0, 0, 1), tuple(x % p for x in chi), p)

    @classmethod
    def identity(cls, p: int) -> AffineSymplectic:
        return cls((1, 0, 0, 1), (0, 0), p)

    @property
    def det(self) -> int:
        d = mat_det(self.F, self.p)
        return 1 if d == 1 else -1

    @property
    def is_identity(self) -> bool:
        return self.F == (1, 0, 0, 1) and self.chi == (0, 0)

    def compose(self, other: AffineSymplectic) -> AffineSymplectic:
        p = self.p
        if other.p != p:
            raise ModulusMismatch(f"cannot compose elements mod {p} and mod {other.p}")
        Fc = mat_vec(self.F, other.chi, p)
        return AffineSymplectic(mat_mul(self.F, other.F, p), ((self.chi[0] + Fc[0]) % p, (self.chi[1] + Fc[1]) % p), p)

    __mul__ = compose

    def inverse(self) -> AffineSymplectic:
        p = self.p
        Fi = mat_inv(self.F, p)
        x = mat_vec(Fi, self.chi, p)
        return AffineSymplectic(Fi, (-x[0] % p, -x[1] % p), p)

    def conjugate(self, g: AffineSymplectic) -> AffineSymplectic:
        """g * self * g^-1."""
        return g.compose(self).compose(g.inverse())

    def act(self, k: Vec2) -> Vec2:
        return mat_vec(self.F, k, self.p)

    def power(self, n: int) -> AffineSymplectic:
        r = AffineSymplectic.identity(self.p)
        base = self if n >= 0 else self.inverse()
        for _ in range(abs(n)):
            r = r.compose(base)
        return r

    def order(self) -> int:
        x, n = self, 1
        while not x.is_identity:
            x = x.compose(self)
            n += 1
        return n

    def key(self) -> tuple:
        return self.F + self.chi

    def __repr__(self):
        return f"[{self.F}, {self.chi}]"


# -- labels ---------------------------------------------------------------

_FAMILY_ORDER = ("One", "Translation", "Z", "A", "B", "C1", "C1_k", "C2", "C2_k", "ZC1", "ZC2")


@dataclass(frozen=True)
class ConjClassLabel:
    family: str
    index: int | None = None

    def __post_init__(self):
        if self.family not in _FAMILY_ORDER:
            raise ValueError(f"unknown class family {self.family!r}")

    def sort_key(self):
        return (_FAMILY_ORDER.index(self.family), self.index or 0)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __str__(self):
        return self.family if self.index is None else f"{self.family}({self.index})"

    @classmethod
    def parse(cls, s: str) -> ConjClassLabel:
        if "(" in s:
            fam, idx = s.rstrip(")").split("(")
            return cls(fam, int(idx))
        return cls(s)


# -- group enumeration ----------------------------------------------------


def normalize_kind(kind: str) -> str:
    k = kind.replace("-", "_").lower()
    for name in KINDS:
        if name.lower() == k:
            return name
    raise ValueError(f"unknown group kind {kind!r}; expected one of {KINDS}")


def group_order(p: int, kind: str) -> int:
    kind = normalize_kind(kind)
    n = p * (p * p - 1)
    if kind.startswith("ESL"):
        n *= 2
    if kind.endswith("affine"):
        n *= p * p
    return n


def _matrices(p: int, dets: tuple[int, ...]) -> list[Mat2]:
    return [F for F in product(range(p), repeat=4) if mat_det(F, p) in dets]


def enumerate_group(p: int, kind: str = "SL", cap: int = DEFAULT_CAP) -> list[AffineSymplectic]:
    """All elements in lexicographic (F, chi) order."""
    zmod.check_prime(p, odd=True)
    kind = normalize_kind(kind)
    n = group_order(p, kind)
    if n > cap:
        raise TooLarge(f"{kind}(2,{p}) has {n} elements, cap is {cap}")
    dets = (1,) if kind.startswith("SL") else (1, p - 1)
    chis = list(product(range(p), repeat=2)) if kind.endswith("affine") else [(0, 0)]
    out = [AffineSymplectic(F, chi, p) for F in _matrices(p, dets) for chi in chis]
    assert len(out) == n
    return out


def generators(p: int, kind: str = "SL") -> list[AffineSymplectic]:
    kind = normalize_kind(kind)
    gens = [AffineSymplectic.linear((1, 1, 0, 1), p), AffineSymplectic.linear((1, 0, 1, 1), p)]
    if kind.startswith("ESL"):
        gens.append(AffineSymplectic.linear((1, 0, 0, p - 1), p))
    if kind.endswith("affine"):
        gens += [AffineSymplectic.translation((1, 0), p), AffineSymplectic.translation((0, 1), p)]
    return gens


def closure(gens: Iterable[AffineSymplectic], cap: int = DEFAULT_CAP) -> frozenset[AffineSymplectic]:
    """Subgroup generated by ``gens``."""
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator")
    e = AffineSymplectic.identity(gens[0].p)
    seen = {e}
    queue = deque([e])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = x.compose(g)
            if y not in seen:
                seen.add(y)
                if len(seen) > cap:
                    raise TooLarge(f"closure exceeded {cap} elements")
                queue.append(y)
    return frozenset(seen)


def conjugacy_orbits(elements: Iterable[AffineSymplectic], gens: list[AffineSymplectic]) -> list[frozenset]:
    """Partition ``elements`` into orbits under conjugation by the group generated by ``gens``."""
    pairs = [(g, g.inverse()) for g in gens]
    remaining = set(elements)
    orbits = []
    for x in sorted(remaining, key=AffineSymplectic.key):
        if x not in remaining:
            continue
        orbit = {x}
        queue = deque([x])
        while queue:
            y = queue.popleft()
            for g, gi in pairs:
                z = g.compose(y).compose(gi)
                if z not in orbit:
                    orbit.add(z)
                    queue.append(z)
        remaining -= orbit
        orbits.append(frozenset(orbit))
    return orbits


# -- class representatives and exact classification ----------------------


@dataclass(frozen=True)
class _SLData:
    p: int
    nu: int
    b: Mat2
    a_traces: dict
    b_traces: dict


@lru_cache(maxsize=None)
def _sl_data(p: int) -> _SLData:
    zmod.check_prime(p, odd=True)
    nu = zmod.primitive_element(p)
    nu_inv = zmod.inverse(nu, p)
    b = None
    for t in range(p):
        M = (0, p - 1, 1, t)
        if AffineSymplectic.linear(M, p).order() == p + 1:
            b = M
            break
    assert b is not None
    a_traces = {}
    for l in range(1, (p - 3) // 2 + 1):
        a_traces[(pow(nu, l, p) + pow(nu_inv, l, p)) % p] = l
    b_traces = {}
    for m in range(1, (p - 1) // 2 + 1):
        bm = mat_pow(b, m, p)
        b_traces[(bm[0] + bm[3]) % p] = m
    return _SLData(p, nu, b, a_traces, b_traces)


def sl_representative(p: int, name: str, power: int = 1) -> Mat2:
    """Class representatives 1, z, a, b, c1, c2, zc1, zc2 of SL(2,p).

    ``a`` is taken as diag(nu, nu^-1) with nu the smallest primitive element;
    ``b`` is the first companion matrix [[0,-1],[1,t]] of order p+1.
    """
    data = _sl_data(p)
    nu = data.nu
    base = {
        "1": (1, 0, 0, 1),
        "z": (p - 1, 0, 0, p - 1),
        "a": (nu, 0, 0, zmod.inverse(nu, p)),
        "b": data.b,
        "c1": (1, 0, 1, 1),
        "c2": (1, 0, nu, 1),
        "zc1": (p - 1, 0, p - 1, p - 1),
        "zc2": (p - 1, 0, -nu % p, p - 1),
    }[name]
    return mat_pow(base, power, p)


def class_representatives(p: int, kind: str = "SL_affine") -> dict[ConjClassLabel, AffineSymplectic]:
    """One representative per class, ordered as in the standard class tables."""
    kind = normalize_kind(kind)
    if kind not in ("SL", "SL_affine"):
        raise ValueError("class tables exist for SL and SL_affine only")
    affine = kind == "SL_affine"
    L = lambda F: AffineSymplectic(F, (0, 0), p)  # noqa: E731
    reps = {ConjClassLabel("One"): L(sl_representative(p, "1"))}
    if affine:
        reps[ConjClassLabel("Translation")] = AffineSymplectic.translation((1, 0), p)
    reps[ConjClassLabel("Z")] = L(sl_representative(p, "z"))
    for l in range(1, (p - 3) // 2 + 1):
        reps[ConjClassLabel("A", l)] = L(sl_representative(p, "a", l))
    for m in range(1, (p - 1) // 2 + 1):
        reps[ConjClassLabel("B", m)] = L(sl_representative(p, "b", m))
    for fam in ("C1", "C2"):
        F = sl_representative(p, fam.lower())
        reps[ConjClassLabel(fam)] = L(F)
        if affine:
            for k in range(1, (p - 1) // 2 + 1):
                reps[ConjClassLabel(fam + "_k", k)] = AffineSymplectic(F, (k, 0), p)
    reps[ConjClassLabel("ZC1")] = L(sl_representative(p, "zc1"))
    reps[ConjClassLabel("ZC2")] = L(sl_representative(p, "zc2"))
    return reps


def _unipotent_family(F: Mat2, p: int) -> tuple[str, int]:
    """For F = 1 + N with N != 0 nilpotent: (family, gamma) with gamma in {1, nu}.

    det[N w, w] is a conjugation invariant of N for any w with N w != 0;
    for [[1,0],[gamma,1]] it equals -gamma.
    """
    N = ((F[0] - 1) % p, F[1], F[2], (F[3] - 1) % p)
    w = (1, 0) if (N[0], N[2]) != (0, 0) else (0, 1)
    Nw = mat_vec(N, w, p)
    inv = (Nw[0] * w[1] - w[0] * Nw[1]) % p
    if zmod.is_quadratic_residue(-inv % p, p):
        return "C1", 1
    return "C2", _sl_data(p).nu


def classify(g: AffineSymplectic) -> ConjClassLabel:
    """Conjugacy class label of ``g`` in SL(2,p) x| (Z_p)^2 (det +1 only)."""
    p = g.p
    F, chi = g.F, g.chi
    if g.det != 1:
        raise ValueError("classify expects det(F) = +1")
    if F == (1, 0, 0, 1):
        return ConjClassLabel("One") if chi == (0, 0) else ConjClassLabel("Translation")
    if F == (p - 1, 0, 0, p - 1):
        return ConjClassLabel("Z")
    tr = (F[0] + F[3]) % p
    if tr == 2 % p:
        fam, gamma = _unipotent_family(F, p)
        # with 1 - F singular the translation part survives up to k <-> -k;
        # det[N chi, chi] = -gamma k^2 is the exact invariant
        N = ((F[0] - 1) % p, F[1], F[2], (F[3] - 1) % p)
        Nc = mat_vec(N, chi, p)
        inv = (Nc[0] * chi[1] - chi[0] * Nc[1]) % p
        if inv == 0:
            return ConjClassLabel(fam)
        k = zmod.sqrt_mod(-inv * zmod.inverse(gamma, p), p)
        if k is None:
            raise AssertionError(f"no class for {g}")
        return ConjClassLabel(fam + "_k", min(k, p - k))
    if tr == (-2) % p:
        negF = tuple(-x % p for x in F)
        fam, _ = _unipotent_family(negF, p)
        return ConjClassLabel("Z" + fam)
    data = _sl_data(p)
    if tr in data.a_traces:
        return ConjClassLabel("A", data.a_traces[tr])
    if tr in data.b_traces:
        return ConjClassLabel("B", data.b_traces[tr])
    raise AssertionError(f"trace {tr} matches no class (p={p})")


def class_census(p: int, kind: str = "SL", cap: int = DEFAULT_CAP) -> dict[ConjClassLabel, tuple[int, int]]:
    """label -> (element order, class size), by classifying every element."""
    kind = normalize_kind(kind)
    if kind not in ("SL", "SL_affine"):
        raise ValueError("class_census supports SL and SL_affine; use conjugacy_orbits for ESL kinds")
    sizes: dict[ConjClassLabel, int] = {}
    for g in enumerate_group(p, kind, cap):
        lab = classify(g)
        sizes[lab] = sizes.get(lab, 0) + 1
    reps = class_representatives(p, kind)
    if set(reps) != set(sizes):
        raise AssertionError(f"class labels disagree with table: {set(reps) ^ set(sizes)}")
    return {lab: (reps[lab].order(), sizes[lab]) for lab in sorted(sizes)}


def census_to_json(census: dict[ConjClassLabel, tuple[int, int]]) -> list[dict]:
    return [{"label": str(lab), "order": o, "size": s} for lab, (o, s) in census.items()]


# -- Sylow subgroups ------------------------------------------------------


@lru_cache(maxsize=None)
def _sylow_list(p: int) -> tuple[frozenset, ...]:
    Q1 = frozenset(AffineSymplectic.linear((1, 0, g, 1), p) for g in range(p))
    found = {Q1}
    for x in enumerate_group(p, "SL"):
        xi = x.inverse()
        found.add(frozenset(x.compose(q).compose(xi) for q in Q1))

    def smallest(Q):
        return min(q.key() for q in Q if not q.is_identity)

    rest = sorted((Q for Q in found if Q != Q1), key=smallest)
    return (Q1, *rest)


def sylow_Q(p: int, j: int) -> frozenset[AffineSymplectic]:
    """Sylow p-subgroup Q_j of SL(2,p), 1 <= j <= p+1; Q_1 is lower unipotent."""
    if not 1 <= j <= p + 1:
        raise IndexOutOfRange(f"j must lie in 1..{p + 1}")
    Qs = _sylow_list(p)
    assert len(Qs) == p + 1
    return Qs[j - 1]


def normalizer_N(p: int, j: int) -> frozenset[AffineSymplectic]:
    Q = sylow_Q(p, j)
    return frozenset(g for g in enumerate_group(p, "SL") if is_normalized_by(Q, g))


def is_normalized_by(H: frozenset, g: AffineSymplectic) -> bool:
    gi = g.inverse()
    return all(g.compose(h).compose(gi) in H for h in H)


def is_cyclic(H: Iterable[AffineSymplectic]) -> bool:
    H = list(H)
    return any(h.order() == len(H) for h in H)


def is_abelian(H: Iterable[AffineSymplectic]) -> bool:
    H = list(H)
    return all(x.compose(y) == y.compose(x) for i, x in enumerate(H) for y in H[i + 1:])
