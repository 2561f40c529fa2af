from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sicforge import symplectic as sp
from sicforge.errors import IndexOutOfRange, ModulusMismatch, TooLarge
from sicforge.symplectic import AffineSymplectic, ConjClassLabel


def table_sl(p):
    """label -> (order, size) for SL(2,p), from the standard class table."""
    h = (p * p - 1) // 2
    t = {ConjClassLabel("One"): (1, 1), ConjClassLabel("Z"): (2, 1)}
    for l in range(1, (p - 3) // 2 + 1):
        t[ConjClassLabel("A", l)] = ((p - 1) // gcd(l, p - 1), p * (p + 1))
    for m in range(1, (p - 1) // 2 + 1):
        t[ConjClassLabel("B", m)] = ((p + 1) // gcd(m, p + 1), p * (p - 1))
    for fam, o in (("C1", p), ("C2", p), ("ZC1", 2 * p), ("ZC2", 2 * p)):
        t[ConjClassLabel(fam)] = (o, h)
    return t


def table_affine(p):
    h = p * (p * p - 1)
    t = {ConjClassLabel("One"): (1, 1), ConjClassLabel("Translation"): (p, p * p - 1),
         ConjClassLabel("Z"): (2, p * p)}
    for l in range(1, (p - 3) // 2 + 1):
        t[ConjClassLabel("A", l)] = ((p - 1) // gcd(l, p - 1), p**3 * (p + 1))
    for m in range(1, (p - 1) // 2 + 1):
        t[ConjClassLabel("B", m)] = ((p + 1) // gcd(m, p + 1), p**3 * (p - 1))
    for fam in ("C1", "C2"):
        t[ConjClassLabel(fam)] = (p, h // 2)
        for k in range(1, (p - 1) // 2 + 1):
            t[ConjClassLabel(fam + "_k", k)] = (p, h)
    for fam in ("ZC1", "ZC2"):
        t[ConjClassLabel(fam)] = (2 * p, p * h // 2)
    return t


def elements(p):
    F = st.tuples(*[st.integers(0, p - 1)] * 4).filter(lambda F: sp.mat_det(F, p) in (1, p - 1))
    return st.builds(lambda F, c: AffineSymplectic(F, c, p), F, st.tuples(st.integers(0, p - 1), st.integers(0, p - 1)))


@pytest.mark.parametrize("p", [3, 5, 7])
def test_sl_census_matches_table(p):
    census = sp.class_census(p, "SL")
    assert census == table_sl(p)
    assert len(census) == p + 4
    assert sum(s for _, s in census.values()) == sp.group_order(p, "SL")


@pytest.mark.parametrize("p", [3, 5, 7])
def test_affine_census_matches_table(p):
    census = sp.class_census(p, "SL_affine")
    assert census == table_affine(p)
    assert len(census) == 2 * p + 4


@pytest.mark.parametrize("p", [3, 5])
def test_classify_agrees_with_orbit_partition(p):
    els = sp.enumerate_group(p, "SL_affine")
    orbits = sp.conjugacy_orbits(els, sp.generators(p, "SL_affine"))
    assert len(orbits) == 2 * p + 4
    for orb in orbits:
        assert len({sp.classify(g) for g in orb}) == 1


@pytest.mark.parametrize("p", [3, 5])
def test_generators_generate(p):
    for kind in sp.KINDS:
        assert len(sp.closure(sp.generators(p, kind))) == sp.group_order(p, kind)


@given(st.sampled_from([3, 5, 7]).flatmap(lambda p: st.tuples(elements(p), elements(p), elements(p))))
def test_group_axioms(triple):
    a, b, c = triple
    assert (a * b) * c == a * (b * c)
    assert (a * a.inverse()).is_identity
    assert a.conjugate(b).order() == a.order()


@given(st.sampled_from([3, 5, 7]).flatmap(lambda p: st.tuples(elements(p), st.just(p))))
def test_action_preserves_symplectic_form_up_to_det(args):
    g, p = args
    k, q = (1, 2), (2, 0)
    lhs = sp.symplectic_form(g.act(k), g.act(q), p)
    assert lhs == g.det * sp.symplectic_form(k, q, p) % p


@pytest.mark.parametrize("p,size,cyclic", [(3, 6, True), (5, 20, False), (7, 42, False)])
def test_normalizer_of_sylow(p, size, cyclic):
    N = sp.normalizer_N(p, 1)
    assert len(N) == size
    assert all(g.F[1] == 0 for g in N)
    assert sp.is_cyclic(N) == cyclic
    assert all(sp.is_normalized_by(sp.sylow_Q(p, 1), g) for g in N)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_sylow_subgroups(p):
    Qs = [sp.sylow_Q(p, j) for j in range(1, p + 2)]
    assert len(set(Qs)) == p + 1
    assert all(len(Q) == p and sp.is_cyclic(Q) for Q in Qs)
    assert Qs[0] == frozenset(AffineSymplectic.linear((1, 0, g, 1), p) for g in range(p))
    with pytest.raises(IndexOutOfRange):
        sp.sylow_Q(p, p + 2)


def test_errors():
    with pytest.raises(ValueError):
        AffineSymplectic((1, 1, 1, 1), (0, 0), 5)
    with pytest.raises(ModulusMismatch):
        AffineSymplectic.identity(3) * AffineSymplectic.identity(5)
    with pytest.raises(TooLarge):
        sp.enumerate_group(7, "ESL_affine", cap=1000)
    with pytest.raises(ValueError):
        sp.normalize_kind("GL")


def test_label_round_trip():
    for s in ("One", "A(2)", "C1_k(1)"):
        assert str(ConjClassLabel.parse(s)) == s
