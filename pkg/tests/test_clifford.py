import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sicforge import symplectic as sp
from sicforge import weyl
from sicforge.clifford import (CliffordOp, act_on_vector, clifford_group_d2, complex_conjugation,
                               conjugation_deviation, enumerate_clifford, expected_pattern, spectrum_census,
                               synthesize, v_matrix)
from sicforge.errors import DimMismatch
from sicforge.linalg import is_monomial, proj_equal_matrix, unitary_spectrum
from sicforge.symplectic import AffineSymplectic, ConjClassLabel


def labels(p):
    F = st.tuples(*[st.integers(0, p - 1)] * 4).filter(lambda F: sp.mat_det(F, p) in (1, p - 1))
    return st.builds(lambda F, c: AffineSymplectic(F, c, p), F, st.tuples(st.integers(0, p - 1), st.integers(0, p - 1)))


any_label = st.sampled_from([3, 5, 7]).flatmap(labels)


@given(any_label)
def test_conjugation_law(g):
    assert conjugation_deviation(CliffordOp(g)) < 1e-10


@given(st.sampled_from([3, 5, 7]).flatmap(lambda p: st.tuples(labels(p), labels(p))))
def test_composition_matches_labels(pair):
    g, h = pair
    prod = CliffordOp(g).compose(CliffordOp(h))
    direct = CliffordOp(g.compose(h))
    assert prod.antiunitary == direct.antiunitary
    assert proj_equal_matrix(prod.matrix, direct.matrix)


@given(any_label, st.integers(0, 2**31 - 1))
def test_inverse_and_action(g, seed):
    op = CliffordOp(g)
    rng = np.random.default_rng(seed)
    v = rng.normal(size=g.p) + 1j * rng.normal(size=g.p)
    assert np.allclose(op.inverse().act(op.act(v)), v)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_v_matrix_for_diag_unipotent(p):
    V = v_matrix((1, 0, 1, 1), p)
    tau = -np.exp(1j * np.pi / p)
    assert np.allclose(V, np.diag(tau ** (np.arange(p) ** 2)))
    assert np.isclose(np.linalg.det(V), tau ** (p * (p - 1) * (2 * p - 1) // 6))


def test_fourier_is_monomial_free():
    op = synthesize(AffineSymplectic.linear((0, 1, -1, 0), 5))
    assert not is_monomial(op.matrix)
    assert is_monomial(synthesize(AffineSymplectic.linear((2, 0, 0, 3), 5)).matrix)


def test_conjugation_op():
    J = complex_conjugation(3)
    v = np.array([1, 1j, 0])
    assert np.allclose(J.act(v), v.conj())
    assert conjugation_deviation(J) < 1e-12


@pytest.mark.parametrize("p,n,ext", [(3, 216, False), (3, 432, True), (5, 3000, False)])
def test_enumeration_sizes(p, n, ext):
    ops = enumerate_clifford(p, ext)
    assert len(ops) == n
    assert len({o.key() for o in ops}) == n


@pytest.mark.slow
def test_enumeration_p7_extended():
    assert len(enumerate_clifford(7, True)) == 32928


def test_d2_group():
    assert len(clifford_group_d2()) == 24
    assert len(clifford_group_d2(True)) == 48
    assert len(enumerate_clifford(2, True)) == 48


@pytest.mark.parametrize("p", [3, 5, 7])
def test_spectrum_census(p):
    census = spectrum_census(p)
    assert len(census) == 2 * p + 4
    for lab, pat in census.items():
        assert pat == expected_pattern(lab, p), lab


@pytest.mark.parametrize("p", [3, 5, 7])
def test_c_with_translation_matches_clock(p):
    """(c_i, (k, 0)) shares the clock operator's spectrum up to an overall phase."""
    Z = unitary_spectrum(weyl.clock(p))
    for lab, g in sp.class_representatives(p).items():
        if lab.family in ("C1_k", "C2_k"):
            M = synthesize(g).matrix
            s = unitary_spectrum(M)
            assert s.multiplicities == Z.multiplicities
            assert s.residual(M) < 1e-8
            assert np.allclose(np.sort(s.phases), np.sort(Z.phases), atol=1e-8)


def test_z_class_multiplicities():
    assert expected_pattern(ConjClassLabel("Z"), 7) == (4, 3)
    assert unitary_spectrum(synthesize(AffineSymplectic.linear((6, 0, 0, 6), 7)).matrix).pattern() == (4, 3)


def test_errors():
    with pytest.raises(DimMismatch):
        act_on_vector(synthesize(AffineSymplectic.identity(3)), np.ones(5))
    with pytest.raises(ValueError):
        synthesize(AffineSymplectic.identity(2))
    with pytest.raises(ValueError):
        spectrum_census(13)
