from itertools import product

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from sicforge import weyl
from sicforge.errors import DimMismatch, NotFiducial
from sicforge.weyl import SicCandidate

dims = st.sampled_from([2, 3, 5, 7])


def idx(d):
    return st.tuples(st.integers(-2 * d, 2 * d), st.integers(-2 * d, 2 * d))


@given(dims.flatmap(lambda d: st.tuples(st.just(d), idx(d), idx(d))))
def test_product_law(args):
    d, k, q = args
    e, r = weyl.displacement_product(k, q, d)
    lhs = weyl.displacement(k, d) @ weyl.displacement(q, d)
    assert np.abs(lhs - weyl.tau_power(e, d) * weyl.displacement(r, d)).max() < 1e-12


@pytest.mark.parametrize("d", [3, 5, 7])
def test_odd_phase_is_symplectic_form(d):
    for k, q in product(product(range(d), repeat=2), repeat=2):
        e, _ = weyl.displacement_product(k, q, d)
        assert e == (k[1] * q[0] - k[0] * q[1]) % d


@pytest.mark.parametrize("d", [2, 3, 5])
def test_basic_operators(d):
    X, Z = weyl.shift(d), weyl.clock(d)
    w = np.exp(2j * np.pi / d)
    assert np.allclose(Z @ X, w * X @ Z)
    assert np.allclose(X @ np.eye(d)[0], np.eye(d)[1 % d])
    Ds = weyl.all_displacements(d)
    assert Ds.shape == (d * d, d, d)
    # orthogonal basis under the trace inner product
    G = np.einsum("kij,lij->kl", Ds.conj(), Ds)
    assert np.allclose(G, d * np.eye(d * d))


def test_d3_tau_xz():
    tau = -np.exp(1j * np.pi / 3)
    assert np.allclose(weyl.displacement((1, 1), 3), tau * weyl.shift(3) @ weyl.clock(3))


def test_qubit_fiducial_tetrahedron():
    c = weyl.sic_from_fiducial(weyl.qubit_fiducial())
    F = c.fidelities()
    assert len(c) == 4
    assert np.abs(F[~np.eye(4, dtype=bool)] - 1 / 3).max() < 1e-10


def test_unimodular_hw_d2_closes():
    G = weyl.unimodular_hw_d2()
    keys = {tuple(np.round(M, 12).ravel()) for M in G}
    assert len(G) == 8
    for A in G:
        assert abs(np.linalg.det(A) - 1) < 1e-12
        for B in G:
            assert tuple(np.round(A @ B, 12).ravel()) in keys


def test_non_fiducial():
    ok, dev = weyl.is_fiducial(np.array([1, 0, 0]))
    assert not ok and dev > 0.1
    with pytest.raises(NotFiducial):
        weyl.sic_from_fiducial([1, 0, 0])


@given(st.integers(0, 2**31 - 1), dims)
def test_frame_operator_is_scalar(seed, d):
    rng = np.random.default_rng(seed)
    v = rng.normal(size=d) + 1j * rng.normal(size=d)
    v /= np.linalg.norm(v)
    assert np.allclose(weyl.hw_frame_operator(v), d * np.eye(d))


def test_sic_candidate_matching():
    c = weyl.sic_from_fiducial(weyl.qubit_fiducial())
    perm = np.array([2, 0, 3, 1])
    shuffled = SicCandidate(c.vectors[perm] * np.exp(1j * np.arange(4))[:, None])
    m = c.matching(shuffled)
    assert m is not None and all(perm[m[i]] == i for i in range(4))
    assert not c.same_set(SicCandidate(c.vectors.conj()))
    with pytest.raises(DimMismatch):
        weyl.check_dim([1, 0], [1, 0, 0])
