import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sicforge import dim3
from sicforge.errors import NoConvergence
from sicforge.search import SearchConfig, gradient_check, objective, search
from sicforge.weyl import is_fiducial


@given(st.sampled_from([2, 3, 5]), st.integers(0, 2**31 - 1))
@settings(max_examples=15)
def test_gradient_matches_finite_differences(d, seed):
    rng = np.random.default_rng(seed)
    psi = rng.normal(size=d) + 1j * rng.normal(size=d)
    psi /= np.linalg.norm(psi)
    rel, _ = gradient_check(psi)
    assert rel < 1e-5


def test_objective_vanishes_on_fiducials():
    assert objective(dim3.family_fiducial(0.4)) < 1e-28


@pytest.mark.parametrize("d", [2, 3, 5, 7])
def test_search_converges(d):
    res = search(SearchConfig(d, restarts=10, seed=1))
    assert res.converged and res.deviation < 1e-10
    assert is_fiducial(res.vector, 1e-10)[0]


def test_deterministic_and_thread_invariant():
    a = search(SearchConfig(5, seed=7))
    b = search(SearchConfig(5, seed=7, threads=3))
    assert a.restart == b.restart
    assert np.array_equal(a.vector, b.vector)


def test_d3_hit_lies_on_the_family():
    res = search(SearchConfig(3, seed=3))
    fp = dim3.identify_fiducial(res.vector)
    assert 0 <= fp.class_rep <= np.pi / 9


def test_no_convergence_carries_best_result():
    with pytest.raises(NoConvergence) as info:
        search(SearchConfig(5, restarts=1, max_iters=3, polish_iters=0))
    assert info.value.result.deviation > 1e-10
    assert not info.value.result.converged


def test_config_validation():
    with pytest.raises(ValueError):
        SearchConfig(3, restarts=0)
    with pytest.raises(ValueError):
        SearchConfig(1)


def test_thread_env(monkeypatch):
    from sicforge.search import _threads

    monkeypatch.setenv("SICFORGE_THREADS", "4")
    assert _threads(SearchConfig(3)) == 4
    assert _threads(SearchConfig(3, threads=2)) == 2
