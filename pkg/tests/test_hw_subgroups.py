import numpy as np
import pytest

from sicforge import symplectic as sp
from sicforge import zmod
from sicforge.errors import IndexOutOfRange
from sicforge.hw_subgroups import (centre, extra_hw_orbits, hw_report, hw_witness, list_hw_subgroups,
                                   normalizer_in_clifford, order_p2_subgroups, permuting_deviation,
                                   proj_equal_hw_generator, sylow_P, v_matrix_unimodular, witness_deviation)
from sicforge.symplectic import AffineSymplectic


@pytest.mark.parametrize("p", [3, 5, 7])
def test_hw_count(p):
    hw = list_hw_subgroups(p)
    assert len(hw) == p * p
    assert hw[0].is_standard
    assert all(len(H.members) == p * p and sp.is_abelian(H.members) for H in hw)


@pytest.mark.parametrize("p,sizes", [(3, [8]), (5, [24]), (7, [16, 16, 16])])
def test_orbits(p, sizes):
    orbits = extra_hw_orbits(p)
    assert sorted(len(o) for o in orbits) == sizes
    assert len(orbits) == zmod.cube_class_count(p)


def test_report_json():
    assert hw_report(3) == {"p": 3, "hw_count": 9, "orbit_sizes": [8]}


@pytest.mark.parametrize("p", [3, 5, 7])
def test_sylow_intersection_is_standard(p):
    Ps = [sylow_P(p, j) for j in range(1, p + 2)]
    assert all(len(P) == p**3 for P in Ps)
    assert frozenset.intersection(*Ps) == list_hw_subgroups(p)[0].members
    with pytest.raises(IndexOutOfRange):
        sylow_P(p, 0)


def test_centre_of_first_sylow_is_clock():
    C = centre(sylow_P(3, 1))
    assert C == frozenset(AffineSymplectic.translation((0, k), 3) for k in range(3))


@pytest.mark.parametrize("p", [3, 5])
def test_each_sylow_has_p_plus_one_order_p2_subgroups(p):
    for j in range(1, p + 2):
        subs = order_p2_subgroups(p, j)
        assert len(subs) == p + 1
        # exactly one of them is the diagonal-type group excluded from HW
        hw = set(H.members for H in list_hw_subgroups(p))
        assert sum(H.members not in hw for H in subs) == 1


@pytest.mark.parametrize("p", [3, 5, 7])
def test_witnesses(p):
    for H in list_hw_subgroups(p):
        assert witness_deviation(H, hw_witness(H)) < 1e-9


@pytest.mark.parametrize("p", [3, 5, 7])
def test_permuting_unitary(p):
    assert permuting_deviation(p) < 1e-9
    assert all(proj_equal_hw_generator(p, j) for j in range(p))


def test_unimodular_v_at_3():
    assert abs(np.linalg.det(v_matrix_unimodular(3)) - 1) < 1e-12


@pytest.mark.parametrize("p,order", [(3, 27), (5, 125), (7, 3 * 343)])
def test_normalizer_of_extra_hw(p, order):
    H = next(H for H in list_hw_subgroups(p)[1:] if H.members <= sylow_P(p, 1))
    N = normalizer_in_clifford(H)
    assert len(N) == order
    assert sylow_P(p, 1) <= frozenset(N)
