import pytest
from hypothesis import given
from hypothesis import strategies as st

from sicforge import zmod
from sicforge.errors import ZeroInput, ZeroInverse

primes = st.sampled_from([2, 3, 5, 7, 11, 13, 31, 101])


@given(primes, st.integers(min_value=1, max_value=10**6))
def test_inverse_is_inverse(p, a):
    if a % p == 0:
        return
    assert a * zmod.inverse(a, p) % p == 1


@given(primes, st.integers(min_value=1, max_value=10**4))
def test_order_divides_group_order(p, a):
    if a % p == 0:
        return
    n = zmod.multiplicative_order(a, p)
    assert (p - 1) % n == 0 and pow(a, n, p) == 1


@pytest.mark.parametrize("p,g", [(3, 2), (5, 2), (7, 3), (11, 2), (13, 2), (23, 5)])
def test_primitive_element(p, g):
    assert zmod.primitive_element(p) == g


def test_quadratic_residues_mod_7():
    assert sorted(a for a in range(1, 7) if zmod.is_quadratic_residue(a, 7)) == [1, 2, 4]


@given(primes, st.integers(min_value=1, max_value=1000))
def test_sqrt_mod_agrees_with_euler(p, a):
    if a % p == 0:
        return
    r = zmod.sqrt_mod(a, p)
    assert (r is not None) == zmod.is_quadratic_residue(a, p)
    if r is not None:
        assert r * r % p == a % p


@pytest.mark.parametrize("p,n", [(3, 1), (5, 1), (7, 3), (11, 1), (13, 3)])
def test_cube_class_count(p, n):
    assert zmod.cube_class_count(p) == n


def test_errors():
    with pytest.raises(ZeroInverse):
        zmod.inverse(0, 5)
    with pytest.raises(ZeroInput):
        zmod.multiplicative_order(10, 5)
    with pytest.raises(ValueError):
        zmod.check_prime(9)
    with pytest.raises(ValueError):
        zmod.check_prime(2, odd=True)
    with pytest.raises(ValueError):
        zmod.check_prime(103)


def test_euler_phi():
    assert [zmod.euler_phi(n) for n in (1, 6, 9, 12)] == [1, 2, 6, 4]
