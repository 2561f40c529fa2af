"""Exact arithmetic in Z_p and its multiplicative group.

Residues are plain Python ints kept in ``[0, p)``; every function takes the
modulus explicitly.
"""

from functools import lru_cache

from .errors import ZeroInput, ZeroInverse

MAX_PRIME = 101


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def check_prime(p: int, odd: bool = False) -> int:
    """Validate ``p`` as a (desk-scale) prime modulus and return it."""
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"modulus must be prime, got {p!r}")
    if odd and p == 2:
        raise ValueError("an odd prime is required")
    if p > MAX_PRIME:
        raise ValueError(f"p={p} is beyond desk scale (max {MAX_PRIME})")
    return p


def inverse(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroInverse(f"0 has no inverse mod {p}")
    return pow(a, p - 2, p)


def multiplicative_order(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroInput("0 is not in the multiplicative group")
    x, n = a, 1
    while x != 1:
        x = x * a % p
        n += 1
    return n


@lru_cache(maxsize=None)
def primitive_element(p: int) -> int:
    """Smallest generator of the multiplicative group mod ``p``."""
    check_prime(p)
    for g in range(1, p):
        if multiplicative_order(g, p) == p - 1:
            return g
    raise AssertionError("unreachable for prime p")


def is_quadratic_residue(a: int, p: int) -> bool:
    a %= p
    if a == 0:
        raise ZeroInput("quadratic character of 0 is undefined")
    if p == 2:
        return True
    return pow(a, (p - 1) // 2, p) == 1


def sqrt_mod(a: int, p: int) -> int | None:
    """Smallest ``x`` with ``x*x == a (mod p)``, or None."""
    a %= p
    for x in range(p):
        if x * x % p == a:
            return x
    return None


def cube_class_count(p: int) -> int:
    """Number of cosets of the cube subgroup in Z_p^*."""
    check_prime(p)
    return 3 if (p - 1) % 3 == 0 else 1


def euler_phi(n: int) -> int:
    result, m, f = n, n, 2
    while f * f <= m:
        if m % f == 0:
            while m % f == 0:
                m //= f
            result -= result // f
        f += 1
    if m > 1:
        result -= result // m
    return result
