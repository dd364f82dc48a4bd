"""The finite quadratic module Z/2NZ with form gamma^2/(4N) mod 1.

Component indices gamma are always canonical residues in [0, 2N).  The
Atkin-Lehner involutions sigma_c, one for every exact divisor c of N, act on
this index set and preserve the quadratic form.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt


def divisors(N: int) -> list:
    """Sorted positive divisors of N."""
    if N < 1:
        raise ValueError("N must be a positive integer")
    small, large = [], []
    for d in range(1, isqrt(N) + 1):
        if N % d == 0:
            small.append(d)
            if d * d != N:
                large.append(N // d)
    return small + large[::-1]


def exact_divisors(N: int) -> list:
    """Divisors c of N with gcd(c, N/c) = 1, sorted."""
    return [c for c in divisors(N) if gcd(c, N // c) == 1]


def is_exact_divisor(N: int, c: int) -> bool:
    return N % c == 0 and gcd(c, N // c) == 1 if 1 <= c <= N else False


def divisor_classes(N: int) -> list:
    """One representative d per unordered pair {d, N/d}, sorted.

    The representative is the smaller member, so d*d <= N always holds and a
    perfect square N contributes its square root once.
    """
    return [d for d in divisors(N) if d * d <= N]


def prime_factors(N: int) -> list:
    """Distinct prime factors of N, ascending (trial division)."""
    out = []
    n, p = N, 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out.append(n)
    return out


def euler_phi(N: int) -> int:
    val = N
    for p in prime_factors(N):
        val = val // p * (p - 1)
    return val


def index_gamma0(N: int) -> int:
    """Index of the Hecke congruence subgroup of level N in the modular group."""
    val = N
    for p in prime_factors(N):
        val = val // p * (p + 1)
    return val


def _check_gamma(N: int, gamma: int) -> None:
    if not 0 <= gamma < 2 * N:
        raise ValueError(f"component index {gamma} is not a residue mod {2 * N}")


def qvalue(N: int, gamma: int) -> Fraction:
    """Value of the quadratic form gamma^2/(4N) reduced into [0, 1)."""
    _check_gamma(N, gamma)
    return Fraction(gamma * gamma, 4 * N) % 1


def neg(N: int, gamma: int) -> int:
    """The index -gamma as a canonical residue mod 2N."""
    _check_gamma(N, gamma)
    return (-gamma) % (2 * N)


def _crt(a1: int, m1: int, a2: int, m2: int) -> int:
    """Solve x = a1 (mod m1), x = a2 (mod m2); moduli need not be coprime."""
    g = gcd(m1, m2)
    if (a2 - a1) % g:
        raise ValueError("incompatible congruences")
    m2g = m2 // g
    t = ((a2 - a1) // g * pow(m1 // g, -1, m2g)) % m2g
    return (a1 + m1 * t) % (m1 // g * m2)


def atkin_lehner(N: int, c: int, gamma: int) -> int:
    """Image of gamma under the involution attached to an exact divisor c.

    sigma_c(gamma) is the unique residue mod 2N that is = -gamma mod 2c and
    = gamma mod 2N/c.  The two moduli share the factor 2 but -gamma and
    gamma always agree mod 2, so the combined congruence has exactly one
    solution mod lcm(2c, 2N/c) = 2N.
    """
    if not is_exact_divisor(N, c):
        raise ValueError(f"{c} is not an exact divisor of {N}")
    _check_gamma(N, gamma)
    return _crt(-gamma, 2 * c, gamma, 2 * N // c)
