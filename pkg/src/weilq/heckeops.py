"""Hecke, index-raising and index-spreading operators on the expansions.

All operators act slot-by-slot on the coefficient tables; the holomorphic
and the negative-index tables transform by the same index formulas.  Each
function returns a fresh expansion whose truncation records the tight range
on which the output is exact.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .discform import divisors
from .vvforms import VVExpansion, XiImage

_ZERO = Fraction(0)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1 if d == 2 else 2
    return True


def _require_good_prime(p: int, N: int) -> None:
    if not _is_prime(p):
        raise ValueError(f"{p} is not prime")
    if gcd(p, 2 * N) != 1:
        raise ValueError(f"prime {p} divides 2N = {2 * N}; this operator "
                         "is only defined away from the level")


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for an odd prime p."""
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def _int_pow(base: int, expo: Fraction) -> Fraction:
    if expo.denominator != 1:
        raise ValueError(f"exponent {expo} is not an integer")
    return Fraction(base) ** int(expo)


def _supported_slots(N: int, rep: int, lo: int, hi: int):
    """All (n, gamma) with lo <= n <= hi on the support lattice."""
    four_n = 4 * N
    for gamma in range(2 * N):
        r = (rep * gamma * gamma) % four_n
        start = lo + ((r - lo) % four_n)
        for n in range(start, hi + 1, four_n):
            yield n, gamma


def _tp_table(table: dict, N: int, rep: int, p: int, weight: Fraction,
              lo: int, hi: int) -> dict:
    """Three-term T_p gather at a given weight.

    Output slot (n, gamma) collects
        a(p^2 n, p gamma) + p^(k-3/2) (rep*n/p) a(n, gamma)
                          + p^(2k-2) a(n/p^2, gamma/p),
    the last term only when p^2 divides n; gamma/p means multiplication by
    the inverse of p mod 2N.
    """
    two_n = 2 * N
    pinv = pow(p, -1, two_n)
    w1 = _int_pow(p, weight - Fraction(3, 2))
    w2 = _int_pow(p, 2 * weight - 2)
    p2 = p * p
    out = {}
    for n, gamma in _supported_slots(N, rep, lo, hi):
        v = table.get((p2 * n, (p * gamma) % two_n), _ZERO)
        chi = legendre(rep * n, p)
        if chi:
            v = v + chi * w1 * table.get((n, gamma), _ZERO)
        if n % p2 == 0:
            v = v + w2 * table.get((n // p2, (pinv * gamma) % two_n), _ZERO)
        if v:
            out[(n, gamma)] = v
    return out


def _u_table(table: dict, N: int, d: int) -> dict:
    """Index raising scatter: (n, gamma) feeds the d slots above it."""
    out = {}
    modulus = 2 * N * d * d
    step = 2 * N * d
    d2 = d * d
    for (n, gamma), c in table.items():
        base = d * gamma
        nn = n * d2
        for t in range(d):
            out[(nn, (base + step * t) % modulus)] = c
    return out


def _v_table(table: dict, N: int, rep: int, ell: int, a_exp: int,
             lo: int, hi: int, prefactor=Fraction(1)) -> dict:
    """Divisor-sum gather for the index-spreading operator.

    At output level N*ell the slot (n, gamma) collects a^a_exp times the
    entry at (n/a^2, gamma/a) over positive a dividing
    gcd((gamma^2 - rep*n)/(4*N*ell), gamma, ell); the first gcd argument is
    an integer exactly when the slot satisfies the output support rule, and
    gcd(0, x) = x throughout.
    """
    out = {}
    n_out = N * ell
    four = 4 * n_out
    two_n = 2 * N
    for n, gamma in _supported_slots(n_out, rep, lo, hi):
        x = (gamma * gamma - rep * n) // four
        g = gcd(gcd(abs(x), gamma), ell)
        tot = _ZERO
        for a in divisors(g):
            if n % (a * a):
                continue
            c = table.get((n // (a * a), (gamma // a) % two_n))
            if c:
                tot += Fraction(a) ** a_exp * c
        if tot:
            out[(n, gamma)] = prefactor * tot
    return out


# ----- operators on expansions -----------------------------------------


def hecke_tp(f: VVExpansion, p: int) -> VVExpansion:
    """Hecke operator T_p for a prime p coprime to 2N.

    The reliable window shrinks by p^2 because the leading term reads the
    coefficient at p^2 n.
    """
    _require_good_prime(p, f.N)
    w = f.trunc // (p * p)
    return VVExpansion(
        f.N,
        f.weight,
        f.rep,
        _tp_table(f.holo, f.N, f.rep, p, f.weight, -w, w),
        _tp_table(f.nonholo, f.N, f.rep, p, f.weight, -w, -1),
        w,
    )


def level_u(f: VVExpansion, d: int) -> VVExpansion:
    """Index raising U_d: level N -> N d^2, coefficient (n,g) -> (n/d^2, g/d).

    Indices scale by d^2, so the reliable integer window grows by d^2 (the
    underlying rational exponent window n/(4N d^2) is unchanged).
    """
    if d < 1:
        raise ValueError("index raising requires a positive integer")
    if d == 1:
        return f
    return VVExpansion(
        f.N * d * d,
        f.weight,
        f.rep,
        _u_table(f.holo, f.N, d),
        _u_table(f.nonholo, f.N, d),
        f.trunc * d * d,
    )


def level_v(f: VVExpansion, ell: int) -> VVExpansion:
    """Index spreading V_ell: level N -> N*ell with a-weights a^(k-1/2)."""
    if ell < 1:
        raise ValueError("index spreading requires a positive integer")
    if ell == 1:
        return f
    a_exp = int(f.weight - Fraction(1, 2))
    w = f.trunc
    return VVExpansion(
        f.N * ell,
        f.weight,
        f.rep,
        _v_table(f.holo, f.N, f.rep, ell, a_exp, -w, w),
        _v_table(f.nonholo, f.N, f.rep, ell, a_exp, -w, -1),
        w,
    )


# ----- transported operators on formal xi images -----------------------


def xi_tp(X: XiImage, p: int) -> XiImage:
    """T_p transported through the radical-weight convention.

    With k the upstream weight (k = 2 - X.weight) the table transforms by
        p * r(p^2 m, p gamma) + p^(1/2-k) (rep*m/p) r(m, gamma)
                              + p^(1-2k) r(m/p^2, gamma/p),
    which is p times the plain three-term gather taken at weight 1-k.
    """
    _require_good_prime(p, X.N)
    k = 2 - X.weight
    w = X.trunc // (p * p)
    core = _tp_table(X.r, X.N, X.rep, p, 1 - k, 1, w)
    return XiImage(X.N, X.weight, X.rep, {s: p * v for s, v in core.items()}, w)


def xi_u(X: XiImage, d: int) -> XiImage:
    """Index raising on a formal xi image; the radial weight re-bases itself."""
    if d < 1:
        raise ValueError("index raising requires a positive integer")
    if d == 1:
        return X
    return XiImage(X.N * d * d, X.weight, X.rep, _u_table(X.r, X.N, d),
                   X.trunc * d * d)


def xi_v(X: XiImage, ell: int) -> XiImage:
    """Index spreading on a formal xi image.

    In radical-weighted coordinates the divisor sum carries a-weights
    a^(1/2-k) and a global ell^(k-1/2), k the upstream weight; at k = 1/2
    both collapse to 1 and this is a plain divisor sum.
    """
    if ell < 1:
        raise ValueError("index spreading requires a positive integer")
    if ell == 1:
        return X
    k = 2 - X.weight
    a_exp = int(Fraction(1, 2) - k)
    pref = _int_pow(ell, k - Fraction(1, 2))
    return XiImage(
        X.N * ell,
        X.weight,
        X.rep,
        _v_table(X.r, X.N, X.rep, ell, a_exp, 1, X.trunc, pref),
        X.trunc,
    )
