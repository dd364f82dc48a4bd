"""Exact sparse power series in q with rational exponents.

A series is a finite map from lattice exponents to rational coefficients
together with a truncation bound.  Everything is computed with
``fractions.Fraction``: there is no floating point anywhere in this package,
so two series are equal exactly when their canonical forms coincide.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Tuple


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class FracSeries:
    """Truncated series ``sum_e c_e * q^(e/M)`` with exact rational data.

    denom
        positive integer M; exponents live on the lattice (1/M)Z.
    terms
        map e -> c_e, with integer key e meaning exponent e/M.  Zero
        coefficients are never stored.
    trunc
        rational bound T.  Coefficients at exponents >= T are unspecified;
        everything below T is exact.

    On construction the pair (M, exponents) is reduced by its common gcd,
    so series that differ only by a rescaling of the lattice compare equal.
    """

    __slots__ = ("denom", "terms", "trunc")

    def __init__(self, denom: int, terms: dict, trunc) -> None:
        if denom <= 0:
            raise ValueError("lattice denominator must be positive")
        trunc = _frac(trunc)
        bound = trunc * denom
        kept = {}
        for e, c in terms.items():
            if c and e < bound:
                kept[e] = _frac(c)
        g = denom
        for e in kept:
            g = gcd(g, e)
        if g > 1:
            kept = {e // g: c for e, c in kept.items()}
            denom //= g
        self.denom = denom
        self.terms = kept
        self.trunc = trunc

    # ----- constructors -------------------------------------------------

    @classmethod
    def zero(cls, trunc) -> "FracSeries":
        return cls(1, {}, trunc)

    @classmethod
    def one(cls, trunc) -> "FracSeries":
        return cls(1, {0: Fraction(1)}, trunc)

    @classmethod
    def monomial(cls, exponent, coeff=1, trunc=None) -> "FracSeries":
        """The single term ``coeff * q^exponent`` known below ``trunc``."""
        exponent = _frac(exponent)
        if trunc is None:
            raise ValueError("monomial needs an explicit truncation bound")
        return cls(exponent.denominator, {exponent.numerator: coeff}, trunc)

    # ----- inspection ---------------------------------------------------

    @property
    def vmin(self) -> Fraction:
        """Smallest exponent at which the series may be nonzero.

        For a series with stored terms this is the leading exponent; for a
        series that is zero below its truncation it is the truncation bound
        itself.  Used for sound truncation bookkeeping under products.
        """
        if self.terms:
            return Fraction(min(self.terms), self.denom)
        return self.trunc

    @property
    def leading_exponent(self):
        if not self.terms:
            return None
        return Fraction(min(self.terms), self.denom)

    @property
    def leading_coefficient(self):
        if not self.terms:
            return None
        return self.terms[min(self.terms)]

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, exponent) -> Fraction:
        """Exact coefficient at a rational exponent below the truncation."""
        exponent = _frac(exponent)
        if exponent >= self.trunc:
            raise ValueError(
                f"coefficient at {exponent} is beyond the truncation {self.trunc}"
            )
        scaled = exponent * self.denom
        if scaled.denominator != 1:
            return Fraction(0)
        return self.terms.get(scaled.numerator, Fraction(0))

    def items(self) -> Iterable[Tuple[Fraction, Fraction]]:
        """Sorted (exponent, coefficient) pairs."""
        return [(Fraction(e, self.denom), self.terms[e]) for e in sorted(self.terms)]

    # ----- arithmetic ---------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, FracSeries):
            return NotImplemented
        M = lcm(self.denom, other.denom)
        sa, sb = M // self.denom, M // other.denom
        out = {e * sa: c for e, c in self.terms.items()}
        for e, c in other.terms.items():
            k = e * sb
            out[k] = out.get(k, Fraction(0)) + c
        return FracSeries(M, out, min(self.trunc, other.trunc))

    def __neg__(self):
        return FracSeries(self.denom, {e: -c for e, c in self.terms.items()}, self.trunc)

    def __sub__(self, other):
        if not isinstance(other, FracSeries):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, FracSeries):
            # scalar multiple; truncation is unchanged
            if not isinstance(other, (int, Fraction)):
                return NotImplemented
            if other == 0:
                return FracSeries(1, {}, self.trunc)
            return FracSeries(
                self.denom, {e: c * other for e, c in self.terms.items()}, self.trunc
            )
        M = lcm(self.denom, other.denom)
        sa, sb = M // self.denom, M // other.denom
        # Sound bound: below it every product coefficient is determined.
        trunc = min(self.trunc + other.vmin, other.trunc + self.vmin)
        bound = trunc * M
        bs = [(e * sb, c) for e, c in sorted(other.terms.items())]
        out = {}
        if bs:
            b0 = bs[0][0]
            for ea, ca in sorted(self.terms.items()):
                ea *= sa
                if ea + b0 >= bound:
                    break
                for eb, cb in bs:
                    e = ea + eb
                    if e >= bound:
                        break
                    if e in out:
                        out[e] += ca * cb
                    else:
                        out[e] = ca * cb
        return FracSeries(M, out, trunc)

    __rmul__ = __mul__

    def truncate(self, trunc) -> "FracSeries":
        """Forget all coefficients at exponents >= trunc."""
        trunc = min(_frac(trunc), self.trunc)
        return FracSeries(self.denom, self.terms, trunc)

    def substitute(self, d: int) -> "FracSeries":
        """The series with q replaced by q^d (d a positive integer)."""
        if d < 1:
            raise ValueError("substitution power must be a positive integer")
        return FracSeries(
            self.denom, {e * d: c for e, c in self.terms.items()}, self.trunc * d
        )

    # ----- comparison and display --------------------------------------

    def __eq__(self, other):
        if not isinstance(other, FracSeries):
            return NotImplemented
        return (
            self.denom == other.denom
            and self.terms == other.terms
            and self.trunc == other.trunc
        )

    __hash__ = None

    def __repr__(self):
        parts = []
        for e, c in self.items()[:6]:
            parts.append(f"{c}*q^({e})")
        body = " + ".join(parts) if parts else "0"
        if len(self.terms) > 6:
            body += " + ..."
        return f"FracSeries({body} + O(q^({self.trunc})))"

    # ----- serialization ------------------------------------------------

    def to_json(self) -> dict:
        return {
            "denom": self.denom,
            "trunc": str(self.trunc),
            "terms": [[e, str(self.terms[e])] for e in sorted(self.terms)],
        }

    @classmethod
    def from_json(cls, data: dict) -> "FracSeries":
        terms = {int(e): Fraction(c) for e, c in data["terms"]}
        return cls(int(data["denom"]), terms, Fraction(data["trunc"]))


def generalized_pow(n: int, e, prec) -> FracSeries:
    """Binomial expansion of (1 - q^n)^e for a rational exponent e.

    Coefficients are (-1)^j * binomial(e, j) at q^(n*j); for integer e >= 0
    the expansion terminates on its own, otherwise it is truncated at
    exponent ``prec``.
    """
    if n < 1:
        raise ValueError("inner exponent n must be a positive integer")
    e = _frac(e)
    prec = _frac(prec)
    terms = {}
    coeff = Fraction(1)
    j = 0
    while n * j < prec:
        if coeff:
            terms[n * j] = coeff if j % 2 == 0 else -coeff
        j += 1
        coeff = coeff * (e - j + 1) / j
        if not coeff and e.denominator == 1 and j > e >= 0:
            break
    return FracSeries(1, terms, prec)


def eta_series(d: int, prec) -> FracSeries:
    """q-expansion of eta(d*z) = q^(d/24) * prod_{n>=1} (1 - q^(d*n)).

    Computed through Euler's pentagonal number identity, so the support is
    the sparse set d*(1 + 24*k(3k-1)/2)/24 with coefficients +-1.
    """
    if d < 1:
        raise ValueError("eta argument must be a positive integer")
    prec = _frac(prec)
    terms = {}
    bound = prec * 24
    k = 0
    while True:
        hit = False
        for kk in ((k, -k) if k else (0,)):
            g = kk * (3 * kk - 1) // 2
            e = d * (1 + 24 * g)
            if e < bound:
                terms[e] = Fraction(1) if kk % 2 == 0 else Fraction(-1)
                hit = True
        if not hit and k > 0:
            break
        k += 1
    return FracSeries(24, terms, prec)


def substitute_power(f: FracSeries, d: int) -> FracSeries:
    """Replace q by q^d in a series (exponents and truncation scale by d)."""
    return f.substitute(d)
