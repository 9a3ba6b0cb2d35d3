"""Exact polynomial algebra and the three bases: monomials, Zernike, Chebyshev.

Polynomials are dense coefficient vectors over ``Fraction`` in the monomial
basis.  Chebyshev series use the primed-sum convention throughout: the stored
leading entry ``a[0]`` is the *unhalved* published coefficient, and the value
represented is ``a[0]/2 + sum(a[i]*T_i for i >= 1)``.  The halving lives in
evaluation and conversion, never in storage.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exact import Rational, binomial, pow2

__all__ = [
    "Polynomial",
    "ChebSeries",
    "zernike_poly",
    "chebyshev_poly",
    "monomial_to_zernike",
    "monomial_to_chebyshev",
    "cheb_to_poly",
    "eval_exact",
    "eval_cheb_float",
]


class Polynomial:
    """Immutable dense polynomial, coeffs[k] = coefficient of x**k.

    The zero polynomial is the empty vector; for everything else the trailing
    coefficient is nonzero and ``degree == len(coeffs) - 1``.  The degree of
    the zero polynomial is reported as -1 (stands in for -infinity; every
    comparison in this package is against degrees >= 0).
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def coefficient(self, k: int) -> Rational:
        """Coefficient of x**k, 0 beyond the stored range."""
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return Fraction(0)

    @property
    def leading_coefficient(self) -> Rational:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other: "Polynomial") -> "Polynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] += c
        return Polynomial(out)

    def __neg__(self) -> "Polynomial":
        return Polynomial([-c for c in self.coeffs])

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Polynomial):
            if not self.coeffs or not other.coeffs:
                return Polynomial()
            out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for j, cj in enumerate(self.coeffs):
                if cj:
                    for k, ck in enumerate(other.coeffs):
                        out[j + k] += cj * ck
            return Polynomial(out)
        scalar = Fraction(other)
        return Polynomial([c * scalar for c in self.coeffs])

    def __rmul__(self, other):
        return self.__mul__(other)

    def __repr__(self) -> str:
        return f"Polynomial({list(self.coeffs)!r})"


@dataclass(frozen=True)
class ChebSeries:
    """Chebyshev coefficients under the primed-sum convention.

    ``a[i]`` is the weight of T_i, with the stored i=0 entry unhalved: the
    represented value is ``a[0]/2 + sum(a[i]*T_i(x) for i >= 1)``.
    """

    a: tuple[Rational, ...]

    def __init__(self, a=()):
        cs = [Fraction(c) for c in a]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "a", tuple(cs))

    @property
    def order(self) -> int:
        return len(self.a) - 1


def _check_zernike_domain(n: int, m: int) -> None:
    if m < 0 or m > n or (n - m) % 2:
        raise ValueError(f"invalid Zernike index (n={n}, m={m}): need 0 <= m <= n with n-m even")


@lru_cache(maxsize=None)
def zernike_poly(n: int, m: int) -> Polynomial:
    """Zernike radial polynomial R_n^m as an exact monomial-basis polynomial.

    R_n^m(x) = (-1)^((n-m)/2) x^m * sum_s C((n+m)/2+s, (n-m)/2-s) C(m+2s, s) (-x^2)^s,
    a degree-n polynomial whose lowest power is x^m and whose leading
    coefficient is C(n, (n-m)/2).
    """
    _check_zernike_domain(n, m)
    half = (n - m) // 2
    sign = -1 if half % 2 else 1
    coeffs = [Fraction(0)] * (n + 1)
    for s in range(half + 1):
        t = binomial((n + m) // 2 + s, half - s) * binomial(m + 2 * s, s)
        coeffs[m + 2 * s] = Fraction(sign * t)
        sign = -sign
    return Polynomial(coeffs)


@lru_cache(maxsize=None)
def chebyshev_poly(i: int) -> Polynomial:
    """Chebyshev polynomial of the first kind T_i, exact integer coefficients.

    T_0 = 1 and for i >= 1
    T_i(x) = (i/2) * sum_s (-1)^s (i-s-1)!/(s!(i-2s)!) (2x)^(i-2s);
    the leading coefficient is 2^(i-1).
    """
    if i < 0:
        raise ValueError(f"Chebyshev order must be >= 0, got {i}")
    if i == 0:
        return Polynomial([1])
    coeffs = [Fraction(0)] * (i + 1)
    fact = [1] * (i + 1)
    for k in range(2, i + 1):
        fact[k] = fact[k - 1] * k
    for s in range(i // 2 + 1):
        term = Fraction(i * fact[i - s - 1] * (1 << (i - 2 * s)), 2 * fact[s] * fact[i - 2 * s])
        coeffs[i - 2 * s] = -term if s % 2 else term
    return Polynomial(coeffs)


def monomial_to_zernike(j: int, m: int) -> list[tuple[int, Rational]]:
    """Expand x^j over the R_n^m with n = m, m+2, ..., j at fixed m.

    Returns the pairs (n, h) with
    h = (n+1)/(1+(j+n)/2) * C((j-m)/2, (n-m)/2) / C((j+n)/2, (n-m)/2);
    summing h * zernike_poly(n, m) reconstructs x^j exactly.
    """
    _check_zernike_domain(j, m)
    out = []
    for n in range(m, j + 1, 2):
        k = (n - m) // 2
        h = (
            Fraction(n + 1, 1 + (j + n) // 2)
            * binomial((j - m) // 2, k)
            / binomial((j + n) // 2, k)
        )
        out.append((n, h))
    return out


def monomial_to_chebyshev(n: int) -> ChebSeries:
    """Expand x^n in Chebyshev polynomials: a_j = 2^(1-n) C(n, (n-j)/2).

    Only orders j of the same parity as n appear; the j=0 entry is stored
    unhalved per the series convention.
    """
    if n < 0:
        raise ValueError(f"monomial power must be >= 0, got {n}")
    a = [Fraction(0)] * (n + 1)
    scale = pow2(1 - n)
    for j in range(n % 2, n + 1, 2):
        a[j] = scale * binomial(n, (n - j) // 2)
    return ChebSeries(a)


def cheb_to_poly(s: ChebSeries) -> Polynomial:
    """Exact monomial-basis polynomial a_0/2 + sum a_i T_i."""
    if not s.a:
        return Polynomial()
    out = [Fraction(0)] * (len(s.a))
    out[0] = s.a[0] / 2
    for i, ai in enumerate(s.a):
        if i and ai:
            for k, ck in enumerate(chebyshev_poly(i).coeffs):
                if ck:
                    out[k] += ai * ck
    return Polynomial(out)


def eval_exact(p: Polynomial, x) -> Rational:
    """Exact Horner evaluation at a rational point."""
    xq = Fraction(x)
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * xq + c
    return acc


def eval_cheb_float(s: ChebSeries, x: float) -> float:
    """Clenshaw (backward-recurrence) evaluation of the series at float x.

    x must lie in [-1, 1], the natural Chebyshev domain.
    """
    if not -1.0 <= x <= 1.0:
        raise ValueError(f"x={x} outside the Chebyshev domain [-1, 1]")
    if not s.a:
        return 0.0
    a = [float(c) for c in s.a]
    b1 = b2 = 0.0
    for k in range(len(a) - 1, 0, -1):
        b1, b2 = a[k] + 2.0 * x * b1 - b2, b1
    return a[0] / 2.0 + x * b1 - b2
