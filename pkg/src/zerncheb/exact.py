"""Exact rational arithmetic and the combinatorial primitives used everywhere.

All quantities in this package are rational, so the universal scalar is
``fractions.Fraction``: arbitrary-precision integer parts, always reduced to
lowest terms, denominator always positive, immutable.  The helpers here wrap
the handful of combinatorial building blocks (binomials, double factorials,
terminating hypergeometric sums) with the conventions the rest of the code
relies on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

Rational = Fraction

__all__ = [
    "Rational",
    "rat",
    "binomial",
    "double_factorial",
    "PfqParams",
    "pfq_terminating",
    "pow2",
]


def rat(numerator: int, denominator: int = 1) -> Rational:
    """Canonical-form rational; the sign lives in the numerator.

    Raises ZeroDivisionError for a zero denominator.
    """
    return Fraction(numerator, denominator)


def binomial(n: int, k: int) -> int:
    """Binomial coefficient with the out-of-range convention.

    Returns 0 when k < 0, k > n or n < 0, so summation bounds never need
    special-casing.
    """
    if n < 0 or k < 0 or k > n:
        return 0
    return math.comb(n, k)


def double_factorial(k: int) -> int:
    """k!! = k(k-2)(k-4)...; the empty products (-1)!! and 0!! are 1."""
    if k < -1:
        raise ValueError(f"double_factorial undefined for k={k} < -1")
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


def pow2(e: int) -> Rational:
    """Exact 2**e for any integer exponent, negative included."""
    return Fraction(1 << e) if e >= 0 else Fraction(1, 1 << -e)


def _as_nonpositive_int(x: Rational) -> int | None:
    if x.denominator == 1 and x.numerator <= 0:
        return int(x)
    return None


@dataclass(frozen=True)
class PfqParams:
    """Parameters of a terminating pFq(upper; lower | 1).

    At least one upper parameter must be a non-positive integer; the series
    then terminates after ``termination_index`` + 1 terms.  A lower parameter
    that would put a zero factor into a retained denominator is rejected.
    """

    upper: tuple[Rational, ...]
    lower: tuple[Rational, ...]

    def __init__(self, upper, lower):
        object.__setattr__(self, "upper", tuple(Fraction(a) for a in upper))
        object.__setattr__(self, "lower", tuple(Fraction(b) for b in lower))
        if self.termination_index is None:
            raise ValueError("no non-positive-integer upper parameter; series would not terminate")
        s_max = self.termination_index
        for b in self.lower:
            k = _as_nonpositive_int(b)
            if k is not None and -k < s_max:
                raise ValueError(f"lower parameter {b} hits zero before the series terminates")

    @property
    def termination_index(self) -> int | None:
        """Index of the last potentially nonzero term, or None."""
        hits = [-k for a in self.upper if (k := _as_nonpositive_int(a)) is not None]
        return min(hits) if hits else None


def pfq_terminating(params: PfqParams) -> Rational:
    """Exact value of the terminating hypergeometric sum at unit argument.

    Terms are built by the ratio recurrence term_{s+1}/term_s, which keeps
    every intermediate a small reduced fraction instead of a factorial blowup;
    exactness makes the summation order irrelevant.
    """
    total = Fraction(1)
    term = Fraction(1)
    for s in range(params.termination_index):
        num = math.prod((a + s for a in params.upper), start=Fraction(1))
        den = math.prod((b + s for b in params.lower), start=Fraction(1)) * (s + 1)
        if den == 0:
            raise ValueError(f"zero denominator factor in retained term s={s + 1}")
        term = term * num / den
        total += term
    return total
