"""Coupling coefficients c[n, m, i] of Zernike radial polynomials in Chebyshev series.

Every method the problem admits is implemented against the same contract:

* ``c_direct``       -- the explicit finite alternating sum (the reference),
* ``c_mm``           -- the single-term case n = m,
* ``c_product_low``  -- product formula for i <= m with (n-m)/2 <= 3,
* ``c_product_high`` -- product formula for i >= m with (n-i)/2 <= 3,
* ``c_i0``           -- closed form for i = 0,
* ``c_i1_rec``       -- three-term recurrence in n for i = 1,
* ``c_rec5_row``     -- five-term holonomic recurrence in n at fixed (m, i),
* ``c_hyp_low`` / ``c_hyp_high`` / ``c_i1_hyp``
                     -- terminating-hypergeometric re-summations (cross-checks),
* ``c_oracle_row``   -- long polynomial division / deflation, formula-free,
* ``c_best``         -- the dispatcher: closed forms where they apply, the
                        five-term recurrence elsewhere.

All results are exact rationals and any two applicable methods agree exactly;
the verification module exercises that promise wholesale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import NamedTuple

from .exact import PfqParams, Rational, binomial, double_factorial, pfq_terminating, pow2
from .polynomials import ChebSeries, Polynomial, chebyshev_poly, zernike_poly

__all__ = [
    "CouplingIndex",
    "CouplingTable",
    "MethodReport",
    "RowCache",
    "c_direct",
    "c_mm",
    "omega",
    "c_product_low",
    "c_product_high",
    "c_i0",
    "c_i1_rec",
    "c_rec5_row",
    "c_hyp_low",
    "c_hyp_high",
    "c_i1_hyp",
    "c_oracle_row",
    "c_best",
    "build_table",
]

_ZERO = Fraction(0)


class CouplingIndex(NamedTuple):
    """Index triple: radial n, azimuthal m, Chebyshev order i."""

    n: int
    m: int
    i: int

    @property
    def eps(self) -> int:
        """Radial gap (n - m)/2."""
        return (self.n - self.m) // 2

    @property
    def m_plus(self) -> int:
        return (self.m + self.i) // 2

    @property
    def m_minus(self) -> int:
        return (self.m - self.i) // 2


def _check_nm(n: int, m: int) -> None:
    if m < 0 or m > n or (n - m) % 2:
        raise ValueError(f"invalid index (n={n}, m={m}): need 0 <= m <= n with n-m even")


def _off_lattice(n: int, i: int) -> bool:
    # Selection rules: the coefficient vanishes unless 0 <= i <= n with n-i even.
    return i < 0 or i > n or (n - i) % 2 != 0


def c_direct(idx: CouplingIndex) -> Rational:
    """Coefficient from the explicit alternating sum over the monomial ladder.

    c = (-1)^((n-m)/2) sum_{s >= max(0, (i-m)/2)}^{(n-m)/2}
        (-1)^s C((n+m)/2+s, (n-m)/2-s) C(m+2s, s) 2^(1-m-2s) C(m+2s, (m+2s-i)/2).

    This is the reference implementation every other method is checked
    against.  Off-lattice indices return 0 without computation.
    """
    n, m, i = idx
    _check_nm(n, m)
    if _off_lattice(n, i):
        return _ZERO
    half = (n - m) // 2
    total = _ZERO
    sign = -1 if half % 2 else 1
    if (max(0, (i - m) // 2)) % 2:
        sign = -sign
    for s in range(max(0, (i - m) // 2), half + 1):
        t = (
            binomial((n + m) // 2 + s, half - s)
            * binomial(m + 2 * s, s)
            * binomial(m + 2 * s, (m + 2 * s - i) // 2)
        )
        total += sign * pow2(1 - m - 2 * s) * t
        sign = -sign
    return total


def c_mm(m: int, i: int) -> Rational:
    """The n = m case: c = 2^(1-m) C(m, (m-i)/2); only one term survives."""
    if i < 0 or i > m or (m - i) % 2:
        raise ValueError(f"invalid (m={m}, i={i}): need 0 <= i <= m with m-i even")
    return pow2(1 - m) * binomial(m, (m - i) // 2)


def omega(eps: int, m: int, i: int) -> int:
    """Quartic numerator factor of the product formulas, for gaps eps <= 3.

    The table is 1, i^2, (i^2-m-4)^2, i^2 (i^2-3m-16)^2 for eps = 0..3.  The
    arguments are positional: the i >= m branch passes them swapped, and the
    entries are deliberately not symmetric under that swap.
    """
    if eps == 0:
        return 1
    if eps == 1:
        return i * i
    if eps == 2:
        return (i * i - m - 4) ** 2
    if eps == 3:
        return i * i * (i * i - 3 * m - 16) ** 2
    raise ValueError(f"omega table exhausted at eps={eps}; use the recurrence instead")


def c_product_low(idx: CouplingIndex) -> Rational:
    """Product formula for i <= m and radial gap eps = (n-m)/2 <= 3.

    c = 2^(1-m) C((n+m)/2, eps) C(m, (m-i)/2) omega_eps(m, i)
        / prod_{d=1..eps} (2d+m+i)(2d+m-i).
    """
    n, m, i = idx
    _check_nm(n, m)
    eps = (n - m) // 2
    if i < 0 or i > m or (m - i) % 2 or eps > 3:
        raise ValueError(f"product formula (low) does not apply at (n={n}, m={m}, i={i})")
    num = pow2(1 - m) * binomial((n + m) // 2, eps) * binomial(m, (m - i) // 2) * omega(eps, m, i)
    den = math.prod((2 * d + m + i) * (2 * d + m - i) for d in range(1, eps + 1))
    return num / den


def c_product_high(idx: CouplingIndex) -> Rational:
    """Product formula for i >= m and (n-i)/2 <= 3; omega arguments swapped.

    c = 2^(1-i) C((n+i)/2, i) C(i, (i-m)/2) omega_{(n-i)/2}(i, m)
        / prod_{d=1..(n-i)/2} (2d+i+m)(2d+i-m).
    """
    n, m, i = idx
    _check_nm(n, m)
    if i < m or i > n or (i - m) % 2 or (n - i) // 2 > 3:
        raise ValueError(f"product formula (high) does not apply at (n={n}, m={m}, i={i})")
    k = (n - i) // 2
    num = pow2(1 - i) * binomial((n + i) // 2, i) * binomial(i, (i - m) // 2) * omega(k, i, m)
    den = math.prod((2 * d + i + m) * (2 * d + i - m) for d in range(1, k + 1))
    return num / den


def c_i0(n: int, m: int) -> Rational:
    """Closed form for the constant Chebyshev component (i = 0, even n and m).

    Zero whenever (n-m)/2 is odd; otherwise
    c = 2^(1-(n+m)/2) ((n+m)/2)!/((n-m)/2)! * ([(n-m)/2-1]!! / ((n+m)/4)!)^2.
    """
    if n % 2 or m % 2:
        raise ValueError(f"i=0 requires even n and m, got (n={n}, m={m})")
    _check_nm(n, m)
    half = (n - m) // 2
    if half % 2:
        return _ZERO
    ratio = Fraction(math.factorial((n + m) // 2), math.factorial(half))
    inner = Fraction(double_factorial(half - 1), math.factorial((n + m) // 4))
    return pow2(1 - (n + m) // 2) * ratio * inner * inner


def c_i1_rec(n: int, m: int) -> Rational:
    """c[n, m, 1] by the three-term recurrence in n (odd n and m).

    Seeds at n = m and n = m+2 come from the product formulas; each later
    value solves
      (m+n)/2 (n-m)/2 (n/2-1)(n+1) c_n
        = ((n-m)/2-1)((n+m)/2-1)(n-3)/2 n c_{n-4}
        + ((m+n)/2 (n-m)/2 - n/2)(n-1) c_{n-2},
    with values below the n = m floor taken as hard zeros.
    """
    if n % 2 == 0 or m % 2 == 0:
        raise ValueError(f"i=1 requires odd n and m, got (n={n}, m={m})")
    _check_nm(n, m)
    if n == m:
        return c_mm(m, 1)
    prev2 = c_mm(m, 1)                              # c at m
    prev1 = c_product_low(CouplingIndex(m + 2, m, 1))
    if n == m + 2:
        return prev1
    for k in range(m + 4, n + 1, 2):
        kh = Fraction(k, 2)
        a = ((k - m) // 2 - 1) * ((k + m) // 2 - 1) * ((k - 3) // 2) * k
        b = (Fraction((k + m) * (k - m), 4) - kh) * (k - 1)
        cof = Fraction((k + m) * (k - m), 4) * (kh - 1) * (k + 1)
        prev2, prev1 = prev1, (a * prev2 + b * prev1) / cof
    return prev1


def _row_seed(n: int, m: int, i: int) -> Rational:
    return c_product_low(CouplingIndex(n, m, i)) if i <= m else c_product_high(CouplingIndex(n, m, i))


def _rec5_step(xs: list[int], n: int, m: int, i: int) -> int:
    """One five-term solve on the 2^n-scaled integer row; exact by construction."""
    n2, m2, i2 = n * n, m * m, i * i
    factors = (n + i, n - i, n - 4, n + m, n - 5, n - 6, n - m)
    assert min(factors) > 0, f"vanishing recurrence cofactor at (n={n}, m={m}, i={i})"
    lead = math.prod(factors)
    p2 = 4 * n - 4 * n2 - m2 * n - n * i2 + n2 * n + m2 * i2
    t2 = -4 * (n - 1) * p2 * (n - 5) * (n - 6)
    p4 = (
        32 - 72 * n - 2 * m2 - 3 * m2 * i2 - 2 * i2 + 48 * n2 + 6 * m2 * n
        - n2 * i2 + 6 * n * i2 - m2 * n2 - 12 * n2 * n + n2 * n2
    )
    t4 = -2 * (n - 3) * n * p4 * (n - 6)
    p6 = -96 + 64 * n + 6 * m2 - m2 * i2 + 6 * i2 - 14 * n2 - m2 * n - n * i2 + n2 * n
    t6 = 4 * p6 * n * (n - 1) * (n - 5)
    t8 = (n - m - 6) * (n - 2) * (n - 1) * n * (n - 6 + i) * (n - 6 - i) * (n + m - 6)
    rhs = -(4 * t2 * xs[-1] + 16 * t4 * xs[-2] + 64 * t6 * xs[-3] + 256 * t8 * xs[-4])
    x, r = divmod(rhs, lead)
    assert r == 0, f"five-term recurrence left a remainder at (n={n}, m={m}, i={i})"
    return x


class RowCache:
    """Memoized recurrence rows keyed by (m, i), plus an operation counter.

    A row carries c[n, m, i] for n = max(m, i), max(m, i)+2, ...; the first
    four lattice points are product-formula seeds and every later point costs
    exactly one five-term solve (``recurrence_steps`` counts them).  Rows for
    distinct (m, i) are independent; a completed row is immutable and can be
    shared freely.

    Internally a row is kept as integer numerators scaled by 2^n (the direct
    sum shows 2^n c is always an even integer), so extension is pure integer
    arithmetic with an exact-division check at every step.
    """

    def __init__(self) -> None:
        self._scaled: dict[tuple[int, int], list[int]] = {}
        self._values: dict[tuple[int, int], list[Rational]] = {}
        self.recurrence_steps = 0

    def row(self, m: int, i: int, n_max: int) -> list[Rational]:
        """Row values for n = max(m, i) .. n_max (step 2), extending the memo."""
        if m < 0 or i < 0 or (m - i) % 2:
            raise ValueError(f"invalid row (m={m}, i={i}): need m-i even, both >= 0")
        n0 = max(m, i)
        if n_max < n0:
            raise ValueError(f"n_max={n_max} below the row floor n={n0}")
        key = (m, i)
        xs = self._scaled.setdefault(key, [])
        vals = self._values.setdefault(key, [])
        n = n0 + 2 * len(xs)
        while n <= n_max:
            if len(xs) < 4:
                v = _row_seed(n, m, i)
                x, r = divmod(v.numerator << n, v.denominator)
                assert r == 0, f"non-dyadic seed at (n={n}, m={m}, i={i})"
            else:
                x = _rec5_step(xs, n, m, i)
                self.recurrence_steps += 1
                v = Fraction(x, 1 << n)
            xs.append(x)
            vals.append(v)
            n += 2
        return vals[: (n_max - n0) // 2 + 1]

    def value(self, n: int, m: int, i: int) -> Rational:
        return self.row(m, i, n)[(n - max(m, i)) // 2]


_shared_cache = RowCache()


def c_rec5_row(m: int, i: int, n_max: int, cache: RowCache | None = None) -> list[tuple[int, Rational]]:
    """Coefficients c[n, m, i] for n = max(m, i) .. n_max via the five-term recurrence.

    The four smallest lattice points are product-formula seeds; everything
    beyond is one recurrence solve each, entered only at n >= max(m, i) + 8
    where the leading cofactor is provably positive.
    """
    vals = (cache or _shared_cache).row(m, i, n_max)
    n0 = max(m, i)
    return [(n0 + 2 * k, v) for k, v in enumerate(vals)]


def _hyp_prefactor_low(n: int, m: int, i: int) -> Rational:
    sign = -1 if ((n - m) // 2) % 2 else 1
    return (
        sign
        * pow2(1 - m)
        * Fraction(
            math.factorial((n + m) // 2),
            math.factorial((n - m) // 2) * math.factorial((m - i) // 2) * math.factorial((m + i) // 2),
        )
    )


def c_hyp_low(n: int, m: int, i: int) -> Rational:
    """Terminating 4F3 re-summation of the i <= m case (cross-check path).

    c = prefactor * 4F3((m+1)/2, -(n-m)/2, 1+(n+m)/2, m/2+1;
                        m+1, 1+(m-i)/2, 1+(m+i)/2 | 1).
    """
    _check_nm(n, m)
    if i < 0 or i > m or (m - i) % 2:
        raise ValueError(f"hypergeometric low form needs 0 <= i <= m, m-i even; got (n={n}, m={m}, i={i})")
    params = PfqParams(
        upper=(Fraction(m + 1, 2), Fraction(-(n - m), 2), Fraction(n + m + 2, 2), Fraction(m + 2, 2)),
        lower=(Fraction(m + 1), Fraction(m - i + 2, 2), Fraction(m + i + 2, 2)),
    )
    return _hyp_prefactor_low(n, m, i) * pfq_terminating(params)


def c_hyp_high(n: int, m: int, i: int) -> Rational:
    """Terminating 4F3 re-summation of the i >= m case (cross-check path).

    c = (-1)^((n-i)/2) 2^(1-i) C((n+i)/2, i) C(i, (i-m)/2)
        * 4F3(1+(n+i)/2, (i+1)/2, 1+i/2, -(n-i)/2; 1+(m+i)/2, 1+i, 1+(i-m)/2 | 1).
    """
    _check_nm(n, m)
    if i < m or i > n or (i - m) % 2:
        raise ValueError(f"hypergeometric high form needs m <= i <= n, i-m even; got (n={n}, m={m}, i={i})")
    sign = -1 if ((n - i) // 2) % 2 else 1
    pref = sign * pow2(1 - i) * binomial((n + i) // 2, i) * binomial(i, (i - m) // 2)
    params = PfqParams(
        upper=(Fraction(n + i + 2, 2), Fraction(i + 1, 2), Fraction(i + 2, 2), Fraction(-(n - i), 2)),
        lower=(Fraction(m + i + 2, 2), Fraction(i + 1), Fraction(i - m + 2, 2)),
    )
    return pref * pfq_terminating(params)


def c_i1_hyp(n: int, m: int) -> Rational:
    """i = 1 as a terminating 3F2 (cross-check path; odd n and m).

    c = (-1)^((n-m)/2) 2^(1-m) ((n+m)/2)! / [((n-m)/2)! ((m-1)/2)! ((m+1)/2)!]
        * 3F2(-(n-m)/2, 1+(n+m)/2, m/2+1; m+1, 1+(m+1)/2 | 1).
    """
    if n % 2 == 0 or m % 2 == 0:
        raise ValueError(f"i=1 requires odd n and m, got (n={n}, m={m})")
    _check_nm(n, m)
    sign = -1 if ((n - m) // 2) % 2 else 1
    pref = sign * pow2(1 - m) * Fraction(
        math.factorial((n + m) // 2),
        math.factorial((n - m) // 2) * math.factorial((m - 1) // 2) * math.factorial((m + 1) // 2),
    )
    params = PfqParams(
        upper=(Fraction(-(n - m), 2), Fraction(n + m + 2, 2), Fraction(m + 2, 2)),
        lower=(Fraction(m + 1), Fraction(m + 3, 2)),
    )
    return pref * pfq_terminating(params)


def c_oracle_row(n: int, m: int) -> ChebSeries:
    """Full expansion of R_n^m by long division against Chebyshev leaders.

    From i = n downward: divide the current residual's x^i coefficient by the
    leading coefficient of T_i, subtract that multiple of T_i, and continue;
    at the constant term the stored coefficient is twice the ratio, matching
    the primed-sum storage.  The residual must cancel to the zero polynomial
    exactly, which makes this a formula-free oracle for every other method.
    """
    _check_nm(n, m)
    residual = zernike_poly(n, m)
    a = [_ZERO] * (n + 1)
    for k in range(n, 0, -2):
        c = residual.coefficient(k) / chebyshev_poly(k).leading_coefficient
        if c:
            a[k] = c
            residual = residual - c * chebyshev_poly(k)
    if n % 2 == 0:
        a[0] = 2 * residual.coefficient(0)
        residual = residual - Polynomial([a[0] / 2])
    if residual:
        raise RuntimeError(f"long division left a nonzero residual for (n={n}, m={m}): {residual!r}")
    return ChebSeries(a)


def c_best(idx: CouplingIndex, cache: RowCache | None = None) -> Rational:
    """Dispatcher: selection-rule zeros, then closed forms, then the recurrence.

    Closed forms win when the relevant gap is at most 3; otherwise the value
    comes from the memoized five-term row.  The choice is pure performance
    policy -- every route returns the same exact rational.
    """
    n, m, i = idx
    _check_nm(n, m)
    if _off_lattice(n, i):
        return _ZERO
    if i <= m and (n - m) // 2 <= 3:
        return c_product_low(idx)
    if i >= m and (n - i) // 2 <= 3:
        return c_product_high(idx)
    return (cache or _shared_cache).value(n, m, i)


@dataclass
class CouplingTable:
    """All coefficients on the parity lattice up to n_max.

    ``entries`` holds exactly the indices with 0 <= m <= n <= n_max, n-m even,
    0 <= i <= n, n-i even (zero values included).  ``recurrence_steps`` is the
    number of five-term solves spent building the table: O(1) per entry.
    """

    entries: dict[CouplingIndex, Rational]
    n_max: int
    recurrence_steps: int = 0

    def series(self, n: int, m: int) -> ChebSeries:
        """The stored expansion of R_n^m as a ChebSeries."""
        _check_nm(n, m)
        a = [_ZERO] * (n + 1)
        for i in range(n % 2, n + 1, 2):
            a[i] = self.entries[CouplingIndex(n, m, i)]
        return ChebSeries(a)


def build_table(n_max: int) -> CouplingTable:
    """Complete coefficient table for n <= n_max, one independent row per (m, i).

    Each row is seeded by the product formulas and extended by the five-term
    recurrence, so the total work is O(1) big-rational operations per entry.
    """
    if n_max < 0:
        raise ValueError(f"n_max must be >= 0, got {n_max}")
    cache = RowCache()
    entries: dict[CouplingIndex, Rational] = {}
    for m in range(n_max + 1):
        for i in range(m % 2, n_max + 1, 2):
            n0 = max(m, i)
            for k, v in enumerate(cache.row(m, i, n_max)):
                entries[CouplingIndex(n0 + 2 * k, m, i)] = v
    return CouplingTable(entries=entries, n_max=n_max, recurrence_steps=cache.recurrence_steps)


@dataclass
class MethodReport:
    """One coefficient computed by several methods, for cross-verification."""

    index: CouplingIndex
    values: dict[str, Rational] = field(default_factory=dict)
    agree: bool = True

    @classmethod
    def collect(cls, index: CouplingIndex, values: dict[str, Rational]) -> "MethodReport":
        distinct = set(values.values())
        return cls(index=index, values=dict(values), agree=len(distinct) <= 1)


def method_report(idx: CouplingIndex, cache: RowCache | None = None,
                  oracle: ChebSeries | None = None) -> MethodReport:
    """Run every method applicable at idx and bundle the results.

    ``oracle`` may pass a precomputed c_oracle_row(n, m) so sweeps do the long
    division once per (n, m) instead of once per i.
    """
    n, m, i = idx
    cache = cache or _shared_cache
    vals: dict[str, Rational] = {
        "direct": c_direct(idx),
        "best": c_best(idx, cache),
    }
    if not _off_lattice(n, i):
        row = oracle if oracle is not None else c_oracle_row(n, m)
        vals["oracle"] = row.a[i] if i < len(row.a) else _ZERO
        vals["rec5"] = cache.value(n, m, i)
        if n == m:
            vals["mm"] = c_mm(m, i)
        if i <= m and (n - m) // 2 <= 3:
            vals["product_low"] = c_product_low(idx)
        if i >= m and (n - i) // 2 <= 3:
            vals["product_high"] = c_product_high(idx)
        if i == 0:
            vals["i0"] = c_i0(n, m)
        if i == 1:
            vals["i1"] = c_i1_rec(n, m)
    return MethodReport.collect(idx, vals)
