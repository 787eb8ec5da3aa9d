"""Boros-Moll coefficient rows: four independent exact generators, three evaluators.

The degree-m Boros-Moll polynomial P_m(a) = sum_i d_i(m) a^i has strictly
positive coefficients with 4^m * d_i(m) an integer, so a row {d_i(m)} is
stored as canonical dyadic rationals.  The generation routes are

  closed form   d_i(m) = 4^-m * sum_{k=i..m} 2^k C(2m-2k, m-k) C(m+k, k) C(k, i)
  recu1         d_i(m+1) from d_{i-1}(m), d_i(m)
  recu2         d_i(m+1) from d_i(m), d_{i+1}(m)   (top entry from the
                boundary identity d_n(n) = 2^-n C(2n, n))
  recu3         d_i(m+2) from d_i(m+1), d_i(m)     (two-step; same boundary)

plus the four-term contiguous relation recu4, which must vanish identically
on every valid row and therefore doubles as a corruption detector.

Internally each generator works on the integer vector 4^m * d_i(m); every
recurrence step then is one exact integer division, which is asserted exact.
Out-of-range entries follow the convention d_{-1}(m) = d_{m+1}(m) = 0.

P_m can also be evaluated exactly at any rational point by three routes that
must agree: the defining (j,k) double sum, the terminating 2F1-style series
(m+1 terms, built by incremental term ratios), and Horner evaluation of a
generated row.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Sequence

from .exactnum import BinomialCache, Dyadic, decimal_string, default_cache

__all__ = [
    "Method",
    "CoeffRow",
    "closed_form_row",
    "recu1_row",
    "recu2_row",
    "recu3_row",
    "recu4_residual",
    "rows",
    "double_sum_eval",
    "hypergeometric_eval",
    "eval_poly",
    "row_to_json",
    "row_from_json",
    "row_csv_lines",
]


class Method(str, Enum):
    """Provenance tag for a generated row."""

    CLOSED_FORM = "closed-form"
    RECU1 = "recu1"
    RECU2 = "recu2"
    RECU3 = "recu3"
    DOUBLE_SUM = "double-sum"


@dataclass(frozen=True)
class CoeffRow:
    """The sequence {d_i(m)} for one m, immutable after generation."""

    m: int
    coeffs: tuple[Dyadic, ...]
    method: Method

    def __post_init__(self) -> None:
        if self.m < 0:
            raise ValueError(f"m must be nonnegative, got {self.m}")
        if len(self.coeffs) != self.m + 1:
            raise ValueError(
                f"row for m={self.m} needs {self.m + 1} entries, got {len(self.coeffs)}"
            )
        for i, c in enumerate(self.coeffs):
            if c.num <= 0:
                raise ValueError(f"d_{i}({self.m}) = {c} is not positive")
            if c.exp > 2 * self.m:
                raise ValueError(f"d_{i}({self.m}) = {c} is not an integer over 4^m")

    def d(self, i: int) -> Dyadic:
        """d_i(m), with zero outside 0 <= i <= m."""
        if 0 <= i <= self.m:
            return self.coeffs[i]
        return Dyadic(0)

    def __len__(self) -> int:
        return self.m + 1

    def __iter__(self):
        return iter(self.coeffs)


def _scaled(row: CoeffRow) -> list[int]:
    """The integer vector 4^m * d_i(m)."""
    two_m = 2 * row.m
    return [c.num << (two_m - c.exp) for c in row.coeffs]


def _from_scaled(m: int, scaled: Sequence[int], method: Method) -> CoeffRow:
    return CoeffRow(m, tuple(Dyadic(e, 2 * m) for e in scaled), method)


def _exact_div(num: int, den: int, context: str) -> int:
    q, r = divmod(num, den)
    if r:
        raise ArithmeticError(f"{context}: {num} not divisible by {den}")
    return q


def closed_form_row(m: int, cache: BinomialCache | None = None) -> CoeffRow:
    """Generate {d_i(m)} from the single-sum closed form."""
    if m < 0:
        raise ValueError(f"m must be nonnegative, got {m}")
    cache = cache or default_cache()
    cache.ensure_rows(2 * m)
    # weight of C(k, i) in 4^m d_i(m)
    weights = [
        (1 << k) * cache.binomial(2 * m - 2 * k, m - k) * cache.binomial(m + k, k)
        for k in range(m + 1)
    ]
    scaled = [
        sum(weights[k] * cache.binomial(k, i) for k in range(i, m + 1))
        for i in range(m + 1)
    ]
    return _from_scaled(m, scaled, Method.CLOSED_FORM)


def recu1_row(prev: CoeffRow) -> CoeffRow:
    """Row m+1 from row m via the two-term same-level recurrence."""
    m = prev.m
    e = _scaled(prev)

    def at(i: int) -> int:
        return e[i] if 0 <= i <= m else 0

    scaled = [
        _exact_div(
            4 * (m + i) * at(i - 1) + 2 * (4 * m + 2 * i + 3) * at(i),
            m + 1,
            f"recu1 m={m} i={i}",
        )
        for i in range(m + 2)
    ]
    return _from_scaled(m + 1, scaled, Method.RECU1)


def recu2_row(prev: CoeffRow, cache: BinomialCache | None = None) -> CoeffRow:
    """Row m+1 from row m via the downward recurrence.

    This route only reaches 0 <= i <= m (its denominator vanishes at
    i = m+1); the top entry is filled from d_n(n) = 2^-n C(2n, n).
    """
    m = prev.m
    cache = cache or default_cache()
    e = _scaled(prev)

    def at(i: int) -> int:
        return e[i] if 0 <= i <= m else 0

    scaled = [
        _exact_div(
            2 * (4 * m - 2 * i + 3) * (m + i + 1) * at(i) - 4 * i * (i + 1) * at(i + 1),
            (m + 1) * (m + 1 - i),
            f"recu2 m={m} i={i}",
        )
        for i in range(m + 1)
    ]
    scaled.append((1 << (m + 1)) * cache.binomial(2 * m + 2, m + 1))
    return _from_scaled(m + 1, scaled, Method.RECU2)


def recu3_row(
    prev2: CoeffRow, prev1: CoeffRow, cache: BinomialCache | None = None
) -> CoeffRow:
    """Row m+2 from rows m and m+1 via the two-step recurrence.

    Reaches 0 <= i <= m+1; the top entry is filled from the same boundary
    identity as recu2.
    """
    m = prev2.m
    if prev1.m != m + 1:
        raise ValueError(f"need consecutive rows, got m={m} and m={prev1.m}")
    cache = cache or default_cache()
    e0, e1 = _scaled(prev2), _scaled(prev1)

    def at(e: list[int], top: int, i: int) -> int:
        return e[i] if 0 <= i <= top else 0

    scaled = [
        _exact_div(
            2 * (-4 * i * i + 8 * m * m + 24 * m + 19) * (m + 1) * at(e1, m + 1, i)
            - 4 * (m + i + 1) * (4 * m + 3) * (4 * m + 5) * at(e0, m, i),
            (m + 2 - i) * (m + 1) * (m + 2),
            f"recu3 m={m} i={i}",
        )
        for i in range(m + 2)
    ]
    scaled.append((1 << (m + 2)) * cache.binomial(2 * m + 4, m + 2))
    return _from_scaled(m + 2, scaled, Method.RECU3)


def recu4_residual(row: CoeffRow, i: int) -> Dyadic:
    """Left side of the four-term contiguous relation at index i.

    Exactly zero on every valid row for 0 <= i <= m+1; a nonzero value
    pinpoints a corrupted entry.
    """
    m = row.m
    if not 0 <= i <= m + 1:
        raise ValueError(f"residual index {i} outside 0..{m + 1}")
    return (
        (m + 2 - i) * (m + i - 1) * row.d(i - 2)
        - (i - 1) * (2 * m + 1) * row.d(i - 1)
        + i * (i - 1) * row.d(i)
    )


def rows(method: Method | str, m_max: int, cache: BinomialCache | None = None) -> list[CoeffRow]:
    """All rows for 0 <= m <= m_max by one generation route.

    The recurrence routes are seeded from the closed form where the route
    itself cannot start (m=0, and additionally m=1 for the two-step route).
    """
    method = Method(method)
    cache = cache or default_cache()
    if method is Method.CLOSED_FORM:
        return [closed_form_row(m, cache) for m in range(m_max + 1)]
    out = [closed_form_row(0, cache)]
    if method is Method.RECU1:
        for _ in range(m_max):
            out.append(recu1_row(out[-1]))
    elif method is Method.RECU2:
        for _ in range(m_max):
            out.append(recu2_row(out[-1], cache))
    elif method is Method.RECU3:
        if m_max >= 1:
            out.append(closed_form_row(1, cache))
        while len(out) <= m_max:
            out.append(recu3_row(out[-2], out[-1], cache))
    else:
        raise ValueError(f"no row generator for method {method.value}")
    return out[: m_max + 1]


# -- exact evaluation of P_m at rational points ------------------------------


def _as_fraction(a: Fraction | Dyadic | int) -> Fraction:
    if isinstance(a, Dyadic):
        return a.as_fraction()
    return Fraction(a)


def double_sum_eval(
    m: int, a: Fraction | Dyadic | int, cache: BinomialCache | None = None
) -> Fraction:
    """P_m(a) by the defining double sum over (j, k), exactly."""
    if m < 0:
        raise ValueError(f"m must be nonnegative, got {m}")
    cache = cache or default_cache()
    cache.ensure_rows(2 * m + 1)
    af = _as_fraction(a)
    up, down = af + 1, af - 1
    total = Fraction(0)
    for j in range(m + 1):
        cj = cache.binomial(2 * m + 1, 2 * j)
        for k in range(m - j + 1):
            w = cj * cache.binomial(m - j, k) * cache.binomial(2 * k + 2 * j, k + j)
            total += w * up**j * down**k / Fraction(1 << (3 * (k + j)))
    return total


def hypergeometric_eval(
    m: int, a: Fraction | Dyadic | int, cache: BinomialCache | None = None
) -> Fraction:
    """P_m(a) as a terminating hypergeometric-style series, exactly.

    The m+1 terms are accumulated by incremental term ratios; the half-odd
    lower parameter makes every ratio denominator a nonzero odd integer, so
    the series is exact in rational arithmetic for every rational a.
    """
    if m < 0:
        raise ValueError(f"m must be nonnegative, got {m}")
    cache = cache or default_cache()
    z = (_as_fraction(a) + 1) / 2
    term = Fraction(1)
    total = Fraction(1)
    for k in range(m):
        term *= Fraction(2 * (k - m) * (m + 1 + k), (2 * k - 2 * m + 1) * (k + 1)) * z
        total += term
    return Fraction(cache.binomial(2 * m, m), 1 << (2 * m)) * total


def eval_poly(row: CoeffRow, a: Fraction | Dyadic | int) -> Fraction:
    """P_m(a) by Horner evaluation of a generated row, exactly."""
    af = _as_fraction(a)
    acc = Fraction(0)
    for c in reversed(row.coeffs):
        acc = acc * af + c.as_fraction()
    return acc


# -- serialization ------------------------------------------------------------


def row_to_json(row: CoeffRow) -> dict:
    return {
        "m": row.m,
        "method": row.method.value,
        "coeffs": [str(c) for c in row.coeffs],
    }


def row_from_json(obj: dict) -> CoeffRow:
    return CoeffRow(
        int(obj["m"]),
        tuple(Dyadic.parse(s) for s in obj["coeffs"]),
        Method(obj["method"]),
    )


def row_csv_lines(row: CoeffRow, digits: int = 20) -> Iterable[str]:
    yield "m,i,dyadic,decimal"
    for i, c in enumerate(row.coeffs):
        yield f"{row.m},{i},{c},{decimal_string(c, digits)}"
