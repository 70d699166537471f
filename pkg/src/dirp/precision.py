"""Precision policy and exact interval helpers on top of Fraction.

All rigorous enclosures in the toolkit are pairs of Fractions (lo, hi)
with the true value guaranteed inside.  Endpoints are rounded outward to
a decimal grid after each operation so denominators stay bounded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext, ROUND_HALF_EVEN, ROUND_CEILING
from fractions import Fraction


@dataclass(frozen=True)
class PrecisionContext:
    """Working precision (decimal digits) and the hard cap for refinement."""

    working_digits: int = 80
    max_digits: int = 100_000

    def __post_init__(self):
        if self.working_digits < 30 or self.max_digits < 30:
            raise ValueError("working_digits and max_digits must be >= 30")
        if self.working_digits > self.max_digits:
            raise ValueError("working_digits must not exceed max_digits")


DEFAULT_CONTEXT = PrecisionContext()


def round_out(lo: Fraction, hi: Fraction, digits: int) -> tuple[Fraction, Fraction]:
    """Round an interval outward onto the 10^-digits grid."""
    s = 10 ** digits
    return (Fraction(math.floor(lo * s), s), Fraction(math.ceil(hi * s), s))


def iroot(n: int, k: int) -> int:
    """floor(n ** (1/k)) for n >= 0, k >= 1, by Newton iteration on ints."""
    if n < 0:
        raise ValueError("iroot of negative number")
    if k < 1:
        raise ValueError("root order must be >= 1")
    if n == 0:
        return 0
    if k == 1:
        return n
    if k == 2:
        return math.isqrt(n)
    x = 1 << -(-n.bit_length() // k)  # >= true root
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    while x ** k > n:
        x -= 1
    return x


def nth_root_interval(lo: Fraction, hi: Fraction, k: int, digits: int) -> tuple[Fraction, Fraction]:
    """Enclosure of [lo, hi] ** (1/k) for 0 <= lo <= hi."""
    if lo < 0:
        lo = Fraction(0)  # clip: caller guarantees the true value is >= 0
    s = 10 ** digits
    sk = s ** k
    a = iroot((lo.numerator * sk) // lo.denominator, k)
    t = -((-hi.numerator * sk) // hi.denominator)  # ceil(hi * s^k)
    b = iroot(t, k)
    if b ** k < t:
        b += 1
    return (Fraction(a, s), Fraction(b, s))


def pow_interval(lo: Fraction, hi: Fraction, exponent: Fraction, digits: int) -> tuple[Fraction, Fraction]:
    """Enclosure of [lo, hi] ** exponent for nonnegative base and exponent."""
    if exponent < 0:
        raise ValueError("pow_interval needs exponent >= 0")
    p, q = exponent.numerator, exponent.denominator
    if p == 0:
        return (Fraction(1), Fraction(1))
    if lo < 0:
        lo = Fraction(0)
    plo, phi = lo ** p, hi ** p
    if q == 1:
        return (plo, phi)
    return nth_root_interval(plo, phi, q, digits)


def mul_interval(a: tuple[Fraction, Fraction], b: tuple[Fraction, Fraction]) -> tuple[Fraction, Fraction]:
    products = (a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    return (min(products), max(products))


def fraction_to_decimal_str(x: Fraction, sig: int, rounding=ROUND_HALF_EVEN) -> str:
    """Deterministic decimal string with `sig` significant digits."""
    with localcontext() as dctx:
        dctx.prec = max(sig, 1)
        dctx.rounding = rounding
        d = Decimal(x.numerator) / Decimal(x.denominator)
    return str(d)


def fraction_to_decimal_str_up(x: Fraction, sig: int) -> str:
    """Decimal string rounded away from zero (for radii: never understate)."""
    if x < 0:
        raise ValueError("radius must be nonnegative")
    return fraction_to_decimal_str(x, sig, rounding=ROUND_CEILING)
