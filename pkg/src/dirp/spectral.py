"""Sparse mean-zero trigonometric polynomials on T^d and their norms.

Everything is evaluated through Parseval on the coefficients: no
sampling anywhere.  The L2 normalization carries the (2*pi)^d factor of
the side-2*pi torus, so a two-term sine has squared norm 2*pi^2.
Dimensionless ratios are computed from the raw coefficient sums, where
the (2*pi)^d factors cancel identically.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .certified import CertifiedReal
from .constants import pi_cr
from .directions import Direction, inner_product
from .errors import DimensionMismatch, ParseError, ZeroFunction
from .precision import DEFAULT_CONTEXT, PrecisionContext, fraction_to_decimal_str

FreqVector = tuple[int, ...]


def freq_norm_sq(k: Sequence[int]) -> int:
    return sum(int(c) * int(c) for c in k)


def freq_max_norm(k: Sequence[int]) -> int:
    return max(abs(int(c)) for c in k)


def freq_norm_cr(k: Sequence[int]) -> CertifiedReal:
    """Euclidean |k| as an exact quadratic value sqrt(k.k)."""
    return CertifiedReal.from_rational(freq_norm_sq(k)).sqrt()


def _coerce_coeff(value) -> tuple[CertifiedReal, CertifiedReal]:
    if isinstance(value, tuple) and len(value) == 2:
        re, im = value
    else:
        re, im = value, 0
    def conv(x):
        if isinstance(x, CertifiedReal):
            return x
        if isinstance(x, float):
            raise TypeError("binary floats are rejected as coefficients; "
                            "pass int, Fraction, decimal str or CertifiedReal")
        if isinstance(x, str):
            return CertifiedReal.from_rational(Fraction(x))
        return CertifiedReal.from_rational(Fraction(x))
    return conv(re), conv(im)


class TrigPoly:
    """Finite map from integer frequency vectors to complex coefficients.

    The zero frequency is rejected unless drop_mean=True, in which case
    it is stripped (the polynomial is mean zero by construction).
    """

    def __init__(self, dim: int,
                 terms: Mapping[Sequence[int], object],
                 drop_mean: bool = False):
        if dim < 1:
            raise DimensionMismatch("dim must be >= 1")
        self.dim = dim
        store: dict[FreqVector, tuple[CertifiedReal, CertifiedReal]] = {}
        for k, coeff in terms.items():
            kt = tuple(int(c) for c in k)
            if len(kt) != dim:
                raise DimensionMismatch(f"frequency {kt} has length != dim={dim}")
            if all(c == 0 for c in kt):
                if drop_mean:
                    continue
                raise ValueError("zero frequency present (mean != 0); "
                                 "pass drop_mean=True to strip it")
            re, im = _coerce_coeff(coeff)
            if re.sign_soft() == 0 and im.sign_soft() == 0:
                continue
            store[kt] = (re, im)
        self.terms = store

    def __len__(self):
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def scale(self, factor) -> "TrigPoly":
        re_f, im_f = _coerce_coeff(factor)
        out = {}
        for k, (re, im) in self.terms.items():
            out[k] = (re * re_f - im * im_f, re * im_f + im * re_f)
        p = TrigPoly.__new__(TrigPoly)
        p.dim, p.terms = self.dim, {k: v for k, v in out.items()}
        return p

    # -- serialization ---------------------------------------------------

    def to_json(self, digits: int = DEFAULT_CONTEXT.working_digits) -> dict:
        def dec(x: CertifiedReal) -> str:
            if x.exact is not None and x.exact.is_rational:
                f = x.exact.as_fraction()
                den = f.denominator
                while den % 2 == 0:
                    den //= 2
                while den % 5 == 0:
                    den //= 5
                if den == 1:  # exact decimal exists
                    return fraction_to_decimal_str(f, max(len(str(abs(f.numerator))) + 4, 20))
            return fraction_to_decimal_str(x.midpoint(digits), digits)
        return {
            "dim": self.dim,
            "terms": [
                {"k": list(k), "re": dec(re), "im": dec(im)}
                for k, (re, im) in sorted(self.terms.items())
            ],
        }

    @classmethod
    def from_json(cls, data) -> "TrigPoly":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            terms = {tuple(t["k"]): (Fraction(t["re"]), Fraction(t["im"]))
                     for t in data["terms"]}
            return cls(int(data["dim"]), terms)
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed TrigPoly JSON: {exc}") from exc


# -- coefficient sums ------------------------------------------------------

def _abs_sq(coeff: tuple[CertifiedReal, CertifiedReal]) -> CertifiedReal:
    re, im = coeff
    return re * re + im * im


def _raw_sum(f: TrigPoly,
             weight_sq: Callable[[FreqVector], object] | None = None) -> CertifiedReal:
    """Sum over terms of |a_k|^2 * w(k)^2 (w == 1 when weight_sq is None)."""
    total = CertifiedReal.from_rational(0)
    for k, coeff in sorted(f.terms.items()):
        contrib = _abs_sq(coeff)
        if weight_sq is not None:
            w2 = weight_sq(k)
            if not isinstance(w2, CertifiedReal):
                w2 = CertifiedReal.from_rational(w2)
            contrib = contrib * w2
        total = total + contrib
    return total


def _two_pi_pow(d: int) -> CertifiedReal:
    return (pi_cr() * 2).pow_int(d)


def _require_nonzero(f: TrigPoly, ctx: PrecisionContext) -> CertifiedReal:
    if f.is_zero():
        raise ZeroFunction("operation needs a nonzero polynomial")
    s0 = _raw_sum(f)
    if s0.sign(ctx) == 0:
        raise ZeroFunction("all coefficients are certified zero")
    return s0


# -- norms -----------------------------------------------------------------

def l2_norm(f: TrigPoly, ctx: PrecisionContext = DEFAULT_CONTEXT) -> CertifiedReal:
    """sqrt((2*pi)^d * sum |a_k|^2)."""
    return (_two_pi_pow(f.dim) * _raw_sum(f)).sqrt()


def grad_norm(f: TrigPoly, ctx: PrecisionContext = DEFAULT_CONTEXT) -> CertifiedReal:
    """sqrt((2*pi)^d * sum |k|^2 |a_k|^2)."""
    s = _raw_sum(f, lambda k: Fraction(freq_norm_sq(k)))
    return (_two_pi_pow(f.dim) * s).sqrt()


def directional_norm(f: TrigPoly, a: Direction,
                     ctx: PrecisionContext = DEFAULT_CONTEXT) -> CertifiedReal:
    """sqrt((2*pi)^d * sum |a_k|^2 <k,alpha>^2), with cancellation-safe
    evaluation of the inner products."""
    if f.dim != a.dim:
        raise DimensionMismatch(f"poly dim {f.dim} vs direction dim {a.dim}")

    def weight_sq(k):
        ip = inner_product(k, a)
        ip.sign(ctx)  # raises PrecisionExhausted on an unresolvable near-zero
        return ip * ip

    s = _raw_sum(f, weight_sq)
    return (_two_pi_pow(f.dim) * s).sqrt()


def multiplier_norm(f: TrigPoly, symbol: Callable[[FreqVector], object],
                    ctx: PrecisionContext = DEFAULT_CONTEXT) -> CertifiedReal:
    """sqrt((2*pi)^d * sum |a_k|^2 |P(k)|^2) for a diagonal symbol P."""
    def weight_sq(k):
        p = symbol(k)
        if not isinstance(p, CertifiedReal):
            p = CertifiedReal.from_rational(p)
        return p * p
    s = _raw_sum(f, weight_sq)
    return (_two_pi_pow(f.dim) * s).sqrt()


def directional_symbol(a: Direction, s_power: int = 0) -> Callable[[FreqVector], CertifiedReal]:
    """Symbol k -> <k,alpha> * |k|^s_power (s_power = d-1 gives the
    substantial-fluctuation variant of the directional derivative)."""
    def symbol(k):
        ip = inner_product(k, a)
        if s_power == 0:
            return ip
        return ip * CertifiedReal.from_rational(freq_norm_sq(k)).pow_frac(Fraction(s_power, 2))
    return symbol


# -- functionals -----------------------------------------------------------

def poincare_ratio(f: TrigPoly, a: Direction, exp_grad, exp_dir,
                   ctx: PrecisionContext = DEFAULT_CONTEXT) -> CertifiedReal:
    """grad^eg * dir^ed / l2^(eg+ed); dimensionless and scale invariant.
    Computed from the raw coefficient sums so the (2*pi)^d factors cancel
    identically.  The single-exponential infimum of this ratio over the
    ball |k| <= R is an upper bound for the best constant, not the
    constant itself; see diophantine.lattice_min."""
    exp_grad, exp_dir = Fraction(exp_grad), Fraction(exp_dir)
    if exp_grad < 0 or exp_dir < 0 or exp_grad + exp_dir == 0:
        raise ValueError("exponents must be >= 0 and not both 0")
    s0 = _require_nonzero(f, ctx)
    if f.dim != a.dim:
        raise DimensionMismatch(f"poly dim {f.dim} vs direction dim {a.dim}")
    sg = _raw_sum(f, lambda k: Fraction(freq_norm_sq(k)))

    def weight_sq(k):
        ip = inner_product(k, a)
        ip.sign(ctx)
        return ip * ip

    sd = _raw_sum(f, weight_sq)
    num = sg.pow_frac(exp_grad / 2) * sd.pow_frac(exp_dir / 2)
    den = s0.pow_frac((exp_grad + exp_dir) / 2)
    return num / den


def multi_directional_functional(f: TrigPoly, dirs: Sequence[Direction],
                                 exp_grad=None, exp_sum=None,
                                 ctx: PrecisionContext = DEFAULT_CONTEXT) -> CertifiedReal:
    """grad^eg * (sum_i dir_i)^es / l2^(eg+es) for several directions.
    Defaults: eg = d-1, es = ell; the improved variant uses (d-ell, ell)."""
    ell = len(dirs)
    d = f.dim
    if not 1 <= ell <= max(d - 1, 1):
        raise DimensionMismatch(f"need 1 <= ell <= d-1, got ell={ell}, d={d}")
    for a in dirs:
        if a.dim != d:
            raise DimensionMismatch("direction dimension mismatch")
    exp_grad = Fraction(exp_grad) if exp_grad is not None else Fraction(d - 1)
    exp_sum = Fraction(exp_sum) if exp_sum is not None else Fraction(ell)
    s0 = _require_nonzero(f, ctx)
    sg = _raw_sum(f, lambda k: Fraction(freq_norm_sq(k)))
    dir_sum = CertifiedReal.from_rational(0)
    for a in dirs:
        def weight_sq(k, a=a):
            ip = inner_product(k, a)
            ip.sign(ctx)
            return ip * ip
        dir_sum = dir_sum + _raw_sum(f, weight_sq).sqrt()
    num = sg.pow_frac(exp_grad / 2) * dir_sum.pow_frac(exp_sum)
    den = s0.pow_frac((exp_grad + exp_sum) / 2)
    return num / den


def half_mass_cutoff(f: TrigPoly,
                     ctx: PrecisionContext = DEFAULT_CONTEXT
                     ) -> tuple[CertifiedReal, CertifiedReal]:
    """radius = 2*grad/l2 and the coefficient-mass fraction at |k| >= radius.
    The tail fraction is <= 1/2 for every nonzero polynomial."""
    s0 = _require_nonzero(f, ctx)
    sg = _raw_sum(f, lambda k: Fraction(freq_norm_sq(k)))
    radius = (sg / s0).sqrt() * 2
    tail = CertifiedReal.from_rational(0)
    for k, coeff in sorted(f.terms.items()):
        # |k| >= radius  <=>  |k|^2 * s0 - 4*sg >= 0
        gap = s0 * freq_norm_sq(k) - sg * 4
        if gap.sign(ctx) >= 0:
            tail = tail + _abs_sq(coeff)
    return radius, tail / s0
