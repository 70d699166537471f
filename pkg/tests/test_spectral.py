"""Parseval norms, multipliers and weighted ratios on trigonometric polynomials."""

import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dirp.directions import make_direction
from dirp.errors import DimensionMismatch, ZeroFunction
from dirp.extremizers import fibonacci_family, liouville_family
from dirp.quadratic import GOLDEN_RATIO, SQRT2
from dirp.spectral import (TrigPoly, directional_norm, directional_symbol,
                           grad_norm, half_mass_cutoff, l2_norm,
                           multi_directional_functional, multiplier_norm,
                           poincare_ratio)

mpmath.mp.dps = 80


def mpf_to_frac(v) -> Fraction:
    from mpmath.libmp import to_rational
    p, q = to_rational(v._mpf_)
    return Fraction(int(p), int(q))


def assert_close_mp(cr, mp_value, tol_exp=40):
    lo, hi = cr.enclosure(tol_exp + 20)
    v = mpf_to_frac(mpmath.mpf(mp_value))
    tol = Fraction(1, 10 ** tol_exp)
    assert lo - tol <= v <= hi + tol, (float(lo), float(v), float(hi))


frequencies = st.tuples(st.integers(-40, 40), st.integers(-40, 40)).filter(
    lambda k: k != (0, 0))
coefficients = st.tuples(
    st.fractions(min_value=Fraction(-4), max_value=Fraction(4), max_denominator=16),
    st.fractions(min_value=Fraction(-4), max_value=Fraction(4), max_denominator=16),
).filter(lambda c: c != (Fraction(0), Fraction(0)))
polys = st.dictionaries(frequencies, coefficients, min_size=1, max_size=12).map(
    lambda terms: TrigPoly(2, terms))


class TestTrigPoly:
    def test_zero_frequency_rejected(self):
        with pytest.raises(ValueError):
            TrigPoly(2, {(0, 0): 1})

    def test_drop_mean(self):
        p = TrigPoly(2, {(0, 0): 1, (1, 0): 1}, drop_mean=True)
        assert len(p) == 1

    def test_dim_mismatch(self):
        with pytest.raises(DimensionMismatch):
            TrigPoly(2, {(1, 0, 0): 1})

    def test_binary_float_coefficient_rejected(self):
        with pytest.raises(TypeError):
            TrigPoly(2, {(1, 0): 0.5})

    def test_json_round_trip(self):
        p = TrigPoly(2, {(3, -4): (Fraction(1, 2), Fraction(-1, 4)), (1, 1): 2})
        q = TrigPoly.from_json(p.to_json())
        assert q.terms.keys() == p.terms.keys()
        for k in p.terms:
            assert q.terms[k][0].exact == p.terms[k][0].exact
            assert q.terms[k][1].exact == p.terms[k][1].exact


class TestNorms:
    def test_zero_poly_norms_are_zero(self):
        p = TrigPoly(2, {})
        assert l2_norm(p).sign() == 0
        assert grad_norm(p).sign() == 0

    def test_single_unit_coefficient(self):
        # one unit exponential in d = 2: squared norm (2 pi)^2
        p = TrigPoly(2, {(3, 4): 1})
        assert_close_mp(l2_norm(p), 2 * mpmath.pi, 60)

    def test_two_term_sine_norm_is_pi_sqrt2(self):
        f = fibonacci_family(5).poly
        assert_close_mp(l2_norm(f), mpmath.pi * mpmath.sqrt(2), 60)

    @given(k=frequencies)
    @settings(max_examples=40, deadline=None)
    def test_grad_is_freq_norm_times_l2_single_frequency(self, k):
        p = TrigPoly(2, {k: (Fraction(1, 2), Fraction(1, 3))})
        ratio = grad_norm(p) / l2_norm(p)
        target = mpmath.sqrt(k[0] ** 2 + k[1] ** 2)
        assert_close_mp(ratio, target, 40)

    def test_liouville_gradient_ratio_integer_oracle(self):
        f = liouville_family(3).poly
        ratio = grad_norm(f) / l2_norm(f)
        # exact integer oracle for |k|^2
        target_sq = 110001 ** 2 + 10 ** 12
        diff = ratio * ratio - target_sq
        lo, hi = diff.enclosure(60)
        assert -Fraction(1, 10 ** 40) <= lo and hi <= Fraction(1, 10 ** 40)

    def test_fibonacci_gradient_ratio(self):
        f = fibonacci_family(10).poly  # sin(89 x - 55 y)
        ratio = grad_norm(f) / l2_norm(f)
        assert_close_mp(ratio, mpmath.sqrt(10946), 40)

    def test_directional_exact_zero(self):
        a = make_direction([1, 0])
        p = TrigPoly(2, {(0, 7): 1})
        assert directional_norm(p, a).sign() == 0

    def test_directional_quadratic_value(self):
        a = make_direction([SQRT2, 1])
        p = TrigPoly(2, {(1, -1): 1})
        ratio = directional_norm(p, a) / l2_norm(p)
        assert_close_mp(ratio, mpmath.sqrt(2) - 1, 50)

    def test_directional_dim_mismatch(self):
        with pytest.raises(DimensionMismatch):
            directional_norm(TrigPoly(2, {(1, 0): 1}), make_direction([1, 2, 3]))


class TestMultiplier:
    def test_identity_symbol(self):
        p = TrigPoly(2, {(2, 1): (1, 2), (5, -3): 1})
        diff = multiplier_norm(p, lambda k: 1) - l2_norm(p)
        lo, hi = diff.enclosure(60)
        assert -Fraction(1, 10 ** 50) <= lo and hi <= Fraction(1, 10 ** 50)

    def test_freq_norm_symbol_is_gradient(self):
        from dirp.spectral import freq_norm_cr
        p = TrigPoly(2, {(2, 1): (1, 2), (5, -3): 1})
        diff = multiplier_norm(p, freq_norm_cr) - grad_norm(p)
        lo, hi = diff.enclosure(60)
        assert -Fraction(1, 10 ** 50) <= lo and hi <= Fraction(1, 10 ** 50)

    def test_directional_symbol_fibonacci_products(self):
        # <k,alpha>|k| at Fibonacci frequencies approaches the golden floor
        a = make_direction([1, GOLDEN_RATIO])
        sym = directional_symbol(a, s_power=1)
        phi = (1 + mpmath.sqrt(5)) / 2
        limit = mpmath.sqrt(1 + phi * phi) / mpmath.sqrt(5)
        for n, tol in ((10, 1e-3), (15, 1e-5)):
            m = fibonacci_family(n)
            p = TrigPoly(2, {m.frequency: 1})
            val = multiplier_norm(p, sym) / l2_norm(p)
            assert abs(float(val) - float(limit)) < tol


class TestPoincareRatio:
    def test_single_frequency_rational_oracle(self):
        a = make_direction([1, Fraction(2, 7)])
        k = (3, -5)
        p = TrigPoly(2, {k: 1})
        val = poincare_ratio(p, a, 2, 1)
        # |k|^2 * |<k, alpha>| exactly, by hand
        target = Fraction(34) * abs(Fraction(3) - 5 * Fraction(2, 7))
        lo, hi = val.enclosure(60)
        assert lo <= target <= hi and hi - lo < Fraction(1, 10 ** 50)

    @given(p=polys, c=st.fractions(min_value=Fraction(1, 8),
                                   max_value=Fraction(8), max_denominator=64))
    @settings(max_examples=25, deadline=None)
    def test_scale_invariance(self, p, c):
        a = make_direction([1, GOLDEN_RATIO])
        r1 = poincare_ratio(p, a, 1, 1)
        r2 = poincare_ratio(p.scale(c), a, 1, 1)
        diff = r1 - r2
        lo, hi = diff.enclosure(40)
        assert -Fraction(1, 10 ** 30) <= lo and hi <= Fraction(1, 10 ** 30)

    def test_zero_poly_rejected(self):
        with pytest.raises(ZeroFunction):
            poincare_ratio(TrigPoly(2, {}), make_direction([1, 2]), 1, 1)

    def test_bad_exponents(self):
        p = TrigPoly(2, {(1, 0): 1})
        with pytest.raises(ValueError):
            poincare_ratio(p, make_direction([1, 2]), 0, 0)

    def test_multi_directional_single_reduces(self):
        a = make_direction([1, GOLDEN_RATIO])
        p = TrigPoly(2, {(2, -1): 1, (8, -5): (0, Fraction(1, 2))})
        r1 = poincare_ratio(p, a, 1, 1)
        r2 = multi_directional_functional(p, [a], 1, 1)
        diff = r1 - r2
        lo, hi = diff.enclosure(40)
        assert -Fraction(1, 10 ** 30) <= lo and hi <= Fraction(1, 10 ** 30)

    def test_multi_directional_single_frequency_oracle(self):
        dirs = [make_direction([1, Fraction(1, 3), Fraction(1, 7)]),
                make_direction([0, 1, Fraction(2, 5)])]
        k = (2, -3, 5)
        p = TrigPoly(3, {k: 1})
        val = multi_directional_functional(p, dirs, 2, 2)
        ip1 = abs(2 - 1 + Fraction(5, 7))
        ip2 = abs(-3 + 2)
        target = mpmath.mpf(38) * mpmath.mpf(float(ip1 + ip2)) ** 2
        assert abs(float(val) - float(target)) < 1e-10

    def test_multi_directional_ell_bounds(self):
        p = TrigPoly(2, {(1, 0): 1})
        dirs = [make_direction([1, 2]), make_direction([1, 3])]
        with pytest.raises(DimensionMismatch):
            multi_directional_functional(p, dirs)


class TestHalfMass:
    def test_single_frequency(self):
        p = TrigPoly(2, {(3, 4): 1})
        radius, tail = half_mass_cutoff(p)
        lo, hi = radius.enclosure(40)
        assert lo <= 10 <= hi  # 2|k| = 10
        assert tail.exact.as_fraction() == 0

    def test_two_frequencies_equal_mass(self):
        p = TrigPoly(2, {(1, 0): 1, (10, 0): 1})
        radius, tail = half_mass_cutoff(p)
        # radius = 2 sqrt(101/2) ~ 14.2: both frequencies lie strictly below
        assert abs(float(radius) - 2 * math.sqrt(101 / 2)) < 1e-12
        assert tail.exact.as_fraction() == 0

    def test_boundary_counts_as_tail(self):
        # equal mass at |k| = 1 and |k| = 3: radius = 2 sqrt(5) < 3? no:
        # 2 sqrt(5) ~ 4.47 > 3, tail 0; push mass outward instead
        p = TrigPoly(2, {(1, 0): (1, 0), (20, 0): (Fraction(1, 100), 0)})
        radius, tail = half_mass_cutoff(p)
        assert tail.exact.as_fraction() <= Fraction(1, 2)

    @given(p=polys)
    @settings(max_examples=60, deadline=None)
    def test_tail_at_most_half(self, p):
        _, tail = half_mass_cutoff(p)
        assert tail.exact is not None
        assert tail.exact.as_fraction() <= Fraction(1, 2)
