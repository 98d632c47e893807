import random
from fractions import Fraction

import numpy as np
import pytest

from darboux.polynomial import (
    NormValue,
    Poly,
    RatFun,
    det_cofactor,
    hermite_he,
    poly_det_bareiss,
    poly_gcd,
    sturm_real_root_count,
)


def P(*coeffs):
    return Poly(coeffs)


class TestPoly:
    def test_canonical_zero(self):
        assert Poly((0, 0)).is_zero
        assert Poly(()).coeffs == ()
        assert Poly((1, 0)).coeffs == (1,)

    def test_arithmetic(self):
        p = P(1, 2)  # 1 + 2x
        q = P(0, 0, 3)  # 3x^2
        assert p + q == P(1, 2, 3)
        assert p - p == Poly.zero()
        assert p * q == P(0, 0, 3, 6)
        assert 2 * p == P(2, 4)
        assert p ** 3 == P(1, 6, 12, 8)

    def test_divmod_exact(self):
        num = P(-1, 0, 1)  # x^2 - 1
        q, r = divmod(num, P(-1, 1))  # / (x - 1)
        assert q == P(1, 1) and r.is_zero
        q, r = divmod(P(1, 0, 1), P(1, 1))
        assert q == P(-1, 1) and r == P(2)
        with pytest.raises(ZeroDivisionError):
            divmod(num, Poly.zero())
        with pytest.raises(ArithmeticError):
            P(1, 0, 1).exact_div(P(1, 1))

    def test_random_divmod_roundtrip(self):
        rng = random.Random(11)
        for _ in range(50):
            a = Poly(Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(rng.randint(0, 7)))
            b = Poly(Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(rng.randint(1, 5)))
            if b.is_zero:
                continue
            q, r = divmod(a, b)
            assert q * b + r == a
            assert r.is_zero or r.degree() < b.degree()

    def test_gcd(self):
        a = P(-1, 0, 1)  # (x-1)(x+1)
        b = P(1, 2, 1)  # (x+1)^2
        assert poly_gcd(a, b) == P(1, 1)
        assert poly_gcd(a, P(7)) == Poly.one()
        # gcd is monic regardless of input scaling
        assert poly_gcd(3 * a, 5 * b) == P(1, 1)

    def test_evaluation(self):
        p = P(1, 0, 2)
        assert p(Fraction(1, 2)) == Fraction(3, 2)
        assert p(2.0) == 9.0


class TestHermite:
    def test_base_cases(self):
        assert hermite_he(0) == Poly.one()
        assert hermite_he(1) == Poly.x()

    def test_recurrence_values(self):
        assert hermite_he(2) == P(-1, 0, 1)
        assert hermite_he(4) == P(3, 0, -6, 0, 1)

    @pytest.mark.parametrize("n", range(13))
    def test_degree_and_parity(self, n):
        he = hermite_he(n)
        assert he.degree() == n
        # He_n(-x) = (-1)^n He_n(x): coefficients of the wrong parity vanish
        for i, c in enumerate(he.coeffs):
            if (i - n) % 2 != 0:
                assert c == 0

    @pytest.mark.parametrize("n", range(1, 13))
    def test_derivative_identity(self, n):
        assert hermite_he(n).derivative() == n * hermite_he(n - 1)

    @pytest.mark.parametrize("n", range(13))
    def test_differential_equation(self, n):
        # He_n'' - x He_n' + n He_n = 0, exactly
        he = hermite_he(n)
        residual = he.derivative().derivative() - Poly.x() * he.derivative() + n * he
        assert residual.is_zero


class TestDerivative:
    def test_constant(self):
        assert P(1).derivative().is_zero

    def test_square(self):
        assert P(-1, 0, 1).derivative() == P(0, 2)

    def test_hermite_case(self):
        assert hermite_he(3).derivative() == 3 * hermite_he(2)


def _numeric_real_root_count(p: Poly) -> int:
    roots = np.roots([float(c) for c in reversed(p.coeffs)])
    reals = sorted(r.real for r in roots if abs(r.imag) < 1e-7)
    distinct = []
    for r in reals:
        if not distinct or abs(r - distinct[-1]) > 1e-6:
            distinct.append(r)
    return len(distinct)


class TestSturm:
    def test_no_real_roots(self):
        assert sturm_real_root_count(P(1, 0, 1)) == 0

    def test_two_real_roots(self):
        assert sturm_real_root_count(P(-1, 0, 1)) == 2

    def test_quartic_positive(self):
        p = P(3, 0, 0, 0, 1)  # x^4 + 3
        assert sturm_real_root_count(p) == 0
        assert _numeric_real_root_count(p) == 0

    def test_zero_polynomial_rejected(self):
        with pytest.raises(ValueError):
            sturm_real_root_count(Poly.zero())

    def test_multiple_roots_counted_once(self):
        p = P(-1, 1) * P(-1, 1) * P(2, 1)  # (x-1)^2 (x+2)
        assert sturm_real_root_count(p) == 2

    def test_product_rule_with_known_roots(self):
        # distinct integer roots by construction
        p = P(-1, 1) * P(-2, 1)  # roots 1, 2
        q = P(3, 1) * P(5, 1)  # roots -3, -5
        assert sturm_real_root_count(p) == 2
        assert sturm_real_root_count(q) == 2
        assert sturm_real_root_count(p * q) == 4
        shared = p * P(-1, 1)  # root 1 repeated
        assert sturm_real_root_count(shared * q) == 4

    def test_interval_counts(self):
        p = P(-1, 0, 1)  # roots at -1, 1
        assert sturm_real_root_count(p, 0, 2) == 1
        assert sturm_real_root_count(p, -2, 2) == 2
        assert sturm_real_root_count(p, 1, 2) == 1  # closed left endpoint
        assert sturm_real_root_count(p, -2, -1) == 1  # closed right endpoint
        assert sturm_real_root_count(p, Fraction(-1, 2), Fraction(1, 2)) == 0

    def test_random_against_numeric_oracle(self):
        rng = random.Random(2024)
        checked = 0
        while checked < 50:
            degree = rng.randint(1, 8)
            p = Poly([rng.randint(-6, 6) for _ in range(degree)] + [rng.randint(1, 6)])
            assert sturm_real_root_count(p) == _numeric_real_root_count(p)
            checked += 1


class TestRatFun:
    def test_reduce_scalar(self):
        r = RatFun(P(0, 0, 2), P(2))
        assert r.num == P(0, 0, 1) and r.den == Poly.one()

    def test_reduce_common_factor(self):
        r = RatFun(P(-1, 0, 1), P(-1, 1))
        assert r.num == P(1, 1) and r.den == Poly.one()

    def test_reduce_keeps_coprime_parts(self):
        # 4(x^2-1)/(1+x^2)^2 has nothing to cancel
        num = P(-4, 0, 4)
        den = P(1, 0, 1) * P(1, 0, 1)
        r = RatFun(num, den)
        assert r.num == num and r.den == den
        # value oracle at sample points away from poles
        for k in range(1, 11):
            x = Fraction(k, 7)
            assert r(x) == num(x) / den(x)

    def test_monic_denominator(self):
        r = RatFun(P(1), P(0, 2))
        assert r.den == P(0, 1) and r.num == P(Fraction(1, 2))

    def test_idempotent(self):
        r = RatFun(P(-4, 0, 4), P(1, 0, 2, 0, 1))
        again = RatFun(r.num, r.den)
        assert r == again

    def test_zero_denominator_rejected(self):
        with pytest.raises(ZeroDivisionError):
            RatFun(P(1), Poly.zero())

    def test_field_ops_value_oracle(self):
        rng = random.Random(5)
        for _ in range(25):
            a = RatFun(
                Poly([rng.randint(-5, 5) for _ in range(3)]),
                Poly([rng.randint(-3, 3) for _ in range(2)] + [1]),
            )
            b = RatFun(
                Poly([rng.randint(-5, 5) for _ in range(2)]),
                Poly([rng.randint(-3, 3) for _ in range(1)] + [1]),
            )
            x = Fraction(rng.randint(2, 40), 7)
            if a.den(x) == 0 or b.den(x) == 0:
                continue
            assert (a + b)(x) == a(x) + b(x)
            assert (a - b)(x) == a(x) - b(x)
            assert (a * b)(x) == a(x) * b(x)
            if not b.is_zero and b(x) != 0:
                assert (a / b)(x) == a(x) / b(x)

    def test_derivative_quotient_rule(self):
        r = RatFun(P(0, 1), P(1, 0, 1))  # x/(1+x^2)
        d = r.derivative()
        expected = RatFun(P(1, 0, -1), P(1, 0, 2, 0, 1))  # (1-x^2)/(1+x^2)^2
        assert d == expected


class TestDeterminants:
    def test_bareiss_matches_cofactor(self):
        rng = random.Random(77)
        for _ in range(10):
            n = rng.randint(3, 4)
            rows = [
                [Poly([rng.randint(-4, 4) for _ in range(rng.randint(1, 3))]) for _ in range(n)]
                for _ in range(n)
            ]
            direct = det_cofactor([[RatFun(e) for e in row] for row in rows])
            ff = poly_det_bareiss(rows)
            assert RatFun(ff) == direct

    def test_singular_matrix(self):
        row = [P(1, 1), P(0, 1), P(2)]
        assert poly_det_bareiss([row, row, [P(1), P(0), P(1)]]).is_zero


class TestNormValue:
    def test_requires_positive(self):
        with pytest.raises(ValueError):
            NormValue(Fraction(0), 1)

    def test_float_value(self):
        nv = NormValue(Fraction(1), 1)  # sqrt(2 pi)
        assert nv.to_float() == pytest.approx(2.5066282746310002, abs=1e-15)
        assert NormValue(Fraction(2), 1).scaled(3).q == Fraction(6)
