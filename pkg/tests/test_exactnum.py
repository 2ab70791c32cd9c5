import math
from fractions import Fraction

import numpy as np
import pytest

from signrank.errors import DomainError
from signrank.exactnum import (
    QuadElem,
    format_rational,
    format_scalar,
    parse_rational,
    parse_scalar,
    quad_sign,
    rational_round,
)

from conftest import decimal_value


class TestQuadSign:
    def test_zero_element(self):
        assert quad_sign(QuadElem(0, 0, 5)) == 0

    def test_radical_dominates(self):
        # 1 - (1/2)sqrt5 < 0 because 1 < 5 * (1/2)^2
        q = QuadElem(1, Fraction(-1, 2), 5)
        assert quad_sign(q) == -1
        assert decimal_value(q, 50) < 0

    def test_rational_dominates(self):
        q = QuadElem(3, -1, 5)  # 9 > 5
        assert quad_sign(q) == 1
        assert decimal_value(q, 50) > 0

    def test_exact_cancellation(self):
        # (sqrt5)^2 - 5 built as (2+sqrt5)(-2+sqrt5) - 1
        q = QuadElem(2, 1, 5) * QuadElem(-2, 1, 5) - 1
        assert quad_sign(q) == 0

    def test_plain_rationals(self):
        assert quad_sign(Fraction(-3, 7)) == -1
        assert quad_sign(0) == 0
        assert quad_sign(2.5) == 1

    def test_agreement_with_decimal_evaluation(self):
        rng = np.random.default_rng(11)
        for _ in range(10_000):
            q = QuadElem(
                Fraction(int(rng.integers(-50, 51)), int(rng.integers(1, 20))),
                Fraction(int(rng.integers(-50, 51)), int(rng.integers(1, 20))),
                int(rng.choice([2, 3, 5, 7])),
            )
            got = quad_sign(q)
            approx = decimal_value(q, 60)
            if approx == 0:
                assert got == 0
            else:
                assert got == (1 if approx > 0 else -1)


class TestQuadArithmetic:
    def test_difference_of_squares(self):
        assert QuadElem(1, 1, 5) * QuadElem(1, -1, 5) == QuadElem(-4, 0, 5)

    def test_division_by_golden_ratio(self):
        phi = QuadElem(Fraction(1, 2), Fraction(1, 2), 5)
        inv = 1 / phi
        assert inv == QuadElem(Fraction(-1, 2), Fraction(1, 2), 5)
        assert phi * inv == QuadElem(1, 0, 5)

    def test_additive_identity(self):
        a = QuadElem(Fraction(3, 7), Fraction(-2, 9), 5)
        assert a + 0 == a
        assert a + QuadElem(0, 0, 5) == a

    def test_division_by_zero(self):
        with pytest.raises(DomainError):
            QuadElem(1, 0, 5) / QuadElem(0, 0, 5)

    def test_field_axioms_on_random_triples(self):
        rng = np.random.default_rng(3)
        for _ in range(300):
            a, b, c = (
                QuadElem(
                    Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 7))),
                    Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 7))),
                    5,
                )
                for _ in range(3)
            )
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            assert a + b == b + a
            if not b.is_zero():
                assert (a / b) * b == a

    def test_context_mixing(self):
        with pytest.raises(DomainError):
            QuadElem(1, 1, 5) + QuadElem(1, 1, 7)
        # rationals embed into any context
        assert QuadElem(2, 0, 1) + QuadElem(1, 1, 5) == QuadElem(3, 1, 5)

    def test_d_one_degenerates_to_rationals(self):
        q = QuadElem(2, 3, 1)
        assert q.s == 0 and q.r == 5

    def test_d_must_be_square_free(self):
        with pytest.raises(DomainError):
            QuadElem(1, 1, 8)
        with pytest.raises(DomainError):
            QuadElem(1, 1, 0)

    def test_comparisons_are_exact(self):
        phi = QuadElem(Fraction(1, 2), Fraction(1, 2), 5)
        assert QuadElem(Fraction(8, 5), 0, 5) < phi < QuadElem(Fraction(13, 8), 0, 5)

    def test_float_conversion(self):
        assert math.isclose(float(QuadElem(2, 1, 5)), 2 + math.sqrt(5))


class TestRationalRound:
    def test_half(self):
        assert rational_round(0.5, 10) == Fraction(1, 2)

    def test_pi_convergent(self):
        assert rational_round(3.14159265358979, 1000) == Fraction(355, 113)

    def test_third(self):
        assert rational_round(0.3333333, 10) == Fraction(1, 3)

    def test_non_finite(self):
        with pytest.raises(DomainError):
            rational_round(float("inf"), 10)
        with pytest.raises(DomainError):
            rational_round(float("nan"), 10)

    def test_bad_cap(self):
        with pytest.raises(DomainError):
            rational_round(0.5, 0)

    def test_optimal_against_exhaustive_search(self):
        rng = np.random.default_rng(5)
        for _ in range(60):
            x = float(rng.uniform(-10, 10))
            cap = int(rng.integers(1, 1001))
            got = rational_round(x, cap)
            assert got.denominator <= cap
            err = abs(Fraction(x) - got)
            for q in range(1, cap + 1):
                p = round(x * q)
                assert err <= abs(Fraction(x) - Fraction(p, q))


class TestScalarSyntax:
    def test_rational_text(self):
        assert parse_rational("3/4") == Fraction(3, 4)
        assert parse_rational("-7") == Fraction(-7)
        assert parse_rational(5) == Fraction(5)
        assert format_rational(Fraction(3, 4)) == "3/4"
        assert format_rational(Fraction(8, 2)) == 4

    def test_malformed(self):
        with pytest.raises(DomainError):
            parse_rational("3/0")
        with pytest.raises(DomainError):
            parse_rational("abc")

    def test_quad_object(self):
        q = parse_scalar({"r": "1/2", "s": "-3/4"}, 5)
        assert q == QuadElem(Fraction(1, 2), Fraction(-3, 4), 5)
        assert format_scalar(q) == {"r": "1/2", "s": "-3/4"}

    def test_integer_shorthand(self):
        assert parse_scalar(7, 5) == QuadElem(7, 0, 5)
        assert format_scalar(QuadElem(7, 0, 5)) == 7

    def test_roundtrip(self):
        rng = np.random.default_rng(9)
        for _ in range(100):
            q = QuadElem(
                Fraction(int(rng.integers(-20, 21)), int(rng.integers(1, 9))),
                Fraction(int(rng.integers(-20, 21)), int(rng.integers(1, 9))),
                5,
            )
            assert parse_scalar(format_scalar(q), 5) == q
