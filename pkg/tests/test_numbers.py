import random
from fractions import Fraction as F

import pytest

from favard.exact import Polynomial
from favard.numbers import (
    BernoulliEulerCache,
    bernoulli_numbers,
    bernoulli_numbers_tangent,
    bernoulli_polynomial,
    euler_numbers,
    euler_numbers_zigzag,
    periodic_bernoulli_eval,
    zigzag_numbers,
)


def test_bernoulli_known_values():
    assert bernoulli_numbers(0) == [F(1)]
    assert bernoulli_numbers(4) == [F(1), F(-1, 2), F(1, 6), F(0), F(-1, 30)]
    assert bernoulli_numbers(12)[12] == F(-691, 2730)


def test_bernoulli_routes_agree():
    assert bernoulli_numbers(40) == bernoulli_numbers_tangent(40)


def test_euler_known_values():
    assert euler_numbers(2) == [1, 0, -1]
    es = euler_numbers(10)
    assert es[4] == 5
    assert es[6] == -61
    assert es[10] == -50521


def test_euler_routes_agree():
    assert euler_numbers(30) == euler_numbers_zigzag(30)


def test_zigzag_sequence():
    assert zigzag_numbers(8) == [1, 1, 1, 2, 5, 16, 61, 272, 1385]


def test_cache_build_validates_sign_patterns():
    cache = BernoulliEulerCache.build(31)
    assert cache.n_max == 31
    for k in range(2, 16):
        assert cache.bernoulli[2 * k + 1] == 0
    for k in range(1, 15):
        assert (-1) ** (k + 1) * cache.bernoulli[2 * k] > 0
        assert cache.euler[2 * k - 1] == 0
        assert (-1) ** k * cache.euler[2 * k] > 0


class TestBernoulliPolynomial:
    def test_low_degree(self):
        assert bernoulli_polynomial(1) == Polynomial.of(F(-1, 2), 1)
        assert bernoulli_polynomial(2) == Polynomial.of(F(1, 6), -1, 1)
        assert bernoulli_polynomial(3)(F(1, 4)) == F(3, 64)

    def test_derivative_identity_as_polynomials(self):
        # B_n' = n B_{n-1} holds coefficientwise, hence at every rational point
        for n in range(1, 31):
            assert bernoulli_polynomial(n).derivative() == n * bernoulli_polynomial(n - 1)

    def test_derivative_identity_random_points(self):
        rng = random.Random(5)
        for n in range(1, 13):
            p, q = bernoulli_polynomial(n).derivative(), bernoulli_polynomial(n - 1)
            for _ in range(100):
                t = F(rng.randint(0, 10**6 - 1), 10**6)
                assert p(t) == n * q(t)

    def test_zero_mean(self):
        for n in range(1, 31):
            assert bernoulli_polynomial(n).integrate(0, 1) == 0

    def test_symmetry(self):
        # B_n(1 - t) = (-1)^n B_n(t) as a polynomial identity
        for n in range(31):
            p = bernoulli_polynomial(n)
            assert p.compose_linear(1, -1) == (-1) ** n * p

    def test_value_at_zero_is_number(self):
        bern = bernoulli_numbers(20)
        for n in range(21):
            assert bernoulli_polynomial(n)(0) == bern[n]


class TestPeriodicBernoulli:
    def test_examples(self):
        assert periodic_bernoulli_eval(2, F(-1, 2)) == F(-1, 12)
        assert periodic_bernoulli_eval(1, F(7, 4)) == F(1, 4)
        assert periodic_bernoulli_eval(3, 0) == 0

    def test_continuity_across_integers(self):
        # for n >= 2 the left limit at 1 equals the value at 0
        for n in range(2, 16):
            p = bernoulli_polynomial(n)
            assert p(1) == p(0)

    def test_requires_positive_order(self):
        with pytest.raises(ValueError):
            periodic_bernoulli_eval(0, F(1, 2))
