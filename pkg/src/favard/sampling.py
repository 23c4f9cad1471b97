"""Deterministic random generators for the property and acceptance suites.

Everything takes an explicit ``random.Random`` so suites are reproducible
from a seed. Denominators stay small powers of two to keep exact arithmetic
fast downstream.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .exact import PiecewisePolynomial, Polynomial
from .solver import StepFunction

__all__ = [
    "random_rational",
    "random_partition",
    "random_deviation",
    "random_weight",
    "random_zero_mean_step",
    "periodic_antiderivatives",
]


def random_rational(rng: random.Random, lo: Fraction, hi: Fraction, denom: int = 16) -> Fraction:
    """Uniform-ish rational in [lo, hi] with the given denominator grid."""
    k = rng.randint(0, denom)
    return lo + (hi - lo) * Fraction(k, denom)


def random_partition(
    rng: random.Random, T: Fraction, max_interior: int = 6, denom: int = 64
) -> tuple[Fraction, ...]:
    cuts = {Fraction(0), T}
    for _ in range(rng.randint(1, max_interior)):
        cuts.add(T * Fraction(rng.randint(1, denom - 1), denom))
    return tuple(sorted(cuts))


def random_deviation(
    rng: random.Random,
    T: Fraction,
    max_interior: int = 6,
    value_denom: int = 16,
) -> StepFunction:
    """Random step deviation with values on the grid {k T / value_denom} in [0, T]."""
    bps = random_partition(rng, T, max_interior)
    vals = tuple(T * Fraction(rng.randint(0, value_denom), value_denom) for _ in range(len(bps) - 1))
    return StepFunction(bps, vals, T)


def random_weight(
    rng: random.Random,
    T: Fraction,
    total: Fraction,
    max_interior: int = 5,
) -> StepFunction:
    """Random nonnegative step weight scaled so its integral over [0, T] is exactly ``total``."""
    bps = random_partition(rng, T, max_interior)
    raw = [Fraction(rng.randint(1, 8)) for _ in range(len(bps) - 1)]
    mass = sum(v * (hi - lo) for v, (lo, hi) in zip(raw, zip(bps, bps[1:])))
    vals = tuple(v * total / mass for v in raw)
    return StepFunction(bps, vals, T)


def random_zero_mean_step(
    rng: random.Random,
    max_interior: int = 5,
    value_denom: int = 8,
) -> PiecewisePolynomial:
    """Random zero-mean step function on [0, 1] (period 1), exact."""
    bps = random_partition(rng, Fraction(1), max_interior, denom=32)
    vals = [Fraction(rng.randint(-2 * value_denom, 2 * value_denom), value_denom) for _ in bps[:-1]]
    pw = PiecewisePolynomial(
        bps, tuple(Polynomial.const(v) for v in vals), Fraction(1)
    )
    return pw.zero_mean()


def periodic_antiderivatives(pw: PiecewisePolynomial, n: int) -> PiecewisePolynomial:
    """n-fold zero-mean periodic antiderivative.

    Starting from a zero-mean periodic function, each integration produces a
    periodic function whose mean is removed again, so the result is an exact
    admissible function: periodic derivatives up to order n - 1 and n-th
    derivative equal to the input.
    """
    for _ in range(n):
        pw = pw.antiderivative().zero_mean()
    return pw
