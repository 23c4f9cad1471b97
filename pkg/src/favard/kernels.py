"""Convolution kernel phi_n, its optimal centering constant, and the Green function.

The kernel is defined by the Fourier series
phi_n(t) = (1/pi) * sum(k^(-n) cos(k t - n pi/2), k >= 1) and satisfies the
closed form phi_n(2 pi u) = -(2 pi)^(n-1) PB_n(u) / n! with PB_n the
1-periodic Bernoulli function. APIs work with the rational coefficient of
pi^(n-1), keeping every value exact; the closed form is validated against
the truncated series by a shipped cross-check, not assumed.

The minimum over xi of the period integral of |phi_n - xi| equals
K_n (2 pi)^n and is attained at any Lebesgue median of phi_n. Medians are
located by exact measure computations: structural candidates (0 for odd n by
antisymmetry, the quarter-point value for even n by symmetry) are verified
exactly via root isolation, with measure bisection as a fallback. For
polynomial kernels the median is unique: no level set has positive measure.

Green function of x^(n) = f with x(0) = x(T) = 0 and periodic interior
derivatives: G(t, s) = scale * (B_n(t/T) - B_n(0) - PB_n((t-s)/T) + B_n(1 - s/T)).
The prefactor commonly printed as T^n/n! fails the u^(n) = f residual check
(u = integral of G f must scale as T^n f); the dimensionally consistent
scale = T^(n-1)/n! is used here and confirmed by the shipped residual tests.
This discrepancy is documented, not silently hidden.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .exact import (
    Polynomial,
    PiecewisePolynomial,
    RationalLike,
    format_rational,
    frac_part,
    lagrange_interpolate,
    to_rational,
)
from .numbers import BernoulliEulerCache, bernoulli_polynomial
from .roots import DEFAULT_WIDTH, abs_integral, measure_below

__all__ = [
    "KernelPhi",
    "kernel_phi",
    "phi_eval",
    "phi_series_value",
    "phi_series_tail_bound",
    "MedianSplit",
    "min_abs_integral",
    "centered_abs_integral",
    "GreenEval",
    "green_eval",
    "green_apply",
    "green_solution_polynomial",
    "phi_samples",
]


def _phi_coefficient_poly(n: int, cache: BernoulliEulerCache | None = None) -> Polynomial:
    """Polynomial p with phi_n(2 pi u) = p(u) * pi^(n-1) on [0, 1): p = -2^(n-1) B_n / n!."""
    return bernoulli_polynomial(n, cache) * Fraction(-(2 ** (n - 1)), math.factorial(n))


@dataclass(frozen=True)
class KernelPhi:
    """Kernel phi_n: exact closed form plus a truncated-series cross-check evaluator."""

    n: int
    closed_form: PiecewisePolynomial
    series_truncation: int

    @property
    def pi_power(self) -> int:
        return self.n - 1

    def coeff(self, u: RationalLike) -> Fraction:
        """Rational coefficient c with phi_n(2 pi u) = c * pi^(n-1)."""
        return self.closed_form.value_in_unit(frac_part(to_rational(u)))

    def value(self, u: RationalLike) -> float:
        return float(self.coeff(u)) * math.pi**self.pi_power

    def series_value(self, u: float, terms: int | None = None) -> float:
        return phi_series_value(self.n, u, terms or self.series_truncation)

    def series_tail_bound(self, terms: int | None = None) -> float:
        return phi_series_tail_bound(self.n, terms or self.series_truncation)


def kernel_phi(n: int, series_truncation: int = 10_000) -> KernelPhi:
    if n < 1:
        raise ValueError("n must be >= 1")
    piece = _phi_coefficient_poly(n)
    return KernelPhi(
        n=n,
        closed_form=PiecewisePolynomial.single(piece, 1),
        series_truncation=series_truncation,
    )


def phi_eval(n: int, u: RationalLike) -> Fraction:
    """Exact phi_n(2 pi u) / pi^(n-1) for u in [0, 1).

    At jump points of the n = 1 kernel the right-limit convention of the
    periodic pieces applies.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    u = to_rational(u)
    if not 0 <= u < 1:
        raise ValueError("u must lie in [0, 1)")
    return _phi_coefficient_poly(n)(u)


def phi_series_value(n: int, u: float, terms: int, chunk: int = 200_000) -> float:
    """Float partial Fourier sum (1/pi) * sum(k^(-n) cos(2 pi k u - n pi/2), k <= terms)."""
    total = 0.0
    phase = n * math.pi / 2
    for start in range(1, terms + 1, chunk):
        k = np.arange(start, min(start + chunk, terms + 1), dtype=np.float64)
        total += float(np.sum(np.cos(2 * math.pi * k * u - phase) / k**n))
    return total / math.pi


def phi_series_tail_bound(n: int, terms: int) -> float:
    """Upper bound (2/pi) * sum(k^(-n), k > terms) via integral comparison; n >= 2."""
    if n < 2:
        raise ValueError("tail bound requires n >= 2")
    return 2.0 / math.pi * (terms ** (1 - n)) / (n - 1)


@dataclass(frozen=True)
class MedianSplit:
    """Optimal centering of phi_n: median level and the minimized integral.

    ``xi_star`` and ``value_coeff`` are rational coefficients of pi^pi_power
    and pi^(pi_power + 1) respectively; ``exact`` marks whether the measure
    condition and the integral were established in exact arithmetic (the
    error bound is zero in that case).
    """

    n: int
    xi_star: Fraction
    pi_power: int
    value_coeff: Fraction
    value_error_coeff: Fraction
    exact: bool
    measure_low: Fraction
    measure_high: Fraction

    @property
    def xi_star_float(self) -> float:
        return float(self.xi_star) * math.pi**self.pi_power

    @property
    def value(self) -> float:
        return float(self.value_coeff) * math.pi ** (self.pi_power + 1)

    @property
    def value_error(self) -> float:
        return float(self.value_error_coeff) * math.pi ** (self.pi_power + 1)


def _measure_below_piecewise(
    pw: PiecewisePolynomial, level: Fraction, width: Fraction
) -> tuple[Fraction, Fraction]:
    lo = Fraction(0)
    hi = Fraction(0)
    for i, piece in enumerate(pw.pieces):
        a, b = pw.breakpoints[i], pw.breakpoints[i + 1]
        piece_lo, piece_hi = measure_below(piece, a, b, level, width)
        lo += piece_lo
        hi += piece_hi
    return lo, hi


def _abs_integral_piecewise(
    pw: PiecewisePolynomial, level: Fraction, width: Fraction
) -> tuple[Fraction, Fraction]:
    est = Fraction(0)
    err = Fraction(0)
    for i, piece in enumerate(pw.pieces):
        a, b = pw.breakpoints[i], pw.breakpoints[i + 1]
        piece_est, piece_err = abs_integral(piece, a, b, level, width)
        est += piece_est
        err += piece_err
    return est, err


def min_abs_integral(n: int, width: Fraction = DEFAULT_WIDTH) -> MedianSplit:
    """Minimize the period integral of |phi_n - xi| over xi; equals K_n (2 pi)^n.

    The measure {u : p(u) <= c} = 1/2 condition is tested exactly at the
    structural median candidates; if none verifies (does not happen for the
    Bernoulli kernels, kept for robustness), a rational bisection narrows the
    median to an enclosure and the result carries the induced error bound.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    pw = kernel_phi(n).closed_form
    p = pw.pieces[0]
    half = Fraction(1, 2)
    candidates = []
    for c in (Fraction(0), p(Fraction(1, 4)), p(Fraction(3, 4)), p(half), p(Fraction(0))):
        if c not in candidates:
            candidates.append(c)
    for c in candidates:
        m_lo, m_hi = _measure_below_piecewise(pw, c, width)
        if m_lo == m_hi == half:
            est, err = _abs_integral_piecewise(pw, c, width)
            return MedianSplit(
                n=n,
                xi_star=c,
                pi_power=n - 1,
                value_coeff=2 * est,
                value_error_coeff=2 * err,
                exact=(err == 0),
                measure_low=m_lo,
                measure_high=m_hi,
            )
    # Fallback: bisection on the measure condition.
    lo_c = min(min(pc.coeffs) for pc in pw.pieces) - 1
    hi_c = max(pc.coefficient_bound() for pc in pw.pieces) + 1
    for _ in range(64):
        mid = (lo_c + hi_c) / 2
        m_lo, m_hi = _measure_below_piecewise(pw, mid, width)
        if m_hi < half:
            lo_c = mid
        elif m_lo > half:
            hi_c = mid
        else:
            break
    c = (lo_c + hi_c) / 2
    m_lo, m_hi = _measure_below_piecewise(pw, c, width)
    est, err = _abs_integral_piecewise(pw, c, width)
    # Off-median slack: |J(c) - J(median)| <= |c - median| * |2 m - 1| <= enclosure width.
    err = err + (hi_c - lo_c)
    return MedianSplit(
        n=n,
        xi_star=c,
        pi_power=n - 1,
        value_coeff=2 * est,
        value_error_coeff=2 * err,
        exact=False,
        measure_low=m_lo,
        measure_high=m_hi,
    )


def centered_abs_integral(
    n: int, xi_coeff: RationalLike, width: Fraction = DEFAULT_WIDTH
) -> tuple[Fraction, Fraction]:
    """(estimate, error bound) for the coefficient of the period integral of |phi_n - xi|.

    Both outputs are coefficients of pi^n; xi is given as its coefficient of
    pi^(n-1). Exact whenever the level crossings are rational.
    """
    pw = kernel_phi(n).closed_form
    est, err = _abs_integral_piecewise(pw, to_rational(xi_coeff), width)
    return 2 * est, 2 * err


@dataclass(frozen=True)
class GreenEval:
    """Green function of the auxiliary problem, with the residual-validated scale."""

    n: int
    T: Fraction
    scale: Fraction

    def __call__(self, t: RationalLike, s: RationalLike) -> Fraction:
        t, s = to_rational(t), to_rational(s)
        if not (0 <= t <= self.T and 0 <= s <= self.T):
            raise ValueError("need 0 <= t, s <= T")
        Bn = bernoulli_polynomial(self.n)
        u_t = t / self.T
        u_s = s / self.T
        return self.scale * (
            Bn(u_t) - Bn(Fraction(0)) - Bn(frac_part(u_t - u_s)) + Bn(1 - u_s)
        )


def green_eval(n: int, T: RationalLike, t: RationalLike, s: RationalLike) -> Fraction:
    """Exact G(t, s) for x^(n) = f with x(0) = x(T) = 0 and periodic x', .., x^(n-2)."""
    if n < 2:
        raise ValueError("n must be >= 2")
    T = to_rational(T)
    scale = T ** (n - 1) / Fraction(math.factorial(n))
    return GreenEval(n=n, T=T, scale=scale)(t, s)


def green_apply(n: int, T: RationalLike, f: Polynomial, t: RationalLike) -> Fraction:
    """Exact u(t) = integral(G(t, s) f(s), s = 0..T) for polynomial forcing f.

    The periodic Bernoulli factor splits at s = t, where its argument crosses
    an integer; each part is a polynomial integral.
    """
    if n < 2:
        raise ValueError("n must be >= 2")
    T = to_rational(T)
    t = to_rational(t)
    if not 0 <= t <= T:
        raise ValueError("need 0 <= t <= T")
    scale = T ** (n - 1) / Fraction(math.factorial(n))
    Bn = bernoulli_polynomial(n)
    u_t = t / T
    const_part = Bn(u_t) - Bn(Fraction(0))
    total = const_part * f.integrate(0, T)
    # B_n(1 - s/T) term
    total += (Bn.compose_linear(1, Fraction(-1, 1) / T) * f).integrate(0, T)
    # -PB_n((t - s)/T): argument in [0, 1) for s <= t, in [-1, 0) wrapped by +1 for s > t
    if t > 0:
        total -= (Bn.compose_linear(u_t, Fraction(-1, 1) / T) * f).integrate(0, t)
    if t < T:
        total -= (Bn.compose_linear(u_t + 1, Fraction(-1, 1) / T) * f).integrate(t, T)
    return scale * total


def green_solution_polynomial(n: int, T: RationalLike, f: Polynomial) -> Polynomial:
    """The solution u as an exact polynomial in t, reconstructed by interpolation.

    u is a single polynomial of degree at most n + deg f + 1 on [0, T]; exact
    samples of the Green integral at that many distinct rational nodes pin it
    down, which gives an independent object to differentiate n times.
    """
    T = to_rational(T)
    degree = n + max(f.degree, 0) + 1
    nodes = [T * Fraction(i, degree + 1) for i in range(degree + 2)]
    points = [(x, green_apply(n, T, f, x)) for x in nodes]
    return lagrange_interpolate(points)


def phi_samples(n: int, count: int) -> list[dict]:
    """CSV-ready sampling of phi_n: (u, phi_n_coeff, pi_power, float_value)."""
    k = kernel_phi(n)
    rows = []
    for i in range(count):
        u = Fraction(i, count)
        c = k.coeff(u)
        rows.append(
            {
                "u": format_rational(u),
                "phi_n_coeff": format_rational(c),
                "pi_power": k.pi_power,
                "float_value": float(c) * math.pi**k.pi_power,
            }
        )
    return rows
