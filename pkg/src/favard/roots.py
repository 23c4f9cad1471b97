"""Exact real-root location for rational polynomials on an interval.

Strategy: extract every rational root exactly first (integer rational-root
theorem after clearing denominators), then isolate whatever remains of the
square-free part with Sturm counts and bisection. Bisection midpoints are
rational, and the deflated polynomial has no rational roots, so sign tests
at midpoints never land on a root. Consumers therefore receive exact roots
whenever they exist and arbitrarily narrow rational enclosures otherwise,
which keeps downstream measures and integrals exact or rigorously bounded.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .exact import Polynomial, to_rational

__all__ = [
    "poly_divmod",
    "poly_gcd",
    "square_free",
    "sturm_sequence",
    "count_roots",
    "rational_roots",
    "RootEnclosure",
    "isolate_roots",
    "sign_segments",
    "measure_below",
    "abs_integral",
    "DEFAULT_WIDTH",
]

DEFAULT_WIDTH = Fraction(1, 10**13)


def poly_divmod(a: Polynomial, b: Polynomial) -> tuple[Polynomial, Polynomial]:
    if b.is_zero:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a.coeffs)
    quo = [Fraction(0)] * max(len(rem) - len(b.coeffs) + 1, 0)
    bc = b.coeffs
    while len(rem) >= len(bc):
        factor = rem[-1] / bc[-1]
        shift = len(rem) - len(bc)
        quo[shift] = factor
        for i, c in enumerate(bc):
            rem[shift + i] -= factor * c
        rem.pop()
        while rem and rem[-1] == 0:
            rem.pop()
    return Polynomial(tuple(quo)), Polynomial(tuple(rem))


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd by the Euclidean algorithm."""
    while not b.is_zero:
        _, r = poly_divmod(a, b)
        a, b = b, r
    if a.is_zero:
        return a
    return a * (1 / a.leading_coefficient)


def square_free(p: Polynomial) -> Polynomial:
    """Square-free part p / gcd(p, p')."""
    if p.degree <= 1:
        return p
    g = poly_gcd(p, p.derivative())
    if g.degree <= 0:
        return p
    q, r = poly_divmod(p, g)
    assert r.is_zero
    return q


def sturm_sequence(p: Polynomial) -> list[Polynomial]:
    seq = [p, p.derivative()]
    while not seq[-1].is_zero:
        _, r = poly_divmod(seq[-2], seq[-1])
        seq.append(-r)
    seq.pop()
    return seq


def _variations(values: list[Fraction]) -> int:
    signs = [v for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def count_roots(p: Polynomial, a: Fraction, b: Fraction, seq: list[Polynomial] | None = None) -> int:
    """Number of distinct real roots of p in the half-open interval (a, b]."""
    if p.is_zero:
        raise ValueError("zero polynomial has no isolated roots")
    if seq is None:
        seq = sturm_sequence(square_free(p))
    va = _variations([q(a) for q in seq])
    vb = _variations([q(b) for q in seq])
    return va - vb


def rational_roots(p: Polynomial, a: Fraction, b: Fraction) -> list[tuple[Fraction, int]]:
    """All rational roots of p in [a, b] with multiplicities, exactly.

    Clears denominators and applies the rational-root theorem to the integer
    polynomial, so the candidate list is complete.
    """
    if p.is_zero:
        raise ValueError("zero polynomial")
    denom_lcm = 1
    for c in p.coeffs:
        denom_lcm = denom_lcm * c.denominator // math.gcd(denom_lcm, c.denominator)
    ints = [int(c * denom_lcm) for c in p.coeffs]
    while ints and ints[0] == 0:
        ints.pop(0)  # factor out powers of x; root 0 handled below
    lead = ints[-1]
    tail = ints[0]
    out: list[tuple[Fraction, int]] = []
    if p.coeffs[0] == 0 and a <= 0 <= b:
        mult = next(i for i, c in enumerate(p.coeffs) if c != 0)
        out.append((Fraction(0), mult))

    def divisors(n: int) -> list[int]:
        n = abs(n)
        out = []
        d = 1
        while d * d <= n:
            if n % d == 0:
                out.append(d)
                out.append(n // d)
            d += 1
        return sorted(set(out))

    seen = {r for r, _ in out}
    for num in divisors(tail):
        for den in divisors(lead):
            for sign in (1, -1):
                cand = Fraction(sign * num, den)
                if cand in seen or not a <= cand <= b:
                    continue
                if p(cand) == 0:
                    mult = 0
                    q = p
                    while True:
                        quo, rem = poly_divmod(q, Polynomial.of(-cand, 1))
                        if not rem.is_zero:
                            break
                        mult += 1
                        q = quo
                        if q.is_zero or q(cand) != 0:
                            break
                    out.append((cand, mult))
                    seen.add(cand)
    return sorted(out)


@dataclass(frozen=True)
class RootEnclosure:
    """Rational interval [low, high] containing exactly one distinct real root."""

    low: Fraction
    high: Fraction
    multiplicity: int = 1

    @property
    def exact(self) -> bool:
        return self.low == self.high

    @property
    def width(self) -> Fraction:
        return self.high - self.low


def isolate_roots(
    p: Polynomial,
    a: Fraction,
    b: Fraction,
    width: Fraction = DEFAULT_WIDTH,
) -> list[RootEnclosure]:
    """All distinct real roots of p in [a, b]: exact where rational, else enclosed.

    Enclosure widths do not exceed ``width``. Raises on the zero polynomial
    (callers special-case identically-zero pieces).
    """
    if p.is_zero:
        raise ValueError("zero polynomial")
    a, b = to_rational(a), to_rational(b)
    if a > b:
        raise ValueError("need a <= b")
    if p.degree == 0:
        return []
    out = [RootEnclosure(r, r, m) for r, m in rational_roots(p, a, b)]
    q = square_free(p)
    for enc in out:
        q, _ = poly_divmod(q, Polynomial.of(-enc.low, 1))
    if q.degree >= 1:
        seq = sturm_sequence(q)
        # q has no rational roots now, so q(a), q(b) and all midpoints are nonzero
        stack = [(a, b, count_roots(q, a, b, seq))]
        while stack:
            lo, hi, cnt = stack.pop()
            if cnt == 0:
                continue
            if cnt == 1 and hi - lo <= width:
                out.append(RootEnclosure(lo, hi, 1))
                continue
            mid = (lo + hi) / 2
            stack.append((lo, mid, count_roots(q, lo, mid, seq)))
            stack.append((mid, hi, count_roots(q, mid, hi, seq)))
    return sorted(out, key=lambda e: (e.low, e.high))


def sign_segments(
    p: Polynomial,
    a: Fraction,
    b: Fraction,
    width: Fraction = DEFAULT_WIDTH,
) -> tuple[list[tuple[Fraction, Fraction, int]], list[RootEnclosure]]:
    """Partition [a, b] into maximal segments where p has constant sign.

    Returns (segments, enclosures); each segment is (lo, hi, sign) with sign
    sampled at the rational midpoint, and enclosures cover the (possibly
    irrational) roots separating them. For exact rational roots the enclosure
    is degenerate and contributes no length.
    """
    encs = isolate_roots(p, a, b, width)
    segments: list[tuple[Fraction, Fraction, int]] = []
    cursor = a
    for enc in encs:
        if enc.low > cursor:
            mid = (cursor + enc.low) / 2
            v = p(mid)
            segments.append((cursor, enc.low, 1 if v > 0 else -1))
        cursor = max(cursor, enc.high)
    if cursor < b:
        mid = (cursor + b) / 2
        v = p(mid)
        segments.append((cursor, b, 1 if v > 0 else -1))
    return segments, encs


def measure_below(
    p: Polynomial,
    a: Fraction,
    b: Fraction,
    level: Fraction,
    width: Fraction = DEFAULT_WIDTH,
) -> tuple[Fraction, Fraction]:
    """Bounds (lo, hi) on the measure of {u in [a, b] : p(u) <= level}.

    Exact (lo == hi) whenever every root of p - level in [a, b] is rational.
    """
    q = p - Polynomial.const(level)
    if q.is_zero:
        length = b - a
        return length, length
    segments, encs = sign_segments(q, a, b, width)
    lo = sum((hi_ - lo_ for lo_, hi_, s in segments if s < 0), Fraction(0))
    slack = sum((e.width for e in encs), Fraction(0))
    return lo, lo + slack


def abs_integral(
    p: Polynomial,
    a: Fraction,
    b: Fraction,
    level: Fraction = Fraction(0),
    width: Fraction = DEFAULT_WIDTH,
) -> tuple[Fraction, Fraction]:
    """(estimate, error_bound) for the integral of |p - level| over [a, b].

    Exact (error_bound == 0) whenever all sign changes happen at rational
    points; otherwise each enclosure contributes at most Lip * width^2, with
    the Lipschitz constant bounded by the coefficient sum of (p - level)'.
    """
    q = p - Polynomial.const(level)
    if q.is_zero:
        return Fraction(0), Fraction(0)
    segments, encs = sign_segments(q, a, b, width)
    total = Fraction(0)
    for lo, hi, s in segments:
        total += s * q.integrate(lo, hi)
    err = Fraction(0)
    lip = q.derivative().coefficient_bound()
    for e in encs:
        if not e.exact:
            # |q| <= lip * width on the enclosure, interval length <= width
            err += lip * e.width * e.width
    return total, err
