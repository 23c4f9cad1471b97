"""Exact arithmetic substrate: rational polynomials and periodic piecewise polynomials.

Rationals are ``fractions.Fraction`` throughout: arbitrary precision and always
canonical (positive denominator, reduced), so equality tests are exact.
Piecewise polynomials live on a partition of [0, 1] in the scaled variable
u = t / period and wrap periodically: evaluation reduces the argument modulo
the period first, which makes every instance a T-periodic function on the
whole line. Breakpoints follow the right-continuous convention (the piece to
the right owns its left endpoint), matching fractional-part semantics.

All values are immutable after construction and every operation is a pure
function, so instances are safe to share between threads.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

RationalLike = Union[int, str, Fraction]

__all__ = [
    "RationalLike",
    "to_rational",
    "format_rational",
    "parse_rational",
    "frac_part",
    "Polynomial",
    "PiecewisePolynomial",
    "lagrange_interpolate",
]


def to_rational(x: RationalLike) -> Fraction:
    """Coerce an int, Fraction or exact string like ``"-3/7"`` to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"not an exact rational: {x!r}")


def format_rational(x: Fraction) -> str:
    """Serialize as ``"p/q"``, omitting the denominator when it is 1."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s: str) -> Fraction:
    """Parse the exact string form produced by :func:`format_rational`."""
    return Fraction(s.strip())


def frac_part(x: Fraction) -> Fraction:
    """Fractional part {x} in [0, 1)."""
    return x - math.floor(x)


def _normalize(coeffs: Iterable[RationalLike]) -> tuple[Fraction, ...]:
    cs = [to_rational(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


@dataclass(frozen=True)
class Polynomial:
    """Univariate polynomial with exact rational coefficients, lowest degree first.

    The zero polynomial stores an empty coefficient tuple; any trailing zero
    coefficients are stripped at construction so dataclass equality is
    function equality.
    """

    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", _normalize(self.coeffs))

    @classmethod
    def of(cls, *coeffs: RationalLike) -> "Polynomial":
        return cls(tuple(to_rational(c) for c in coeffs))

    @classmethod
    def const(cls, c: RationalLike) -> "Polynomial":
        return cls((to_rational(c),))

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls(())

    @classmethod
    def x(cls) -> "Polynomial":
        return cls((Fraction(0), Fraction(1)))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading_coefficient(self) -> Fraction:
        if not self.coeffs:
            return Fraction(0)
        return self.coeffs[-1]

    def __call__(self, x: RationalLike) -> Fraction:
        x = to_rational(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "Polynomial") -> "Polynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Polynomial(tuple(out))

    def __neg__(self) -> "Polynomial":
        return Polynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial | RationalLike") -> "Polynomial":
        if isinstance(other, Polynomial):
            if self.is_zero or other.is_zero:
                return Polynomial.zero()
            out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
            return Polynomial(tuple(out))
        c = to_rational(other)
        return Polynomial(tuple(c * a for a in self.coeffs))

    def __rmul__(self, other: RationalLike) -> "Polynomial":
        return self * other

    def derivative(self) -> "Polynomial":
        return Polynomial(tuple(k * c for k, c in enumerate(self.coeffs) if k >= 1))

    def antiderivative(self, constant: RationalLike = 0) -> "Polynomial":
        out = [to_rational(constant)]
        out.extend(c / (k + 1) for k, c in enumerate(self.coeffs))
        return Polynomial(tuple(out))

    def integrate(self, a: RationalLike, b: RationalLike) -> Fraction:
        """Exact definite integral over [a, b]."""
        F = self.antiderivative()
        return F(b) - F(a)

    def compose_linear(self, c0: RationalLike, c1: RationalLike) -> "Polynomial":
        """Exact composition p(c0 + c1 * u)."""
        arg = Polynomial.of(c0, c1)
        acc = Polynomial.zero()
        for c in reversed(self.coeffs):
            acc = acc * arg + Polynomial.const(c)
        return acc

    def shifted(self, s: RationalLike) -> "Polynomial":
        """p(u + s)."""
        return self.compose_linear(s, 1)

    def coefficient_bound(self) -> Fraction:
        """Sum of |coefficients|: bounds |p| and serves as a Lipschitz bound on [0, 1]."""
        return sum((abs(c) for c in self.coeffs), Fraction(0))

    def to_strings(self) -> list[str]:
        return [format_rational(c) for c in self.coeffs]

    @classmethod
    def from_strings(cls, items: Sequence[str]) -> "Polynomial":
        return cls(tuple(parse_rational(s) for s in items))


@dataclass(frozen=True)
class PiecewisePolynomial:
    """T-periodic function given by exact polynomial pieces on a partition of [0, 1].

    ``breakpoints`` is a strictly increasing tuple starting at 0 and ending at 1;
    ``pieces[i]`` is the polynomial in the unit variable u valid on
    [breakpoints[i], breakpoints[i+1]). Evaluation at t uses u = {t / period}.
    """

    breakpoints: tuple[Fraction, ...]
    pieces: tuple[Polynomial, ...]
    period: Fraction

    def __post_init__(self) -> None:
        bps = tuple(to_rational(b) for b in self.breakpoints)
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "period", to_rational(self.period))
        if len(bps) < 2 or bps[0] != 0 or bps[-1] != 1:
            raise ValueError("breakpoints must start at 0 and end at 1")
        if any(bps[i] >= bps[i + 1] for i in range(len(bps) - 1)):
            raise ValueError("breakpoints must be strictly increasing")
        if len(self.pieces) != len(bps) - 1:
            raise ValueError("need exactly one piece per subinterval")
        if self.period <= 0:
            raise ValueError("period must be positive")

    @classmethod
    def single(cls, piece: Polynomial, period: RationalLike = 1) -> "PiecewisePolynomial":
        return cls((Fraction(0), Fraction(1)), (piece,), to_rational(period))

    @classmethod
    def step(
        cls,
        breakpoints: Sequence[RationalLike],
        values: Sequence[RationalLike],
        period: RationalLike = 1,
    ) -> "PiecewisePolynomial":
        """Step function: constant pieces on the given unit-interval partition."""
        return cls(
            tuple(to_rational(b) for b in breakpoints),
            tuple(Polynomial.const(v) for v in values),
            to_rational(period),
        )

    @property
    def piece_count(self) -> int:
        return len(self.pieces)

    def piece_index(self, u: Fraction) -> int:
        """Index of the piece owning u in [0, 1), right-continuous at breakpoints."""
        if not 0 <= u < 1:
            raise ValueError("u must lie in [0, 1)")
        return bisect_right(self.breakpoints, u) - 1

    def value_in_unit(self, u: Fraction) -> Fraction:
        return self.pieces[self.piece_index(u)](u)

    def __call__(self, t: RationalLike) -> Fraction:
        u = frac_part(to_rational(t) / self.period)
        return self.value_in_unit(u)

    def left_limit_in_unit(self, u: RationalLike) -> Fraction:
        """Limit from below at u in (0, 1]; at u = 0 use the limit at the period end."""
        u = to_rational(u)
        if u == 0:
            u = Fraction(1)
        if not 0 < u <= 1:
            raise ValueError("u must lie in (0, 1]")
        idx = bisect_right(self.breakpoints, u) - 1
        if idx == len(self.pieces):  # u == 1
            idx -= 1
        elif self.breakpoints[idx] == u:
            idx -= 1
        return self.pieces[idx](u)

    def derivative(self) -> "PiecewisePolynomial":
        """Piecewise derivative with respect to t (chain rule through u = t/T)."""
        inv = 1 / self.period
        return PiecewisePolynomial(
            self.breakpoints,
            tuple(p.derivative() * inv for p in self.pieces),
            self.period,
        )

    def mean(self) -> Fraction:
        """Average over one period: sum of piece integrals in u."""
        return sum(
            (p.integrate(a, b) for p, a, b in self._spans()),
            Fraction(0),
        )

    def integral_over_period(self) -> Fraction:
        return self.period * self.mean()

    def _spans(self):
        for i, p in enumerate(self.pieces):
            yield p, self.breakpoints[i], self.breakpoints[i + 1]

    def _cumulative_unit(self, u: Fraction) -> Fraction:
        """Integral of the piecewise function in u from 0 to u, u in [0, 1]."""
        total = Fraction(0)
        for p, a, b in self._spans():
            if u <= a:
                break
            total += p.integrate(a, min(u, b))
        return total

    def integrate(self, a: RationalLike, b: RationalLike) -> Fraction:
        """Exact integral of the t-periodic function over [a, b], wrapping as needed."""
        a, b = to_rational(a), to_rational(b)
        if a > b:
            raise ValueError("need a <= b")

        def cumulative(t: Fraction) -> Fraction:
            x = t / self.period
            k = math.floor(x)
            return self.period * (k * self.mean() + self._cumulative_unit(x - k))

        return cumulative(b) - cumulative(a)

    def antiderivative(self) -> "PiecewisePolynomial":
        """Periodic antiderivative F with F(0) = 0; requires zero mean over the period.

        Differentiating the result recovers the original pieces exactly (equality
        away from breakpoints).
        """
        if self.mean() != 0:
            raise ValueError("periodic antiderivative requires zero mean")
        out = []
        running = Fraction(0)
        for p, a, b in self._spans():
            P = p.antiderivative()
            out.append((Polynomial.const(running - P(a)) + P) * self.period)
            running += p.integrate(a, b)
        return PiecewisePolynomial(self.breakpoints, tuple(out), self.period)

    def plus_constant(self, c: RationalLike) -> "PiecewisePolynomial":
        c = to_rational(c)
        return PiecewisePolynomial(
            self.breakpoints,
            tuple(p + Polynomial.const(c) for p in self.pieces),
            self.period,
        )

    def zero_mean(self) -> "PiecewisePolynomial":
        return self.plus_constant(-self.mean())

    def __mul__(self, other: RationalLike) -> "PiecewisePolynomial":
        c = to_rational(other)
        return PiecewisePolynomial(
            self.breakpoints, tuple(p * c for p in self.pieces), self.period
        )

    __rmul__ = __mul__

    def to_json_dict(self) -> dict:
        return {
            "breakpoints": [format_rational(b) for b in self.breakpoints],
            "pieces": [p.to_strings() for p in self.pieces],
            "period": format_rational(self.period),
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "PiecewisePolynomial":
        return cls(
            tuple(parse_rational(s) for s in data["breakpoints"]),
            tuple(Polynomial.from_strings(p) for p in data["pieces"]),
            parse_rational(data["period"]),
        )


def lagrange_interpolate(points: Sequence[tuple[Fraction, Fraction]]) -> Polynomial:
    """Exact interpolating polynomial through distinct rational points (Newton form)."""
    xs = [to_rational(x) for x, _ in points]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation nodes must be distinct")
    ys = [to_rational(y) for _, y in points]
    # divided differences
    coef = list(ys)
    for j in range(1, len(xs)):
        for i in range(len(xs) - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = Polynomial.zero()
    basis = Polynomial.const(1)
    for i, c in enumerate(coef):
        poly = poly + basis * c
        basis = basis * Polynomial.of(-xs[i], 1)
    return poly
