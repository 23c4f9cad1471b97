"""Exact solvability analysis of scalar periodic problems with step deviations.

For the T-periodic problem y^(n)(t) = L y(tau(t)) + C with step-valued tau,
the periodic representation

    y(t) = (T/(2 pi))^(n-1) * integral((phi_n(2 pi s / T) - xi) y^(n)(t - s), s = 0..T) + C_1

closes into a finite linear system: y(tau(t)) is a combination of the finitely
many samples y(s_j) over the deviation values s_j, and evaluating the
representation at each s_i yields exactly solvable equations in those samples
plus the constant C_1. The zero mean of y^(n) (forced by the boundary
conditions) supplies the final row. Singularity of that system is equivalent
to the homogeneous problem having a nontrivial solution, so an exact rational
determinant decides unique solvability with no discretization error.

Kernel integrals use phi_n(2 pi u) = -(2 pi)^(n-1) PB_n(u) / n!; the 2 pi
powers cancel against the representation prefactor, leaving entries that are
exact rationals times powers of T (the pi bookkeeping resolves away). The
free shift xi enters as a rank-one update absorbed by the constant column, so
verdicts are exactly xi-invariant. The periodic extension convention
y(z - T) = y(z), tau(z - T) = tau(z) is realized by wrapping all kernel
arguments modulo T. Where tau lands exactly on a partition breakpoint the
right-continuous convention applies.

Weighted problems y^(n) = p(t) (y(tau(t)) + C) with step p >= 0 reduce the
same way since p times an indicator is still a step function.

Edge case: L = 0 degenerates (the homogeneous problem then admits all
constants, but the zero-mean row no longer follows from y^(n) = 0), so it is
special-cased to a nontrivial-kernel verdict rather than run through the
reduction.

A dense float collocation fallback handles measurable deviations by
piecewise-constant interpolation of tau onto a uniform grid with midpoint
quadrature for the kernel cells; it is approximate and documented as such,
and the exact reduction always has the final word for step data.

Instance analyses are pure functions of their inputs and independent of each
other, so they can run concurrently; the exact elimination inside one
instance is single-threaded and deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .exact import RationalLike, format_rational, to_rational
from .numbers import bernoulli_polynomial, eval_periodic

__all__ = [
    "StepFunction",
    "ReducedSystem",
    "SolveReport",
    "reduce_system",
    "reduce_weighted",
    "uniqueness_margin",
    "solve_periodic",
    "solve_weighted",
    "reconstruct_solution",
    "contraction_norm",
    "collocation_margin",
    "fraction_determinant",
    "nullspace_vector",
    "NEAR_SINGULAR_BAND",
]

NEAR_SINGULAR_BAND = 1e-10


@dataclass(frozen=True)
class StepFunction:
    """Step function on [0, T]: rational breakpoints 0 = c_0 < ... < c_K = T,
    one rational value per interval [c_{k-1}, c_k), right-continuous."""

    breakpoints: tuple[Fraction, ...]
    values: tuple[Fraction, ...]
    period: Fraction

    def __post_init__(self) -> None:
        bps = tuple(to_rational(b) for b in self.breakpoints)
        vals = tuple(to_rational(v) for v in self.values)
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "period", to_rational(self.period))
        if len(bps) < 2 or bps[0] != 0 or bps[-1] != self.period:
            raise ValueError("breakpoints must run from 0 to T")
        if any(bps[i] >= bps[i + 1] for i in range(len(bps) - 1)):
            raise ValueError("breakpoints must be strictly increasing")
        if len(vals) != len(bps) - 1:
            raise ValueError("need one value per interval")

    @classmethod
    def constant(cls, value: RationalLike, period: RationalLike) -> "StepFunction":
        period = to_rational(period)
        return cls((Fraction(0), period), (to_rational(value),), period)

    def __call__(self, t: RationalLike) -> Fraction:
        t = to_rational(t)
        u = t - math.floor(t / self.period) * self.period
        from bisect import bisect_right

        idx = bisect_right(self.breakpoints, u) - 1
        if idx == len(self.values):  # u == T exactly after wrap, cannot happen
            idx -= 1
        return self.values[idx]

    def intervals(self) -> list[tuple[Fraction, Fraction, Fraction]]:
        return [
            (self.breakpoints[i], self.breakpoints[i + 1], self.values[i])
            for i in range(len(self.values))
        ]

    def integral(self) -> Fraction:
        return sum(
            (v * (hi - lo) for lo, hi, v in self.intervals()),
            Fraction(0),
        )

    def preimages(self) -> dict[Fraction, list[tuple[Fraction, Fraction]]]:
        """Value -> list of intervals on which the function takes it."""
        out: dict[Fraction, list[tuple[Fraction, Fraction]]] = {}
        for lo, hi, v in self.intervals():
            out.setdefault(v, []).append((lo, hi))
        return out

    def refine_with(self, other: "StepFunction") -> list[tuple[Fraction, Fraction]]:
        """Common partition intervals of the two step functions."""
        if other.period != self.period:
            raise ValueError("period mismatch")
        cuts = sorted(set(self.breakpoints) | set(other.breakpoints))
        return list(zip(cuts, cuts[1:]))

    def to_json_dict(self) -> dict:
        return {
            "breakpoints": [format_rational(b) for b in self.breakpoints],
            "values": [format_rational(v) for v in self.values],
        }

    @classmethod
    def from_json_dict(cls, data: dict, period: Fraction) -> "StepFunction":
        return cls(
            tuple(Fraction(s) for s in data["breakpoints"]),
            tuple(Fraction(s) for s in data["values"]),
            period,
        )


@dataclass(frozen=True)
class ReducedSystem:
    """Finite exact system equivalent to the periodic problem for step data.

    ``matrix`` is the (J+1) x (J+1) homogeneous system in (y(s_1)..y(s_J), C_1):
    rows 0..J-1 encode v_i - sum_j A_ij v_j - C_1 = 0 and the last row is the
    zero-mean constraint on y^(n). ``kernel_matrix`` is the bare A (needed for
    contraction norms). All entries are exact rationals.
    """

    n: int
    T: Fraction
    sample_points: tuple[Fraction, ...]
    kernel_matrix: tuple[tuple[Fraction, ...], ...]
    constraint_row: tuple[Fraction, ...]
    matrix: tuple[tuple[Fraction, ...], ...]
    kind: str  # "lipschitz" | "weighted"
    tau: "StepFunction | None" = None
    L: Fraction | None = None
    xi: Fraction = Fraction(0)

    @property
    def size(self) -> int:
        return len(self.matrix)

    def determinant(self) -> Fraction:
        return fraction_determinant([list(row) for row in self.matrix])

    def float_matrix(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.matrix], dtype=np.float64)


@dataclass(frozen=True)
class SolveReport:
    """Solvability verdict with exact determinant and float margin."""

    status: str  # "unique" | "nontrivial_kernel" | "near_singular"
    margin: float
    determinant: Fraction
    solution_samples: tuple[Fraction, ...] | None = None
    constant: Fraction | None = None
    provenance: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        out = {
            "status": self.status,
            "margin": self.margin,
            "determinant": format_rational(self.determinant),
            "provenance": dict(self.provenance),
        }
        if self.solution_samples is not None:
            out["solution_samples"] = [format_rational(v) for v in self.solution_samples]
        if self.constant is not None:
            out["constant"] = format_rational(self.constant)
        return out


def fraction_determinant(matrix: list[list[Fraction]]) -> Fraction:
    """Exact determinant by fraction-free (Bareiss) elimination.

    Rows are cleared to integers first (tracking the scaling), then the
    integer Bareiss recurrence runs without any intermediate fractions.
    """
    m = len(matrix)
    if m == 0:
        return Fraction(1)
    if any(len(row) != m for row in matrix):
        raise ValueError("matrix must be square")
    scale = Fraction(1)
    rows: list[list[int]] = []
    for row in matrix:
        denom = 1
        for x in row:
            denom = denom * x.denominator // math.gcd(denom, x.denominator)
        scale /= denom
        rows.append([int(x * denom) for x in row])
    sign = 1
    prev = 1
    for k in range(m - 1):
        if rows[k][k] == 0:
            pivot = next((i for i in range(k + 1, m) if rows[i][k] != 0), None)
            if pivot is None:
                return Fraction(0)
            rows[k], rows[pivot] = rows[pivot], rows[k]
            sign = -sign
        for i in range(k + 1, m):
            for j in range(k + 1, m):
                rows[i][j] = (rows[i][j] * rows[k][k] - rows[i][k] * rows[k][j]) // prev
            rows[i][k] = 0
        prev = rows[k][k]
    return sign * scale * rows[m - 1][m - 1]


def _gauss_eliminate(matrix: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    """Exact solve of a square system; None when singular."""
    m = len(matrix)
    a = [row[:] + [rhs[i]] for i, row in enumerate(matrix)]
    for col in range(m):
        pivot = next((r for r in range(col, m) if a[r][col] != 0), None)
        if pivot is None:
            return None
        a[col], a[pivot] = a[pivot], a[col]
        pv = a[col][col]
        a[col] = [x / pv for x in a[col]]
        for r in range(m):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[r][m] for r in range(m)]


def nullspace_vector(matrix: tuple[tuple[Fraction, ...], ...]) -> list[Fraction] | None:
    """One exact nontrivial kernel vector of a singular square matrix, or None."""
    m = len(matrix)
    a = [list(row) for row in matrix]
    pivots: list[tuple[int, int]] = []
    row = 0
    for col in range(m):
        pivot = next((r for r in range(row, m) if a[r][col] != 0), None)
        if pivot is None:
            continue
        a[row], a[pivot] = a[pivot], a[row]
        pv = a[row][col]
        a[row] = [x / pv for x in a[row]]
        for r in range(m):
            if r != row and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[row])]
        pivots.append((row, col))
        row += 1
        if row == m:
            break
    pivot_cols = {c for _, c in pivots}
    free = [c for c in range(m) if c not in pivot_cols]
    if not free:
        return None
    fc = free[0]
    vec = [Fraction(0)] * m
    vec[fc] = Fraction(1)
    for r, c in pivots:
        vec[c] = -a[r][fc]
    return vec


def _wrapped_kernel_integral(
    Bn1: "object", n: int, a: Fraction, lo: Fraction, hi: Fraction
) -> Fraction:
    """integral(PB_n(a - theta), theta = lo..hi) = (PB_{n+1}(a - lo) - PB_{n+1}(a - hi)) / (n + 1).

    Valid across wraps for n >= 1 because PB_{n+1} is a continuous global
    antiderivative of (n+1) PB_n.
    """
    return (eval_periodic(Bn1, a - lo) - eval_periodic(Bn1, a - hi)) / (n + 1)


def _validate_deviation(tau: StepFunction, T: Fraction) -> None:
    if tau.period != T:
        raise ValueError("deviation period mismatch")
    for v in tau.values:
        if not 0 <= v <= T:
            raise ValueError(f"deviation value {v} outside [0, T]")


def _assemble(
    n: int,
    T: Fraction,
    samples: list[Fraction],
    kernel: list[list[Fraction]],
    constraint: list[Fraction],
    kind: str,
    tau: "StepFunction | None",
    L: Fraction | None,
    xi: Fraction,
) -> ReducedSystem:
    J = len(samples)
    full: list[list[Fraction]] = []
    for i in range(J):
        row = [-kernel[i][j] for j in range(J)]
        row[i] += 1
        row.append(Fraction(-1))
        full.append(row)
    full.append(constraint + [Fraction(0)])
    return ReducedSystem(
        n=n,
        T=T,
        sample_points=tuple(samples),
        kernel_matrix=tuple(tuple(r) for r in kernel),
        constraint_row=tuple(constraint),
        matrix=tuple(tuple(r) for r in full),
        kind=kind,
        tau=tau,
        L=L,
        xi=xi,
    )


def reduce_system(
    n: int,
    T: RationalLike,
    L: RationalLike,
    tau: StepFunction,
    xi: RationalLike = 0,
) -> ReducedSystem:
    """Exact finite reduction of the homogeneous problem y^(n) = L y(tau(.)).

    Kernel entries: A_ij = (L T^n / 2^(n-1)) * integral over the shifted
    preimage of (p(u) - xi) du, with p the rational kernel coefficient; with
    xi = 0 this is -(L T^n / n!) * integral(PB_n) over (s_i - P_j)/T mod 1.
    The optional xi (coefficient of pi^(n-1)) only shifts the constant column
    and never changes the verdict.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    T, L, xi = to_rational(T), to_rational(L), to_rational(xi)
    if L < 0:
        raise ValueError("L must be >= 0")
    _validate_deviation(tau, T)
    pre = tau.preimages()
    samples = sorted(pre)
    Bn1 = bernoulli_polynomial(n + 1)
    factor = -L * T**n / math.factorial(n)
    xi_factor = L * T ** (n - 1) * xi / 2 ** (n - 1)
    kernel: list[list[Fraction]] = []
    for s in samples:
        row = []
        for v in samples:
            acc = Fraction(0)
            for lo, hi in pre[v]:
                acc += _wrapped_kernel_integral(Bn1, n, s / T, lo / T, hi / T)
            measure = sum((hi - lo for lo, hi in pre[v]), Fraction(0))
            row.append(factor * acc - xi_factor * measure)
        kernel.append(row)
    constraint = [sum((hi - lo for lo, hi in pre[v]), Fraction(0)) for v in samples]
    return _assemble(n, T, samples, kernel, constraint, "lipschitz", tau, L, xi)


def reduce_weighted(
    n: int,
    T: RationalLike,
    p: StepFunction,
    tau: StepFunction,
) -> ReducedSystem:
    """Exact finite reduction of the homogeneous weighted problem y^(n) = p(t) y(tau(t)).

    Products of the step weight with preimage indicators stay step-structured,
    so entries are exact: B_ij = -(T^n / n!) * sum over refined intervals of
    p * integral(PB_n((s_i - sigma)/T)). The constraint row carries the
    weighted means integral(p, P_j).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    T = to_rational(T)
    if p.period != T:
        raise ValueError("weight period mismatch")
    if any(v < 0 for v in p.values):
        raise ValueError("weight must be nonnegative")
    _validate_deviation(tau, T)
    cuts = sorted(set(p.breakpoints) | set(tau.breakpoints))
    refined = list(zip(cuts, cuts[1:]))
    pre_vals = sorted(tau.preimages())
    Bn1 = bernoulli_polynomial(n + 1)
    factor = -(T**n) / Fraction(math.factorial(n))
    kernel: list[list[Fraction]] = []
    for s in pre_vals:
        row = []
        for v in pre_vals:
            acc = Fraction(0)
            for lo, hi in refined:
                if tau((lo + hi) / 2) != v:
                    continue
                pv = p((lo + hi) / 2)
                if pv == 0:
                    continue
                acc += pv * _wrapped_kernel_integral(Bn1, n, s / T, lo / T, hi / T)
            row.append(factor * acc)
        kernel.append(row)
    constraint = []
    for v in pre_vals:
        acc = Fraction(0)
        for lo, hi in refined:
            if tau((lo + hi) / 2) == v:
                acc += p((lo + hi) / 2) * (hi - lo)
        constraint.append(acc)
    return _assemble(n, T, pre_vals, kernel, constraint, "weighted", tau, None, Fraction(0))


def _margin(sys: ReducedSystem) -> float:
    svals = np.linalg.svd(sys.float_matrix(), compute_uv=False)
    return float(svals[-1])


def uniqueness_margin(sys: ReducedSystem) -> SolveReport:
    """Exact determinant verdict first; the float smallest singular value is advisory.

    ``near_singular`` flags a nonzero determinant whose float margin falls
    below NEAR_SINGULAR_BAND relative to the Frobenius norm, the interesting
    regime next to the sharp threshold.
    """
    det = sys.determinant()
    margin = _margin(sys)
    provenance = {
        "route": "exact_reduction",
        "size": sys.size,
        "kind": sys.kind,
    }
    if det == 0:
        vec = nullspace_vector(sys.matrix)
        samples = tuple(vec[:-1]) if vec is not None else None
        return SolveReport(
            status="nontrivial_kernel",
            margin=margin,
            determinant=det,
            solution_samples=samples,
            constant=vec[-1] if vec is not None else None,
            provenance=provenance,
        )
    norm = float(np.linalg.norm(sys.float_matrix()))
    status = "near_singular" if margin < NEAR_SINGULAR_BAND * norm else "unique"
    return SolveReport(status=status, margin=margin, determinant=det, provenance=provenance)


def solve_periodic(
    n: int,
    T: RationalLike,
    L: RationalLike,
    tau: StepFunction,
    C: RationalLike,
) -> SolveReport:
    """Exact solve of y^(n) = L y(tau(.)) + C with periodic boundary conditions.

    When the reduced system is nonsingular the unique periodic solution is
    returned through its samples y(s_j) and the constant C_1 of the
    reconstruction recipe (see :func:`reconstruct_solution`). A singular
    system reports ``nontrivial_kernel`` and returns no solution.
    """
    T, L, C = to_rational(T), to_rational(L), to_rational(C)
    if L == 0:
        # Degenerate: y^(n) = C has periodic solutions iff C = 0, then all constants.
        return SolveReport(
            status="nontrivial_kernel",
            margin=0.0,
            determinant=Fraction(0),
            provenance={"route": "degenerate_L0", "kind": "lipschitz"},
        )
    sys = reduce_system(n, T, L, tau)
    det = sys.determinant()
    margin = _margin(sys)
    if det == 0:
        vec = nullspace_vector(sys.matrix)
        return SolveReport(
            status="nontrivial_kernel",
            margin=margin,
            determinant=det,
            solution_samples=tuple(vec[:-1]) if vec is not None else None,
            constant=vec[-1] if vec is not None else None,
            provenance={"route": "exact_reduction", "kind": "lipschitz", "homogeneous": False},
        )
    J = len(sys.sample_points)
    matrix = [list(row) for row in sys.matrix]
    rhs = [Fraction(0)] * J + [-C * T / L]
    solution = _gauss_eliminate(matrix, rhs)
    assert solution is not None
    return SolveReport(
        status="unique",
        margin=margin,
        determinant=det,
        solution_samples=tuple(solution[:-1]),
        constant=solution[-1],
        provenance={"route": "exact_reduction", "kind": "lipschitz", "homogeneous": False},
    )


def solve_weighted(
    n: int,
    T: RationalLike,
    p: StepFunction,
    tau: StepFunction,
) -> SolveReport:
    """Singularity verdict for the homogeneous weighted problem y^(n) = p(t) y(tau(t))."""
    sys = reduce_weighted(n, T, p, tau)
    report = uniqueness_margin(sys)
    report.provenance["weight_l1"] = format_rational(p.integral())
    return report


def reconstruct_solution(
    sys: ReducedSystem,
    samples: tuple[Fraction, ...],
    constant: Fraction,
    t: RationalLike,
) -> Fraction:
    """Exact y(t) from the representation, given the solved samples and C_1.

    y(t) = -(T^(n-1) L / n!) * integral(PB_n((t - sigma)/T) z(sigma)) + C_1
    with z the step built from the samples over the deviation preimages.
    Evaluating at a sample point s_j reproduces samples[j] by construction.
    """
    if sys.kind != "lipschitz" or sys.L is None or sys.tau is None:
        raise ValueError("reconstruction applies to the Lipschitz reduction")
    t = to_rational(t)
    n, T, L = sys.n, sys.T, sys.L
    Bn1 = bernoulli_polynomial(n + 1)
    by_value = dict(zip(sys.sample_points, samples))
    total = Fraction(0)
    for v, intervals in sys.tau.preimages().items():
        for lo, hi in intervals:
            total += by_value[v] * _wrapped_kernel_integral(Bn1, n, t / T, lo / T, hi / T)
    return -L * T**n / math.factorial(n) * total + constant


def contraction_norm(sys: ReducedSystem) -> float:
    """Float operator norm (max absolute row sum) of the reduced kernel matrix.

    With the optimal centering shift the exact row sums are bounded by
    L K_n T^n, the contraction factor of the representation operator.
    """
    worst = Fraction(0)
    for row in sys.kernel_matrix:
        s = sum((abs(x) for x in row), Fraction(0))
        worst = max(worst, s)
    return float(worst)


def collocation_margin(
    n: int,
    T: RationalLike,
    L: RationalLike,
    tau: StepFunction,
    grid: int,
) -> float:
    """Smallest singular value of a dense float collocation of the homogeneous problem.

    Uniform grid of ``grid`` nodes; tau is interpolated piecewise-constant at
    cell midpoints and sampled values are rounded to the nearest node;
    kernel cell integrals use midpoint quadrature. Approximate by design: for
    instances the exact reduction declares singular this margin converges to
    zero as the grid refines.
    """
    T, L = to_rational(T), to_rational(L)
    N = int(grid)
    Tf = float(T)
    h = Tf / N
    Bn = bernoulli_polynomial(n)
    coeffs = np.array([float(c) for c in Bn.coeffs])
    scale = -(Tf ** (n - 1)) * float(L) / math.factorial(n)

    def kernel_at(s: np.ndarray) -> np.ndarray:
        u = np.mod(s / Tf, 1.0)
        acc = np.zeros_like(u)
        for c in coeffs[::-1]:
            acc = acc * u + c
        return scale * acc

    tau_breaks = np.array([float(b) for b in tau.breakpoints])
    tau_vals = np.array([float(v) for v in tau.values])

    def tau_at(t: np.ndarray) -> np.ndarray:
        u = np.mod(t, Tf)
        idx = np.clip(np.searchsorted(tau_breaks, u, side="right") - 1, 0, len(tau_vals) - 1)
        return tau_vals[idx]

    nodes = np.arange(N) * h
    mids = (np.arange(N) + 0.5) * h
    kmid = kernel_at(mids) * h
    args = np.mod(nodes[:, None] - mids[None, :], Tf)
    cols = np.mod(np.rint(tau_at(args) / h).astype(int), N)
    A = np.zeros((N, N))
    np.add.at(A, (np.repeat(np.arange(N), N), cols.ravel()), np.tile(kmid, N))
    M = np.zeros((N + 1, N + 1))
    M[:N, :N] = np.eye(N) - A
    M[:N, N] = -1.0
    # zero-mean row over y(tau(t)) cell contributions
    mid_cols = np.mod(np.rint(tau_at(mids) / h).astype(int), N)
    row = np.zeros(N + 1)
    np.add.at(row, mid_cols, h)
    M[N, :] = row
    svals = np.linalg.svd(M, compute_uv=False)
    return float(svals[-1])
