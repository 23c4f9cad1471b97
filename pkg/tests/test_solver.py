import random
from fractions import Fraction as F

import numpy as np
import pytest

from favard.constants import favard_closed_form
from favard.kernels import min_abs_integral
from favard.sampling import random_deviation, random_weight
from favard.solver import (
    StepFunction,
    collocation_margin,
    contraction_norm,
    fraction_determinant,
    nullspace_vector,
    reconstruct_solution,
    reduce_system,
    reduce_weighted,
    solve_periodic,
    solve_weighted,
    uniqueness_margin,
)
from favard.witness import build_witness


def witness_tau(n, T=F(1)):
    w = build_witness(n, T)
    return StepFunction((F(0), T / 2, T), (w.tau.first, w.tau.second), T)


class TestStepFunction:
    def test_eval_and_wrap(self):
        s = StepFunction((F(0), F(1, 3), F(1)), (F(2), F(5)), F(1))
        assert s(0) == 2
        assert s(F(1, 3)) == 5  # right-continuous
        assert s(F(4, 3)) == 5
        assert s.integral() == 2 * F(1, 3) + 5 * F(2, 3)

    def test_preimages_merge_equal_values(self):
        s = StepFunction((F(0), F(1, 4), F(1, 2), F(1)), (F(1), F(2), F(1)), F(1))
        pre = s.preimages()
        assert set(pre) == {F(1), F(2)}
        assert pre[F(1)] == [(F(0), F(1, 4)), (F(1, 2), F(1))]

    def test_validation(self):
        with pytest.raises(ValueError):
            StepFunction((F(0), F(1, 2)), (F(1),), F(1))
        with pytest.raises(ValueError):
            StepFunction((F(0), F(1)), (F(1), F(2)), F(1))


class TestDeterminant:
    def test_known_determinants(self):
        assert fraction_determinant([[F(2)]]) == 2
        m = [[F(1), F(2)], [F(3), F(4)]]
        assert fraction_determinant(m) == -2
        m = [[F(1, 2), F(1, 3)], [F(1, 5), F(1, 7)]]
        assert fraction_determinant(m) == F(1, 2) * F(1, 7) - F(1, 3) * F(1, 5)

    def test_random_against_float(self):
        rng = random.Random(13)
        for _ in range(20):
            size = rng.randint(2, 5)
            m = [[F(rng.randint(-8, 8), rng.randint(1, 5)) for _ in range(size)] for _ in range(size)]
            exact = fraction_determinant([row[:] for row in m])
            approx = np.linalg.det(np.array([[float(x) for x in r] for r in m]))
            assert abs(float(exact) - approx) < 1e-8 * max(1.0, abs(approx))

    def test_singular(self):
        m = [[F(1), F(2)], [F(2), F(4)]]
        assert fraction_determinant(m) == 0

    def test_nullspace_vector_is_exact_kernel(self):
        sys = reduce_system(2, 1, F(32), witness_tau(2))
        vec = nullspace_vector(sys.matrix)
        assert vec is not None
        for row in sys.matrix:
            assert sum(a * b for a, b in zip(row, vec)) == 0


class TestReduction:
    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_witness_tau_singular_at_threshold(self, n):
        K = favard_closed_form(n)
        sys = reduce_system(n, 1, 1 / K, witness_tau(n))
        assert sys.determinant() == 0
        report = uniqueness_margin(sys)
        assert report.status == "nontrivial_kernel"
        # kernel vector proportional to the witness samples (+1, -1)
        v = report.solution_samples
        assert v is not None and len(v) == 2
        assert v[0] == -v[1] != 0

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_witness_tau_regular_below_threshold(self, n):
        K = favard_closed_form(n)
        sys = reduce_system(n, 1, F(1, 2) / K, witness_tau(n))
        assert sys.determinant() != 0
        assert uniqueness_margin(sys).status == "unique"

    def test_random_below_threshold_all_unique(self):
        rng = random.Random(51)
        for n in (2, 3):
            K = favard_closed_form(n)
            L = F(9, 10) / K
            for _ in range(30):
                tau = random_deviation(rng, F(1))
                assert reduce_system(n, F(1), L, tau).determinant() != 0

    def test_constant_deviation_unique(self):
        tau = StepFunction.constant(F(0), F(1))
        for n in (1, 2, 3):
            K = favard_closed_form(n)
            sys = reduce_system(n, 1, F(1, 2) / K, tau)
            assert uniqueness_margin(sys).status == "unique"

    def test_xi_invariance_exact(self):
        rng = random.Random(3)
        tau = random_deviation(rng, F(1))
        base = reduce_system(2, 1, F(16), tau).determinant()
        for xi in (F(1, 3), F(-2, 7), F(5, 48), F(1), F(-3)):
            assert reduce_system(2, 1, F(16), tau, xi=xi).determinant() == base

    def test_rejects_deviation_outside_period(self):
        tau = StepFunction((F(0), F(1)), (F(3, 2),), F(1))
        with pytest.raises(ValueError):
            reduce_system(1, 1, F(1), tau)

    def test_near_singular_band(self):
        n = 2
        K = favard_closed_form(n)
        L = (1 - F(1, 10**12)) / K
        report = uniqueness_margin(reduce_system(n, 1, L, witness_tau(n)))
        assert report.determinant != 0
        assert report.status == "near_singular"

    def test_exact_vs_float_consistency(self):
        rng = random.Random(77)
        events = []
        for _ in range(46):
            n = rng.randint(1, 3)
            K = favard_closed_form(n)
            L = F(rng.randint(10, 90), 100) / K
            tau = random_deviation(rng, F(1))
            rep = uniqueness_margin(reduce_system(n, 1, L, tau))
            events.append((rep.determinant == 0, rep.margin < 1e-8))
        for n in (1, 2, 3, 4):
            rep = uniqueness_margin(reduce_system(n, 1, 1 / favard_closed_form(n), witness_tau(n)))
            events.append((rep.determinant == 0, rep.margin < 1e-8))
        assert all(zero == small for zero, small in events)


class TestSolvePeriodic:
    def test_constant_solution(self):
        tau = StepFunction.constant(F(1, 2), F(1))
        report = solve_periodic(1, 1, 2, tau, -2)
        assert report.status == "unique"
        assert report.solution_samples == (F(1),)
        sys = reduce_system(1, 1, 2, tau)
        for t in (F(0), F(1, 3), F(7, 8)):
            assert reconstruct_solution(sys, report.solution_samples, report.constant, t) == 1

    def test_homogeneous_below_threshold_trivial(self):
        rng = random.Random(9)
        tau = random_deviation(rng, F(1))
        report = solve_periodic(2, 1, 16, tau, 0)
        assert report.status == "unique"
        assert all(v == 0 for v in report.solution_samples)

    def test_witness_kernel_reported(self):
        report = solve_periodic(2, 1, 32, witness_tau(2), 0)
        assert report.status == "nontrivial_kernel"
        v = report.solution_samples
        assert v[0] == -v[1] != 0

    def test_constant_solution_general(self):
        # below threshold with constant deviation the solution is -C/L everywhere
        tau = StepFunction.constant(F(1, 4), F(1))
        report = solve_periodic(3, 1, 12, tau, F(5, 7))
        assert report.status == "unique"
        assert all(v == F(-5, 7) / 12 for v in report.solution_samples)

    def test_reconstruction_fixed_point(self):
        # reconstructed y reproduces the solved samples at the sample points
        rng = random.Random(29)
        tau = random_deviation(rng, F(1))
        sys = reduce_system(2, 1, F(10), tau)
        report = solve_periodic(2, 1, F(10), tau, F(1, 3))
        assert report.status == "unique"
        for s, v in zip(sys.sample_points, report.solution_samples):
            assert reconstruct_solution(sys, report.solution_samples, report.constant, s) == v

    def test_L_zero_degenerate(self):
        tau = StepFunction.constant(F(0), F(1))
        report = solve_periodic(2, 1, 0, tau, 1)
        assert report.status == "nontrivial_kernel"

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_reconstruction_satisfies_ode(self, n):
        # independent closure: y from the representation obeys
        # y^(n)(t) = L y(tau(t)) + C, checked by exact finite differences
        # (y is piecewise polynomial of degree <= n between tau breakpoints,
        # so an n-th central difference inside one piece is exact)
        from math import comb

        tau = StepFunction((F(0), F(1, 3), F(3, 4), F(1)), (F(1, 2), F(0), F(7, 8)), F(1))
        L, C = F(7), F(2, 5)
        report = solve_periodic(n, 1, L, tau, C)
        assert report.status == "unique"
        sys = reduce_system(n, 1, L, tau)

        def y(t):
            return reconstruct_solution(sys, report.solution_samples, report.constant, t)

        for lo, hi, _ in tau.intervals():
            t = (lo + hi) / 2
            h = (hi - lo) / (2 * (n + 2))
            fd = sum((-1) ** k * comb(n, k) * y(t + (F(n, 2) - k) * h) for k in range(n + 1))
            assert fd / h**n == L * y(tau(t)) + C

    def test_witness_singular_at_nonunit_period(self):
        T = F(5, 2)
        K = favard_closed_form(2)
        sys = reduce_system(2, T, 1 / (K * T**2), witness_tau(2, T))
        assert sys.determinant() == 0
        below = reduce_system(2, T, F(1, 2) / (K * T**2), witness_tau(2, T))
        assert below.determinant() != 0


class TestWeighted:
    def test_below_threshold_unique(self):
        rng = random.Random(41)
        for _ in range(20):
            p = random_weight(rng, F(1), F(39, 10))
            tau = random_deviation(rng, F(1))
            assert solve_weighted(1, F(1), p, tau).status == "unique"

    def test_second_order_half_threshold(self):
        # threshold for n = 2 is 4/K_1 = 16; integral 8 stays unique
        rng = random.Random(43)
        for _ in range(10):
            p = random_weight(rng, F(1), F(8))
            tau = random_deviation(rng, F(1))
            assert solve_weighted(2, F(1), p, tau).status == "unique"

    def test_zero_weight_degenerate(self):
        p = StepFunction.constant(F(0), F(1))
        tau = StepFunction.constant(F(0), F(1))
        report = solve_weighted(1, F(1), p, tau)
        assert report.status == "nontrivial_kernel"

    def test_negative_weight_rejected(self):
        p = StepFunction.constant(F(-1), F(1))
        tau = StepFunction.constant(F(0), F(1))
        with pytest.raises(ValueError):
            reduce_weighted(1, F(1), p, tau)

    def test_concentration_margins_decrease(self):
        margins = []
        for k in range(1, 6):
            eps = F(1, 2**k)
            width = F(1, 2 ** (k + 3))
            height = (4 + eps) / 2 / width
            bps = (F(0), width, F(1, 2), F(1, 2) + width, F(1))
            p = StepFunction(bps, (height, F(0), height, F(0)), F(1))
            tau = StepFunction(bps, (F(1, 2), F(0), F(0), F(0)), F(1))
            margins.append(solve_weighted(1, F(1), p, tau).margin)
        assert all(a > b for a, b in zip(margins, margins[1:]))
        assert margins[-1] < margins[0] / 8


class TestContraction:
    def test_norm_bounded_by_contraction_factor(self):
        rng = random.Random(61)
        xi = {n: min_abs_integral(n).xi_star for n in (1, 2, 3)}
        for _ in range(20):
            n = rng.randint(1, 3)
            T = (F(1), F(5, 2), F(1, 3))[rng.randrange(3)]
            rho = F(rng.randint(10, 99), 100)
            L = rho / (favard_closed_form(n) * T**n)
            sys = reduce_system(n, T, L, random_deviation(rng, T), xi=xi[n])
            assert contraction_norm(sys) <= float(rho) + 1e-6

    def test_without_centering_norm_can_exceed(self):
        # the shift is what makes the operator a contraction: xi = 0 overshoots
        # the factor for n = 1 instances sampling near the kernel extremes
        tau = StepFunction.constant(F(0), F(1))
        K = favard_closed_form(1)
        rho = F(99, 100)
        sys0 = reduce_system(1, 1, rho / K, tau, xi=0)
        sys_star = reduce_system(1, 1, rho / K, tau, xi=min_abs_integral(1).xi_star)
        assert contraction_norm(sys_star) <= float(rho) + 1e-6


class TestCollocation:
    def test_discriminates_singular_from_regular(self):
        # grids 2^7 .. 2^10; the deviation samples sit on these grids, so the
        # singular instance is resolved immediately while the regular one
        # keeps a margin orders of magnitude higher
        tau = witness_tau(2)
        for grid in (128, 256, 512, 1024):
            singular = collocation_margin(2, 1, 32, tau, grid)
            regular = collocation_margin(2, 1, 16, tau, grid)
            assert singular < 1e-8
            assert regular > 1e-4

    def test_misaligned_grid_converges(self):
        # off-grid variant to expose a finite convergence order
        tau = witness_tau(2)
        margins = [collocation_margin(2, 1, 32, tau, g) for g in (129, 257, 513)]
        orders = [margins[i] / margins[i + 1] for i in range(len(margins) - 1)]
        print("collocation margins:", margins, "per-doubling ratios:", orders)
        assert all(a > b for a, b in zip(margins, margins[1:]))
        assert margins[-1] < 1e-5
        assert all(o > 2 for o in orders)  # better than first order per doubling
