import dataclasses
import json
from fractions import Fraction as F

import pytest

from favard.constants import favard_closed_form
from favard.witness import (
    DeviationMap,
    StepSign,
    auxiliary_solution,
    build_witness,
    extremal_ratio,
    tabulated_deviation,
    verify_witness,
    witness_extrema,
)

PERIODS = (F(1), F(5, 2), F(1, 3))


def test_step_sign():
    h = StepSign(F(1))
    assert h(0) == 1 and h(F(1, 4)) == 1 and h(F(3, 4)) == -1
    assert h(F(5, 4)) == 1  # periodic wrap
    assert h.as_piecewise().mean() == 0


def test_deviation_validation():
    with pytest.raises(ValueError):
        DeviationMap(period=F(1), first=F(5, 4), second=F(0))


class TestBuildWitness:
    def test_n2_example(self):
        w = build_witness(2, F(1))
        assert w.L_crit == 32
        assert abs(w.y(F(1, 4))) == 1
        assert w.y(F(3, 4)) == -w.y(F(1, 4))
        assert w.C == 0

    def test_n1_example(self):
        w = build_witness(1, F(1))
        assert w.L_crit == 4
        assert w.y(0) - w.y(F(1, 2)) in (2, -2)

    def test_n4_example(self):
        w = build_witness(4, F(1))
        assert w.L_crit == F(6144, 5)
        assert {w.tau.first, w.tau.second} == {F(1, 4), F(3, 4)}

    def test_derived_tau_matches_tabulated(self):
        for n in range(1, 11):
            w = build_witness(n, F(1))
            assert w.tau == w.tabulated_tau == tabulated_deviation(n, F(1))

    def test_orientation_flag(self):
        # direct evaluation of the closed form forces sigma = -1 for every order
        for n in range(1, 9):
            assert build_witness(n, F(1)).sigma == -1

    def test_bad_input(self):
        with pytest.raises(ValueError):
            build_witness(0, F(1))
        with pytest.raises(ValueError):
            build_witness(2, F(-1))


class TestVerifyWitness:
    @pytest.mark.parametrize("n", range(1, 11))
    @pytest.mark.parametrize("T", PERIODS)
    def test_all_pass(self, n, T):
        report = verify_witness(build_witness(n, T))
        assert report.all_passed

    def test_odd_high_order_nonunit_period(self):
        assert verify_witness(build_witness(7, F(5, 2))).all_passed

    def test_tampered_constant_fails_sampling(self):
        w = build_witness(2, F(1))
        bad = dataclasses.replace(w, y=w.y.plus_constant(F(1, 1000)), C=w.C + F(1, 1000))
        report = verify_witness(bad)
        assert not report.all_passed
        fail = report.first_failure
        assert fail.name == "sampling_identity"
        assert fail.discrepancy == F(1, 1000)

    def test_tampered_threshold_fails(self):
        w = build_witness(3, F(1))
        bad = dataclasses.replace(w, L_crit=w.L_crit + 1)
        report = verify_witness(bad)
        assert not report.all_passed


def test_scaling_law():
    # t -> t/T maps the (n, T) witness onto the (n, 1) witness; L scales by T^n
    for n in (1, 2, 3, 5, 8):
        for T in (F(5, 2), F(1, 3)):
            w_T = build_witness(n, T)
            w_1 = build_witness(n, F(1))
            assert w_T.y.pieces == w_1.y.pieces
            assert w_T.y.breakpoints == w_1.y.breakpoints
            assert w_T.L_crit * T**n == w_1.L_crit
            assert w_T.C == w_1.C


def test_amplitude_exactly_two():
    for n in range(1, 11):
        for T in PERIODS:
            hi, lo = witness_extrema(build_witness(n, T))
            assert hi - lo == 2
            assert {hi, lo} == {F(1), F(-1)}


def test_extremal_ratio_attains_best_constant():
    for n in range(1, 9):
        for T in PERIODS:
            w = build_witness(n, T)
            assert extremal_ratio(w) == favard_closed_form(n) * T**n


class TestAuxiliarySolution:
    def test_n1_difference(self):
        y = auxiliary_solution(1, F(1), F(4), 0)
        assert abs(y(0) - y(F(1, 2))) == 2

    def test_n2_antisymmetry(self):
        y = auxiliary_solution(2, F(1), F(32), 0)
        assert y(F(1, 4)) + y(F(3, 4)) == 0

    def test_n3_differential_identity(self):
        y = auxiliary_solution(3, F(1), F(192), F(7, 13))
        d = y
        for _ in range(3):
            d = d.derivative()
        values = {d.value_in_unit(F(1, 4)), d.value_in_unit(F(3, 4))}
        assert values == {F(192), F(-192)}

    def test_constant_shifts(self):
        base = auxiliary_solution(4, F(1), F(10), 0)
        shifted = auxiliary_solution(4, F(1), F(10), F(3, 7))
        assert shifted(F(1, 5)) - base(F(1, 5)) == F(3, 7)


def test_witness_json_round_trip():
    w = build_witness(3, F(5, 2))
    payload = json.loads(json.dumps(w.to_json_dict()))
    # 1 / (K_3 T^3) = 192 * 8 / 125
    assert payload["L_crit"] == "1536/125"
    from favard.exact import PiecewisePolynomial

    y2 = PiecewisePolynomial.from_json_dict(payload["y"])
    assert y2 == w.y
