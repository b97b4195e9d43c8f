import math

import pytest
from hypothesis import given

from qpbose import ConvergenceError, DeformationParams, DomainError, ModeState
from qpbose.distribution import (bose_convergence_ok, bose_factor, bose_factor_from_classical,
                                 bose_factor_partial_fractions, bose_factor_series,
                                 log_partition_mode)
from qpbose.oracle import oracle_bose_factor
from strategies import params_and_eta

HAND = 1.0 / (1.5 * 1.75)


class TestPartition:
    def test_ln2(self):
        assert log_partition_mode(math.log(2.0)) == pytest.approx(math.log(2.0), rel=1e-15)

    def test_eta_one(self):
        assert log_partition_mode(1.0) == pytest.approx(0.458675, abs=1e-6)

    def test_empty_mode(self):
        assert log_partition_mode(math.inf) == 0.0
        assert log_partition_mode(60.0) < 1e-25

    def test_nonpositive_eta(self):
        with pytest.raises(ConvergenceError):
            log_partition_mode(0.0)


class TestConvergence:
    def test_classical(self):
        assert bose_convergence_ok(0.1, DeformationParams.classical())

    def test_q_too_large(self):
        assert not bose_convergence_ok(math.log(2.0), DeformationParams.from_qp(3.0, 1.0))

    def test_unit_circle(self):
        params = DeformationParams(1.3, math.pi / 2, "complex")
        for eta in (1e-6, 0.5, 40.0):
            assert bose_convergence_ok(eta, params)

    def test_mode_state(self):
        mode = ModeState(beta=2.0, mu=-0.1, energy=0.4)
        assert mode.eta == pytest.approx(1.0)
        assert bose_convergence_ok(mode, DeformationParams.from_qp(2.5, 0.4))

    def test_positive_mu_rejected(self):
        with pytest.raises(DomainError):
            ModeState(beta=1.0, mu=0.2, energy=1.0)

    def test_divergent_mode_raises_with_details(self):
        with pytest.raises(ConvergenceError) as info:
            bose_factor(0.5, DeformationParams.from_qp(2.0, 1.0))
        assert info.value.details["eta"] == 0.5


class TestBoseFactor:
    def test_classical_ln2(self):
        assert bose_factor(math.log(2.0), DeformationParams.classical()) == pytest.approx(1.0)

    def test_hand_value(self):
        params = DeformationParams.from_qp(0.5, 0.25)
        eta = math.log(2.0)
        for form in (bose_factor, bose_factor_partial_fractions):
            assert form(eta, params) == pytest.approx(HAND, rel=1e-13)
        assert bose_factor_series(eta, params, tol=1e-14).value == pytest.approx(HAND, rel=1e-10)
        assert oracle_bose_factor(eta, params) == pytest.approx(HAND, rel=1e-12)

    def test_p_one_partial_fractions(self):
        params = DeformationParams.from_qp(0.5, 1.0)
        expected = 1.0 / (math.e - 0.5)
        assert bose_factor_partial_fractions(1.0, params) == pytest.approx(expected, rel=1e-13)
        assert bose_factor(1.0, params) == pytest.approx(expected, rel=1e-13)

    def test_classical_series(self):
        res = bose_factor_series(1.0, DeformationParams.classical())
        assert res.value == pytest.approx(1.0 / (math.e - 1.0), abs=1e-10)
        assert res.converged

    def test_unit_circle_series(self):
        params = DeformationParams(1.0, math.pi / 2, "complex")
        assert params.q_plus_p == pytest.approx(2 * math.cos(1.0))
        res = bose_factor_series(1.0, params)
        assert res.value == pytest.approx(bose_factor(1.0, params), abs=1e-10)

    def test_composition_fixed_point(self):
        assert bose_factor_from_classical(0.37, DeformationParams.classical()) == 0.37

    def test_large_eta_no_overflow(self):
        params = DeformationParams.from_qp(2.0, 0.5)
        value = bose_factor(800.0, params)
        assert value == pytest.approx(math.exp(-800.0), rel=1e-12)

    @given(params_and_eta())
    def test_three_forms_agree(self, case):
        params, eta = case
        f = bose_factor(eta, params)
        assert bose_factor_partial_fractions(eta, params) == pytest.approx(f, rel=1e-10)
        classical = 1.0 / math.expm1(eta)
        assert bose_factor_from_classical(classical, params) == pytest.approx(f, rel=1e-10)
        assert bose_factor_series(eta, params, tol=1e-13 * f).value == pytest.approx(f, rel=1e-10)

    @given(params_and_eta())
    def test_swap_symmetry(self, case):
        params, eta = case
        assert bose_factor(eta, params.swapped()) == pytest.approx(bose_factor(eta, params),
                                                                   rel=1e-12)

    @given(params_and_eta())
    def test_series_within_its_tail_bound(self, case):
        params, eta = case
        res = bose_factor_series(eta, params, tol=1e-9)
        assert abs(res.value - bose_factor(eta, params)) <= res.tail_bound + 1e-13
