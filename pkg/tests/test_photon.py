import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from qpbose import ConvergenceError, DeformationParams, PhotonMode, g2, g2_asymptote
from qpbose.oracle import oracle_g2, oracle_n2, oracle_qN
from qpbose.photon import (g2_convergence_ok, g2_deviation, g2_from_moments, mean_occupation,
                           mean_occupation_sq, mean_qN_occupation)
from strategies import any_params

CLASSICAL = DeformationParams.classical()


def admissible_xi(params, margin):
    return 2.0 * max(params.log_max_modulus, 0.0) + margin


class TestMoments:
    def test_occupation_hand_value(self):
        params = DeformationParams.from_qp(0.5, 0.25)
        assert mean_occupation(math.log(2), params) == pytest.approx(1 / (1.5 * 1.75), rel=1e-13)

    def test_n2_classical(self):
        assert mean_occupation_sq(math.log(2), CLASSICAL) == pytest.approx(3.0, rel=1e-14)
        assert oracle_n2(math.log(2), CLASSICAL) == pytest.approx(3.0, rel=1e-12)

    def test_qN_classical(self):
        assert mean_qN_occupation(math.log(2), CLASSICAL) == pytest.approx(1.0, rel=1e-14)

    def test_qN_p_one(self):
        params = DeformationParams.from_qp(0.5, 1.0)
        e = math.e
        expected = 0.5 * (e - 1) / ((e - 0.25) * (e - 0.5))
        assert mean_qN_occupation(1.0, params) == pytest.approx(expected, rel=1e-13)
        assert expected == pytest.approx(0.15691, abs=1e-5)

    @given(any_params, st.floats(0.2, 3.0))
    def test_against_oracle(self, params, margin):
        xi = admissible_xi(params, margin)
        assert mean_occupation_sq(xi, params) == pytest.approx(oracle_n2(xi, params), rel=1e-9)
        qn, ref = mean_qN_occupation(xi, params), oracle_qN(xi, params)
        assert abs(qn - ref) <= 1e-9 * abs(ref) + 1e-15

    @given(any_params, st.floats(0.2, 3.0))
    def test_n2_swap_symmetry(self, params, margin):
        xi = admissible_xi(params, margin)
        assert mean_occupation_sq(xi, params.swapped()) == pytest.approx(
            mean_occupation_sq(xi, params), rel=1e-12)

    def test_divergent(self):
        params = DeformationParams.from_qp(2.0, 0.5)
        assert not g2_convergence_ok(2 * math.log(2.0), params)
        with pytest.raises(ConvergenceError):
            mean_occupation_sq(1.0, params)


class TestG2:
    @pytest.mark.parametrize("xi", [0.01, 0.7, 5.0, 300.0])
    def test_classical_is_two(self, xi):
        assert g2(xi, CLASSICAL) == 2.0

    def test_photon_mode(self):
        mode = PhotonMode(omega=2.0, beta=0.5)
        assert mode.xi == 1.0
        assert g2(mode, CLASSICAL) == 2.0

    def test_oracle_anchor(self):
        params = DeformationParams.from_qp(0.6, 0.5)
        assert g2(1.0, params) == pytest.approx(oracle_g2(1.0, params), rel=1e-10)

    def test_asymptote(self):
        params = DeformationParams.from_qp(0.9, 0.7)
        assert g2(30.0, params) == pytest.approx(1.6, rel=1e-8)

    @pytest.mark.parametrize("q,p,expected", [(1.0, 1.0, 2.0), (0.4, 0.35, 0.75)])
    def test_asymptote_values(self, q, p, expected):
        assert g2_asymptote(DeformationParams.from_qp(q, p)) == pytest.approx(expected)

    def test_unit_circle_asymptote(self):
        params = DeformationParams(math.pi / 3, math.pi / 2, "complex")
        assert g2_asymptote(params) == pytest.approx(1.0, rel=1e-14)

    @given(any_params, st.floats(0.2, 3.0))
    def test_assembly_matches_closed_form(self, params, margin):
        xi = admissible_xi(params, margin)
        assert g2_from_moments(xi, params) == pytest.approx(g2(xi, params), rel=1e-9)

    @given(any_params, st.floats(0.2, 3.0))
    def test_swap_symmetry(self, params, margin):
        xi = admissible_xi(params, margin)
        assert g2(xi, params.swapped()) == pytest.approx(g2(xi, params), rel=1e-12)

    @given(any_params, st.floats(0.2, 20.0))
    def test_deviation_consistent(self, params, margin):
        xi = admissible_xi(params, margin)
        dev = g2_deviation(xi, params)
        assert g2(xi, params) - params.q_plus_p == pytest.approx(dev, abs=1e-12)
