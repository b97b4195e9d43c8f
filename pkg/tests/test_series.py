import math

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from qpbose import (ConvergenceError, DeformationParams, DomainError, Verdict, j_integral,
                    j_integral_quadrature, sigma, sigma0, zeta)
from qpbose.series import gamma_fn, zeta_series
from strategies import any_params

mpmath.mp.dps = 30


def sigma_reference(s, beta_mu, params):
    """sigma via polylogarithms: [(1 - 1/q) Li_s(q x) - (1 - 1/p) Li_s(p x)] / (q - p)."""
    if abs(s) < 1e-20:
        s = 0  # mpmath's polylog breaks down for orders below ~1e-25
    q, p = mpmath.mpc(params.q), mpmath.mpc(params.p)
    x = mpmath.exp(beta_mu)
    value = ((1 - 1 / q) * mpmath.polylog(s, q * x) - (1 - 1 / p) * mpmath.polylog(s, p * x)) \
        / (q - p)
    return float(mpmath.re(value))


class TestGamma:
    def test_five_halves(self):
        assert gamma_fn(2.5) == pytest.approx(3 * math.sqrt(math.pi) / 4, rel=1e-15)

    @pytest.mark.parametrize("s", [0.1, 0.5, 1.0, 3.7, 20.0])
    def test_against_mpmath(self, s):
        assert gamma_fn(s) == pytest.approx(float(mpmath.gamma(s)), rel=1e-14)

    def test_nonpositive(self):
        with pytest.raises(DomainError):
            gamma_fn(0.0)


class TestZeta:
    @pytest.mark.parametrize("s", [1.01, 1.5, 2.0, 2.5, 3.0, 4.5, 12.0])
    def test_against_mpmath(self, s):
        assert zeta(s) == pytest.approx(float(mpmath.zeta(s)), rel=1e-13)

    def test_printed_values(self):
        assert zeta(1.5) == pytest.approx(2.6124, abs=1e-4)
        assert zeta(2.5) == pytest.approx(1.3414873, abs=1e-7)

    def test_bound_is_honest(self):
        res = zeta_series(1.5, tol=1e-8)
        assert abs(res.value - float(mpmath.zeta(1.5))) <= res.tail_bound

    def test_pole(self):
        with pytest.raises(DomainError):
            zeta(1.0)


class TestSigma:
    def test_classical_zeta(self):
        res = sigma(1.5, 0.0, DeformationParams.classical())
        assert res.value == pytest.approx(2.6123753486854883, rel=1e-13)

    def test_p_one(self):
        res = sigma(1.0, 0.0, DeformationParams.from_qp(0.5, 1.0))
        assert res.value == pytest.approx(2 * math.log(2.0), rel=1e-10)
        assert res.verdict is Verdict.CONVERGED_ABSOLUTE

    @pytest.mark.parametrize("s", [0.5, 1.5, 3.0])
    def test_reciprocal_diverges(self, s):
        assert sigma(s, 0.0, DeformationParams.from_qp(0.8, 1.25)).verdict is Verdict.DIVERGENT

    def test_classical_d2_diverges(self):
        assert sigma0(1.0, DeformationParams.classical()).verdict is Verdict.DIVERGENT

    def test_positive_mu_rejected(self):
        with pytest.raises(DomainError):
            sigma(1.5, 0.1, DeformationParams.classical())

    @pytest.mark.parametrize("beta_mu", [-0.01, -0.5, -3.0])
    @pytest.mark.parametrize("s", [-0.5, 0.5, 1.5, 2.5])
    def test_classical_polylog(self, s, beta_mu):
        res = sigma(s, beta_mu, DeformationParams.classical(), tol=1e-14)
        assert res.value == pytest.approx(float(mpmath.polylog(s, math.exp(beta_mu))), rel=1e-11)

    @given(any_params, st.floats(-0.5, 3.0), st.floats(0.05, 2.0))
    def test_polylog_reference(self, params, s, margin):
        beta_mu = -(max(params.log_max_modulus, 0.0) + margin)
        res = sigma(s, beta_mu, params, tol=1e-13)
        ref = sigma_reference(s, beta_mu, params)
        assert res.value == pytest.approx(ref, rel=1e-9, abs=1e-11)

    @pytest.mark.parametrize("theta", [0.05, 0.4, 1.0, 2.0, 3.0])
    @pytest.mark.parametrize("s", [0.3, 1.0, 1.5, 2.5])
    def test_unit_circle_at_zero_mu(self, theta, s):
        params = DeformationParams(theta, math.pi / 2, "complex")
        res = sigma(s, 0.0, params, tol=1e-10)
        assert res.verdict is Verdict.CONVERGED_CONDITIONAL
        ref = sigma_reference(s, 0.0, params)
        assert abs(res.value - ref) <= max(res.tail_bound, 1e-10) + 1e-9 * abs(ref)

    @given(any_params, st.floats(0.3, 3.0), st.floats(0.05, 2.0))
    def test_swap_symmetry(self, params, s, margin):
        beta_mu = -(max(params.log_max_modulus, 0.0) + margin)
        a = sigma(s, beta_mu, params).value
        b = sigma(s, beta_mu, params.swapped()).value
        assert b == pytest.approx(a, rel=1e-9, abs=1e-12)

    @given(any_params, st.floats(0.0, 3.0), st.floats(0.05, 1.0))
    def test_tail_bound_honest(self, params, s, margin):
        beta_mu = -(max(params.log_max_modulus, 0.0) + margin)
        res = sigma(s, beta_mu, params, tol=1e-7)
        assert abs(res.value - sigma_reference(s, beta_mu, params)) <= res.tail_bound + 1e-12

    @pytest.mark.parametrize("s", [1.5, 2.0, 2.5])
    def test_classical_limit(self, s):
        # sigma - zeta ~ Gamma(1 - s) phi^(s - 1): only s > 2 is inside 1e-3 at phi = 1e-4
        gaps = []
        for phi in (-1e-2, -1e-3, -1e-4):
            params = DeformationParams(phi, 0.3)
            res = sigma(s, 0.0, params)
            assert res.value == pytest.approx(sigma_reference(s, 0.0, params), rel=1e-9)
            gaps.append(abs(res.value - zeta(s)))
        assert gaps[0] > gaps[1] > gaps[2]
        if s > 2:
            assert gaps[2] <= 1e-3

    def test_cap_reached(self):
        params = DeformationParams.from_qp(0.999999, 0.5)
        with pytest.raises(ConvergenceError) as info:
            sigma(0.0, 0.0, params, tol=1e-14, cap=1000)
        assert info.value.details["cap"] == 1000


class TestJIntegral:
    def test_classical_zero_mu(self):
        value = j_integral(0.5, 1.0, 0.0, DeformationParams.classical())
        assert value == pytest.approx(2.3151, abs=1e-4)
        assert value == pytest.approx(gamma_fn(1.5) * zeta(1.5), rel=1e-13)

    def test_classical_s2(self):
        assert j_integral(2.0, 1.0, 0.0, DeformationParams.classical()) == pytest.approx(
            2 * float(mpmath.zeta(3)), rel=1e-13)

    def test_temperature_scaling(self):
        params = DeformationParams.from_qp(0.6, 0.3)
        s, mu = 1.5, -0.2
        # J_s(T, mu) = T^{s+1} J_s(1, mu/T)
        assert j_integral(s, 2.0, mu, params) == pytest.approx(
            2.0 ** (s + 1) * j_integral(s, 1.0, mu / 2.0, params), rel=1e-12)

    @given(any_params, st.floats(-0.5, 2.5), st.floats(0.3, 3.0), st.floats(0.05, 2.0))
    def test_quadrature(self, params, s, temperature, margin):
        mu = -(max(params.log_max_modulus, 0.0) + margin) * temperature
        assert j_integral(s, temperature, mu, params, tol=1e-15) == pytest.approx(
            j_integral_quadrature(s, temperature, mu, params), rel=1e-8)

    def test_quadrature_pole(self):
        with pytest.raises(ConvergenceError):
            j_integral_quadrature(1.5, 1.0, 0.0, DeformationParams.from_qp(1.5, 0.5))
