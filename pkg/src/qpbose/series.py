"""Generalized zeta series sigma(s)_qp, the integrals J_s, and Gamma/zeta references.

sigma(s, beta_mu) = sum_{j>=0} e^{beta_mu (j+1)} (j+1)^{-s} ([[j+1]] - [[j]])

Three summation routes, picked from the analytic ratio of the terms:

* ratio < 1: direct summation with a rigorous geometric tail bound;
* classical parameters at beta_mu = 0: Euler-Maclaurin (this is zeta(s));
* unit-circle parameters at beta_mu = 0: partial sums of the oscillating
  series are smoothed by repeated weighted averaging.

Anything else is reported Divergent rather than raised.
"""

from __future__ import annotations

import cmath
import math
import warnings

import numpy as np
from scipy import integrate

from ._summation import (DEFAULT_CAP, DEFAULT_TOL, SeriesResult, Verdict, effective_log_ratio,
                         geometric_sum)
from .deformed import DOMAIN_RTOL, DeformationParams, DomainCase, classify, partial_fraction_coefficients
from .distribution import bose_factor_eta
from .errors import ConvergenceError, DomainError

__all__ = ["SeriesResult", "Verdict", "gamma_fn", "zeta", "zeta_series", "sigma", "sigma0",
           "j_integral", "j_integral_quadrature"]

# B_2, B_4, ..., B_20
_BERNOULLI = [1 / 6, -1 / 30, 1 / 42, -1 / 30, 5 / 66, -691 / 2730, 7 / 6, -3617 / 510,
              43867 / 798, -174611 / 330]
_AVERAGING_DEPTH = 8


def gamma_fn(s: float) -> float:
    if not s > 0:
        raise DomainError("gamma_fn is defined here for s > 0 only", s=s)
    return math.gamma(s)


def zeta_series(s: float, tol: float = 1e-15) -> SeriesResult:
    """Riemann zeta for real s > 1 by Euler-Maclaurin summation.

    The remainder after the last Bernoulli correction is bounded by the first
    omitted correction (valid for real s), which is reported as ``tail_bound``.
    """
    if not s > 1:
        return SeriesResult.divergent()
    n = 16
    while True:
        head = math.fsum(k ** -s for k in range(1, n))
        corr = [n ** (1 - s) / (s - 1), 0.5 * n ** -s]
        poch = s  # rising factorial (s)_{2k-1}
        fact = 2.0  # (2k)!
        for k in range(1, len(_BERNOULLI)):
            corr.append(_BERNOULLI[k - 1] / fact * poch * n ** (-s - 2 * k + 1))
            poch *= (s + 2 * k - 1) * (s + 2 * k)
            fact *= (2 * k + 1) * (2 * k + 2)
        k = len(_BERNOULLI)
        bound = abs(_BERNOULLI[k - 1] / fact * poch * n ** (-s - 2 * k + 1))
        if bound <= tol or n > 1 << 20:
            return SeriesResult(head + math.fsum(corr), n, bound, Verdict.CONVERGED_ABSOLUTE)
        n *= 2


def zeta(s: float) -> float:
    if not s > 1:
        raise DomainError("zeta series converges only for s > 1", s=s)
    return zeta_series(s).value


def _oscillatory_sum(log_fugacity, s, params, tol, cap):
    """Unit-circle series: sum Re(2 c_q z^j) e^{beta_mu} (j+1)^{-s}, z = e^{beta_mu + a + i b}.

    With S_n the complex partial sums, S_n - S behaves like z^n times a slowly
    varying amplitude; the averaging S'_n = S_{n-1} + (S_n - S_{n-1})/(1 - z)
    removes that oscillation to successively higher order.
    """
    cq, _ = partial_fraction_coefficients(params)
    a, b = params.radial, params.angular
    z = cmath.exp(complex(log_fugacity + a, b))
    n = max(1024, int(64.0 / abs(1.0 - z)))
    split = 134217729.0 * b
    b_hi = split - (split - b)
    b_lo = b - b_hi
    previous = None
    while n <= cap:
        j = np.arange(n, dtype=float)
        amp = np.exp(log_fugacity * (j + 1.0) - s * np.log1p(j) + j * a)
        # j * b_hi is exact for j < 2**27, so the phase keeps full precision
        terms = 2.0 * cq * amp * np.exp(1j * (j * b_hi)) * np.exp(1j * (j * b_lo))
        # only a window of the last partial sums enters; carry it as a base
        # value plus the differences (the terms), which keeps rounding small
        m = n - 1 - _AVERAGING_DEPTH
        base = complex(math.fsum(terms[:m + 1].real), math.fsum(terms[:m + 1].imag))
        diffs = terms[m + 1:]
        levels = [base.real]
        for _ in range(_AVERAGING_DEPTH):
            base = base + diffs[0] / (1.0 - z)
            diffs = diffs[:-1] + (diffs[1:] - diffs[:-1]) / (1.0 - z)
            levels.append(base.real)
        # each level divides rounding noise by |1 - z|: keep the level that moved least
        steps = [abs(levels[k] - levels[k - 1]) for k in range(1, len(levels))]
        best = min(range(len(steps)), key=steps.__getitem__)
        value, err = levels[best + 1], steps[best]
        if previous is not None:
            err = max(err, abs(value - previous))
        if previous is not None and err <= tol:
            return SeriesResult(value, n, err, Verdict.CONVERGED_CONDITIONAL)
        previous = value
        n *= 2
    raise ConvergenceError("oscillatory series did not settle within the term cap",
                           cap=cap, phi=params.phi, tau=params.tau, s=s)


def sigma(s: float, beta_mu: float, params: DeformationParams, tol: float = DEFAULT_TOL,
          cap: int = DEFAULT_CAP, rtol: float = DOMAIN_RTOL) -> SeriesResult:
    """The deformed zeta series at order ``s`` and fugacity e^{beta_mu}.

    Returns a Divergent SeriesResult instead of raising, so callers can
    classify; raises ConvergenceError only when a convergent series cannot
    be resolved within ``cap`` terms.
    """
    if beta_mu > 0:
        raise DomainError("beta*mu must be <= 0", beta_mu=beta_mu)
    log_r = effective_log_ratio(beta_mu, params, rtol)
    if log_r < -rtol:
        return geometric_sum(beta_mu, s, params, tol=tol, cap=cap, rtol=rtol)
    if log_r > rtol:
        return SeriesResult.divergent()
    case = classify(params, rtol)
    if case is DomainCase.CLASSICAL:
        return zeta_series(s, min(tol, 1e-15))
    if case is DomainCase.UNIT_CIRCLE and s > 0:
        return _oscillatory_sum(beta_mu, s, params, tol, cap)
    return SeriesResult.divergent()


def sigma0(half_dim: float, params: DeformationParams, tol: float = DEFAULT_TOL,
           cap: int = DEFAULT_CAP, rtol: float = DOMAIN_RTOL) -> SeriesResult:
    if not half_dim > 0:
        raise DomainError("D/2 must be positive", half_dim=half_dim)
    return sigma(half_dim, 0.0, params, tol=tol, cap=cap, rtol=rtol)


def _check_j_args(s, temperature, mu):
    if not s > -1:
        raise DomainError("J_s requires s > -1", s=s)
    if not temperature > 0:
        raise DomainError("temperature must be positive", temperature=temperature)
    if mu > 0:
        raise DomainError("chemical potential must be <= 0", mu=mu)


def j_integral(s: float, temperature: float, mu: float, params: DeformationParams,
               tol: float = DEFAULT_TOL, cap: int = DEFAULT_CAP) -> float:
    """J_s = Gamma(s+1) (k_B T)^{s+1} sigma(s+1) in reduced units (k_B = 1)."""
    _check_j_args(s, temperature, mu)
    res = sigma(s + 1.0, mu / temperature, params, tol=tol, cap=cap)
    if not res.converged:
        raise ConvergenceError("sigma(s+1) diverges", s=s, temperature=temperature, mu=mu,
                               phi=params.phi, tau=params.tau)
    return gamma_fn(s + 1.0) * temperature ** (s + 1.0) * res.value


def j_integral_quadrature(s: float, temperature: float, mu: float, params: DeformationParams,
                          rtol: float = 1e-10) -> float:
    """Adaptive quadrature of int_0^inf eps^s f(eps) d eps, with f the deformed Bose factor."""
    _check_j_args(s, temperature, mu)
    shift = -mu / temperature
    if params.log_max_modulus >= shift and not (shift == 0 and params.log_max_modulus == 0):
        raise ConvergenceError("Bose factor has a pole on the integration range",
                               mu=mu, temperature=temperature, phi=params.phi, tau=params.tau)

    def integrand(x):
        return x ** s * bose_factor_eta(x + shift, params)

    pieces, errors = [], []
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            for lo, hi in ((0.0, 1.0), (1.0, 40.0), (40.0, np.inf)):
                val, err = integrate.quad(integrand, lo, hi, epsabs=0.0, epsrel=rtol, limit=400)
                pieces.append(val)
                errors.append(err)
        except integrate.IntegrationWarning as exc:
            raise ConvergenceError(f"quadrature did not converge: {exc}", s=s,
                                   temperature=temperature, mu=mu, phi=params.phi,
                                   tau=params.tau) from exc
    total = math.fsum(pieces)
    if sum(errors) > 100 * rtol * abs(total):
        raise ConvergenceError("quadrature error estimate too large", abserr=sum(errors),
                               value=total)
    return temperature ** (s + 1.0) * total
