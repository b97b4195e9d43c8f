"""Brute-force thermal averages over truncated Fock space.

Every average is (1 - e^{-eta}) sum_n e^{-eta n} obs(n) over Fock states,
with obs built from [[n]] only.  Nothing here calls the closed forms, so the
results are an independent check on them.
"""

from __future__ import annotations

import math

import numpy as np

from .deformed import DeformationParams, Family, qp_number, scaled_qp_number
from .errors import ConvergenceError

ORACLE_CAP = 10 ** 6


def _log_tail(N, eta, growth, degree):
    """ln of a bound on sum_{n > N} e^{-eta n} (n+1)^degree growth^n."""
    log_rho = -eta + math.log(growth) + degree * math.log((N + 3.0) / (N + 2.0))
    if log_rho >= 0.0:
        return math.inf
    first = -eta * (N + 1) + degree * math.log(N + 2.0) + (N + 1) * math.log(growth)
    return first - math.log(-math.expm1(log_rho))


def trace_average(eta, observable, growth=1.0, degree=0, n_max=64, tol=1e-12,
                  cap=ORACLE_CAP):
    """Thermal average of a diagonal observable, with a truncation bound.

    Parameters
    ----------
    eta : float
        Boltzmann exponent per quantum (eta or xi), > 0.
    observable : callable
        Maps an integer array n to the Boltzmann-weighted e^{-eta n} obs(n)
        (real or complex).  Taking the weight inside lets large q^n terms be
        damped before they are formed.
    growth, degree : float, int
        Envelope |obs(n)| <= (n+1)**degree * growth**n used for the tail.
    n_max : int
        Initial truncation; doubled until the bound is below ``tol``.

    Returns
    -------
    (value, truncation_bound)
    """
    if not eta > 0:
        raise ConvergenceError("trace requires eta > 0", eta=eta)
    norm = -math.expm1(-eta)
    N = int(n_max)
    while True:
        log_bound = _log_tail(N, eta, growth, degree)
        bound = norm * math.exp(log_bound) if log_bound < 700 else math.inf
        if bound < tol:
            break
        if N >= cap:
            raise ConvergenceError("truncation bound not reached within the Fock cap",
                                   eta=eta, cap=cap, bound=bound, tol=tol)
        N = min(2 * N, cap)
    n = np.arange(N + 1)
    terms = observable(n)
    if not np.all(np.isfinite(terms)):
        raise ConvergenceError("oracle terms overflowed before the truncation point",
                               eta=eta, n_max=N)
    if np.iscomplexobj(terms):
        value = complex(math.fsum(terms.real), math.fsum(terms.imag)) * norm
    else:
        value = math.fsum(terms) * norm
    return value, bound


def _growth(params):
    return max(abs(params.q), abs(params.p), 1.0)


def oracle_bose_factor(eta, params: DeformationParams, tol=1e-13):
    def obs(n):
        return scaled_qp_number(n, -eta * n, params)

    return trace_average(eta, obs, _growth(params), 1, tol=tol)[0]


def oracle_n2(xi, params: DeformationParams, tol=1e-13):
    def obs(n):
        return scaled_qp_number(n, -0.5 * xi * n, params) ** 2

    return trace_average(xi, obs, _growth(params) ** 2, 2, tol=tol)[0]


def oracle_qN(xi, params: DeformationParams, tol=1e-13):
    a, b = params.radial, params.angular

    def obs(n):
        if params.family is Family.COMPLEX:
            # q^n = e^{n a} e^{i n b}
            return scaled_qp_number(n, n * (a - xi), params) * np.exp(1j * b * n)
        return scaled_qp_number(n, n * (a + b - xi), params)

    return trace_average(xi, obs, _growth(params) ** 2, 1, tol=tol)[0]


def oracle_g2(xi, params: DeformationParams, tol=1e-13):
    """g2 assembled from traced moments: (p^-1 <[[n]]^2> - (qp)^-1 <q^n [[n]]>) / <[[n]]>^2."""
    f = oracle_bose_factor(xi, params, tol)
    value = (oracle_n2(xi, params, tol) / params.p
             - oracle_qN(xi, params, tol) / (params.q * params.p)) / (f * f)
    return value.real if isinstance(value, complex) else value


def oracle_sigma_partial(s, beta_mu, params: DeformationParams, J: int):
    """Partial sum over j = 0..J of e^{beta_mu (j+1)} (j+1)^{-s} ([[j+1]] - [[j]])."""
    j = np.arange(J + 1, dtype=float)
    diff = qp_number(j + 1.0, params) - qp_number(j, params)
    with np.errstate(over="ignore", invalid="ignore"):
        return math.fsum(np.exp(beta_mu * (j + 1.0)) * (j + 1.0) ** -s * diff)
