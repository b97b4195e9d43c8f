"""Second-order correlation g2 of a single photon mode made of qp-bosons.

Everything is expressed through xi = beta hbar omega.  The closed forms are
divided through by powers of e^xi so that large xi does not overflow; the
complex family uses |e^xi - q|^2-type products so every result is real.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .deformed import DeformationParams, DomainCase, Family, classify
from .distribution import bose_factor_eta
from .errors import ConvergenceError, DomainError

POLE_MARGIN = 1e-12


@dataclass(frozen=True)
class PhotonMode:
    omega: float
    beta: float
    hbar: float = 1.0

    def __post_init__(self):
        if not (self.omega > 0 and self.beta > 0 and self.hbar > 0):
            raise DomainError("omega, beta and hbar must be positive",
                              omega=self.omega, beta=self.beta)

    @property
    def xi(self) -> float:
        return self.beta * self.hbar * self.omega


def _xi(mode):
    return mode.xi if isinstance(mode, PhotonMode) else float(mode)


def g2_convergence_ok(mode, params: DeformationParams) -> bool:
    """max(|q|^2, |qp|, |p|^2) < e^xi, with a small safety margin."""
    xi = _xi(mode)
    return xi > 0 and 2.0 * params.log_max_modulus < xi - POLE_MARGIN


def _check(xi, params):
    if not g2_convergence_ok(xi, params):
        raise ConvergenceError("second moments diverge: need max(|q|^2,|qp|,|p|^2) < e^xi",
                               xi=xi, phi=params.phi, tau=params.tau, family=params.family.value)


def _log_one_minus(xi, params, k):
    """ln of (1 - q^k e^-xi)(1 - p^k e^-xi), real in both families."""
    a, b = params.radial, params.angular
    if params.family is Family.REAL:
        return math.log1p(-math.exp(k * (a + b) - xi)) + math.log1p(-math.exp(k * (a - b) - xi))
    t = math.exp(k * a - xi)
    return math.log1p(t * t - 2.0 * t * math.cos(k * b))


def mean_occupation(mode, params: DeformationParams) -> float:
    """<a+ a>, the deformed Bose factor at xi."""
    return bose_factor_eta(_xi(mode), params)


def mean_occupation_sq(mode, params: DeformationParams) -> float:
    """<(a+ a)^2> = (e^xi - 1)(e^xi + qp) / ((e^xi - q^2)(e^xi - qp)(e^xi - p^2))."""
    xi = _xi(mode)
    _check(xi, params)
    lqp = 2.0 * params.radial
    log_den = _log_one_minus(xi, params, 2) + math.log1p(-math.exp(lqp - xi))
    num = -math.expm1(-xi) * (1.0 + math.exp(lqp - xi)) * math.exp(-xi)
    return num * math.exp(-log_den)


def mean_qN_occupation(mode, params: DeformationParams):
    """<q^N a+ a> = q (e^xi - 1) / ((e^xi - q^2)(e^xi - qp)); complex for the complex family."""
    xi = _xi(mode)
    _check(xi, params)
    q, p = params.q, params.p
    x = math.exp(-xi)
    value = q * -math.expm1(-xi) * x / ((1 - q * q * x) * (1 - q * p * x))
    if params.family is Family.REAL:
        return float(value.real) if isinstance(value, complex) else value
    return complex(value)


def _log_ratio(xi, params):
    # ln of (e^xi - q)^2 (e^xi - p)^2 / ((e^xi - 1)(e^xi - q^2)(e^xi - qp)(e^xi - p^2)) * e^xi
    lqp = 2.0 * params.radial
    return (2.0 * _log_one_minus(xi, params, 1) - math.log1p(-math.exp(-xi))
            - _log_one_minus(xi, params, 2) - math.log1p(-math.exp(lqp - xi)))


def g2(mode, params: DeformationParams) -> float:
    """Closed-form g2 = (q + p) (e^xi-q)^2 (e^xi-p)^2 / ((e^xi-1)(e^xi-q^2)(e^xi-qp)(e^xi-p^2))."""
    xi = _xi(mode)
    _check(xi, params)
    if classify(params) is DomainCase.CLASSICAL and params.phi == 0.0:
        return 2.0
    return params.q_plus_p * math.exp(_log_ratio(xi, params))


def g2_deviation(mode, params: DeformationParams) -> float:
    """g2 - (q + p), computed without cancellation (useful at large xi)."""
    xi = _xi(mode)
    _check(xi, params)
    return params.q_plus_p * math.expm1(_log_ratio(xi, params))


def g2_from_moments(mode, params: DeformationParams) -> float:
    """g2 assembled as p^-1 <(a+a)^2>/<a+a>^2 - (qp)^-1 <q^N a+a>/<a+a>^2."""
    n = mean_occupation(mode, params)
    n2 = mean_occupation_sq(mode, params)
    qn = mean_qN_occupation(mode, params)
    q, p = params.q, params.p
    value = (n2 / p - qn / (q * p)) / (n * n)
    if isinstance(value, complex):
        if abs(value.imag) > 1e-10 * abs(value):
            raise ArithmeticError(f"g2 assembly left an imaginary part {value.imag!r}")
        return value.real
    return value


def g2_asymptote(params: DeformationParams) -> float:
    """Low-temperature / high-energy limit q + p."""
    return params.q_plus_p
