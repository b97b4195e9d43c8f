"""Single-mode partition function and the qp-deformed Bose factor.

The production path is the symmetric closed form
(e^eta - 1) / ((e^eta - q)(e^eta - p)).  The partial-fraction form, the
composition with the ordinary Bose factor and the integer series are kept as
independent evaluation paths for cross-checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ._summation import DEFAULT_CAP, DEFAULT_TOL, SeriesResult, geometric_sum
from .deformed import DeformationParams, DomainCase, Family, classify, partial_fraction_coefficients
from .errors import ConvergenceError, DomainError


@dataclass(frozen=True)
class ModeState:
    beta: float
    mu: float
    energy: float

    def __post_init__(self):
        if not self.beta > 0:
            raise DomainError("beta must be positive", beta=self.beta)
        if self.energy < 0:
            raise DomainError("mode energy must be nonnegative", energy=self.energy)
        if self.mu > 0:
            raise DomainError("chemical potential must be <= 0", mu=self.mu)

    @property
    def eta(self) -> float:
        return self.beta * (self.energy - self.mu)


def _eta(mode):
    return mode.eta if isinstance(mode, ModeState) else float(mode)


def log_partition_mode(mode) -> float:
    """ln Z_k = -ln(1 - e^{-eta}); the same for every (q, p)."""
    eta = _eta(mode)
    if not eta > 0:
        raise ConvergenceError("mode trace diverges for eta <= 0", eta=eta)
    if math.isinf(eta):
        return 0.0
    return -math.log(-math.expm1(-eta))


def convergence_ok(eta, params: DeformationParams) -> bool:
    return eta > 0 and params.log_max_modulus < eta


def bose_convergence_ok(mode, params: DeformationParams) -> bool:
    """True iff the mode trace converges: max(|q|, |p|) < e^eta with eta > 0."""
    return convergence_ok(_eta(mode), params)


def _check(eta, params):
    if not convergence_ok(eta, params):
        raise ConvergenceError("Bose-factor trace diverges: need max(|q|,|p|) < e^eta, eta > 0",
                               eta=eta, phi=params.phi, tau=params.tau,
                               family=params.family.value)


def bose_factor_eta(eta, params: DeformationParams) -> float:
    _check(eta, params)
    a, b = params.radial, params.angular
    if math.isinf(eta):
        return 0.0
    # divide numerator and denominator by e^{2 eta}
    if params.family is Family.REAL:
        den = math.expm1(a + b - eta) * math.expm1(a - b - eta)
    else:
        t = math.exp(a - eta)
        den = math.expm1(a - eta) ** 2 + 4.0 * t * math.sin(0.5 * b) ** 2
    return math.exp(-eta) * -math.expm1(-eta) / den


def bose_factor(mode, params: DeformationParams) -> float:
    """Deformed Bose factor (f_k)_qp of a mode.

    ``mode`` is a ModeState or the exponent eta itself.
    """
    return bose_factor_eta(_eta(mode), params)


def _real_part(z, scale, what):
    z = complex(z)
    if abs(z.imag) > 1e-12 * max(scale, 1e-300):
        raise ArithmeticError(f"{what}: imaginary residue {z.imag!r} exceeds 1e-12 of {scale!r}")
    return z.real


def bose_factor_partial_fractions(mode, params: DeformationParams) -> float:
    eta = _eta(mode)
    _check(eta, params)
    if classify(params) is DomainCase.CLASSICAL:
        return 1.0 / math.expm1(eta)
    cq, cp = partial_fraction_coefficients(params)
    x = math.exp(-eta)
    t1 = cq * x / (1 - params.q * x)
    t2 = cp * x / (1 - params.p * x)
    if params.family is Family.REAL:
        return t1 + t2
    return _real_part(t1 + t2, abs(t1) + abs(t2), "partial fractions")


def bose_factor_from_classical(f, params: DeformationParams) -> float:
    """Deformed factor rebuilt from the ordinary one f = 1/(e^eta - 1)."""
    if not f > 0:
        raise DomainError("the ordinary Bose factor must be positive", f=f)
    eta = math.log1p(1.0 / f)
    _check(eta, params)
    if classify(params) is DomainCase.CLASSICAL:
        return float(f)
    cq, cp = partial_fraction_coefficients(params)
    t1 = cq * f / (1 + (1 - params.q) * f)
    t2 = cp * f / (1 + (1 - params.p) * f)
    if params.family is Family.REAL:
        return t1 + t2
    return _real_part(t1 + t2, abs(t1) + abs(t2), "classical composition")


def bose_factor_series(mode, params: DeformationParams, tol=DEFAULT_TOL,
                       cap=DEFAULT_CAP) -> SeriesResult:
    """Integer-series expansion sum_j e^{-eta (j+1)} ([[j+1]] - [[j]]), summed to ``tol``."""
    eta = _eta(mode)
    _check(eta, params)
    return geometric_sum(-eta, 0.0, params, tol=tol, cap=cap)
