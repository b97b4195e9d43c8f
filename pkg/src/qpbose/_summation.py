"""Summation of the fugacity-weighted series shared by the distribution and series modules.

Both the Bose-factor expansion and the generalized zeta series have the form

    sum_{j >= 0} z^{j+1} (j+1)^{-s} ([[j+1]] - [[j]])

with z = exp(log_fugacity).  The geometric route below stops on a rigorous
bound of the remaining tail.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .deformed import (DOMAIN_RTOL, TAYLOR_CROSSOVER, DeformationParams, DomainCase, Family,
                       classify, weighted_qp_number_diff)
from .errors import ConvergenceError

DEFAULT_TOL = 1e-10
DEFAULT_CAP = 10 ** 6


class Verdict(enum.Enum):
    CONVERGED_ABSOLUTE = "ConvergedAbsolute"
    CONVERGED_CONDITIONAL = "ConvergedConditional"
    DIVERGENT = "Divergent"


@dataclass(frozen=True)
class SeriesResult:
    value: float
    terms_used: int
    tail_bound: float
    verdict: Verdict

    @property
    def converged(self) -> bool:
        return self.verdict is not Verdict.DIVERGENT

    @classmethod
    def divergent(cls, terms_used=0):
        return cls(math.nan, terms_used, math.inf, Verdict.DIVERGENT)


def envelope_components(params: DeformationParams, rtol=DOMAIN_RTOL):
    """[(|c|, ln|x|)] with |[[j+1]] - [[j]]| <= sum |c| |x|^j.

    Components whose coefficient vanishes (the unit parameter of the p = 1
    case) are dropped.  Returns None when the partial-fraction split is
    ill-conditioned (q very close to p).
    """
    a, b = params.radial, params.angular
    case = classify(params, rtol)
    if case is DomainCase.CLASSICAL:
        return [(1.0, 0.0)]
    if abs(b) < TAYLOR_CROSSOVER:
        return None
    if params.family is Family.COMPLEX:
        num = math.sqrt(math.expm1(a) ** 2 + 4.0 * math.exp(a) * math.sin(0.5 * b) ** 2)
        return [(2.0 * num / (2.0 * math.exp(a) * abs(math.sin(b))), a)]
    den = 2.0 * math.exp(a) * abs(math.sinh(b))
    out = []
    for lx in (a + b, a - b):
        if case is DomainCase.REAL_P_ONE and abs(lx) <= rtol:
            continue
        out.append((abs(math.expm1(lx)) / den, lx))
    return out


def effective_log_ratio(log_fugacity, params: DeformationParams, rtol=DOMAIN_RTOL):
    """ln of the asymptotic geometric ratio of the series terms."""
    comps = envelope_components(params, rtol)
    if comps is None:
        return log_fugacity + params.log_max_modulus
    return log_fugacity + max(lx for _, lx in comps)


def _geometric_tail(J, log_fugacity, s, amp, log_x, poly):
    """Bound on sum_{j >= J} z^{j+1} (j+1)^{-s} amp x^j (1 + poly j)."""
    log_rho = log_fugacity + log_x
    if s < 0:
        log_rho += -s * math.log((J + 2.0) / (J + 1.0))
    if poly > 0:
        log_rho += math.log1p(poly / (1.0 + poly * J))
    if log_rho >= 0.0 or amp == 0.0:
        return math.inf if amp else 0.0
    log_first = log_fugacity * (J + 1) - s * math.log(J + 1.0) + J * log_x
    if log_first > 700.0:
        return math.inf
    first = amp * math.exp(log_first) * (1.0 + poly * J)
    return first / -math.expm1(log_rho)


def tail_bound(J, log_fugacity, s, params: DeformationParams, rtol=DOMAIN_RTOL):
    """Rigorous bound on the terms j >= J, from the best of two envelopes."""
    bounds = []
    comps = envelope_components(params, rtol)
    if comps is not None:
        bounds.append(sum(_geometric_tail(J, log_fugacity, s, c, lx, 0.0) for c, lx in comps))
    # |[[j]]| <= j M^{j-1}, hence |[[j+1]] - [[j]]| <= M^j (1 + j m1 / M)
    log_m = params.log_max_modulus
    q, p = params.q, params.p
    m1 = min(abs(q - 1), abs(p - 1))
    bounds.append(_geometric_tail(J, log_fugacity, s, 1.0, log_m, m1 / math.exp(log_m)))
    return min(bounds)


def geometric_sum(log_fugacity, s, params: DeformationParams, tol=DEFAULT_TOL,
                  cap=DEFAULT_CAP, rtol=DOMAIN_RTOL) -> SeriesResult:
    """Sum the series when its effective ratio is below one.

    Raises ConvergenceError when the tail bound cannot reach ``tol`` within
    ``cap`` terms.
    """
    chunks = []
    start, size = 0, 256
    bound = math.inf
    while start < cap:
        stop = min(start + size, cap)
        j = np.arange(start, stop, dtype=float)
        log_w = log_fugacity * (j + 1.0) - s * np.log1p(j)
        terms = weighted_qp_number_diff(j, log_w, params)
        chunks.append(math.fsum(terms))
        start = stop
        bound = tail_bound(start, log_fugacity, s, params, rtol)
        if bound <= tol:
            return SeriesResult(math.fsum(chunks), start, bound, Verdict.CONVERGED_ABSOLUTE)
        size = min(2 * size, 1 << 16)
    raise ConvergenceError("series tail bound not reached within the term cap",
                           cap=cap, tail_bound=bound, tol=tol, phi=params.phi, tau=params.tau,
                           s=s, log_fugacity=log_fugacity)
