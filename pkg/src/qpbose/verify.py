"""Random admissible inputs and the oracle-equivalence checks behind ``qpbose verify``."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import distribution as dist
from . import oracle, photon
from .condensation import Condensation, condenses
from .deformed import DeformationParams, DomainCase, Family
from .series import j_integral, j_integral_quadrature, sigma0
from ._summation import Verdict

DOMAINS = (DomainCase.REAL_GENERIC, DomainCase.REAL_RECIPROCAL, DomainCase.REAL_P_ONE,
           DomainCase.COMPLEX_CONJUGATE, DomainCase.UNIT_CIRCLE)
# keeps q, p (and their moduli) away from 1 and from each other, where the
# partial-fraction forms lose digits to cancellation
_GAP = 0.05


def _signed(rng, lo, hi):
    return rng.choice((-1.0, 1.0)) * rng.uniform(lo, hi)


def random_params(rng, case: DomainCase) -> DeformationParams:
    if case is DomainCase.CLASSICAL:
        return DeformationParams.classical()
    if case is DomainCase.REAL_GENERIC:
        while True:
            lq, lp = rng.uniform(math.log(0.15), math.log(2.5), size=2)
            if min(abs(lq), abs(lp), abs(lq - lp), abs(lq + lp)) >= _GAP:
                return DeformationParams.from_qp(math.exp(lq), math.exp(lp))
    if case is DomainCase.REAL_RECIPROCAL:
        l = _signed(rng, _GAP, 1.2)
        return DeformationParams(abs(l), math.copysign(0.5 * math.pi, l))
    if case is DomainCase.REAL_P_ONE:
        q = math.exp(_signed(rng, _GAP, 1.5))
        return DeformationParams.from_qp(q, 1.0) if rng.random() < 0.5 else \
            DeformationParams.from_qp(1.0, q)
    theta = _signed(rng, _GAP, math.pi - _GAP)
    if case is DomainCase.UNIT_CIRCLE:
        return DeformationParams(abs(theta), math.copysign(0.5 * math.pi, theta), Family.COMPLEX)
    q = cmath.rect(math.exp(_signed(rng, _GAP, 0.7)), theta)
    return DeformationParams.from_qp(q, q.conjugate())


def random_eta(rng, params, lo=0.1, hi=3.0):
    """An exponent inside the Bose-factor convergence region, margin in [lo, hi]."""
    return max(params.log_max_modulus, 0.0) + rng.uniform(lo, hi)


def random_xi(rng, params, lo=0.2, hi=3.0):
    return 2.0 * max(params.log_max_modulus, 0.0) + rng.uniform(lo, hi)


def rel_err(a, b):
    scale = max(abs(a), abs(b))
    return abs(a - b) / scale if scale else 0.0


@dataclass
class Check:
    name: str
    worst: float
    tol: float
    count: int

    @property
    def passed(self) -> bool:
        return self.worst <= self.tol

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name} worst={self.worst:.3e} tol={self.tol:.1e} n={self.count}"


def _worst(pairs):
    return max((rel_err(a, b) for a, b in pairs), default=0.0)


def distribution_checks(rng, points, tol):
    rows = {k: [] for k in ("partial-fractions", "classical-composition", "series", "oracle")}
    for case in DOMAINS + (DomainCase.CLASSICAL,):
        for _ in range(points):
            params = random_params(rng, case)
            eta = random_eta(rng, params)
            f = dist.bose_factor(eta, params)
            rows["partial-fractions"].append((f, dist.bose_factor_partial_fractions(eta, params)))
            rows["classical-composition"].append(
                (f, dist.bose_factor_from_classical(1.0 / math.expm1(eta), params)))
            rows["series"].append((f, dist.bose_factor_series(eta, params, tol=1e-14 * f).value))
            rows["oracle"].append((f, oracle.oracle_bose_factor(eta, params, tol=1e-14 * f)))
    return [Check(f"distribution/{k}", _worst(v), tol, len(v)) for k, v in rows.items()]


def photon_checks(rng, points, tol):
    rows = {k: [] for k in ("n2-oracle", "qN-oracle", "g2-oracle", "g2-assembly")}
    for case in DOMAINS + (DomainCase.CLASSICAL,):
        for _ in range(points):
            params = random_params(rng, case)
            xi = random_xi(rng, params)
            rows["n2-oracle"].append((photon.mean_occupation_sq(xi, params),
                                      oracle.oracle_n2(xi, params)))
            rows["qN-oracle"].append((photon.mean_qN_occupation(xi, params),
                                      oracle.oracle_qN(xi, params)))
            g = photon.g2(xi, params)
            rows["g2-oracle"].append((g, oracle.oracle_g2(xi, params)))
            rows["g2-assembly"].append((g, photon.g2_from_moments(xi, params)))
    return [Check(f"photon/{k}", _worst(v), tol, len(v)) for k, v in rows.items()]


def series_checks(rng, points, tol):
    pairs = []
    for case in DOMAINS + (DomainCase.CLASSICAL,):
        for _ in range(points):
            params = random_params(rng, case)
            s = rng.uniform(-0.5, 2.5)
            temperature = rng.uniform(0.3, 3.0)
            beta_mu = -(max(params.log_max_modulus, 0.0) + rng.uniform(0.05, 2.0))
            mu = beta_mu * temperature
            pairs.append((j_integral(s, temperature, mu, params, tol=1e-15),
                          j_integral_quadrature(s, temperature, mu, params)))
    classical = sigma0(1.5, DeformationParams.classical()).value
    return [Check("series/j-integral-vs-quadrature", _worst(pairs), max(tol, 1e-6), len(pairs)),
            Check("series/sigma0-classical-vs-2.612", abs(classical - 2.612), 5e-4, 1)]


def condensation_checks(rng, points, dims=(2.0, 3.0, 4.0)):
    mismatches, count = 0, 0
    for case in DOMAINS + (DomainCase.CLASSICAL,):
        for _ in range(points):
            params = random_params(rng, case)
            for dim in dims:
                rule = condenses(params, dim)
                if rule is Condensation.CONDITIONAL:
                    continue
                verdict = sigma0(0.5 * dim, params).verdict
                expected = Verdict.CONVERGED_ABSOLUTE if rule is Condensation.YES \
                    else Verdict.DIVERGENT
                mismatches += verdict is not expected
                count += 1
    return [Check("condensation/rule-vs-sigma0", float(mismatches), 0.0, count)]


SUITES = {
    "distribution": distribution_checks,
    "photon": photon_checks,
    "series": series_checks,
}


def run_suite(name="all", tol=1e-8, points=20, seed=12345):
    rng = np.random.default_rng(seed)
    names = list(SUITES) + ["condensation"] if name == "all" else [name]
    checks = []
    for suite in names:
        if suite == "condensation":
            checks += condensation_checks(rng, points)
        else:
            checks += SUITES[suite](rng, points, tol)
    return checks
