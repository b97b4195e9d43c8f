"""Deformation parameters (q, p) and qp-deformed numbers.

The pair (q, p) is stored through the angle parametrisation

    real family:     q = exp(phi cos tau + phi sin tau),   p = exp(phi cos tau - phi sin tau)
    complex family:  q = exp(phi cos tau + i phi sin tau), p = conj(q)

so that every admissible domain is evaluated with real arithmetic.  Below,
``radial = phi cos tau`` (the log of sqrt(|q p|)) and ``angular = phi sin tau``.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

DOMAIN_RTOL = 1e-12
TAYLOR_CROSSOVER = 1e-8
HALF_PI = 0.5 * math.pi


class Family(enum.Enum):
    REAL = "real"
    COMPLEX = "complex"


class DomainCase(enum.Enum):
    REAL_GENERIC = "RealGeneric"
    REAL_RECIPROCAL = "RealReciprocal"
    REAL_P_ONE = "RealPOne"
    COMPLEX_CONJUGATE = "ComplexConjugate"
    UNIT_CIRCLE = "UnitCircle"
    CLASSICAL = "Classical"


@dataclass(frozen=True)
class DeformationParams:
    """Canonical (phi, tau, family) form of a deformation pair (q, p).

    ``phi`` may be negative: with tau restricted to [-pi/2, pi/2] the sign of
    phi carries the sign of ln|qp|, so q, p < 1 needs phi < 0.
    """

    phi: float
    tau: float = 0.0
    family: Family = Family.REAL

    def __post_init__(self):
        object.__setattr__(self, "phi", float(self.phi))
        object.__setattr__(self, "tau", float(self.tau))
        object.__setattr__(self, "family", Family(self.family))
        if not (math.isfinite(self.phi) and math.isfinite(self.tau)):
            raise DomainError("phi and tau must be finite", phi=self.phi, tau=self.tau)
        if abs(self.tau) > HALF_PI:
            raise DomainError("tau must lie in [-pi/2, pi/2]", tau=self.tau)
        a, b = self.radial, self.angular
        if abs(a) <= DOMAIN_RTOL and abs(b) <= DOMAIN_RTOL:
            return
        if self.family is Family.REAL and abs(b) <= DOMAIN_RTOL:
            raise DomainError("q = p != 1 is not admissible", q=self.q, p=self.p)
        if self.family is Family.COMPLEX and abs(math.sin(b)) <= DOMAIN_RTOL:
            raise DomainError("degenerate angle: sin(phi sin tau) = 0 makes q = p",
                              phi=self.phi, tau=self.tau)

    @classmethod
    def classical(cls):
        return cls(0.0, 0.0, Family.REAL)

    @classmethod
    def from_qp(cls, q, p, rtol=DOMAIN_RTOL):
        """Build the canonical parameters of an admissible pair (q, p)."""
        q, p = complex(q), complex(p)
        if q.imag == 0.0 and p.imag == 0.0:
            if q.real <= 0.0 or p.real <= 0.0:
                raise DomainError("real q and p must be strictly positive", q=q.real, p=p.real)
            lq, lp = math.log(q.real), math.log(p.real)
            if abs(lq - lp) <= rtol:
                if abs(lq) <= rtol and abs(lp) <= rtol:
                    return cls.classical()
                raise DomainError("q = p != 1 is not admissible", q=q.real, p=p.real)
            return cls._from_log(0.5 * (lq + lp), 0.5 * (lq - lp), Family.REAL)

        if abs(p - q.conjugate()) > rtol * abs(q):
            raise DomainError("complex (q, p) must satisfy p = conj(q)", q=_fmt(q), p=_fmt(p))
        if abs(q - p) <= rtol * abs(q):
            if abs(q - 1.0) <= rtol:
                return cls.classical()
            raise DomainError("q = p != 1 is not admissible", q=_fmt(q), p=_fmt(p))
        return cls._from_log(math.log(abs(q)), cmath.phase(q), Family.COMPLEX)

    @classmethod
    def _from_log(cls, radial, angular, family):
        size = math.hypot(radial, angular)
        if size == 0.0:
            return cls.classical()
        if radial == 0.0:
            return cls(abs(angular), math.copysign(HALF_PI, angular), family)
        return cls(math.copysign(size, radial), math.atan(angular / radial), family)

    @property
    def radial(self) -> float:
        if abs(self.tau) == HALF_PI:
            return 0.0
        return self.phi * math.cos(self.tau)

    @property
    def angular(self) -> float:
        if self.tau == 0.0:
            return 0.0
        return self.phi * math.sin(self.tau)

    @property
    def q(self):
        if self.family is Family.REAL:
            return math.exp(self.radial + self.angular)
        return cmath.exp(complex(self.radial, self.angular))

    @property
    def p(self):
        if self.family is Family.REAL:
            return math.exp(self.radial - self.angular)
        return cmath.exp(complex(self.radial, -self.angular))

    @property
    def q_plus_p(self) -> float:
        if self.family is Family.REAL:
            return 2.0 * math.exp(self.radial) * math.cosh(self.angular)
        return 2.0 * math.exp(self.radial) * math.cos(self.angular)

    @property
    def log_max_modulus(self) -> float:
        """ln max(|q|, |p|)."""
        value = self.radial + abs(self.angular) if self.family is Family.REAL else self.radial
        return 0.0 if abs(value) <= DOMAIN_RTOL else value

    @property
    def domain(self) -> DomainCase:
        return classify(self)

    def swapped(self) -> "DeformationParams":
        """The same deformation with q and p exchanged."""
        if self.phi == 0.0:
            return self
        return DeformationParams(self.phi, -self.tau, self.family)

    def as_dict(self):
        return {"q": self.q, "p": self.p, "phi": self.phi, "tau": self.tau,
                "family": self.family.value, "domain": self.domain.value}


def _fmt(z):
    return f"{z.real!r}{z.imag:+}j"


def classify(params: DeformationParams, rtol: float = DOMAIN_RTOL) -> DomainCase:
    a, b = params.radial, params.angular
    if abs(a) <= rtol and abs(b) <= rtol:
        return DomainCase.CLASSICAL
    if params.family is Family.COMPLEX:
        return DomainCase.UNIT_CIRCLE if abs(a) <= rtol else DomainCase.COMPLEX_CONJUGATE
    if abs(a) <= rtol:
        return DomainCase.REAL_RECIPROCAL
    if abs(a - b) <= rtol or abs(a + b) <= rtol:
        return DomainCase.REAL_P_ONE
    return DomainCase.REAL_GENERIC


def _as_output(arr, scalar_input):
    return float(arr) if scalar_input else arr


def _sinh_ratio(x, b):
    # sinh(x b) / sinh(b) for |b| below the Taylor crossover
    y = x * b
    small = np.abs(y) < 1e-3
    taylor = x * (1.0 + y * y / 6.0 + y ** 4 / 120.0) / (1.0 + b * b / 6.0 + b ** 4 / 120.0)
    if b == 0.0:
        return x * np.ones_like(y)
    with np.errstate(over="ignore", invalid="ignore"):
        direct = np.sinh(y) / math.sinh(b)
    return np.where(small, taylor, direct)


def _sin_ratio(x, b):
    y = x * b
    small = np.abs(y) < 1e-3
    taylor = x * (1.0 - y * y / 6.0 + y ** 4 / 120.0) / (1.0 - b * b / 6.0 + b ** 4 / 120.0)
    if b == 0.0:
        return x * np.ones_like(y)
    return np.where(small, taylor, np.sin(y) / math.sin(b))


def scaled_qp_number(x, log_weight, params: DeformationParams):
    """exp(log_weight) * [[x]], evaluated without intermediate overflow."""
    x = np.asarray(x, dtype=float)
    log_weight = np.asarray(log_weight, dtype=float)
    a, b = params.radial, params.angular
    base = log_weight + (x - 1.0) * a
    if params.family is Family.COMPLEX:
        if abs(b) >= TAYLOR_CROSSOVER and abs(math.sin(b)) <= DOMAIN_RTOL:
            raise DomainError("degenerate angle in qp-number", phi=params.phi, tau=params.tau)
        if abs(b) < TAYLOR_CROSSOVER:
            return np.exp(base) * _sin_ratio(x, b)
        return np.exp(base) * np.sin(x * b) / math.sin(b)
    if abs(b) < TAYLOR_CROSSOVER:
        return np.exp(base) * _sinh_ratio(x, b)
    # e^{(x-1)a} sinh(xb)/sinh(b) = e^{(x-1)a + x|b|} (1 - e^{-2x|b|}) / (2 sinh|b|)
    bb = abs(b)
    log_den = math.log(2.0 * math.sinh(bb))
    with np.errstate(over="ignore"):
        return np.exp(base + x * bb - log_den) * -np.expm1(-2.0 * x * bb)


def qp_number(x, params: DeformationParams):
    """The deformed number [[x]] = (q^x - p^x) / (q - p).

    Parameters
    ----------
    x : float or ndarray
    params : DeformationParams

    Returns
    -------
    float or ndarray
        Always real in the admissible domains.
    """
    scalar = np.ndim(x) == 0
    return _as_output(scaled_qp_number(x, 0.0, params), scalar)


def weighted_qp_number_diff(j, log_weight, params: DeformationParams):
    """exp(log_weight) * ([[j+1]] - [[j]]), vectorised over ``j``.

    Uses [[j+1]] - [[j]] = [[j]] (x1 - 1) + x2^j where x1 is whichever of
    q, p lies closer to 1; for p = 1 this is exactly q^j.
    """
    j = np.asarray(j, dtype=float)
    log_weight = np.asarray(log_weight, dtype=float)
    a, b = params.radial, params.angular
    scaled_n = scaled_qp_number(j, log_weight, params)
    if params.family is Family.COMPLEX:
        re_q_minus_1 = math.expm1(a) * math.cos(b) - 2.0 * math.sin(0.5 * b) ** 2
        return scaled_n * re_q_minus_1 + np.exp(log_weight + j * a) * np.cos(j * b)
    lq, lp = a + b, a - b
    l1, l2 = (lq, lp) if abs(lq) <= abs(lp) else (lp, lq)
    with np.errstate(over="ignore"):
        return scaled_n * math.expm1(l1) + np.exp(log_weight + j * l2)


def qp_number_diff(j, params: DeformationParams):
    """[[j+1]] - [[j]], the coefficient of the integer-series expansions."""
    scalar = np.ndim(j) == 0
    j_arr = np.asarray(j)
    if np.any(j_arr < 0):
        raise DomainError("j must be a nonnegative integer", j=j)
    return _as_output(weighted_qp_number_diff(j_arr, 0.0, params), scalar)


def partial_fraction_coefficients(params: DeformationParams):
    """(c_q, c_p) = ((q-1)/(q-p), (p-1)/(p-q)); undefined in the classical case."""
    if classify(params) is DomainCase.CLASSICAL:
        raise DomainError("partial fractions are singular at q = p = 1")
    q, p = params.q, params.p
    return (q - 1) / (q - p), (p - 1) / (p - q)
