"""Bose-Einstein condensation over the (q, p, D) space and the Bose temperature."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterable, Optional

from ._summation import DEFAULT_CAP, SeriesResult
from .deformed import DOMAIN_RTOL, DeformationParams, DomainCase, Family, classify
from .errors import ConvergenceError, DomainError, QPBoseError
from .series import gamma_fn, sigma0
from .thermo import THERMO_TOL, GasSpec, n0

ZETA_3_2_PRINTED = 2.612


class Condensation(enum.Enum):
    YES = "Yes"
    NO = "No"
    CONDITIONAL = "Conditional"


def condenses(params: DeformationParams, dim: float, rtol: float = DOMAIN_RTOL) -> Condensation:
    """Rule-based verdict on whether the mu = 0 series sigma_0(D/2) converges."""
    if not dim > 0:
        raise DomainError("dimension must be positive", dim=dim)
    case = classify(params, rtol)
    if case is DomainCase.CLASSICAL:
        return Condensation.YES if dim > 2 else Condensation.NO
    if case is DomainCase.UNIT_CIRCLE:
        return Condensation.CONDITIONAL
    if case is DomainCase.REAL_RECIPROCAL:
        return Condensation.NO
    a, b = params.radial, params.angular
    if case is DomainCase.REAL_P_ONE:
        # the parameter that is not 1
        other = a + b if abs(a + b) > abs(a - b) else a - b
        return Condensation.YES if other < 0 else Condensation.NO
    if params.family is Family.COMPLEX:
        return Condensation.YES if a < 0 else Condensation.NO
    return Condensation.YES if a + abs(b) < 0 else Condensation.NO


def bose_temperature(target_density: float, spec: GasSpec, params: DeformationParams,
                     tol=THERMO_TOL, cap=DEFAULT_CAP) -> float:
    """T_B from the mu = 0 density; 0 when there is no condensation."""
    if not target_density > 0:
        raise DomainError("density must be positive", density=target_density)
    if condenses(params, spec.dim) is Condensation.NO:
        return 0.0
    h = spec.half_dim
    res = sigma0(h, params, tol=tol, cap=cap)
    if not res.converged or not res.value > 0:
        raise ConvergenceError("sigma_0(D/2) gives no usable Bose temperature",
                               value=res.value, terms_used=res.terms_used,
                               tail_bound=res.tail_bound, verdict=res.verdict.value)
    base = target_density / (n0(spec) * gamma_fn(h) * res.value)
    return base ** (1.0 / h) / spec.k_B


def tb3_classical(target_density: float, spec: GasSpec) -> float:
    """Textbook three-dimensional Bose temperature with zeta(3/2) printed as 2.612."""
    if spec.dim != 3:
        raise DomainError("tb3_classical applies to D = 3 only", dim=spec.dim)
    return (2.0 * math.pi * spec.hbar ** 2 / (spec.k_B * spec.mass)
            * (target_density / (ZETA_3_2_PRINTED * spec.degeneracy)) ** (2.0 / 3.0))


@dataclass
class PhaseRow:
    inputs: dict
    params: Optional[DeformationParams] = None
    verdict: Optional[Condensation] = None
    t_b: float = math.nan
    sigma0: Optional[SeriesResult] = None
    error: Optional[str] = None
    details: dict = field(default_factory=dict)


def _params_from(point) -> DeformationParams:
    if isinstance(point, DeformationParams):
        return point
    if "phi" in point:
        return DeformationParams(point["phi"], point.get("tau", 0.0),
                                 point.get("family", Family.REAL))
    return DeformationParams.from_qp(point["q"], point["p"])


def phase_map(grid: Iterable, dim: float, target_density: float, spec: GasSpec,
              tol=THERMO_TOL, cap=DEFAULT_CAP) -> list[PhaseRow]:
    """Condensation verdict and T_B for every grid point, in grid order.

    Grid points are DeformationParams or dicts with ``q``/``p`` or
    ``phi``/``tau``/``family``.  Failures are kept in the row.
    """
    rows = []
    for point in grid:
        inputs = point.as_dict() if isinstance(point, DeformationParams) else dict(point)
        row = PhaseRow(inputs)
        try:
            row.params = _params_from(point)
            row.verdict = condenses(row.params, dim)
            if row.verdict is Condensation.NO:
                row.t_b = 0.0
            else:
                row.sigma0 = sigma0(0.5 * dim, row.params, tol=tol, cap=cap)
                row.t_b = bose_temperature(target_density, spec, row.params, tol, cap)
        except QPBoseError as exc:
            row.error = str(exc)
            row.details = exc.details
        rows.append(row)
    return rows


def qp_grid(q_values, p_values):
    return [{"q": q, "p": p} for q in q_values for p in p_values]


def phi_tau_grid(phi_values, tau_values, family=Family.REAL):
    return [{"phi": f, "tau": t, "family": Family(family)} for f in phi_values for t in tau_values]
