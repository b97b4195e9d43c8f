"""Thermodynamics of the free qp-boson gas in D dimensions.

All functions work in the units carried by ``GasSpec``; the default is the
reduced system hbar = k_B = m = g = 1.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

from ._summation import DEFAULT_CAP
from .deformed import DeformationParams
from .errors import ConvergenceError, DomainError
from .series import gamma_fn, j_integral, sigma

THERMO_TOL = 1e-13
BETA_MU_FLOOR = -50.0


class Units(enum.Enum):
    REDUCED = "reduced"
    SI = "si"


@dataclass(frozen=True)
class GasSpec:
    dim: float
    degeneracy: float = 1.0
    mass: float = 1.0
    volume: float = 1.0
    units: Units = Units.REDUCED
    hbar: float = 1.0
    k_B: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "units", Units(self.units))
        for name in ("dim", "degeneracy", "mass", "volume", "hbar", "k_B"):
            value = getattr(self, name)
            if not (value > 0 and math.isfinite(value)):
                raise DomainError(f"{name} must be positive and finite", **{name: value})
        if self.units is Units.REDUCED and not (
                self.mass == self.degeneracy == self.hbar == self.k_B == 1.0):
            raise DomainError("reduced units fix hbar = k_B = m = g = 1",
                              mass=self.mass, degeneracy=self.degeneracy)

    @property
    def half_dim(self) -> float:
        return 0.5 * self.dim


@dataclass(frozen=True)
class ThermoState:
    temperature: float
    mu: float
    params: DeformationParams

    def __post_init__(self):
        if not self.temperature > 0:
            raise DomainError("temperature must be positive", temperature=self.temperature)
        if self.mu > 0:
            raise DomainError("chemical potential must be <= 0", mu=self.mu)


class MuSolution(NamedTuple):
    mu: float
    condensed: bool
    iterations: int


def _kt(state, spec):
    return spec.k_B * state.temperature


def _sigma(order, state, spec, tol=THERMO_TOL, cap=DEFAULT_CAP):
    beta_mu = state.mu / _kt(state, spec)
    res = sigma(order, beta_mu, state.params, tol=tol, cap=cap)
    if not res.converged:
        raise ConvergenceError(f"sigma({order}) diverges for this state", order=order,
                               beta_mu=beta_mu, phi=state.params.phi, tau=state.params.tau,
                               family=state.params.family.value)
    return res.value


def n0(spec: GasSpec) -> float:
    """Prefactor N_0(D) of the density of states."""
    h = spec.half_dim
    return (1.0 / (2.0 * (2.0 * math.pi) ** h) * spec.dim / gamma_fn(h + 1.0)
            * spec.degeneracy * spec.mass ** h / spec.hbar ** spec.dim)


def density(state: ThermoState, spec: GasSpec, tol=THERMO_TOL, cap=DEFAULT_CAP) -> float:
    h = spec.half_dim
    return n0(spec) * gamma_fn(h) * _kt(state, spec) ** h * _sigma(h, state, spec, tol, cap)


def density_via_j(state: ThermoState, spec: GasSpec, tol=THERMO_TOL, cap=DEFAULT_CAP) -> float:
    """Same density written as N_0 J_{D/2-1}."""
    kt = _kt(state, spec)
    return n0(spec) * j_integral(spec.half_dim - 1.0, kt, state.mu, state.params, tol, cap)


def particle_number(state, spec, tol=THERMO_TOL, cap=DEFAULT_CAP) -> float:
    return density(state, spec, tol, cap) * spec.volume


def energy(state: ThermoState, spec: GasSpec, tol=THERMO_TOL, cap=DEFAULT_CAP) -> float:
    h = spec.half_dim
    return (n0(spec) * spec.volume * gamma_fn(h + 1.0) * _kt(state, spec) ** (h + 1.0)
            * _sigma(h + 1.0, state, spec, tol, cap))


def pressure(state, spec, tol=THERMO_TOL, cap=DEFAULT_CAP) -> float:
    return 2.0 / spec.dim * energy(state, spec, tol, cap) / spec.volume


def grand_potential(state, spec, tol=THERMO_TOL, cap=DEFAULT_CAP) -> float:
    """Omega = -(2/D) N_0 V J_{D/2}."""
    kt = _kt(state, spec)
    j = j_integral(spec.half_dim, kt, state.mu, state.params, tol, cap)
    return -2.0 / spec.dim * n0(spec) * spec.volume * j


def specific_heat(state, spec, tol=THERMO_TOL, cap=DEFAULT_CAP) -> float:
    """C_V at fixed particle number.

    Needs sigma at orders D/2 + 1, D/2 and D/2 - 1; the last one diverges at
    mu = 0 for the ordinary gas in D <= 4, which is reported as ConvergenceError.
    """
    h = spec.half_dim
    s_up = _sigma(h + 1.0, state, spec, tol, cap)
    s_mid = _sigma(h, state, spec, tol, cap)
    s_low = _sigma(h - 1.0, state, spec, tol, cap)
    n = particle_number(state, spec, tol, cap)
    return h * n * spec.k_B * ((h + 1.0) * s_up / s_mid - h * s_mid / s_low)


def entropy(state, spec, tol=THERMO_TOL, cap=DEFAULT_CAP) -> float:
    h = spec.half_dim
    ratio = _sigma(h + 1.0, state, spec, tol, cap) / _sigma(h, state, spec, tol, cap)
    n = particle_number(state, spec, tol, cap)
    return n * spec.k_B * ((h + 1.0) * ratio - state.mu / _kt(state, spec))


def solve_mu(target_density: float, temperature: float, spec: GasSpec,
             params: DeformationParams, rtol: float = 1e-12, tol=THERMO_TOL,
             cap=DEFAULT_CAP) -> MuSolution:
    """Chemical potential reproducing ``target_density`` at ``temperature``.

    Bisection in beta*mu over [-50, top], relying on sigma(D/2) increasing
    with beta*mu.  ``top`` is 0, or the convergence boundary -ln max(|q|, |p|)
    when that lies below 0.  When the target is at or above the mu = 0 density
    the gas is condensed: mu = 0 is returned with ``condensed`` set.
    """
    if not target_density > 0:
        raise DomainError("target density must be positive", target_density=target_density)
    kt = spec.k_B * temperature

    def rho(beta_mu):
        return density(ThermoState(temperature, beta_mu * kt, params), spec, tol, cap)

    h = spec.half_dim
    top = min(0.0, -params.log_max_modulus)
    if top == 0.0:
        at_zero = sigma(h, 0.0, params, tol=tol, cap=cap)
        if at_zero.converged:
            rho_top = n0(spec) * gamma_fn(h) * kt ** h * at_zero.value
            if target_density >= rho_top * (1.0 - rtol):
                return MuSolution(0.0, target_density > rho_top * (1.0 + rtol), 0)
    lo, hi = BETA_MU_FLOOR, top
    if rho(lo) > target_density:
        raise DomainError("target density below the bracket floor beta*mu = -50",
                          target_density=target_density, temperature=temperature)
    it = 0
    while it < 200:
        it += 1
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        try:
            value = rho(mid)
        except ConvergenceError as exc:
            # only reachable right at the convergence boundary
            raise ConvergenceError("target density not reached below the convergence boundary",
                                   target_density=target_density, beta_mu=mid,
                                   boundary=top, **exc.details) from exc
        if abs(value - target_density) <= rtol * target_density:
            lo = hi = mid
            break
        if value < target_density:
            lo = mid
        else:
            hi = mid
    if lo != hi and hi - lo > 1e-14 * max(1.0, abs(hi)):
        raise ConvergenceError("bisection for mu did not converge", target_density=target_density,
                               lo=lo * kt, hi=hi * kt)
    return MuSolution(0.5 * (lo + hi) * kt, False, it)
