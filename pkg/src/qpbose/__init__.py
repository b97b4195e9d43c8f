"""Statistical mechanics of qp-deformed bosons.

Deformed Bose factor, generalized zeta series, gas thermodynamics in D
dimensions, condensation classification, photon g2, and a truncated
Fock-space oracle for checking the closed forms.
"""

from .condensation import Condensation, bose_temperature, condenses, phase_map, tb3_classical
from .deformed import (DOMAIN_RTOL, DeformationParams, DomainCase, Family, classify,
                       qp_number, qp_number_diff)
from .distribution import (ModeState, bose_factor, bose_factor_from_classical,
                           bose_factor_partial_fractions, bose_factor_series, convergence_ok)
from .errors import ConvergenceError, DomainError, QPBoseError
from .photon import PhotonMode, g2, g2_asymptote, g2_deviation, g2_from_moments
from .series import j_integral, j_integral_quadrature, sigma, sigma0, zeta
from .thermo import GasSpec, MuSolution, ThermoState, Units, solve_mu
from ._summation import SeriesResult, Verdict

__version__ = "0.1.0"

__all__ = [
    "Condensation", "ConvergenceError", "DOMAIN_RTOL", "DeformationParams", "DomainCase",
    "DomainError", "Family", "GasSpec", "ModeState", "MuSolution", "PhotonMode", "QPBoseError",
    "SeriesResult", "ThermoState", "Units", "Verdict", "bose_factor",
    "bose_factor_from_classical", "bose_factor_partial_fractions", "bose_factor_series",
    "bose_temperature", "classify", "condenses", "convergence_ok", "g2", "g2_asymptote",
    "g2_deviation", "g2_from_moments", "j_integral", "j_integral_quadrature", "phase_map",
    "qp_number", "qp_number_diff", "sigma", "sigma0", "solve_mu", "tb3_classical", "zeta",
]
