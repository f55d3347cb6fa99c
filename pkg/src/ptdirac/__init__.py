"""Spin-symmetric D-dimensional Dirac bound states in a modified Poschl-Teller well."""

from .errors import DomainError, NoBoundState, NumericalFailure, QuadratureError
from .model import DimensionlessState, ModelParams, QuantumNumbers, dimensionless_of, kappa_from
from .spectrum import ExistenceReport, SpectralPoint, limiting_energy, solve_level, spectrum_grid
from .wavefunction import GridSpec, RadialFunction, sample

__all__ = [
    "DimensionlessState",
    "DomainError",
    "ExistenceReport",
    "GridSpec",
    "ModelParams",
    "NoBoundState",
    "NumericalFailure",
    "QuadratureError",
    "QuantumNumbers",
    "RadialFunction",
    "SpectralPoint",
    "dimensionless_of",
    "kappa_from",
    "limiting_energy",
    "sample",
    "solve_level",
    "spectrum_grid",
]

__version__ = "0.1.0"
