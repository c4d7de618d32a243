"""Variational ground state and exact energy bound of the infinite square well."""

from .core import (
    BoundaryConditionError,
    DegenerateInputError,
    DomainError,
    EnergyReport,
    ExpCoefficients,
    Grid,
    PhysicalParams,
    PreconditionError,
    SampledWaveFunction,
    SineSeries,
    SquareWellError,
    make_params,
    sample,
)

__version__ = "0.1.0"
