"""Closed-form reference values for the infinite square well.

Used as an oracle by tests and reports.  The variational minimizer in
:mod:`squarewell.minimize` does not import this module.
"""

import numpy as np

from .core import DomainError, Grid, PhysicalParams, SampledWaveFunction


def energy_level(params: PhysicalParams, n: int) -> float:
    """``E_n = hbar^2 pi^2 n^2 / (2 m L^2)`` for ``n = 1, 2, ...``."""
    if int(n) != n or n < 1:
        raise DomainError(f"level index must be an integer >= 1, got {n!r}")
    return np.pi**2 * int(n) ** 2 * params.energy_scale


def exact_bound(params: PhysicalParams) -> float:
    """Lower bound on the energy of every admissible normalized state (= ``E_1``)."""
    return energy_level(params, 1)


def ground_momentum(params: PhysicalParams) -> float:
    """``hbar pi / L``, equal to ``sqrt(2 m E_1)``."""
    return params.hbar * np.pi / params.length


def ground_state(params: PhysicalParams, n_points: int) -> SampledWaveFunction:
    """``sqrt(2/L) sin(pi x / L)`` sampled on ``n_points`` grid points."""
    grid = Grid(n_points, params)
    L = params.length
    return SampledWaveFunction.from_function(
        lambda x: np.sqrt(2.0 / L) * np.sin(np.pi * x / L), grid
    )
