"""Seeded random trial states for property checks.

Two families of admissible states are generated:

* sine series with a random truncation ``1..max_modes`` whose complex
  coefficients are drawn uniformly from the unit ball and then normalized,
* real polynomials ``t (1 - t) q(t)`` with ``t = x / L`` and ``q`` of
  degree ``0..max_degree - 2``, whose coefficients are drawn uniformly
  from the unit ball; the sampled state is normalized by quadrature.

Trial ``i`` of a batch with base seed ``s`` uses the generator
``numpy.random.default_rng([s, i])``, so any trial can be regenerated on
its own and batches can be split across workers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Grid, PhysicalParams, SampledWaveFunction, SineSeries, sample
from .quadrature import integrate

MAX_SINE_MODES = 12
MAX_POLY_DEGREE = 8


def unit_ball(rng: np.random.Generator, dim: int) -> np.ndarray:
    """A point drawn uniformly from the unit ball in ``R^dim``."""
    direction = rng.standard_normal(dim)
    direction /= np.linalg.norm(direction)
    return direction * rng.uniform() ** (1.0 / dim)


def random_coefficients(rng: np.random.Generator, K: int, complex_valued: bool = True) -> np.ndarray:
    """Normalized coefficient vector of length ``K`` drawn via :func:`unit_ball`."""
    if complex_valued:
        x = unit_ball(rng, 2 * K)
        c = x[:K] + 1j * x[K:]
    else:
        c = unit_ball(rng, K).astype(complex)
    return c / np.linalg.norm(c)


def random_sine_series(rng, params: PhysicalParams, max_modes: int = MAX_SINE_MODES) -> SineSeries:
    K = int(rng.integers(1, max_modes + 1))
    return SineSeries(random_coefficients(rng, K), params)


def random_polynomial_state(
    rng, grid: Grid, max_degree: int = MAX_POLY_DEGREE
) -> SampledWaveFunction:
    """Normalized polynomial of degree 2..``max_degree`` vanishing at both walls."""
    degree = int(rng.integers(2, max_degree + 1))
    q = unit_ball(rng, degree - 1)
    t = grid.x / grid.params.length
    values = (t * (1.0 - t) * np.polynomial.polynomial.polyval(t, q)).astype(complex)
    values[0] = values[-1] = 0.0
    norm = np.sqrt(integrate(np.abs(values) ** 2, grid.spacing))
    if norm == 0.0:
        # measure-zero draw; fall back to the lowest admissible polynomial
        values = (t * (1.0 - t)).astype(complex)
        values[0] = values[-1] = 0.0
        norm = np.sqrt(integrate(np.abs(values) ** 2, grid.spacing))
    return SampledWaveFunction(grid, values / norm)


@dataclass(frozen=True)
class Trial:
    index: int
    kind: str
    psi: SampledWaveFunction
    series: SineSeries | None = None


def trial_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.default_rng([seed, index])


def make_trial(seed: int, index: int, grid: Grid) -> Trial:
    """Trial ``index``: even indices are sine series, odd ones are polynomials."""
    rng = trial_rng(seed, index)
    if index % 2 == 0:
        series = random_sine_series(rng, grid.params)
        return Trial(index, "sine", sample(series, grid.n_points), series)
    return Trial(index, "polynomial", random_polynomial_state(rng, grid))


def trials(seed: int, count: int, grid: Grid):
    for index in range(count):
        yield make_trial(seed, index, grid)
