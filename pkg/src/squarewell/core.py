"""Physical parameters, grids and wavefunction representations.

Three representations of a state in the infinite square well on [0, L]
are used throughout the package:

* :class:`SampledWaveFunction` -- complex samples on a uniform grid that
  includes both walls,
* :class:`SineSeries` -- coefficients ``c_n`` over the orthonormal basis
  ``sqrt(2/L) sin(n pi x / L)``, ``n = 1..K``,
* :class:`ExpCoefficients` -- coefficients ``a_k`` of the odd extension to
  [-L, L] over ``exp(i pi k x / L) / sqrt(2L)``, ``k = -K..K``.

Normalization is always taken over [0, L].  The odd extension doubles the
squared norm, so a normalized state has ``sum |a_k|^2 == 2``.

All objects are immutable: array fields are copied on construction and
marked read-only.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


class SquareWellError(ValueError):
    """Base class for errors raised by this package."""


class DomainError(SquareWellError):
    """An argument lies outside the domain of the operation."""


class BoundaryConditionError(DomainError):
    """A sampled wavefunction does not vanish at the walls."""


class DegenerateInputError(SquareWellError):
    """The input is identically zero where a nonzero state is required."""


class PreconditionError(SquareWellError):
    """The input violates a documented precondition (e.g. normalization)."""


def _frozen_array(values, dtype=complex) -> np.ndarray:
    arr = np.array(values, dtype=dtype, copy=True)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class PhysicalParams:
    """Reduced Planck constant, particle mass and well width.

    Defaults are natural units, ``hbar = mass = length = 1``.
    """

    hbar: float = 1.0
    mass: float = 1.0
    length: float = 1.0

    def __post_init__(self):
        for name in ("hbar", "mass", "length"):
            value = getattr(self, name)
            if not np.isfinite(value) or value <= 0:
                raise DomainError(f"{name} must be positive, got {value!r}")
            object.__setattr__(self, name, float(value))

    @property
    def energy_scale(self) -> float:
        """``hbar^2 / (2 m L^2)``, the prefactor shared by every energy."""
        return self.hbar**2 / (2.0 * self.mass * self.length**2)


def make_params(hbar: float = 1.0, mass: float = 1.0, length: float = 1.0) -> PhysicalParams:
    """Validated :class:`PhysicalParams`; raises :class:`DomainError` naming the bad field."""
    return PhysicalParams(hbar=hbar, mass=mass, length=length)


@dataclass(frozen=True)
class Grid:
    """Uniform grid ``x_j = j L / (N - 1)`` over [0, L], both walls included."""

    n_points: int
    params: PhysicalParams = field(default_factory=PhysicalParams)

    def __post_init__(self):
        if int(self.n_points) != self.n_points or self.n_points < 3:
            raise DomainError(f"n_points must be an integer >= 3, got {self.n_points!r}")
        object.__setattr__(self, "n_points", int(self.n_points))

    @property
    def spacing(self) -> float:
        return self.params.length / (self.n_points - 1)

    @property
    def x(self) -> np.ndarray:
        return np.linspace(0.0, self.params.length, self.n_points)


@dataclass(frozen=True)
class SampledWaveFunction:
    """Complex wavefunction samples on a :class:`Grid`.

    The first and last samples must be exactly zero and every sample finite.
    """

    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        values = _frozen_array(self.values)
        if values.shape != (self.grid.n_points,):
            raise DomainError(
                f"expected {self.grid.n_points} samples, got shape {values.shape}"
            )
        if not np.all(np.isfinite(values)):
            raise DomainError("wavefunction samples must be finite")
        if values[0] != 0 or values[-1] != 0:
            raise BoundaryConditionError(
                "boundary condition violated: psi(0) and psi(L) must be zero, "
                f"got psi(0)={complex(values[0])}, psi(L)={complex(values[-1])}"
            )
        object.__setattr__(self, "values", values)

    @property
    def params(self) -> PhysicalParams:
        return self.grid.params

    @property
    def x(self) -> np.ndarray:
        return self.grid.x

    def scaled(self, factor: complex) -> "SampledWaveFunction":
        return SampledWaveFunction(self.grid, factor * self.values)

    @classmethod
    def from_function(cls, func, grid: Grid) -> "SampledWaveFunction":
        """Sample ``func(x)`` on ``grid``; the wall values are forced to zero.

        Use this only for functions that vanish analytically at both walls,
        where the evaluated endpoint values differ from zero by rounding only.
        """
        values = np.asarray(func(grid.x), dtype=complex).copy()
        values[0] = values[-1] = 0.0
        return cls(grid, values)


@dataclass(frozen=True)
class SineSeries:
    """Coefficients ``c_1..c_K`` of ``psi(x) = sum_n c_n sqrt(2/L) sin(n pi x / L)``."""

    coefficients: np.ndarray
    params: PhysicalParams = field(default_factory=PhysicalParams)

    def __post_init__(self):
        coefficients = _frozen_array(self.coefficients)
        if coefficients.ndim != 1 or coefficients.size < 1:
            raise DomainError("a sine series needs at least one coefficient")
        if not np.all(np.isfinite(coefficients)):
            raise DomainError("sine coefficients must be finite")
        object.__setattr__(self, "coefficients", coefficients)

    @property
    def truncation(self) -> int:
        return self.coefficients.size

    @property
    def modes(self) -> np.ndarray:
        return np.arange(1, self.truncation + 1)

    def norm_squared(self) -> float:
        return float(np.sum(np.abs(self.coefficients) ** 2))

    def normalized(self) -> "SineSeries":
        norm = np.sqrt(self.norm_squared())
        if norm == 0:
            raise DegenerateInputError("cannot normalize the zero series")
        return SineSeries(self.coefficients / norm, self.params)

    @classmethod
    def mode(cls, n: int, truncation: int | None = None, params: PhysicalParams | None = None):
        """Pure standing wave ``n`` with unit coefficient."""
        if n < 1:
            raise DomainError(f"mode index must be >= 1, got {n}")
        truncation = max(n, truncation or n)
        coefficients = np.zeros(truncation, dtype=complex)
        coefficients[n - 1] = 1.0
        return cls(coefficients, params or PhysicalParams())


@dataclass(frozen=True)
class ExpCoefficients:
    """Coefficients ``a_k``, ``k = -K..K``, of the odd extension over [-L, L].

    ``coefficients[j]`` holds ``a_{j - K}``.  For a real-basis series the
    canonical mapping is ``a_k = -i sign(k) c_|k|`` and ``a_0 = 0``.
    """

    coefficients: np.ndarray
    params: PhysicalParams = field(default_factory=PhysicalParams)

    def __post_init__(self):
        coefficients = _frozen_array(self.coefficients)
        if coefficients.ndim != 1 or coefficients.size < 3 or coefficients.size % 2 != 1:
            raise DomainError("exponential coefficients need odd length 2K+1 with K >= 1")
        if not np.all(np.isfinite(coefficients)):
            raise DomainError("exponential coefficients must be finite")
        object.__setattr__(self, "coefficients", coefficients)

    @property
    def truncation(self) -> int:
        return (self.coefficients.size - 1) // 2

    @property
    def k(self) -> np.ndarray:
        K = self.truncation
        return np.arange(-K, K + 1)

    def __getitem__(self, k: int) -> complex:
        K = self.truncation
        if not -K <= k <= K:
            raise IndexError(f"k={k} outside -{K}..{K}")
        return complex(self.coefficients[k + K])


@dataclass(frozen=True)
class EnergyReport:
    """Energy-related functionals of one sampled state."""

    energy_quadrature: float
    energy_spectral: float
    norm: float
    rayleigh_quotient: float
    wirtinger_ratio: float
    wirtinger_margin: float

    def to_dict(self) -> dict:
        return {name: float(getattr(self, name)) for name in self.__dataclass_fields__}


def sample(series: SineSeries, n_points: int) -> SampledWaveFunction:
    """Synthesize ``series`` on a uniform grid of ``n_points`` over [0, L].

    Parameters
    ----------
    series : SineSeries
        Real-basis coefficients.
    n_points : int
        Number of grid points, at least 3.

    Returns
    -------
    SampledWaveFunction
        ``values[j] = sum_n c_n sqrt(2/L) sin(n pi x_j / L)`` with both
        wall samples exactly zero.
    """
    grid = Grid(n_points, series.params)
    L = series.params.length
    basis = np.sqrt(2.0 / L) * np.sin(np.pi * np.outer(grid.x, series.modes) / L)
    values = basis @ series.coefficients
    values[0] = values[-1] = 0.0
    return SampledWaveFunction(grid, values)
