"""Norm, energy, Wirtinger and uncertainty functionals.

Grid-side functionals differentiate sampled states with second-order
finite differences and integrate with composite Simpson, so they carry an
O(h^2) discretization error.  Coefficient-side functionals
(:func:`energy_spectral`, :func:`wirtinger_margin`) are exact sums.

Tolerance model
---------------
Central differencing a standing wave of wavenumber ``q`` scales its
derivative by ``sin(qh)/(qh)``, so the computed ``integral |psi'|^2`` of
the state ``sin(pi x/L)`` falls short by the relative amount
``(pi h / L)^2 / 3`` to leading order.  Any admixture of higher modes
raises the Wirtinger ratio by far more than it raises the discretization
deficit, which makes the ground state the worst case for the lower-bound
checks.  Every grid-side bound is therefore relaxed by
``TOLERANCE_SAFETY * (pi h / L)^2 / 3`` relative to the bound, where the
leading constant 1/3 is confirmed numerically against the analytic ground
state in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    DegenerateInputError,
    DomainError,
    EnergyReport,
    ExpCoefficients,
    Grid,
    PhysicalParams,
    PreconditionError,
    SampledWaveFunction,
)
from .quadrature import derivative, integrate, trapezoid
from .spectral import DEFAULT_TRUNCATION, project_exp, spectral_derivative

TOLERANCE_SAFETY = 2.0
NORMALIZATION_TOLERANCE = 1e-6


def relative_discretization_error(grid: Grid) -> float:
    """Leading relative energy deficit ``(pi h / L)^2 / 3`` of the ground state on ``grid``."""
    return (np.pi * grid.spacing / grid.params.length) ** 2 / 3.0


def wirtinger_tolerance(grid: Grid) -> float:
    """Allowed shortfall of :func:`wirtinger_ratio` below ``pi^2 / L^2`` (units 1/length^2)."""
    L = grid.params.length
    return TOLERANCE_SAFETY * (np.pi / L) ** 2 * relative_discretization_error(grid)


def uncertainty_tolerance(grid: Grid) -> float:
    """Allowed shortfall of the computed ``dx * dp`` below ``hbar / 2``."""
    return TOLERANCE_SAFETY * 0.5 * grid.params.hbar * relative_discretization_error(grid)


def energy_tolerance(grid: Grid, max_mode: int) -> float:
    """Bound on ``|energy_quadrature - energy_spectral|`` for a normalized sine series.

    Each mode ``n`` contributes at most ``E_n (n pi h / L)^2 / 3``, so a
    series truncated at ``max_mode`` is bounded by the top mode's share.
    This is ``C h^2`` with ``C`` fixed by the parameters and ``max_mode``.
    """
    p = grid.params
    top = p.hbar**2 / (2.0 * p.mass) * (np.pi * max_mode / p.length) ** 2
    return TOLERANCE_SAFETY * top * (np.pi * max_mode * grid.spacing / p.length) ** 2 / 3.0


def norm_squared(psi: SampledWaveFunction) -> float:
    """``integral_0^L |psi|^2 dx`` by composite quadrature."""
    return float(integrate(np.abs(psi.values) ** 2, psi.grid.spacing))


def _gradient_integral(psi):
    if psi.grid.n_points < 5:
        raise DomainError(f"energy needs at least 5 grid points, got {psi.grid.n_points}")
    dpsi = derivative(psi.values, psi.grid.spacing)
    return float(integrate(np.abs(dpsi) ** 2, psi.grid.spacing))


def _nonzero_norm(psi):
    norm = norm_squared(psi)
    if norm == 0.0:
        raise DegenerateInputError("the zero function has no Rayleigh quotient")
    return norm


def energy_quadrature(psi: SampledWaveFunction) -> float:
    """Kinetic energy ``(hbar^2 / 2m) integral_0^L |psi'|^2 dx`` from grid samples.

    The state is not normalized first; see :func:`rayleigh_quotient`.
    """
    p = psi.params
    return p.hbar**2 / (2.0 * p.mass) * _gradient_integral(psi)


def energy_spectral(a: ExpCoefficients) -> float:
    """Kinetic energy of the state represented by odd-extension coefficients.

    The derivative coefficients ``b_k`` are formed exactly and the energy is
    ``(hbar^2 / 4m) sum_k |b_k|^2``.  The factor 1/4 rather than 1/2 undoes
    the doubling of the squared norm on [-L, L].
    """
    b = spectral_derivative(a)
    p = a.params
    return p.hbar**2 / (4.0 * p.mass) * float(np.sum(np.abs(b.coefficients) ** 2))


def rayleigh_quotient(psi: SampledWaveFunction) -> float:
    """Energy per unit norm; invariant under ``psi -> c psi`` for any ``c != 0``."""
    norm = _nonzero_norm(psi)
    return energy_quadrature(psi) / norm


def wirtinger_ratio(psi: SampledWaveFunction) -> float:
    """``integral |psi'|^2 / integral |psi|^2``; bounded below by ``pi^2 / L^2``."""
    norm = _nonzero_norm(psi)
    return _gradient_integral(psi) / norm


def wirtinger_margin(a: ExpCoefficients) -> float:
    """``sum_{k != 0} (k^2 - 1) |a_k|^2``.

    Every term is a product of non-negative floats, so the result is
    non-negative in floating point as well.  It is zero exactly when all
    weight sits on ``k = +-1``.
    """
    k = a.k
    mask = k != 0
    weights = (k[mask] ** 2 - 1).astype(float)
    return float(np.sum(weights * np.abs(a.coefficients[mask]) ** 2))


def _require_normalized(psi):
    norm = norm_squared(psi)
    if abs(norm - 1.0) > NORMALIZATION_TOLERANCE:
        raise PreconditionError(
            f"state must be normalized on [0, L] within {NORMALIZATION_TOLERANCE}, "
            f"got norm {norm!r}"
        )


def position_moments(psi: SampledWaveFunction) -> tuple[float, float]:
    """Mean position and spread ``sqrt(<x^2> - <x>^2)`` of a normalized state."""
    _require_normalized(psi)
    h = psi.grid.spacing
    density = np.abs(psi.values) ** 2
    x = psi.x
    mean = float(integrate(x * density, h))
    second = float(integrate(x**2 * density, h))
    return mean, float(np.sqrt(max(second - mean**2, 0.0)))


def momentum_moments(psi: SampledWaveFunction) -> tuple[float, float]:
    """Mean momentum and spread for ``p = -i hbar d/dx``.

    ``<p> = -i hbar integral conj(psi) psi'`` is integrated with trapezoid
    weights: with ``psi`` zero at the walls, central differences are then
    exactly skew-adjoint, so ``<p>`` is real up to rounding and vanishes
    for real states.  A larger imaginary part raises
    :class:`PreconditionError`.  ``<p^2> = hbar^2 integral |psi'|^2``.
    """
    _require_normalized(psi)
    hbar = psi.params.hbar
    h = psi.grid.spacing
    dpsi = derivative(psi.values, h)
    mean = -1j * hbar * trapezoid(np.conj(psi.values) * dpsi, h)
    second = hbar**2 * float(integrate(np.abs(dpsi) ** 2, h))
    if abs(mean.imag) > 1e-9 * max(np.sqrt(second), hbar / psi.params.length):
        raise PreconditionError(f"<p> has a non-negligible imaginary part: {complex(mean)}")
    mean_p = float(mean.real)
    return mean_p, float(np.sqrt(max(second - mean_p**2, 0.0)))


@dataclass(frozen=True)
class BoundsReport:
    """Crude Heisenberg estimate next to the exact bound for one state.

    ``kinetic_energy`` is ``<p^2>/2m`` and ``spread_energy`` is
    ``(dp)^2/2m``; they coincide only for states without current.
    """

    heisenberg_bound: float
    exact_bound: float
    delta_x: float
    delta_p: float
    uncertainty_product: float
    bound_ratio: float
    mean_x: float
    mean_p: float
    kinetic_energy: float
    spread_energy: float

    def to_dict(self) -> dict:
        return {name: float(getattr(self, name)) for name in self.__dataclass_fields__}


def heisenberg_bound(params: PhysicalParams) -> float:
    """``hbar^2 / (2 m L^2)``, the estimate obtained from ``dx ~ L/2``."""
    return params.energy_scale


def bounds_report(psi: SampledWaveFunction) -> BoundsReport:
    p = psi.params
    mean_x, dx = position_moments(psi)
    mean_p, dp = momentum_moments(psi)
    crude = heisenberg_bound(p)
    exact = np.pi**2 * crude
    kinetic = energy_quadrature(psi)
    return BoundsReport(
        heisenberg_bound=crude,
        exact_bound=exact,
        delta_x=dx,
        delta_p=dp,
        uncertainty_product=dx * dp,
        bound_ratio=exact / crude,
        mean_x=mean_x,
        mean_p=mean_p,
        kinetic_energy=kinetic,
        spread_energy=dp**2 / (2.0 * p.mass),
    )


def energy_report(psi: SampledWaveFunction, K: int = DEFAULT_TRUNCATION) -> EnergyReport:
    """Grid-side and coefficient-side energy functionals of ``psi``.

    The spectral energy and the margin use the first ``K`` odd-extension
    modes, so they omit any content above ``K``.
    """
    a = project_exp(psi, K)
    return EnergyReport(
        energy_quadrature=energy_quadrature(psi),
        energy_spectral=energy_spectral(a),
        norm=norm_squared(psi),
        rayleigh_quotient=rayleigh_quotient(psi),
        wirtinger_ratio=wirtinger_ratio(psi),
        wirtinger_margin=wirtinger_margin(a),
    )
