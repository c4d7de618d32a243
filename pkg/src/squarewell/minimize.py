"""Ground state by projected gradient descent in the sine basis.

The energy of ``psi = sum_n c_n sqrt(2/L) sin(n pi x/L)`` is the quadratic
form ``E(c) = sum_n E_n |c_n|^2``, where the mode energies ``E_n`` come
from the spectral derivative relation (``(hbar^2/2m) (pi n / L)^2``).
Each iteration takes a fixed step along ``-grad E = -2 E_n c_n`` and
renormalizes back onto the unit sphere ``sum |c_n|^2 = 1``.

With step ``eta`` the update multiplies mode ``n`` by ``1 - 2 eta E_n``
before renormalization.  The energy is non-increasing for every start as
long as these factors shrink in magnitude with ``n``, which holds for
``eta <= 1 / (E_{K-1} + E_K)`` (:func:`stability_threshold`).

Pure higher modes are stationary: their gradient is parallel to the
state and the renormalization removes it.  A random start has ``c_1 != 0``
with probability one, so this saddle set is only reached on purpose.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .core import DegenerateInputError, DomainError, PhysicalParams, SineSeries
from .functionals import energy_spectral
from .spectral import DEFAULT_TRUNCATION, sine_to_exp, wavenumbers
from .trials import random_coefficients


@dataclass(frozen=True)
class MinimizerConfig:
    """Settings for :func:`minimize_rayleigh`.

    ``step_size=None`` selects ``0.1 / E_K``, one tenth of the inverse of
    the largest retained mode energy.  ``tolerance`` is the relative energy
    change between consecutive iterates below which the run stops.
    """

    truncation: int = DEFAULT_TRUNCATION
    max_iterations: int = 10000
    step_size: float | None = None
    tolerance: float = 1e-12
    seed: int = 0

    def __post_init__(self):
        if int(self.truncation) != self.truncation or self.truncation < 1:
            raise DomainError(f"truncation must be an integer >= 1, got {self.truncation!r}")
        if int(self.max_iterations) != self.max_iterations or self.max_iterations < 1:
            raise DomainError(f"max_iterations must be >= 1, got {self.max_iterations!r}")
        if self.step_size is not None and not self.step_size > 0:
            raise DomainError(f"step_size must be positive, got {self.step_size!r}")
        if not self.tolerance > 0:
            raise DomainError(f"tolerance must be positive, got {self.tolerance!r}")

    def resolved_step(self, params: PhysicalParams) -> float:
        if self.step_size is not None:
            return float(self.step_size)
        return 0.1 / mode_energies(self.truncation, params)[-1]


@dataclass(frozen=True)
class MinimizationResult:
    final_series: SineSeries
    final_energy: float
    energy_trajectory: list = field(repr=False)
    iterations_used: int
    overlap_with_mode1: float
    converged: bool
    step_size: float
    elapsed_seconds: float = field(default=0.0, compare=False)


def mode_energies(K: int, params: PhysicalParams) -> np.ndarray:
    """``E_n = (hbar^2 / 2m) (pi n / L)^2`` for ``n = 1..K`` from the derivative wavenumbers."""
    q = wavenumbers(K, params)[K + 1 :]
    return params.hbar**2 / (2.0 * params.mass) * q**2


def stability_threshold(K: int, params: PhysicalParams) -> float:
    """Largest step for which the descent is monotone from every start."""
    E = mode_energies(K, params)
    if K == 1:
        return np.inf
    return 1.0 / (E[-2] + E[-1])


def energy_of_coefficients(series: SineSeries) -> float:
    """Energy of a sine series via the exact spectral-derivative path."""
    return energy_spectral(sine_to_exp(series))


def energy_gradient(series: SineSeries) -> np.ndarray:
    """Gradient ``2 E_n c_n`` of :func:`energy_of_coefficients`.

    The complex entry ``g_n`` packs the real partials as
    ``dE/dRe(c_n) + i dE/dIm(c_n)``.
    """
    return 2.0 * mode_energies(series.truncation, series.params) * series.coefficients


def closed_form_minimizer(K: int, params: PhysicalParams | None = None) -> SineSeries:
    """The equality case: ``c_1 = 1`` and every other coefficient zero."""
    if int(K) != K or K < 1:
        raise DomainError(f"truncation K must be an integer >= 1, got {K!r}")
    return SineSeries.mode(1, int(K), params or PhysicalParams())


def _phase_fixed(c):
    nonzero = np.flatnonzero(c)
    if nonzero.size == 0:
        return c
    lead = c[nonzero[0]]
    rotated = c * (abs(lead) / lead)
    rotated[nonzero[0]] = abs(lead)
    return rotated


def _initial_coefficients(initial, config, params):
    K = config.truncation
    if initial is None:
        return random_coefficients(np.random.default_rng(config.seed), K)
    c = np.asarray(initial.coefficients, dtype=complex)
    if c.size > K:
        raise DomainError(f"initial series has {c.size} modes, truncation is {K}")
    c = np.concatenate([c, np.zeros(K - c.size, dtype=complex)])
    norm = np.linalg.norm(c)
    if norm == 0.0:
        raise DegenerateInputError("initial series is identically zero")
    return c / norm


def minimize_rayleigh(
    initial: SineSeries | None = None,
    config: MinimizerConfig | None = None,
    params: PhysicalParams | None = None,
) -> MinimizationResult:
    """Minimize the energy over normalized sine series by projected gradient descent.

    Parameters
    ----------
    initial : SineSeries, optional
        Starting state; shorter series are zero-padded to the truncation.
        When omitted a random start is drawn from ``config.seed``.
    config : MinimizerConfig, optional
    params : PhysicalParams, optional
        Only used for random starts; otherwise the initial series' params.

    Returns
    -------
    MinimizationResult
        ``energy_trajectory[0]`` is the energy of the normalized start and
        entry ``i`` the energy after ``i`` iterations.  The final state is
        rotated so that its leading nonzero coefficient is real positive.
        Hitting ``max_iterations`` is reported through ``converged=False``.
    """
    config = config or MinimizerConfig()
    if initial is not None:
        params = initial.params
    params = params or PhysicalParams()
    t0 = time.perf_counter()

    energies = mode_energies(config.truncation, params)
    step = config.resolved_step(params)

    c = _initial_coefficients(initial, config, params)
    energy = float(np.sum(energies * np.abs(c) ** 2))
    trajectory = [energy]
    converged = False
    iterations = 0
    for iterations in range(1, config.max_iterations + 1):
        c = c - step * (2.0 * energies * c)
        c /= np.linalg.norm(c)
        new_energy = float(np.sum(energies * np.abs(c) ** 2))
        trajectory.append(new_energy)
        if abs(energy - new_energy) <= config.tolerance * abs(new_energy):
            converged = True
            break
        energy = new_energy

    final = SineSeries(_phase_fixed(c), params)
    return MinimizationResult(
        final_series=final,
        final_energy=energy_of_coefficients(final),
        energy_trajectory=trajectory,
        iterations_used=iterations,
        overlap_with_mode1=float(abs(final.coefficients[0])),
        converged=converged,
        step_size=step,
        elapsed_seconds=time.perf_counter() - t0,
    )
