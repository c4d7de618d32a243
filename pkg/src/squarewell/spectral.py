"""Odd extension and conversion between grid and coefficient representations.

Grid-to-coefficient conversions (:func:`project_exp`, :func:`project_sine`)
carry quadrature error.  Everything that runs purely in coefficient space
(:func:`sine_to_exp`, :func:`exp_to_sine`, :func:`spectral_derivative`,
:func:`parseval_norm`) is exact up to floating point rounding.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .core import (
    DomainError,
    ExpCoefficients,
    PhysicalParams,
    SampledWaveFunction,
    SineSeries,
)
from .quadrature import integrate

DEFAULT_TRUNCATION = 16


@dataclass(frozen=True)
class OddExtension:
    """Antisymmetric continuation of a wall-vanishing state to [-L, L].

    ``x`` has ``2N - 1`` uniformly spaced points; ``values[N - 1]`` sits at
    ``x = 0`` and the second half equals the original samples.
    """

    x: np.ndarray
    values: np.ndarray
    spacing: float
    params: PhysicalParams

    def __post_init__(self):
        for name in ("x", "values"):
            arr = np.array(getattr(self, name), copy=True)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)


def _check_truncation(K):
    if int(K) != K or K < 1:
        raise DomainError(f"truncation K must be an integer >= 1, got {K!r}")
    return int(K)


def odd_extend(psi: SampledWaveFunction) -> OddExtension:
    """Extend ``psi`` to [-L, L] by ``psi(-x) = -psi(x)``.

    The mirror half is built by exact negation, so oddness holds bitwise at
    the sample points and the restriction to [0, L] is the input itself.
    """
    v = psi.values
    x = psi.x
    values = np.concatenate([-v[:0:-1], v])
    xs = np.concatenate([-x[:0:-1], x])
    return OddExtension(xs, values, psi.grid.spacing, psi.params)


@lru_cache(maxsize=32)
def _exp_analysis_matrix(K, n_points, length):
    # conj(phi_k) on the extended grid, rows k = -K..K
    x = np.linspace(-length, length, 2 * n_points - 1)
    k = np.arange(-K, K + 1)
    mat = np.exp(-1j * np.pi * np.outer(k, x) / length) / np.sqrt(2.0 * length)
    mat.setflags(write=False)
    return mat


@lru_cache(maxsize=32)
def _sine_analysis_matrix(K, n_points, length):
    x = np.linspace(0.0, length, n_points)
    n = np.arange(1, K + 1)
    mat = np.sqrt(2.0 / length) * np.sin(np.pi * np.outer(n, x) / length)
    mat.setflags(write=False)
    return mat


def project_exp(psi: SampledWaveFunction, K: int = DEFAULT_TRUNCATION) -> ExpCoefficients:
    """Fourier coefficients of the odd extension of ``psi``.

    Computes ``a_k = integral_{-L}^{L} psi~(x) conj(phi_k(x)) dx`` for
    ``k = -K..K`` by composite quadrature over the extended grid.  The
    ``a_0`` entry is returned as computed; for an odd extension it vanishes
    up to rounding.
    """
    K = _check_truncation(K)
    ext = odd_extend(psi)
    mat = _exp_analysis_matrix(K, psi.grid.n_points, psi.params.length)
    return ExpCoefficients(integrate(mat * ext.values, ext.spacing), psi.params)


def project_sine(psi: SampledWaveFunction, K: int = DEFAULT_TRUNCATION) -> SineSeries:
    """Real-basis coefficients ``c_n = integral_0^L psi(x) sqrt(2/L) sin(n pi x/L) dx``."""
    K = _check_truncation(K)
    mat = _sine_analysis_matrix(K, psi.grid.n_points, psi.params.length)
    return SineSeries(integrate(mat * psi.values, psi.grid.spacing), psi.params)


def sine_to_exp(series: SineSeries) -> ExpCoefficients:
    """Exact map ``a_k = -i c_k`` (k > 0), ``a_k = i c_{-k}`` (k < 0), ``a_0 = 0``."""
    c = series.coefficients
    a = np.concatenate([1j * c[::-1], [0.0], -1j * c])
    return ExpCoefficients(a, series.params)


def exp_to_sine(a: ExpCoefficients) -> SineSeries:
    """Sine-basis content of ``a``: ``c_n = i (a_n - a_{-n}) / 2``.

    This inverts :func:`sine_to_exp` exactly.  Any even part of ``a`` (which
    an odd extension cannot have) is discarded.
    """
    K = a.truncation
    coeffs = a.coefficients
    positive = coeffs[K + 1 :]
    negative = coeffs[K - 1 :: -1]
    return SineSeries(1j * (positive - negative) / 2, a.params)


def wavenumbers(K: int, params: PhysicalParams) -> np.ndarray:
    """``pi k / L`` for ``k = -K..K``."""
    return np.pi * np.arange(-K, K + 1) / params.length


def spectral_derivative(a: ExpCoefficients) -> ExpCoefficients:
    """Coefficients of the derivative: ``b_k = (i pi k / L) a_k``, exact."""
    return ExpCoefficients(1j * wavenumbers(a.truncation, a.params) * a.coefficients, a.params)


def parseval_norm(a: ExpCoefficients) -> float:
    """``sum_k |a_k|^2``, i.e. the squared norm of the extension over [-L, L]."""
    return float(np.sum(np.abs(a.coefficients) ** 2))


def extended_norm_squared(ext: OddExtension) -> float:
    """Quadrature of ``|psi~|^2`` over [-L, L] (grid-side Parseval check)."""
    return float(np.real(integrate(np.abs(ext.values) ** 2, ext.spacing)))
