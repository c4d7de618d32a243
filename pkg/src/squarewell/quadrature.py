"""Composite quadrature and finite differences on uniform grids."""

import numpy as np


def trapezoid(values, h):
    """Composite trapezoid rule along the last axis for samples spaced ``h`` apart. O(h^2)."""
    values = np.asarray(values)
    return h * (0.5 * values[..., 0] + values[..., 1:-1].sum(axis=-1) + 0.5 * values[..., -1])


def simpson(values, h):
    """Composite Simpson rule along the last axis for samples spaced ``h`` apart.

    Requires an odd number of samples (an even number of panels) and is
    O(h^4) for smooth integrands.  With an even sample count the rule is not
    defined and :func:`trapezoid` is used instead, which is only O(h^2).
    """
    values = np.asarray(values)
    n = values.shape[-1]
    if n < 3 or n % 2 == 0:
        return trapezoid(values, h)
    return h / 3.0 * (
        values[..., 0]
        + values[..., -1]
        + 4.0 * values[..., 1:-1:2].sum(axis=-1)
        + 2.0 * values[..., 2:-1:2].sum(axis=-1)
    )


def integrate(values, h):
    """Default rule used across the package (Simpson with trapezoid fallback)."""
    return simpson(values, h)


def derivative(values, h):
    """First derivative by second-order finite differences.

    Central differences in the interior, second-order one-sided stencils
    at both ends.  At least three samples are required.
    """
    values = np.asarray(values)
    if values.shape[0] < 3:
        raise ValueError("need at least 3 samples for a second-order derivative")
    out = np.empty_like(values)
    out[1:-1] = (values[2:] - values[:-2]) / (2.0 * h)
    out[0] = (-3.0 * values[0] + 4.0 * values[1] - values[2]) / (2.0 * h)
    out[-1] = (3.0 * values[-1] - 4.0 * values[-2] + values[-3]) / (2.0 * h)
    return out
