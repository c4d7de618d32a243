"""CSV and JSON serialization.

CSV layouts (header line first, one row per entry, floats in shortest
round-trip form):

``x,re,im``        sampled wavefunction, one row per grid point
``n,re,im``        sine-basis coefficients, ``n = 1..K``
``k,re,im``        odd-extension coefficients, ``k = -K..K``
``iteration,energy``  minimizer trajectory, iteration 0 is the start
``n,energy``       energy levels
"""

from __future__ import annotations

import csv
import io
import json

import numpy as np

from .core import (
    BoundaryConditionError,
    DomainError,
    ExpCoefficients,
    Grid,
    PhysicalParams,
    SampledWaveFunction,
    SineSeries,
)

BOUNDARY_TOLERANCE = 1e-12
UNIFORMITY_TOLERANCE = 1e-9


class FormatError(DomainError):
    """A file does not follow the documented layout."""


def _num(value) -> str:
    return repr(float(value))


def rows_to_csv(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows([_format_cell(v) for v in row] for row in rows)
    return buf.getvalue()


def _read_rows(text, header):
    reader = csv.reader(io.StringIO(text))
    try:
        found = next(reader)
    except StopIteration:
        raise FormatError("empty file") from None
    if [h.strip() for h in found] != list(header):
        raise FormatError(f"expected header {','.join(header)!r}, got {','.join(found)!r}")
    rows = []
    for lineno, row in enumerate(reader, start=2):
        if not row or all(not cell.strip() for cell in row):
            continue
        if len(row) != len(header):
            raise FormatError(f"line {lineno}: expected {len(header)} fields, got {len(row)}")
        try:
            rows.append([float(cell) for cell in row])
        except ValueError as exc:
            raise FormatError(f"line {lineno}: {exc}") from None
    if not rows:
        raise FormatError("no data rows")
    return np.array(rows)


def wavefunction_to_csv(psi: SampledWaveFunction) -> str:
    rows = ((_num(x), _num(v.real), _num(v.imag)) for x, v in zip(psi.x, psi.values))
    return rows_to_csv(("x", "re", "im"), rows)


def wavefunction_from_csv(text: str, params: PhysicalParams | None = None) -> SampledWaveFunction:
    """Parse and validate a ``x,re,im`` file.

    The grid must start at 0, end at ``params.length``, be uniform and have
    at least 3 points; every value must be finite and both wall values must
    be within ``BOUNDARY_TOLERANCE`` of zero (they are then set to exactly
    zero).
    """
    params = params or PhysicalParams()
    data = _read_rows(text, ("x", "re", "im"))
    if not np.all(np.isfinite(data)):
        raise FormatError("non-finite entries in wavefunction file")
    x = data[:, 0]
    values = data[:, 1] + 1j * data[:, 2]
    n = x.size
    if n < 3:
        raise FormatError(f"need at least 3 grid points, got {n}")
    L = params.length
    grid = Grid(n, params)
    if abs(x[0]) > UNIFORMITY_TOLERANCE * L or abs(x[-1] - L) > UNIFORMITY_TOLERANCE * L:
        raise FormatError(f"grid must span [0, {L!r}], got [{x[0]!r}, {x[-1]!r}]")
    if np.max(np.abs(x - grid.x)) > UNIFORMITY_TOLERANCE * L:
        raise FormatError("grid is not uniform")
    if abs(values[0]) > BOUNDARY_TOLERANCE or abs(values[-1]) > BOUNDARY_TOLERANCE:
        raise BoundaryConditionError(
            "boundary condition psi(0) = psi(L) = 0 violated: "
            f"psi(0)={complex(values[0])}, psi(L)={complex(values[-1])}"
        )
    values[0] = values[-1] = 0.0
    return SampledWaveFunction(grid, values)


def coefficients_to_csv(coeffs: SineSeries | ExpCoefficients) -> str:
    if isinstance(coeffs, SineSeries):
        index, label = coeffs.modes, "n"
    else:
        index, label = coeffs.k, "k"
    rows = ((int(i), _num(c.real), _num(c.imag)) for i, c in zip(index, coeffs.coefficients))
    return rows_to_csv((label, "re", "im"), rows)


def coefficients_from_csv(text: str, params: PhysicalParams | None = None):
    """Parse ``n,re,im`` into a :class:`SineSeries` or ``k,re,im`` into :class:`ExpCoefficients`."""
    params = params or PhysicalParams()
    label = text.lstrip().split(",", 1)[0].strip()
    if label not in ("n", "k"):
        raise FormatError(f"unknown coefficient header starting with {label!r}")
    data = _read_rows(text, (label, "re", "im"))
    index = data[:, 0]
    values = data[:, 1] + 1j * data[:, 2]
    if label == "n":
        if not np.array_equal(index, np.arange(1, index.size + 1)):
            raise FormatError("sine coefficients must be listed for n = 1..K in order")
        return SineSeries(values, params)
    K = (index.size - 1) // 2
    if not np.array_equal(index, np.arange(-K, K + 1)):
        raise FormatError("exponential coefficients must be listed for k = -K..K in order")
    return ExpCoefficients(values, params)


def trajectory_to_csv(trajectory) -> str:
    return rows_to_csv(("iteration", "energy"), ((i, _num(e)) for i, e in enumerate(trajectory)))


def spectrum_to_csv(levels) -> str:
    return rows_to_csv(("n", "energy"), ((n, _num(e)) for n, e in levels))


def report_to_json(report) -> str:
    """Flat JSON object; accepts a dict or anything with ``to_dict()``."""
    data = report.to_dict() if hasattr(report, "to_dict") else dict(report)
    return json.dumps(data, indent=2, allow_nan=False) + "\n"


def table_to_csv(data: dict) -> str:
    """One header row of keys and one row of values."""
    return rows_to_csv(list(data), [list(data.values())])


def _format_cell(value):
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return _num(value)
    return value
