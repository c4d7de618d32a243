import numpy as np
import pytest

from squarewell.core import BoundaryConditionError, ExpCoefficients, PhysicalParams, SineSeries, sample
from squarewell.formats import (
    FormatError,
    coefficients_from_csv,
    coefficients_to_csv,
    report_to_json,
    spectrum_to_csv,
    table_to_csv,
    trajectory_to_csv,
    wavefunction_from_csv,
    wavefunction_to_csv,
)


def test_wavefunction_roundtrip_full_precision():
    rng = np.random.default_rng(0)
    p = PhysicalParams(length=2.0)
    psi = sample(SineSeries(rng.normal(size=4) + 1j * rng.normal(size=4), p), 33)
    text = wavefunction_to_csv(psi)
    assert text.splitlines()[0] == "x,re,im"
    back = wavefunction_from_csv(text, p)
    np.testing.assert_array_equal(back.values, psi.values)
    np.testing.assert_array_equal(back.x, psi.x)


def test_wavefunction_rejects_wall_violation():
    text = "x,re,im\n0,0.1,0\n0.5,1,0\n1,0,0\n"
    with pytest.raises(BoundaryConditionError, match="boundary condition"):
        wavefunction_from_csv(text)


def test_wavefunction_wall_tolerance_snaps_to_zero():
    text = "x,re,im\n0,1e-13,0\n0.5,1,0\n1,0,-1e-13\n"
    psi = wavefunction_from_csv(text)
    assert psi.values[0] == 0 and psi.values[-1] == 0


@pytest.mark.parametrize(
    "text",
    [
        "",
        "x,y,z\n0,0,0\n",
        "x,re,im\n",
        "x,re,im\n0,0,0\n1,0,0\n",
        "x,re,im\n0,0,0\n0.4,1,0\n1,0,0\n",
        "x,re,im\n0,0,0\n0.5,nan,0\n1,0,0\n",
        "x,re,im\n0,0,0\n0.5,abc,0\n1,0,0\n",
        "x,re,im\n0,0,0\n0.5,1\n1,0,0\n",
        "x,re,im\n0,0,0\n1,1,0\n2,0,0\n",
    ],
)
def test_wavefunction_rejects_malformed(text):
    with pytest.raises(FormatError):
        wavefunction_from_csv(text)


def test_coefficient_roundtrips():
    s = SineSeries([1.0, -0.5j, 1 / 3])
    text = coefficients_to_csv(s)
    assert text.splitlines()[0] == "n,re,im"
    np.testing.assert_array_equal(coefficients_from_csv(text).coefficients, s.coefficients)
    a = ExpCoefficients([0.1j, 0, -0.1j, 2, 3])
    text = coefficients_to_csv(a)
    assert text.splitlines()[0] == "k,re,im"
    assert text.splitlines()[1].startswith("-2,")
    back = coefficients_from_csv(text)
    assert isinstance(back, ExpCoefficients)
    np.testing.assert_array_equal(back.coefficients, a.coefficients)


def test_coefficients_reject_bad_index():
    with pytest.raises(FormatError):
        coefficients_from_csv("n,re,im\n2,1,0\n")
    with pytest.raises(FormatError):
        coefficients_from_csv("k,re,im\n0,1,0\n1,0,0\n-1,0,0\n")
    with pytest.raises(FormatError):
        coefficients_from_csv("m,re,im\n1,1,0\n")


def test_trajectory_and_spectrum_csv():
    assert trajectory_to_csv([2.5, 1.0]) == "iteration,energy\n0,2.5\n1,1.0\n"
    assert spectrum_to_csv([(1, 0.1), (2, 0.4)]) == "n,energy\n1,0.1\n2,0.4\n"


def test_json_and_table():
    data = {"a": 0.1, "flag": True, "n": 3}
    assert report_to_json(data).startswith("{")
    assert table_to_csv(data) == "a,flag,n\n0.1,true,3\n"
    value = 1 / 3
    assert repr(value) in report_to_json({"v": value})
    with pytest.raises(ValueError):
        report_to_json({"v": float("nan")})
