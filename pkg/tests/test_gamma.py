import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from steinsahi.gamma import (
    PoleError,
    SignedLogValue,
    gamma,
    log_gamma,
    pochhammer,
    pole_leading_coefficient,
    reciprocal_gamma,
    signed_log_gamma,
)


@pytest.mark.parametrize("x, sign", [(0.5, 1), (-0.5, -1), (-1.5, 1), (-2.5, -1), (7.3, 1)])
def test_signed_log_gamma_sign_rule(x, sign):
    v = signed_log_gamma(x)
    assert v.sign == sign
    assert math.isclose(v.value(), math.gamma(x), rel_tol=1e-13)


@pytest.mark.parametrize("x", [0, -1, -7])
def test_signed_log_gamma_pole(x):
    with pytest.raises(PoleError):
        signed_log_gamma(x)


def test_signed_log_gamma_large_argument_no_overflow():
    v = signed_log_gamma(-1000.5)
    assert v.sign == -1
    assert math.isclose(v.logmag, float(mpmath.log(abs(mpmath.gamma(mpmath.mpf("-1000.5"))))), rel_tol=1e-12)
    assert signed_log_gamma(5000.25).logmag > 3e4


def test_signed_log_value_algebra():
    a, b = SignedLogValue(-1, 2.0), SignedLogValue(1, 0.5)
    assert (a * b) == SignedLogValue(-1, 2.5)
    assert (a * SignedLogValue(0, -math.inf)).sign == 0
    assert math.isclose((a / b).value(), -math.exp(1.5))
    with pytest.raises(ValueError):
        SignedLogValue(2, 0.0)


@pytest.mark.parametrize("a, k, expected", [(3.7, 0, 1), (2, 3, 24), (2, -1, 1)])
def test_pochhammer_examples(a, k, expected):
    assert pochhammer(a, k) == expected


def test_pochhammer_pole():
    with pytest.raises(PoleError):
        pochhammer(2, -2)


@given(st.fractions(min_value=-20, max_value=20, max_denominator=12), st.integers(-8, 8))
def test_pochhammer_inverse(a, k):
    try:
        v = pochhammer(a, k) * pochhammer(a + k, -k)
    except PoleError:
        return
    assert v == 1


def test_reciprocal_gamma_examples():
    assert reciprocal_gamma(1) == 1
    assert reciprocal_gamma(0) == 0
    assert reciprocal_gamma(-3) == 0
    assert abs(reciprocal_gamma(0.5) * math.sqrt(math.pi) - 1) < 1e-14
    # no snapping near poles
    assert reciprocal_gamma(-3 + 1e-12) != 0


def test_complex_log_gamma_against_mpmath():
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(500):
        z = complex(rng.uniform(-30, 40), rng.uniform(-20, 20))
        ref = complex(mpmath.gamma(z))
        worst = max(worst, abs(np.exp(log_gamma(z)) - ref) / abs(ref))
    assert worst < 1e-12


@given(st.complex_numbers(max_magnitude=12, allow_nan=False, allow_infinity=False))
def test_reciprocal_times_gamma_is_one(z):
    if z.imag == 0 and z.real <= 0.1 and abs(z.real - round(z.real)) < 0.1:
        return
    if abs(z.imag) < 0.1 and z.real <= 0.1 and abs(z.real - round(z.real)) < 0.1:
        return
    assert abs(reciprocal_gamma(z) * gamma(z) - 1) < 1e-12


@given(st.floats(-10, 10).filter(lambda x: abs(x - round(x)) > 1e-3))
def test_reflection(x):
    a, b = signed_log_gamma(x), signed_log_gamma(1 - x)
    lhs = a.sign * b.sign * math.exp(a.logmag + b.logmag)
    assert math.isclose(lhs, math.pi / math.sin(math.pi * x), rel_tol=1e-10)


@pytest.mark.parametrize("k, expected", [(0, 1.0), (2, 0.5), (3, -1 / 6)])
def test_pole_leading_coefficient(k, expected):
    assert math.isclose(pole_leading_coefficient(k), expected)


@pytest.mark.parametrize("k", range(5))
def test_pole_residue_numerical_limit(k):
    f = [gamma(-k + e) * e for e in (1e-4, 1e-5)]
    lim = (1e-4 * f[1] - 1e-5 * f[0]) / (1e-4 - 1e-5)
    assert abs(lim - pole_leading_coefficient(k)) < 1e-6
