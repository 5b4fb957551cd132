import math

import pytest

from steinsahi.kernel import KernelParams, coefficient
from steinsahi.oracle import (
    IntegrabilityError,
    coefficient_det_reduction,
    coefficient_full_quadrature,
    gauss_2f1_check,
    lobachevsky_closed,
    lobachevsky_numeric,
)
from steinsahi.quadrature import QuadratureConfig, tanh_sinh


def test_tanh_sinh_endpoint_singularity():
    val, err = tanh_sinh(lambda x, da, db: da ** -0.5, 0.0, 1.0, QuadratureConfig())
    assert abs(val - 2.0) < 1e-12


@pytest.mark.parametrize("mu, b", [(1.0, 0.0), (0.3, 2.0), (complex(1.5, 0.4), -3.0), (0.1, 0.5)])
def test_lobachevsky(mu, b):
    v, _ = lobachevsky_numeric(mu, b)
    c = lobachevsky_closed(mu, b)
    assert abs(v - c) < 1e-9 * abs(c)


def test_lobachevsky_elementary():
    assert abs(lobachevsky_closed(1, 0) - math.pi) < 1e-14
    assert abs(lobachevsky_closed(2, 0) - 2) < 1e-14


@pytest.mark.parametrize(
    "n, s, t, m",
    [(1, -0.5, -0.4, (0,)), (1, 0.3, 0.2, (-3,)), (2, -0.5, -0.4, (1, 0)), (2, -0.3, -0.3, (1, 0)),
     (2, 0.4, 0.1, (3, -2)), (3, 0.3, -0.6, (3, 0, -2))],
)
def test_det_reduction_matches_closed_form(n, s, t, m):
    p = KernelParams(n, s, t)
    c = coefficient(m, p)
    tol = 1e-8 if n < 3 else 1e-6
    assert abs(coefficient_det_reduction(m, p) - c) < tol * abs(c)


def test_det_reduction_complex_parameters():
    p = KernelParams(2, complex(0.2, 0.5), complex(-0.1, -0.2))
    c = coefficient((2, -1), p)
    assert abs(coefficient_det_reduction((2, -1), p) - c) < 1e-8 * abs(c)


@pytest.mark.slow
@pytest.mark.parametrize("m", [(1, 0), (2, -1), (0, -3)])
def test_full_quadrature_n2(m):
    p = KernelParams(2, -0.3, -0.2)
    c = coefficient(m, p)
    assert abs(coefficient_full_quadrature(m, p) - c) < 1e-4 * abs(c)


def test_full_quadrature_n1():
    p = KernelParams(1, -0.5, -0.4)
    assert abs(coefficient_full_quadrature((0,), p) - 6.725769301659749) < 1e-9


def test_integrability_guard():
    with pytest.raises(IntegrabilityError):
        coefficient_det_reduction((1, 0), KernelParams(2, -0.6, -0.4))


@pytest.mark.parametrize("p, q", [(2, 2), (1.5, 1.2), (2, 3), (3, 0.7), (1.3, 1.3)])
def test_gauss_summation(p, q):
    assert gauss_2f1_check(p, q) < 1e-8


def test_gauss_divergent():
    with pytest.raises(ValueError):
        gauss_2f1_check(0.5, 0.4)


def test_extrapolate_to_zero_polynomial_exact():
    from steinsahi.oracle import extrapolate_to_zero

    f = lambda e: 3.0 - 2.0 * e + 5.0 * e ** 2
    eps = (0.1, 0.01, 0.001)
    assert abs(extrapolate_to_zero(eps, [f(e) for e in eps]) - 3.0) < 1e-12
    with pytest.raises(ValueError):
        extrapolate_to_zero((0.1,), [])
