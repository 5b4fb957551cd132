import json
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from steinsahi.kernel import (
    CoefficientTable,
    CutoffError,
    HarmonicVector,
    KernelParams,
    KernelSingularityError,
    PositivityClass,
    berezin_wallach,
    classify_positivity,
    coefficient,
    coefficient_sin_form,
    coefficients_array,
    hermitian_form,
    kernel_pointwise,
    l2_diagonal_check,
    normalized_coefficient,
    scan_class,
    sobolev_norm,
    tau_zero_coefficient,
)
from steinsahi.signatures import dual, enumerate_signatures, shift_all, signature_array

# frozen from the quadrature oracles and an independent mpmath evaluation
FROZEN = [
    (1, -0.5, -0.4, (0,), 6.725769301659749),
    (2, -0.5, -0.4, (1, 0), 15.0786575663829004),
    (2, -0.5, -0.4, (0, -1), -4.825170421242521),
    (2, -0.5, -0.4, (3, -2), 2.029819287782311),
    (2, -0.5, -0.4, (4, -4), 1.1684885635487603),
    (2, 1.3, 1.2, (2, 0), -0.117383911479421246),
    (2, -0.3, -0.3, (1, 0), 3.25021914062188),
    (3, 0.3, -0.6, (3, 0, -2), 0.0218374611066110),
]

noninteger = st.floats(-3, 3).filter(lambda x: abs(x - round(x)) > 0.02)


@pytest.mark.parametrize("n, s, t, m, value", FROZEN)
def test_frozen_values(n, s, t, m, value):
    c = coefficient(m, KernelParams(n, s, t))
    assert abs(c.imag) < 1e-14 * abs(value)
    assert math.isclose(c.real, value, rel_tol=1e-10)


def test_pole_gives_exact_zero():
    assert coefficient((0,), KernelParams(1, 0.5, -1.0)) == 0
    assert coefficient((0, -1), KernelParams(2, -0.5, 0.0)) == 0


def test_complex_parameters_match_real_path():
    p = KernelParams(2, -0.5, -0.4)
    q = KernelParams(2, complex(-0.5, 1e-300), complex(-0.4, 0))
    assert abs(coefficient((1, 0), p) - coefficient((1, 0), q)) < 1e-12


def test_conjugation_symmetry_complex():
    p = KernelParams(2, complex(0.3, 0.7), complex(-0.2, 0.4))
    pc = KernelParams(2, complex(-0.2, -0.4), complex(0.3, -0.7))
    for m in [(1, 0), (3, -2), (0, -4)]:
        assert abs(coefficient(dual(m), pc) - np.conj(coefficient(m, p))) < 1e-12 * abs(coefficient(m, p))


@given(st.integers(1, 3), noninteger, noninteger, st.data())
def test_sin_form_agrees(n, s, t, data):
    if abs(s + t - round(s + t)) < 0.02:
        return
    labels = data.draw(st.lists(st.integers(-6, 6), min_size=n, max_size=n, unique=True))
    m = tuple(sorted(labels, reverse=True))
    p = KernelParams(n, s, t)
    a, b = coefficient(m, p), coefficient_sin_form(m, p)
    assert abs(a - b) <= 1e-9 * max(abs(a), abs(b)) + 1e-300


@given(st.integers(1, 3), noninteger, noninteger, st.data())
def test_shift_identity_sign(n, s, t, data):
    if abs(s + t - round(s + t)) < 0.02:
        return
    labels = data.draw(st.lists(st.integers(-6, 6), min_size=n, max_size=n, unique=True))
    m = tuple(sorted(labels, reverse=True))
    a = coefficient(shift_all(m, 1), KernelParams(n, s + 1, t - 1))
    b = (-1) ** n * coefficient(m, KernelParams(n, s, t))
    assert abs(a - b) <= 1e-11 * max(abs(a), abs(b))


def test_coefficients_array_matches_scalar():
    p = KernelParams(3, 0.3, -0.6)
    labels = signature_array(3, 3)
    arr = coefficients_array(labels, p)
    for row, v in zip(labels[::5], arr[::5]):
        c = coefficient(tuple(int(x) for x in row), p)
        assert abs(v - c) <= 1e-12 * abs(c) + 1e-300


def test_normalized_coefficient_on_prefactor_pole():
    # sigma + tau = -2 hits Gamma(sigma+tau+1) at n=2; normalised value stays finite
    v = normalized_coefficient((1, 0), KernelParams(2, -1.3, -0.7))
    assert np.isfinite(v) and v != 0


def test_l2_diagonal_limit():
    n, tau = 2, 0.37
    for m in [(1, 0), (3, -1)]:
        vals = []
        for e in (1e-4, 1e-5):
            vals.append(normalized_coefficient(m, KernelParams(n, -n - tau + e, tau)))
        lim = (1e-4 * vals[1] - 1e-5 * vals[0]) / (1e-4 - 1e-5)
        assert abs(lim - l2_diagonal_check(m, n, tau)) < 1e-6 * abs(lim)


def test_kernel_pointwise():
    p = KernelParams(1, 0.5, 0.5)
    assert abs(kernel_pointwise([math.pi], p) - 1.0) < 1e-15
    assert kernel_pointwise([0.0], p) == 0
    with pytest.raises(KernelSingularityError):
        kernel_pointwise([0.0], KernelParams(1, -0.3, -0.3))


def test_table_serialisation():
    t = CoefficientTable.build(KernelParams(1, -0.5, -0.4), 5)
    assert len(t.entries) == 11
    lines = t.to_tsv().strip().splitlines()
    assert lines[0].split("\t")[:3] == ["m_1", "re", "im"]
    assert len(lines) == 12
    data = json.loads(t.to_json())
    assert data["schema"] == 1 and len(data["entries"]) == 11


def test_hermitian_form_and_cutoff():
    t = CoefficientTable.build(KernelParams(2, -0.5, -0.4), 3)
    f = HarmonicVector.unit((1, 0), 2.0)
    assert abs(hermitian_form(t, f, f) - 4 * 15.0786575663829004) < 1e-9
    with pytest.raises(CutoffError):
        hermitian_form(t, HarmonicVector.unit((5, 0)), f)
    assert sobolev_norm(f, 1.0) == pytest.approx(4 * 2 * 1)


@pytest.mark.parametrize(
    "n, s, t, expected",
    [
        (1, -0.5, -0.4, PositivityClass.PositiveDefinite),
        (2, -0.5, -0.4, PositivityClass.Indefinite),
        (2, -1.5, -0.4, PositivityClass.PositiveDefinite),
        (2, -1.0, 0.3, PositivityClass.OnIntegerLocus),
    ],
)
def test_classify_examples(n, s, t, expected):
    assert classify_positivity(KernelParams(n, s, t)) == expected


@given(st.integers(1, 3), st.integers(-20, 7), st.integers(-20, 7))
def test_classifier_matches_scan(n, i, j):
    s, t = -n - 2 + 0.125 + 0.25 * i, 0.125 + 0.25 * j - 2
    p = KernelParams(n, s, t)
    assert classify_positivity(p) == scan_class(p, 6)


def test_berezin_wallach():
    bw = berezin_wallach(-1, 2)
    assert bw.member and bw.alpha == 1
    assert bw.supports((3, 0)) and not bw.supports((3, 1))
    assert berezin_wallach(-3.5, 2).rule == "m_2 >= 0"
    assert not berezin_wallach(-0.5, 2).member


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("sigma", [0, -1, -2, -3.5])
def test_tau_zero_support(n, sigma):
    bw = berezin_wallach(sigma, n)
    if not bw.member:
        return
    signs = set()
    for m in enumerate_signatures(n, 4):
        v = float(tau_zero_coefficient(m, n, sigma))
        if m.labels[-1] < 0:
            assert v == 0
        assert (v != 0) == bw.supports(m)
        if v:
            signs.add(v > 0)
    assert len(signs) <= 1
