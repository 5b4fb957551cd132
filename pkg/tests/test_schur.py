import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from steinsahi.oracle import orthogonality_residual
from steinsahi.schur import EigenAngles, character, weyl_denominator
from steinsahi.signatures import Signature, dimension, dual, enumerate_signatures, shift_all

angles = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.floats(0, 2 * math.pi), min_size=n, max_size=n)
)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_character_at_identity_is_exact_dimension(n):
    for m in enumerate_signatures(n, 3):
        v = character(m, np.zeros(n))
        assert v == dimension(m)


def test_character_examples():
    psi = [0.3, 1.1]
    z = np.exp(1j * np.array(psi))
    # labels include the half-sum shift: (1, 0) is trivial, (2, 0) the defining rep
    assert abs(character((1, 0), psi) - 1) < 1e-13
    assert abs(character((2, 0), psi) - z.sum()) < 1e-13
    assert abs(character((1, -1), psi) - np.conj(z).sum()) < 1e-13
    assert abs(character((3, 0), psi) - (z[0] ** 2 + z[0] * z[1] + z[1] ** 2)) < 1e-13


def test_character_near_coincident_angles():
    psi = [0.4, 0.4 + 1e-9, 2.0]
    ref = character((3, 1, -2), [0.4, 0.4 + 1e-3, 2.0])
    v = character((3, 1, -2), psi)
    assert abs(v - ref) < 1e-2 * abs(ref) + 1e-2
    assert np.isfinite(v)


def test_eigen_angles_wrap():
    a = EigenAngles((7.0, -1.0))
    assert np.all((a.array() >= 0) & (a.array() < 2 * math.pi))


def test_weyl_denominator_product_form():
    psi = np.array([0.2, 1.5, 3.0])
    z = np.exp(1j * psi)
    expected = (z[0] - z[1]) * (z[0] - z[2]) * (z[1] - z[2])
    assert abs(weyl_denominator(psi) - expected) < 1e-14


@given(angles, st.data())
def test_conjugation_is_dual(psi, data):
    n = len(psi)
    labels = data.draw(st.lists(st.integers(-5, 5), min_size=n, max_size=n, unique=True))
    m = Signature(tuple(sorted(labels, reverse=True)))
    assert abs(np.conj(character(m, psi)) - character(dual(m), psi)) < 1e-9


@given(angles, st.integers(-3, 3))
def test_determinant_shift(psi, k):
    n = len(psi)
    m = Signature(tuple(range(n, 0, -1)))
    lhs = character(shift_all(m, k), psi)
    rhs = np.exp(1j * k * sum(psi)) * character(m, psi)
    assert abs(lhs - rhs) < 1e-9


def test_orthogonality_n2():
    sigs = list(enumerate_signatures(2, 3))
    worst = max(orthogonality_residual(a, b, 2) for a in sigs[::3] for b in sigs[::2])
    assert worst < 1e-6
