import warnings
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from steinsahi import detid


def _fr_list(n, lo=-30, hi=30):
    return st.lists(st.fractions(min_value=lo, max_value=hi, max_denominator=9), min_size=n, max_size=n, unique=True)


@given(st.integers(1, 5).flatmap(lambda n: st.tuples(_fr_list(n, 1, 30), _fr_list(n, 1, 30))))
def test_cauchy_exact(xy):
    x, y = xy
    assert detid.exact_det(detid.cauchy_matrix(x, y)) == detid.cauchy_rhs(x, y)


@given(st.integers(1, 5).flatmap(lambda n: st.tuples(_fr_list(n, 1, 30), _fr_list(n - 1, 1, 30))))
def test_bordered_exact(xb):
    x, b = xb
    assert detid.exact_det(detid.bordered_cauchy_matrix(x, b)) == detid.bordered_cauchy_rhs(x, b)


@given(st.integers(1, 5).flatmap(lambda n: st.tuples(_fr_list(n, 1, 30), _fr_list(n - 1), _fr_list(n - 1, 31, 60))))
def test_krattenthaler_exact(xab):
    x, a, b = xab
    assert detid.exact_det(detid.krattenthaler_matrix(x, a, b)) == detid.krattenthaler_rhs(x, a, b)


def test_krattenthaler_collision_vanishes():
    x = [Fraction(1), Fraction(3), Fraction(9)]
    a, b = [Fraction(2), Fraction(5)], [Fraction(2), Fraction(11)]
    assert detid.exact_det(detid.krattenthaler_matrix(x, a, b)) == 0
    assert detid.krattenthaler_rhs(x, a, b) == 0


@pytest.mark.parametrize("kind", ["cauchy", "bordered", "krattenthaler"])
@pytest.mark.parametrize("n", [1, 2, 4, 6])
def test_batch_residuals(kind, n):
    r = detid.batch_residuals(kind, n, 300, np.random.default_rng(n))
    assert r.max() < 1e-9


def test_float_residual_objects():
    r = detid.cauchy_residual([1.0, 2.0, 4.0], [0.5, 3.0, 7.0])
    assert float(r) < 1e-13 and r.condition >= 1


def test_singular_inputs():
    with pytest.raises(detid.SingularInputError):
        detid.cauchy_residual([1.0, 1.0], [2.0, 3.0])
    with pytest.raises(detid.SingularInputError):
        detid.cauchy_matrix([1.0, 2.0], [-1.0, 3.0])
    with pytest.raises(ValueError):
        detid.bordered_cauchy_matrix([1.0, 2.0], [1.0, 2.0])


def test_ill_conditioned_warning():
    with pytest.warns(detid.IllConditionedWarning):
        detid.cauchy_residual([1.0, 1.0 + 1e-7, 2.0], [1.0, 1.0 + 1e-7, 3.0])


def test_equilibrated_det_matches_numpy():
    rng = np.random.default_rng(0)
    A = rng.standard_normal((20, 4, 4)) * 10.0 ** rng.integers(-30, 30, (20, 4, 1))
    ref = np.linalg.det(A)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        got = detid.equilibrated_det(A)
    assert np.allclose(got, ref, rtol=1e-10, atol=0)


def test_degeneration_to_bordered():
    x, b = [1.0, 2.5, 4.0], [0.7, 3.1]
    target = detid.bordered_cauchy_rhs(x, b)
    ys = (1e3, 1e6)
    vals = [y * detid.cauchy_rhs(x, [y] + b) for y in ys]
    lim = (ys[1] * vals[1] - ys[0] * vals[0]) / (ys[1] - ys[0])
    assert abs(lim - target) < 1e-6 * abs(target)
