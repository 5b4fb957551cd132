import pytest
from hypothesis import given, strategies as st

from steinsahi.signatures import (
    Signature,
    UnipotentClass,
    classify_unipotent,
    dimension,
    dual,
    enumerate_signatures,
    make_signature,
    maya_diagram,
    omega_support,
    shift_all,
    signature_array,
)

signatures = st.integers(1, 6).flatmap(
    lambda n: st.lists(st.integers(-20, 20), min_size=n, max_size=n, unique=True)
).map(lambda xs: Signature(tuple(sorted(xs, reverse=True))))


def test_make_signature():
    assert make_signature((1, 0)).labels == (1, 0)
    assert make_signature((3, 1, -2)).n == 3
    with pytest.raises(ValueError):
        make_signature((0, 0))
    with pytest.raises(ValueError):
        make_signature((0, 1))


@pytest.mark.parametrize("m, expected", [((1, 0), (1, 0)), ((2, 1, 0), (2, 1, 0)), ((3, 0), (1, -2))])
def test_dual_examples(m, expected):
    assert dual(m).labels == expected


@pytest.mark.parametrize("m, d", [((1, 0), 1), ((2, 1, 0), 1), ((2, 0), 2), ((3, 1, -1), 8), ((5,), 1)])
def test_dimension_examples(m, d):
    assert dimension(m) == d


@pytest.mark.parametrize("m, k, expected", [((1, 0), 2, (3, 2)), ((1, 0), 0, (1, 0)), ((0, -3), -1, (-1, -4))])
def test_shift_all(m, k, expected):
    assert shift_all(m, k).labels == expected


@given(signatures)
def test_dual_involution_and_dimension(m):
    assert dual(dual(m)) == m
    assert dimension(dual(m)) == dimension(m)
    assert isinstance(dimension(m), int) and dimension(m) >= 1


@given(signatures, st.integers(-10, 10))
def test_dimension_shift_invariant(m, k):
    assert dimension(shift_all(m, k)) == dimension(m)


@pytest.mark.parametrize(
    "m, alpha, expected",
    [((0, -1), 0, UnipotentClass.z(1)), ((2, 1), 1, UnipotentClass.tail()), ((3, 0), 1, UnipotentClass.z(0))],
)
def test_classify_unipotent_examples(m, alpha, expected):
    assert classify_unipotent(m, alpha) == expected


def test_classify_unipotent_range():
    with pytest.raises(ValueError):
        classify_unipotent((1, 0), 2)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_unipotent_partition(n):
    for alpha in range(n):
        for m in enumerate_signatures(n, 4):
            c = classify_unipotent(m, alpha)
            if alpha == 0:
                assert not c.is_tail
            if not c.is_tail:
                assert 0 <= c.j <= n - alpha
                assert sum(x < 0 for x in m) == c.j
                assert sum(x >= alpha for x in m) == n - alpha - c.j


@pytest.mark.parametrize(
    "m, sigma, expected", [((1, 0), -3.5, True), ((2, 0), -1, True), ((0, -1), -1, False), ((1, -1), -3.5, False)]
)
def test_omega_support(m, sigma, expected):
    assert omega_support(m, sigma) is expected


def test_omega_support_alpha_two():
    assert omega_support((5, 1, 0), -1)
    assert not omega_support((5, 2, 0), -1)
    assert omega_support((2, 1, 0), 0)
    with pytest.raises(ValueError):
        omega_support((1, 0), -0.5)


def test_enumeration_is_lexicographic_and_complete():
    sigs = list(enumerate_signatures(2, 2))
    assert len(sigs) == 10
    assert sigs == sorted(sigs)
    assert signature_array(3, 3).shape == (35, 3)


def test_maya_diagram():
    art = maya_diagram((2, 0), -1, 3)
    assert art.splitlines()[0] == "[ ][#][ ][#][ ]"
