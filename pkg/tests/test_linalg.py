from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from dirac_linfty import linalg
from dirac_linfty.scalars import truncation

from strategies import rationals, series


def square(n, entries=rationals):
    return st.lists(st.lists(entries, min_size=n, max_size=n), min_size=n, max_size=n)


@given(square(3))
def test_inverse_or_singular(a):
    try:
        inv = linalg.inverse(a)
    except linalg.SingularMatrixError:
        assert linalg.rank(a) < 3
        return
    assert linalg.equal(linalg.mul(a, inv), linalg.identity(3))


@given(square(3))
def test_rank_nullity(a):
    ns = linalg.nullspace(a)
    assert linalg.rank(a) + len(ns) == 3
    for v in ns:
        assert all(x == 0 for x in linalg.mul_vec(a, v))


@given(square(2, series(order=5, min_valuation=1)))
def test_power_series_inverse(x):
    with truncation(5):
        one_minus = linalg.sub(linalg.identity(2), x)
        inv = linalg.power_series_inverse(x, 5)
        assert linalg.equal(linalg.mul(one_minus, inv), linalg.identity(2))


def test_solve_golden():
    a = [[Fraction(2), Fraction(1)], [Fraction(1), Fraction(3)]]
    assert linalg.solve(a, [[1], [2]]) == [[Fraction(1, 5)], [Fraction(3, 5)]]


def test_singular_raises():
    with pytest.raises(linalg.SingularMatrixError):
        linalg.inverse([[1, 2], [2, 4]])
