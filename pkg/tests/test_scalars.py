from fractions import Fraction

import pytest
from hypothesis import given

from dirac_linfty.scalars import (Series, format_scalar, parse_rational, parse_scalar, t,
                                  truncation, valuation)

from strategies import rationals, series


@given(series(), series(), series())
def test_series_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a


@given(series(min_valuation=0).filter(lambda s: s[0] != 0))
def test_unit_inverse(a):
    assert a * a.inverse() == Series([1], a.order)


def test_geometric_series_golden():
    with truncation(5):
        assert (1 - t()).inverse() == Series([1] * 6, 5)
        assert (1 + t()) ** 3 == Series([1, 3, 3, 1], 5)


def test_truncation_drops_high_terms():
    with truncation(3):
        assert t() ** 4 == 0
        assert valuation(t() ** 3) == 3


@given(rationals)
def test_rational_round_trip(q):
    assert parse_rational(format_scalar(q)) == q


def test_series_rendering_is_exact():
    with truncation(4):
        assert format_scalar(Fraction(1, 3) * t() - 2 * t() ** 3) == "1/3*t - 2*t^3"
        assert parse_scalar(["0", "1/3", "0", "-2"]) == Fraction(1, 3) * t() - 2 * t() ** 3


@pytest.mark.parametrize("bad", ["0.5", "1e3", 0.5, True])
def test_floats_rejected(bad):
    with pytest.raises((ValueError, TypeError)):
        parse_rational(bad)
