from fractions import Fraction

import pytest
from hypothesis import given, settings

from dirac_linfty import catalog
from dirac_linfty.coalgebra import skew_sign
from dirac_linfty.derived import (BVTorsor, check_almost_bv_torsor, extract_brackets, iota_forms,
                                  jacobiator, jacobiator_ad, r_epsilon_value, structure_of,
                                  verify_gauge_equivariance)

from strategies import skew

SL2 = catalog.builtin("sl2_double_diag")


def test_iota_of_bivector_sign_golden():
    # iota_{m1 ^ m2} (theta1 ^ theta2) = iota_2 iota_1 (theta1 ^ theta2) = +1
    E = [[0, 1], [-1, 0]]
    assert iota_forms(E, {0b11: 1}, 2) == {0: 1}
    assert iota_forms(E, {0b01: 1}, 2) == {}


def test_r_epsilon_golden():
    # R(a, b) = iota(ab) - iota(a) b - a iota(b) on 1-forms reduces to iota(a ^ b)
    E = [[0, 1], [-1, 0]]
    assert r_epsilon_value(E, 0b01, 0b10, 2) == {0: 1}
    # 1-forms are odd in A[2], so swapping them flips the sign
    assert r_epsilon_value(E, 0b10, 0b01, 2) == {0: -1}


@pytest.mark.parametrize("m,l", [("diag", "anti"), ("anti", "diag")])
def test_torsor_order_bounds(m, l):
    assert check_almost_bv_torsor(BVTorsor.from_splitting(SL2.splitting(m, l))).passed


def test_sl2_brackets_golden():
    st = structure_of(SL2.splitting("diag", "anti"))
    e, h, f = ({1 << i: 1} for i in range(3))
    assert not st.curvature()
    assert st.ell(e, h, f) == {0: Fraction(-1, 16)}
    assert st.bracket(e, h, f) == {0: Fraction(1, 16)}
    assert st.ell(e) == {k: -v for k, v in st.bracket(e).items()}
    assert not st.bracket(e, f)


def test_sl2_bar_side_is_curved():
    st = structure_of(SL2.splitting("anti", "diag"))
    assert st.curvature() == {7: 8}


def test_skew_sign_relation():
    # l_n = (-1)^n (-1)^{sum (n - i)|v_i|} m_n
    assert skew_sign([1]) == -1
    assert skew_sign([0, 0, 0]) == -1


def test_jacobiator_routes_on_noncentral_operator():
    import random
    from dirac_linfty.suite import random_cubic_torsor
    rng = random.Random(7)
    T = random_cubic_torsor(3, rng)
    st = extract_brackets(T)
    for k in range(4):
        for w in list(st.space.words(k))[:30]:
            assert jacobiator(st, w) == jacobiator_ad(T, w)


@settings(max_examples=4)
@given(skew(2))
def test_gauge_equivariance_random(E):
    T = BVTorsor.from_splitting(catalog.builtin("nonabelian2_double").splitting("g", "gstar"))
    assert verify_gauge_equivariance(T, E, 3).passed
