from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dirac_linfty import catalog
from dirac_linfty.courant import (NIJENHUIS_SCALE, SpinorModule, build_hamiltonian,
                                  derived_bracket_failures, gauge_conjugate, gauge_conjugate_direct,
                                  graph_lagrangian, minimal_order, nijenhuis_expected, nijenhuis_form,
                                  square_scalar, validate_double)
from dirac_linfty.derived import BVTorsor

from strategies import rationals, skew

SL2 = catalog.builtin("sl2_double_diag")
HEIS = catalog.builtin("heisenberg_double")


@pytest.mark.parametrize("name", catalog.catalog_names())
def test_catalog_doubles_validate(name):
    assert catalog.builtin(name).validate().passed


@settings(max_examples=25)
@given(st.lists(rationals, min_size=6, max_size=6), st.lists(rationals, min_size=6, max_size=6))
def test_clifford_relation(u, v):
    """``[g(u), g(v)] = 2 <u, v>`` with the half-normalized splitting."""
    sp = SL2.splitting("diag", "anti")
    sm = SpinorModule(sp)
    lhs = sm.gamma(u).commutator(sm.gamma(v))
    assert lhs.is_scalar() == 2 * sp.d.pair(u, v) or (not lhs and not sp.d.pair(u, v))


@pytest.mark.parametrize("spec,m,l", [(SL2, "diag", "anti"), (SL2, "anti", "diag"),
                                      (HEIS, "g", "gstar"), (HEIS, "curved_m", "curved_l")])
def test_hamiltonian_reproduces_bracket(spec, m, l):
    sp = spec.splitting(m, l)
    assert derived_bracket_failures(sp, build_hamiltonian(sp)) == []


@pytest.mark.parametrize("spec,m,l", [(SL2, "anti", "diag"), (HEIS, "curved_m", "curved_l")])
def test_nijenhuis_piece_matches_cubic_of_m(spec, m, l):
    sp = spec.splitting(m, l)
    got = nijenhuis_form(build_hamiltonian(sp))
    assert got and got == nijenhuis_expected(sp)


def test_nijenhuis_scale_golden():
    # heisenberg curved M = (x, y, z*): <[x, y], z*> = 1/2, so N = -2 * 1/2 on x^y^z*
    sp = HEIS.splitting("curved_m", "curved_l")
    assert NIJENHUIS_SCALE == -2
    assert nijenhuis_form(build_hamiltonian(sp)) == {7: -1}


def test_square_of_sl2_operator_vanishes():
    assert square_scalar(build_hamiltonian(SL2.splitting("diag", "anti"))) == 0


@pytest.mark.parametrize("m,l", [("diag", "anti"), ("anti", "diag")])
def test_piece_orders(m, l):
    T = BVTorsor.from_splitting(SL2.splitting(m, l))
    for deg in (-3, -1, 1, 3):
        assert minimal_order(T.piece(deg)) <= (3 - deg) // 2


@settings(max_examples=15)
@given(skew(3))
def test_gauge_conjugation_two_routes(E):
    H = build_hamiltonian(SL2.splitting("anti", "diag"))
    assert gauge_conjugate(H, E) == gauge_conjugate_direct(H, E)


@settings(max_examples=15)
@given(skew(3))
def test_graph_operator_is_gauge_conjugate(E):
    sp = HEIS.splitting("g", "gstar")
    H = build_hamiltonian(sp)
    neg = [[-x for x in r] for r in E]
    assert build_hamiltonian(graph_lagrangian(sp, E)) == gauge_conjugate(H, neg)


def test_broken_jacobi_detected():
    d = SL2.algebra().with_constant(0, 1, 0, Fraction(3))
    rep = validate_double(d)
    assert not rep.passed
    assert any(c.name == "jacobi" and not c.passed for c in rep.checks)
