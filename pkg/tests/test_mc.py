from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dirac_linfty import catalog, linalg
from dirac_linfty.courant import graph_lagrangian
from dirac_linfty.derived import structure_of
from dirac_linfty.mc import (complex_blocks, difference_bracket_identity, graph_map_of,
                             graph_transform, graph_transform_closed, graph_vectors,
                             inverse_transport_check, is_dirac_graph, map_to_two_form, mc_check,
                             mc_equivalence_certificate, mc_seed, mc_transport,
                             mc_transport_inverse_form, solve_mc_order_by_order, two_form_to_map)
from dirac_linfty.report import GeometricError
from dirac_linfty.scalars import t, truncation

from strategies import series, skew

ORDER = 6
HEIS = catalog.builtin("heisenberg_double")
SL2 = catalog.builtin("sl2_double_diag")


def formal_skew(n):
    return skew(n, series(ORDER, min_valuation=1))


def formal_square(n):
    s = series(ORDER, min_valuation=1)
    return st.lists(st.lists(s, min_size=n, max_size=n), min_size=n, max_size=n)


@given(skew(3))
def test_form_map_round_trip(W):
    assert two_form_to_map(map_to_two_form(W), 3) == W


@settings(max_examples=20)
@given(formal_skew(3), skew(3))
def test_graph_transform_routes_agree(W, E):
    sp = HEIS.splitting("g", "gstar")
    with truncation(ORDER):
        a = graph_transform(W, E, sp)
        assert a == graph_transform(W, E) == graph_transform_closed(W, E) == mc_transport(E, W, ORDER)


@settings(max_examples=20)
@given(skew(3), skew(3))
def test_rational_graph_transform_is_intersection(W, E):
    sp = HEIS.splitting("g", "gstar")
    try:
        Wp = graph_transform(W, E, sp)
    except ArithmeticError:
        return
    target = graph_lagrangian(sp, E)
    # graph(W) over M in (M, L) and graph(W') over M in (M, L') are the same subspace
    assert linalg.rank(graph_vectors(sp, W) + graph_vectors(target, Wp)) == 3


@settings(max_examples=30)
@given(skew(3))
def test_no_dirac_graph_over_curved_heisenberg_m(W):
    """The cubic form is the constant 1/2 on every graph over (x, y, z*)."""
    sp = HEIS.splitting("curved_m", "curved_l")
    v = graph_vectors(sp, W)
    assert sp.d.cubic(v[0], v[1], v[2]) == Fraction(1, 2)
    assert not is_dirac_graph(sp, W)


def test_catalog_graphs_are_dirac():
    # graph(r_st) is a graph over the anti-diagonal, transverse to the diagonal
    sp = SL2.splitting("anti", "diag")
    assert is_dirac_graph(sp, graph_map_of(sp, SL2.splittings["graph_rst"]))


def test_seed_is_mc_and_transports():
    sp = SL2.splitting("diag", "anti")
    with truncation(ORDER):
        W = mc_seed(sp, sp.m, [1, 0, -1, 0, 2, 0])
        assert mc_check(structure_of(sp, 3), map_to_two_form(W)).passed
        E = [[0, Fraction(1, 2), 0], [Fraction(-1, 2), 0, 1], [0, -1, 0]]
        assert mc_equivalence_certificate(sp, W, E, ORDER, 3).passed


@pytest.mark.parametrize("spec,m,l", [(SL2, "diag", "anti"), (HEIS, "g", "gstar")])
def test_order_by_order_solution_is_mc(spec, m, l):
    st_ = structure_of(spec.splitting(m, l), 3)
    pairs = [(0, 1), (0, 2), (1, 2)]
    cols = [st_.m.component(1, ((1 << i) | (1 << j),)) for i, j in pairs]
    closed = linalg.nullspace([[c.get(7, 0) for c in cols]])
    assert closed
    W1 = linalg.zeros(3)
    for (i, j), x in zip(pairs, closed[0]):
        W1[i][j], W1[j][i] = x, -x
    with truncation(4):
        W = solve_mc_order_by_order(st_.m, 3, W1, 4)
        assert mc_check(st_, map_to_two_form(W)).passed
        assert [[x[1] if hasattr(x, "coeffs") else 0 for x in r] for r in W] == W1


def test_non_terminating_transport_raises():
    with pytest.raises(GeometricError):
        mc_transport([[0, 1], [-1, 0]], [[0, 1], [-1, 0]], 4)


@settings(max_examples=15)
@given(st.integers(1, 2).flatmap(lambda k: st.tuples(formal_square(k), formal_square(k), formal_square(k))))
def test_complex_blocks_identities(mats):
    phi, phibar, rho = mats
    with truncation(ORDER):
        cb = complex_blocks(phi, phibar)
        assert cb.report.passed
        assert inverse_transport_check(cb, rho).passed


def test_inverse_form_scalar_golden():
    with truncation(4):
        phi, phibar, rho = [[t()]], [[2 * t()]], [[3 * t()]]
        cb = complex_blocks(phi, phibar)
        eps = -phibar[0][0] * (1 - phi[0][0] * phibar[0][0]).inverse()
        assert cb.eps == [[eps]]
        B = mc_transport_inverse_form(rho, cb.eps)
        assert B == [[rho[0][0] * (1 + rho[0][0] * eps).inverse()]]


@pytest.mark.parametrize("spec,keys", [(SL2, ("anti", "diag", "anti_graph")),
                                       (HEIS, ("curved_m", "curved_l", "curved_graph")),
                                       (SL2, ("diag", "anti", "graph_rst"))])
def test_difference_bracket_identity(spec, keys):
    from dirac_linfty.courant import bivector_between
    sp = spec.splitting(keys[0], keys[1])
    E = bivector_between(sp, spec.splittings[keys[2]])
    rep = difference_bracket_identity(structure_of(sp, 3),
                                      structure_of(spec.splitting(keys[0], keys[2]), 3), E)
    assert rep.passed


def test_difference_bracket_identity_detects_mismatch():
    sp = SL2.splitting("anti", "diag")
    E = [[0, 1, 0], [-1, 0, 0], [0, 0, 0]]
    other = graph_lagrangian(sp, [[0, 2, 0], [-2, 0, 0], [0, 0, 0]])
    assert not difference_bracket_identity(structure_of(sp, 3), structure_of(other, 3), E).passed
