import os
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dirac_linfty import catalog
from dirac_linfty.catalog import (BialgebraSpec, ce_differential, cybe_check, drinfeld_double,
                                  eta_inverse, schouten_bracket)
from dirac_linfty.courant import LagrangianSplitting, graph_lagrangian, is_subalgebra
from dirac_linfty.graded import add_into
from dirac_linfty.report import ConstructionError
from dirac_linfty.specfile import dumps

from strategies import rationals

ALGEBRAS = [catalog.sl2(), catalog.heisenberg(), catalog.nonabelian2()]


def multivector(n, degree):
    ms = [m for m in range(1 << n) if bin(m).count("1") == degree]
    return st.lists(rationals, min_size=len(ms), max_size=len(ms)).map(
        lambda cs: {m: c for m, c in zip(ms, cs) if c})


@settings(max_examples=30)
@given(st.sampled_from(ALGEBRAS).flatmap(lambda g: st.tuples(
    st.just(g), *(st.integers(1, g.dim).flatmap(lambda p: multivector(g.dim, p).map(lambda v: (p, v)))
                  for _ in range(3)))))
def test_schouten_graded_jacobi(data):
    """``[a, [b, c]] = [[a, b], c] + (-1)^{(p-1)(q-1)} [b, [a, c]]``."""
    g, (p, a), (q, b), (_, c) = data
    lhs = schouten_bracket(g, a, schouten_bracket(g, b, c))
    rhs = dict(schouten_bracket(g, schouten_bracket(g, a, b), c))
    add_into(rhs, schouten_bracket(g, b, schouten_bracket(g, a, c)), (-1) ** ((p - 1) * (q - 1)))
    assert lhs == rhs


@given(st.sampled_from(ALGEBRAS).flatmap(
    lambda g: st.tuples(st.just(g), multivector(g.dim, 1), multivector(g.dim, 1))))
def test_schouten_on_vectors_is_lie_bracket(data):
    g, a, b = data
    want = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            add_into(want, g.basis_bracket(ma.bit_length() - 1, mb.bit_length() - 1), ca * cb)
    assert schouten_bracket(g, a, b) == want


@pytest.mark.parametrize("g", ALGEBRAS, ids=lambda g: g.name)
def test_ce_differential_squares_to_zero(g):
    d = ce_differential(g)
    for w in range(1 << g.dim):
        assert not d(d({w: 1}))


def test_eta_inverse_sl2_golden():
    assert eta_inverse(catalog.sl2()) == {0b111: Fraction(1, 2)}


def test_r_st_classification():
    g = catalog.sl2()
    r = {0b101: catalog.R_ST_SCALE}
    res = cybe_check(g, r, catalog.R_ST_ETA_SCALE)
    assert res.kind == "quasi-triangular" and res.ratio == catalog.R_ST_ETA_SCALE
    assert cybe_check(g, r, 1).kind == "neither"
    assert cybe_check(catalog.heisenberg(), {0b101: 1}).kind == "triangular"


@pytest.mark.parametrize("c,expected", [(Fraction(1, 4), True), (Fraction(-1, 4), True),
                                        (Fraction(1, 2), False), (Fraction(1), False),
                                        (Fraction(1, 8), False)])
def test_graph_of_scaled_ef_is_subalgebra_only_at_quarter(c, expected):
    g = catalog.sl2()
    d, diag, anti = catalog.cartan_double(g)
    sp = LagrangianSplitting(d, diag, anti)  # graph_lagrangian builds graph(E) over anti
    E = [[0, 0, c], [0, 0, 0], [-c, 0, 0]]
    assert is_subalgebra(d, graph_lagrangian(sp, E).l_raw) is expected


def test_bridge_rejects_wrong_scale():
    g = catalog.sl2()
    s = 2 * catalog.R_ST_SCALE
    with pytest.raises(ConstructionError):
        catalog.quasitriangular_bridge(g, [[0, 0, s], [0, 0, 0], [-s, 0, 0]])


def test_bridge_accepts_negated_r():
    s = -catalog.R_ST_SCALE
    assert catalog.quasitriangular_bridge(catalog.sl2(), [[0, 0, s], [0, 0, 0], [-s, 0, 0]]).passed


def test_heisenberg_triangular_formality():
    assert catalog.triangular_formality(catalog.heisenberg(), [[0, 0, 1], [0, 0, 0], [-1, 0, 0]]).passed


def test_coboundary_double_is_quadratic():
    b = BialgebraSpec.coboundary(catalog.sl2(), {0b101: catalog.R_ST_SCALE})
    assert b.validate().passed
    d, gvec, gstar = drinfeld_double(b)
    assert is_subalgebra(d, gvec) and is_subalgebra(d, gstar)


def test_broken_bialgebra_rejected():
    g = catalog.heisenberg()
    with pytest.raises(ConstructionError):
        drinfeld_double(BialgebraSpec(g, [(0, 1, 2, Fraction(1))]))


@pytest.mark.parametrize("name", catalog.catalog_names())
def test_regeneration_matches_shipped_file(name):
    path = os.path.join(catalog.DATA_DIR, catalog._file_name(name))
    with open(path, encoding="utf-8") as fh:
        assert fh.read() == dumps(catalog.generate(name))


def test_unknown_entry():
    with pytest.raises(KeyError):
        catalog.builtin("so3_double")
    assert catalog.builtin("abelian(4)").dim == 8
