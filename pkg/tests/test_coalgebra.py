
import pytest
from hypothesis import given, settings

from dirac_linfty import catalog
from dirac_linfty.coalgebra import (coproduct, exterior_space, mc_pushforward, set_partitions,
                                    verify_jacobi, verify_morphism)
from dirac_linfty.derived import exp_r, structure_of
from dirac_linfty.mc import map_to_two_form, mc_transport
from dirac_linfty.scalars import truncation

from strategies import skew
from test_mc import formal_skew

BELL = [1, 1, 2, 5, 15, 52, 203]


@pytest.mark.parametrize("n", range(7))
def test_set_partitions_are_bell(n):
    parts = list(set_partitions(n))
    assert len(parts) == BELL[n]
    assert len({tuple(p) for p in parts}) == BELL[n]


def test_coproduct_has_all_unshuffles():
    space = exterior_space(3)
    w = (0, 1, 2)  # distinct 1-forms, even after the shift
    assert len(coproduct(space, {w: 1})) == 8


@settings(max_examples=10)
@given(skew(2))
def test_exp_r_inverse(E):
    n = 2
    neg = [[-x for x in r] for r in E]
    f, g = exp_r(E, n, bound=6), exp_r(neg, n, bound=6)
    space = f.space
    for k in range(4):
        for w in space.words(k):
            assert g.apply(f.apply({w: 1})) == {w: 1}


def test_morphism_certificate_detects_wrong_target():
    spec = catalog.builtin("nonabelian2_double")
    sp = spec.splitting("g", "gstar")
    src = structure_of(sp)
    E = [[0, 1], [-1, 0]]
    good = structure_of(spec.splitting("g", "graph_r"))
    f = exp_r(E, 2, bound=5)
    assert verify_morphism(f, src.m, good.m, 4).passed
    assert not verify_morphism(f, src.m, src.m, 4).passed


@pytest.mark.parametrize("name,m,l", [("sl2_double_diag", "diag", "anti"),
                                      ("heisenberg_double", "curved_m", "curved_l")])
def test_catalog_structures_satisfy_jacobi(name, m, l):
    st = structure_of(catalog.builtin(name).splitting(m, l))
    assert verify_jacobi(st.m, 4).passed


@settings(max_examples=10)
@given(formal_skew(3), skew(3))
def test_pushforward_matches_series(W, E):
    with truncation(6):
        f = exp_r(E, 3, bound=8)
        assert mc_pushforward(f, map_to_two_form(W), 6) == map_to_two_form(mc_transport(E, W, 6))
