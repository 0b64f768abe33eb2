
from hypothesis import given, strategies as st

from dirac_linfty.graded import (GradedBasis, ExteriorElement, contract_raw, enumerate_shuffles,
                                 koszul_sign, mask_of, wedge_raw, word_of)

from strategies import forms, masks

N = 5
ODD = (1 << N) - 1


def _brute_sign(word):
    """Sign of sorting a word of odd generators, by counting inversions."""
    inv = sum(1 for i in range(len(word)) for j in range(i + 1, len(word)) if word[i] > word[j])
    return -1 if inv % 2 else 1


@given(st.permutations(range(4)), st.lists(st.integers(0, 3), min_size=4, max_size=4))
def test_koszul_sign_counts_odd_inversions(sigma, degs):
    want = 1
    for a in range(4):
        for b in range(a + 1, 4):
            if sigma[a] > sigma[b] and degs[sigma[a]] % 2 and degs[sigma[b]] % 2:
                want = -want
    assert koszul_sign(degs, sigma) == want


def test_shuffle_counts():
    assert len(enumerate_shuffles([2, 1])) == 3
    assert len(enumerate_shuffles([2, 2, 1])) == 30
    assert all(list(s[:2]) == sorted(s[:2]) for s in enumerate_shuffles([2, 2]))


@given(masks(N))
def test_mask_word_round_trip(m):
    assert mask_of(word_of(m)) == m


@given(masks(N), masks(N))
def test_wedge_sign_matches_inversion_count(a, b):
    v = wedge_raw({a: 1}, {b: 1}, ODD)
    if a & b:
        assert v == {}
    else:
        assert v == {a | b: _brute_sign(word_of(a) + word_of(b))}


@given(forms(N), forms(N), forms(N))
def test_wedge_associative(a, b, c):
    assert wedge_raw(wedge_raw(a, b, ODD), c, ODD) == wedge_raw(a, wedge_raw(b, c, ODD), ODD)


@given(masks(N), masks(N))
def test_graded_commutativity(a, b):
    s = (-1) ** (bin(a).count("1") * bin(b).count("1"))
    assert wedge_raw({a: 1}, {b: 1}, ODD) == {k: s * v for k, v in wedge_raw({b: 1}, {a: 1}, ODD).items()}


@given(st.integers(0, N - 1), forms(N), forms(N))
def test_contraction_is_odd_derivation(i, a, b):
    lhs = contract_raw(i, wedge_raw(a, b, ODD), ODD)
    rhs = dict(wedge_raw(contract_raw(i, a, ODD), b, ODD))
    for m, c in a.items():
        sgn = -1 if bin(m).count("1") % 2 else 1
        for k, v in wedge_raw({m: c}, contract_raw(i, b, ODD), ODD).items():
            rhs[k] = rhs.get(k, 0) + sgn * v
    assert lhs == {k: v for k, v in rhs.items() if v}


def test_exterior_element_generators_anticommute():
    base = GradedBasis.odd(["x", "y"])
    x = ExteriorElement.generator(base, "x")
    y = ExteriorElement.generator(base, "y")
    assert x.wedge(y) == -(y.wedge(x))
    assert not x.wedge(x)


def test_shifted_degrees_change_parity():
    base = GradedBasis.odd(3).shifted(1)
    assert base.parities == (0, 0, 0)
    assert koszul_sign([d for d in (0, 0, 0)], (2, 1, 0)) == 1
