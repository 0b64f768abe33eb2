import json

import pytest
from hypothesis import given, strategies as st

from dirac_linfty import catalog
from dirac_linfty.specfile import AlgebraSpec, SpecError, dumps, from_dict, loads, to_dict

from strategies import rationals


@pytest.mark.parametrize("name", catalog.catalog_names())
def test_catalog_round_trip_byte_identical(name):
    text = dumps(catalog.builtin(name))
    assert dumps(loads(text)) == text


@st.composite
def specs(draw):
    n = draw(st.integers(1, 4))
    basis = [f"b{i}" for i in range(n)]
    idx = st.integers(0, n - 1)
    brackets = draw(st.lists(st.tuples(idx, idx, idx, rationals), max_size=5))
    gram = draw(st.lists(st.lists(rationals, min_size=n, max_size=n), min_size=n, max_size=n))
    vec = st.lists(rationals, min_size=n, max_size=n)
    splittings = draw(st.dictionaries(st.sampled_from(["a", "b", "c"]), st.lists(vec, max_size=2)))
    consts = draw(st.dictionaries(st.sampled_from(["k1", "k2"]), rationals))
    return AlgebraSpec("random", basis, brackets, gram, splittings=splittings, constants=consts,
                       notes=draw(st.text(max_size=10)))


@given(specs())
def test_random_round_trip(spec):
    text = dumps(spec)
    again = loads(text)
    assert dumps(again) == text
    assert again.gram == spec.gram and again.brackets == [tuple(b) for b in spec.brackets]


def _doc():
    return to_dict(catalog.builtin("abelian(1)"))


def test_float_rejected():
    text = dumps(catalog.builtin("abelian(1)")).replace('"1/2"', "0.5", 1)
    with pytest.raises(SpecError):
        loads(text)


@pytest.mark.parametrize("mutate", [
    lambda d: d.update(extra=1),
    lambda d: d.update(schema_version=2),
    lambda d: d.pop("gram"),
    lambda d: d.update(brackets=[[0, 5, 0, "1"]]),
    lambda d: d.update(pairs=[["x", "y", "nope"]]),
    lambda d: d.update(dim=3),
    lambda d: d["gram"][0].__setitem__(0, "1/0"),
])
def test_malformed_documents(mutate):
    d = _doc()
    mutate(d)
    with pytest.raises(SpecError):
        from_dict(d)


def test_rationals_are_strings():
    doc = json.loads(dumps(catalog.builtin("sl2_double_diag")))
    assert doc["gram"][0][0] == "0" and all(isinstance(x, str) for r in doc["gram"] for x in r)


def test_unknown_splitting_selector():
    with pytest.raises(KeyError):
        catalog.builtin("abelian(2)").splitting("x", "nope")
