"""Compiled and pure-Python sign kernels agree on random inputs."""

import pytest
from hypothesis import given, strategies as st

from dirac_linfty import _kernels_py, kernels

compiled = pytest.importorskip("dirac_linfty._kernels")

N = 8
mask = st.integers(0, (1 << N) - 1)
parity = st.lists(st.integers(0, 1), min_size=10, max_size=10)


@given(mask, mask, mask)
def test_merge_sign(a, b, odd):
    b &= ~a
    assert compiled.merge_sign(a, b, odd) == _kernels_py.merge_sign(a, b, odd)


@given(st.integers(0, N - 1), mask, mask)
def test_contract_sign(i, m, odd):
    assert compiled.contract_sign(i, m, odd) == _kernels_py.contract_sign(i, m, odd)


@given(st.dictionaries(mask, st.integers(-3, 3), max_size=6),
       st.dictionaries(mask, st.integers(-3, 3), max_size=6), mask)
def test_wedge_dicts(a, b, odd):
    assert compiled.wedge_dicts(a, b, odd) == _kernels_py.wedge_dicts(a, b, odd)


@given(st.lists(st.integers(0, 9), max_size=7), parity)
def test_sort_sign(seq, par):
    assert compiled.sort_sign(seq, par) == _kernels_py.sort_sign(seq, par)


@given(st.permutations(range(6)), parity)
def test_perm_sign(perm, par):
    assert compiled.perm_sign(par[:6], list(perm)) == _kernels_py.perm_sign(par[:6], list(perm))


def test_backend_selected():
    assert kernels.BACKEND in ("cython", "python")


def test_fallback_selected_by_environment():
    import json
    import os
    import subprocess
    import sys
    code = ("import json, dirac_linfty; from dirac_linfty import catalog; "
            "from dirac_linfty.derived import structure_of; "
            "st = structure_of(catalog.builtin('sl2_double_diag').splitting('anti', 'diag')); "
            "print(json.dumps([dirac_linfty.BACKEND, "
            "{str(w): str(v) for w in st.space.words(2) for v in [st.m.component(2, w)] if v}]))")
    out = {}
    for pure in ("1", ""):
        env = dict(os.environ, DIRAC_LINFTY_PURE=pure)
        proc = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True,
                              check=True)
        out[pure] = json.loads(proc.stdout)
    assert out["1"][0] == "python"
    assert out[""][0] == kernels.BACKEND
    assert out["1"][1] == out[""][1] and out["1"][1]
