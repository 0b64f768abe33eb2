"""Acceptance gate: one test per criterion, exact equality throughout.

Each test prints a single ``criterion N: PASS|FAIL`` line.  Also runnable as a
script: ``python tests/test_acceptance.py [N ...]``.
"""

import sys
import time

import pytest

from dirac_linfty import suite


def _line(n, rep, elapsed):
    failed = [c.name for c in rep.failures()]
    status = "PASS" if rep.passed else "FAIL"
    extra = f"  failed: {failed[:3]}" if failed else ""
    return f"criterion {n:>2}: {status}  {rep.title} ({len(rep.checks)} checks, {elapsed:.1f}s){extra}"


@pytest.mark.parametrize("n", sorted(suite.CRITERIA))
def test_criterion(n, capsys):
    start = time.perf_counter()
    rep = suite.CRITERIA[n](seed=suite.DEFAULT_SEED)
    with capsys.disabled():
        print("\n" + _line(n, rep, time.perf_counter() - start))
    assert rep.checks, "a criterion must run at least one check"
    assert rep.passed, rep.render()


def test_fixed_sample_sizes():
    assert (suite.GAUGE_SAMPLES, suite.MC_SAMPLES, suite.COMPLEX_SAMPLES,
            suite.JACOBIATOR_SAMPLES, suite.T_ORDER) == (20, 20, 50, 100, 8)


if __name__ == "__main__":
    which = [int(x) for x in sys.argv[1:]] or sorted(suite.CRITERIA)
    ok = True
    for n in which:
        start = time.perf_counter()
        rep = suite.CRITERIA[n]()
        ok &= rep.passed
        print(_line(n, rep, time.perf_counter() - start))
    sys.exit(0 if ok else 1)
