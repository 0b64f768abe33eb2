"""Shared hypothesis strategies: exact rationals, truncated series, skew matrices."""

from fractions import Fraction

from hypothesis import strategies as st

from dirac_linfty.scalars import Series

small_int = st.integers(-4, 4)
rationals = st.builds(Fraction, small_int, st.integers(1, 4))


def series(order: int = 6, min_valuation: int = 0):
    return st.lists(rationals, min_size=order + 1, max_size=order + 1).map(
        lambda cs: Series([0] * min_valuation + cs[min_valuation:], order))


def masks(n: int):
    return st.integers(0, (1 << n) - 1)


def forms(n: int, max_terms: int = 4):
    return st.dictionaries(masks(n), rationals.filter(bool), max_size=max_terms)


def skew(n: int, entries=rationals):
    def build(vals):
        E = [[Fraction(0)] * n for _ in range(n)]
        it = iter(vals)
        for i in range(n):
            for j in range(i + 1, n):
                v = next(it)
                E[i][j], E[j][i] = v, -v
        return E
    return st.lists(entries, min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2).map(build)
