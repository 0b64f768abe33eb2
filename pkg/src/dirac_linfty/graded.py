"""Graded bases, Koszul signs, shuffles and sparse exterior algebra.

Exterior words are stored as bitmasks (bit ``i`` set <=> generator ``i`` present);
:func:`word_of` / :func:`mask_of` convert to and from strictly increasing index
tuples.  Raw elements are plain dicts ``{mask: scalar}`` with no zero values;
:class:`ExteriorElement` wraps such a dict together with its :class:`GradedBasis`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, Iterable, Iterator, Mapping, Sequence, Tuple

from . import kernels
from .scalars import Scalar, format_scalar

Vec = Dict[int, Scalar]


@dataclass(frozen=True)
class GradedBasis:
    """Ordered named generators with integer degrees and an optional degree shift.

    ``shift = k`` records the space ``W[k]``: the element with stored degree ``d``
    has degree ``d - k``.  Koszul signs always use the shifted degree.
    """

    names: Tuple[str, ...]
    degrees: Tuple[int, ...]
    shift: int = 0
    _index: Dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        names = tuple(self.names)
        degrees = tuple(int(d) for d in self.degrees)
        if len(names) != len(degrees):
            raise ValueError("names and degrees differ in length")
        if len(set(names)) != len(names):
            raise ValueError("basis names must be unique")
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "degrees", degrees)
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(names)})

    @classmethod
    def odd(cls, names: Sequence[str] | int, shift: int = 0) -> "GradedBasis":
        """Basis of degree-1 generators (the usual exterior algebra)."""
        if isinstance(names, int):
            names = [f"e{i + 1}" for i in range(names)]
        return cls(tuple(names), (1,) * len(names), shift)

    def __len__(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        return self._index[name]

    def shifted(self, k: int) -> "GradedBasis":
        return GradedBasis(self.names, self.degrees, self.shift + k)

    def degree(self, i: int) -> int:
        return self.degrees[i] - self.shift

    @property
    def odd_mask(self) -> int:
        m = 0
        for i, d in enumerate(self.degrees):
            if (d - self.shift) & 1:
                m |= 1 << i
        return m

    @property
    def parities(self) -> Tuple[int, ...]:
        return tuple((d - self.shift) & 1 for d in self.degrees)


# ---------------------------------------------------------------- signs


def koszul_sign(degrees: Sequence[int], sigma: Sequence[int]) -> int:
    """Koszul sign of ``v_sigma[0], ..., v_sigma[n-1]`` relative to ``v_0, ..., v_{n-1}``.

    ``sigma`` lists original positions (0-based) in their new order.  The sign is
    the product of ``(-1)**(|v_a| |v_b|)`` over all pairs the permutation inverts,
    which equals the product over any decomposition into adjacent transpositions.
    """
    n = len(degrees)
    if len(sigma) != n:
        raise ValueError(f"permutation of length {len(sigma)} for {n} degrees")
    if sorted(sigma) != list(range(n)):
        raise ValueError(f"not a permutation of 0..{n - 1}: {tuple(sigma)}")
    return kernels.perm_sign([d & 1 for d in degrees], list(sigma))


def enumerate_shuffles(block_sizes: Sequence[int]) -> list[Tuple[int, ...]]:
    """All (k1, ..., kj)-shuffles of ``0..n-1``: permutations increasing within each block."""
    if any(k < 0 for k in block_sizes):
        raise ValueError("block sizes must be non-negative")
    n = sum(block_sizes)
    out: list[Tuple[int, ...]] = []

    def rec(remaining: Tuple[int, ...], sizes: Sequence[int], prefix: Tuple[int, ...]):
        if not sizes:
            out.append(prefix)
            return
        for chosen in combinations(remaining, sizes[0]):
            rest = tuple(x for x in remaining if x not in chosen)
            rec(rest, sizes[1:], prefix + chosen)

    rec(tuple(range(n)), list(block_sizes), ())
    return out


# ---------------------------------------------------------------- words


def word_of(mask: int) -> Tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def mask_of(word: Iterable[int]) -> int:
    m = 0
    last = -1
    for i in word:
        if i <= last:
            raise ValueError(f"multi-index must be strictly increasing: {tuple(word)}")
        m |= 1 << i
        last = i
    return m


def wedge_raw(a: Mapping[int, Scalar], b: Mapping[int, Scalar], odd: int) -> Vec:
    return kernels.wedge_dicts(dict(a), dict(b), odd)


def contract_raw(i: int, vec: Mapping[int, Scalar], odd: int) -> Vec:
    """Interior product by the dual of generator ``i`` (an odd or even derivation)."""
    bit = 1 << i
    is_odd = bool(odd & bit)
    out: Vec = {}
    for m, c in vec.items():
        if m & bit:
            if is_odd and kernels.contract_sign(i, m, odd) < 0:
                c = -c
            out[m ^ bit] = c
    return out


def add_into(acc: Vec, vec: Mapping[int, Scalar], coeff: Scalar = 1) -> Vec:
    """``acc += coeff * vec`` in place, dropping zeros."""
    for m, c in vec.items():
        v = acc.get(m, 0) + coeff * c
        if v:
            acc[m] = v
        else:
            acc.pop(m, None)
    return acc


def scale(vec: Mapping[int, Scalar], coeff: Scalar) -> Vec:
    if not coeff:
        return {}
    return {m: c * coeff for m, c in vec.items() if c * coeff}


def clean(vec: Mapping[int, Scalar]) -> Vec:
    return {m: c for m, c in vec.items() if c}


# ---------------------------------------------------------------- elements


class ExteriorElement:
    """Immutable sparse element of the exterior algebra over a :class:`GradedBasis`."""

    __slots__ = ("base", "terms")

    def __init__(self, base: GradedBasis, terms: Mapping = ()):
        full = (1 << len(base)) - 1
        clean_terms: Vec = {}
        for key, c in dict(terms).items():
            m = mask_of(key) if isinstance(key, tuple) else int(key)
            if m & ~full:
                raise ValueError(f"word {key!r} uses generators outside the basis")
            if c:
                clean_terms[m] = clean_terms.get(m, 0) + c
        self.base = base
        self.terms = {m: c for m, c in clean_terms.items() if c}

    @classmethod
    def unit(cls, base: GradedBasis) -> "ExteriorElement":
        return cls(base, {0: 1})

    @classmethod
    def generator(cls, base: GradedBasis, i: int | str) -> "ExteriorElement":
        if isinstance(i, str):
            i = base.index(i)
        return cls(base, {1 << i: 1})

    @classmethod
    def _wrap(cls, base: GradedBasis, terms: Vec) -> "ExteriorElement":
        e = object.__new__(cls)
        e.base = base
        e.terms = terms
        return e

    def _check(self, other: "ExteriorElement"):
        if not isinstance(other, ExteriorElement):
            raise TypeError(f"expected ExteriorElement, got {type(other).__name__}")
        if other.base != self.base:
            raise ValueError("exterior elements over different bases")

    def words(self) -> Iterator[Tuple[Tuple[int, ...], Scalar]]:
        for m in sorted(self.terms):
            yield word_of(m), self.terms[m]

    def word_degree(self, mask: int) -> int:
        return sum(self.base.degrees[i] for i in word_of(mask))

    def degrees(self) -> set[int]:
        return {self.word_degree(m) for m in self.terms}

    def component(self, degree: int) -> "ExteriorElement":
        return ExteriorElement._wrap(
            self.base, {m: c for m, c in self.terms.items() if self.word_degree(m) == degree})

    def __add__(self, other):
        self._check(other)
        return ExteriorElement._wrap(self.base, add_into(dict(self.terms), other.terms))

    def __sub__(self, other):
        self._check(other)
        return ExteriorElement._wrap(self.base, add_into(dict(self.terms), other.terms, -1))

    def __neg__(self):
        return ExteriorElement._wrap(self.base, {m: -c for m, c in self.terms.items()})

    def __mul__(self, k):
        if isinstance(k, ExteriorElement):
            return NotImplemented
        return ExteriorElement._wrap(self.base, scale(self.terms, k))

    __rmul__ = __mul__

    def wedge(self, other: "ExteriorElement") -> "ExteriorElement":
        return wedge(self, other)

    def __eq__(self, other):
        if isinstance(other, ExteriorElement):
            return self.base == other.base and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for word, c in self.words():
            label = "^".join(self.base.names[i] for i in word) or "1"
            parts.append(f"{format_scalar(c)}*{label}")
        return " + ".join(parts)


def wedge(a: ExteriorElement, b: ExteriorElement) -> ExteriorElement:
    """Graded-commutative exterior product."""
    a._check(b)
    return ExteriorElement._wrap(a.base, wedge_raw(a.terms, b.terms, a.base.odd_mask))


def contract(x: ExteriorElement, a: ExteriorElement,
             pairing: Sequence[Sequence[Scalar]] | None = None) -> ExteriorElement:
    """Interior product of a dual multivector ``x`` on ``a``.

    Generator ``i`` of ``x.base`` acts as the derivation dual to generator ``i`` of
    ``a.base`` (or through ``pairing[i][j]`` when supplied).  Words compose
    innermost-first: ``iota(x1 ^ x2) = iota(x2) o iota(x1)``.
    """
    n = len(a.base)
    if pairing is None:
        if len(x.base) != n:
            raise ValueError("pairing undefined: dual basis has a different dimension")
        pairing = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    elif len(pairing) != len(x.base) or any(len(row) != n for row in pairing):
        raise ValueError("pairing matrix has the wrong shape")
    odd = a.base.odd_mask
    out: Vec = {}
    for word, cx in x.words():
        cur: Vec = dict(a.terms)
        for i in word:
            nxt: Vec = {}
            for j, p in enumerate(pairing[i]):
                if p:
                    add_into(nxt, contract_raw(j, cur, odd), p)
            cur = nxt
            if not cur:
                break
        add_into(out, cur, cx)
    return ExteriorElement._wrap(a.base, out)
