"""The graded symmetric coalgebra S(V), coderivations, coalgebra morphisms and L-infinity verifiers.

``V`` has basis ``0..dim-1`` with shifted degrees.  A word of ``S(V)`` is a
sorted tuple of basis indices; sorting signs use the Koszul rule on shifted
parities and a repeated odd index kills the word.  Elements of ``V`` are
``{index: scalar}`` dicts, elements of ``S(V)`` are ``{word: scalar}`` dicts.

Taylor components are symmetric maps ``S^n(V) -> V`` given by their values on
sorted words; they are computed on demand and memoized, and requests above the
configured arity bound are refused.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from math import factorial
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from . import kernels
from .graded import Vec, add_into, enumerate_shuffles
from .report import ArityBoundError, Report
from .scalars import Scalar, current_order, valuation

Word = Tuple[int, ...]
SymElement = Dict[Word, Scalar]

DEFAULT_ARITY = 4


@dataclass(frozen=True)
class SymSpace:
    """Basis data of ``V``: names and shifted degrees."""

    names: Tuple[str, ...]
    degrees: Tuple[int, ...]

    @property
    def dim(self) -> int:
        return len(self.degrees)

    @property
    def parity(self) -> Tuple[int, ...]:
        return tuple(d & 1 for d in self.degrees)

    def canon(self, seq: Sequence[int]) -> Tuple[Word, int]:
        return kernels.sort_sign(seq, self.parity)

    def words(self, n: int) -> Iterator[Word]:
        """All nonzero sorted words of length ``n``."""
        par = self.parity
        for w in combinations_with_replacement(range(self.dim), n):
            if any(w[i] == w[i + 1] and par[w[i]] for i in range(n - 1)):
                continue
            yield w

    def word_degree(self, w: Word) -> int:
        return sum(self.degrees[i] for i in w)


def exterior_space(n: int, shift: int = 2, names: Sequence[str] | None = None) -> SymSpace:
    """``(Lambda of n odd generators)[shift]``: basis = bitmask words, degree = popcount - shift."""
    labels = []
    for m in range(1 << n):
        idx = [i for i in range(n) if m >> i & 1]
        if names:
            labels.append("^".join(names[i] for i in idx) or "1")
        else:
            labels.append("^".join(f"t{i + 1}" for i in idx) or "1")
    return SymSpace(tuple(labels), tuple(bin(m).count("1") - shift for m in range(1 << n)))


# ---------------------------------------------------------------- symmetric products


def sym_mul(space: SymSpace, a: SymElement, b: SymElement) -> SymElement:
    out: SymElement = {}
    for wa, ca in a.items():
        for wb, cb in b.items():
            w, s = space.canon(wa + wb)
            if s:
                add_into(out, {w: ca * cb * s})
    return out


def vec_to_sym(v: Vec) -> SymElement:
    return {(i,): c for i, c in v.items() if c}


def sym_power(space: SymSpace, v: Vec, n: int) -> SymElement:
    out: SymElement = {(): 1}
    x = vec_to_sym(v)
    for _ in range(n):
        out = sym_mul(space, out, x)
    return out


def project(elem: SymElement) -> Vec:
    return {w[0]: c for w, c in elem.items() if len(w) == 1 and c}


def by_length(elem: SymElement) -> Dict[int, SymElement]:
    out: Dict[int, SymElement] = {}
    for w, c in elem.items():
        out.setdefault(len(w), {})[w] = c
    return out


def unshuffle_sign(space: SymSpace, w: Word, first: Sequence[int]) -> int:
    """Koszul sign of moving positions ``first`` (increasing) of ``w`` to the front."""
    rest = [i for i in range(len(w)) if i not in first]
    return kernels.perm_sign([space.parity[x] for x in w], list(first) + rest)


# ---------------------------------------------------------------- Taylor maps


class TaylorMap:
    """Family ``{g_n}`` of symmetric maps ``S^n(V) -> V``.

    ``compute(n, word)`` returns ``g_n`` on a sorted word.  ``arities`` lists the
    arities that may be nonzero (None: all).  ``bound`` caps requested arities.
    """

    def __init__(self, space: SymSpace, parity: int, compute: Callable[[int, Word], Vec],
                 arities: Optional[Iterable[int]] = None, bound: int = DEFAULT_ARITY,
                 valuation_gain: int = 0):
        self.space = space
        self.parity = parity & 1
        self._compute = compute
        self.arities = None if arities is None else frozenset(arities)
        self.bound = bound
        self.valuation_gain = valuation_gain
        self._memo: Dict[Word, Vec] = {}

    @classmethod
    def from_tables(cls, space: SymSpace, parity: int, tables: Dict[int, Dict[Word, Vec]],
                    bound: int | None = None) -> "TaylorMap":
        tabs = {k: dict(v) for k, v in tables.items()}
        ar = [k for k, v in tabs.items() if any(v.values())]
        b = max([DEFAULT_ARITY] + ar) if bound is None else bound
        return cls(space, parity, lambda n, w: tabs.get(n, {}).get(w, {}), ar, b)

    def has_arity(self, n: int) -> bool:
        return self.arities is None or n in self.arities

    def max_arity(self) -> Optional[int]:
        return None if self.arities is None else max(self.arities, default=-1)

    def component(self, n: int, word: Word) -> Vec:
        """``g_n`` on a sorted word."""
        if not self.has_arity(n):
            return {}
        if n > self.bound:
            raise ArityBoundError(f"arity {n} requested beyond the bound {self.bound}")
        key = word
        v = self._memo.get(key)
        if v is None:
            v = {i: c for i, c in self._compute(n, word).items() if c}
            self._memo[key] = v
        return v

    def value(self, seq: Sequence[int]) -> Vec:
        """``g_n`` on an arbitrary ordering of basis indices."""
        w, s = self.space.canon(seq)
        if not s or not self.has_arity(len(w)):
            return {}
        v = self.component(len(w), w)
        return v if s == 1 else {i: -c for i, c in v.items()}

    def evaluate(self, args: Sequence[Vec]) -> Vec:
        """Multilinear evaluation on vectors."""
        if not self.has_arity(len(args)):
            return {}
        out: Vec = {}
        acc: List[Tuple[Tuple[int, ...], Scalar]] = [((), 1)]
        for a in args:
            acc = [(seq + (i,), c * x) for seq, c in acc for i, x in a.items() if x]
        for seq, c in acc:
            add_into(out, self.value(seq), c)
        return out

    def on_element(self, elem: SymElement) -> Vec:
        """``sum_w c_w g_{|w|}(w)`` (the projection of the extended map)."""
        out: Vec = {}
        for w, c in elem.items():
            if self.has_arity(len(w)):
                add_into(out, self.component(len(w), w), c)
        return out

    def table(self, n: int) -> Dict[Word, Vec]:
        return {w: v for w in self.space.words(n) if (v := self.component(n, w))}

    def scaled(self, k: Scalar) -> "TaylorMap":
        return TaylorMap(self.space, self.parity,
                         lambda n, w: {i: c * k for i, c in self.component(n, w).items()},
                         self.arities, self.bound, self.valuation_gain)

    def __add__(self, other: "TaylorMap") -> "TaylorMap":
        ar = None if self.arities is None or other.arities is None else self.arities | other.arities
        return TaylorMap(self.space, self.parity,
                         lambda n, w: add_into(dict(self.component(n, w)), other.component(n, w)),
                         ar, min(self.bound, other.bound))

    def __sub__(self, other: "TaylorMap") -> "TaylorMap":
        return self + other.scaled(-1)


def zero_map(space: SymSpace, parity: int = 1, bound: int = DEFAULT_ARITY) -> TaylorMap:
    return TaylorMap(space, parity, lambda n, w: {}, (), bound)


def identity_morphism(space: SymSpace, bound: int = DEFAULT_ARITY) -> "CoalgebraMorphism":
    return CoalgebraMorphism(TaylorMap(space, 0, lambda n, w: {w[0]: 1}, (1,), bound))


# ---------------------------------------------------------------- coderivations


class Coderivation:
    """Coderivation of ``S(V)`` determined by its Taylor components."""

    def __init__(self, taylor: TaylorMap):
        self.taylor = taylor

    @property
    def space(self) -> SymSpace:
        return self.taylor.space

    @property
    def parity(self) -> int:
        return self.taylor.parity

    @property
    def bound(self) -> int:
        return self.taylor.bound

    def apply(self, elem: SymElement) -> SymElement:
        """``sum_I eps(I) g(v_I) . v_{I^c}`` over subsets of positions of each word."""
        sp = self.space
        tm = self.taylor
        out: SymElement = {}
        for w, c in elem.items():
            n = len(w)
            for j in range(n + 1):
                if not tm.has_arity(j):
                    continue
                for sub in combinations(range(n), j):
                    val = tm.component(j, tuple(w[i] for i in sub))
                    if not val:
                        continue
                    s = unshuffle_sign(sp, w, sub)
                    rest = tuple(w[i] for i in range(n) if i not in sub)
                    for b, x in val.items():
                        nw, s2 = sp.canon((b,) + rest)
                        if s2:
                            add_into(out, {nw: c * x * s * s2})
        return out

    def project_apply(self, elem: SymElement) -> Vec:
        return self.taylor.on_element(elem)


def extend_coderivation(space: SymSpace, arity: int, component: Callable[[Word], Vec],
                        parity: int, bound: int = DEFAULT_ARITY) -> Coderivation:
    """Coderivation whose only Taylor component is ``component`` in the given arity."""
    return Coderivation(TaylorMap(space, parity, lambda n, w: component(w), (arity,), bound))


def extract_taylor(Q: Coderivation, N: int) -> Dict[int, Dict[Word, Vec]]:
    """Taylor components read off by projecting the action of ``Q`` on each word."""
    out = {}
    for n in range(N + 1):
        tab = {}
        for w in Q.space.words(n):
            v = project(Q.apply({w: 1}))
            if v:
                tab[w] = v
        out[n] = tab
    return out


def coderivation_commutator(A: Coderivation, B: Coderivation) -> Coderivation:
    """``[A, B] = AB - (-1)^{|A||B|} BA`` with components ``proj([A, B] | S^n)``."""
    sign = -1 if (A.parity and B.parity) else 1
    ta, tb = A.taylor, B.taylor
    if ta.arities is not None and tb.arities is not None:
        ar = {a + b - 1 for a in ta.arities for b in tb.arities if a + b >= 1}
    else:
        ar = None

    def compute(n, w):
        out = add_into({}, ta.on_element(B.apply({w: 1})))
        return add_into(out, tb.on_element(A.apply({w: 1})), -sign)

    return Coderivation(TaylorMap(A.space, A.parity ^ B.parity, compute, ar,
                                  min(A.bound, B.bound)))


def compose_apply(ops: Sequence, elem: SymElement) -> SymElement:
    """Apply ``ops[0] o ops[1] o ...`` (rightmost first) to a symmetric element."""
    for op in reversed(ops):
        elem = op.apply(elem)
    return elem


# ---------------------------------------------------------------- morphisms


def set_partitions(n: int) -> Iterator[List[Tuple[int, ...]]]:
    """Partitions of ``0..n-1`` into blocks, blocks ordered by their smallest element."""
    if n == 0:
        yield []
        return
    for part in set_partitions(n - 1):
        yield part + [(n - 1,)]
        for i in range(len(part)):
            yield part[:i] + [part[i] + (n - 1,)] + part[i + 1:]


class CoalgebraMorphism:
    """Counit-preserving coalgebra map from degree-0 Taylor components with ``f_0 = 0``."""

    def __init__(self, taylor: TaylorMap):
        if taylor.has_arity(0) and taylor.arities is not None and 0 in taylor.arities:
            raise ValueError("coalgebra morphisms here have no arity-0 component")
        if taylor.parity:
            raise ValueError("coalgebra morphisms have even degree")
        self.taylor = taylor

    @property
    def space(self) -> SymSpace:
        return self.taylor.space

    @property
    def bound(self) -> int:
        return self.taylor.bound

    def component(self, n: int, word: Word) -> Vec:
        return self.taylor.component(n, word) if n else {}

    def on_power(self, n: int, elem: SymElement) -> Vec:
        """``f_n`` applied to a length-``n`` symmetric element."""
        return self.taylor.on_element({w: c for w, c in elem.items() if len(w) == n})

    def apply(self, elem: SymElement) -> SymElement:
        """Full coalgebra map via set partitions of each word."""
        sp = self.space
        out: SymElement = {}
        for w, c in elem.items():
            n = len(w)
            if n == 0:
                add_into(out, {(): c})
                continue
            par = [sp.parity[x] for x in w]
            for part in set_partitions(n):
                perm = [i for blk in part for i in blk]
                s = kernels.perm_sign(par, perm)
                acc: SymElement = {(): c * s}
                for blk in part:
                    val = self.taylor.value(tuple(w[i] for i in blk))
                    if not val:
                        acc = {}
                        break
                    acc = sym_mul(sp, acc, vec_to_sym(val))
                    if not acc:
                        break
                add_into(out, acc)
        return out


class ExpMorphism(CoalgebraMorphism):
    """``e^C`` for a coderivation ``C`` that strictly shortens words."""

    def __init__(self, C: Coderivation, bound: int):
        self.C = C
        ta = C.taylor
        if ta.arities is None or any(a <= 1 for a in ta.arities):
            raise ValueError("exp_coderivation needs a coderivation with all arities >= 2")
        gain = ta.valuation_gain

        def compute(n, w):
            return project(self.apply({w: 1}))

        super().__init__(TaylorMap(C.space, 0, compute, None, bound, valuation_gain=gain))

    def apply(self, elem: SymElement) -> SymElement:
        """``sum_k C^k / k!`` (finite: each application shortens words)."""
        out = dict(elem)
        term = dict(elem)
        k = 0
        while term:
            k += 1
            term = self.C.apply(term)
            add_into(out, term, Fraction(1, factorial(k)))
        return out

    def on_power(self, n: int, elem: SymElement) -> Vec:
        part = {w: c for w, c in elem.items() if len(w) == n}
        return project(self.apply(part))


def exp_coderivation(C: Coderivation, N: int = DEFAULT_ARITY) -> ExpMorphism:
    return ExpMorphism(C, N)


def coproduct(space: SymSpace, elem: SymElement) -> Dict[Tuple[Word, Word], Scalar]:
    """Unshuffle coproduct on words (including the empty word on either side)."""
    out: Dict[Tuple[Word, Word], Scalar] = {}
    for w, c in elem.items():
        n = len(w)
        for k in range(n + 1):
            for sub in combinations(range(n), k):
                s = unshuffle_sign(space, w, sub)
                key = (tuple(w[i] for i in sub), tuple(w[i] for i in range(n) if i not in sub))
                v = out.get(key, 0) + c * s
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
    return out


def tensor_apply(space: SymSpace, F, G, tensor) -> Dict[Tuple[Word, Word], Scalar]:
    """``(F tensor G)`` on a tensor of words (both maps even)."""
    out: Dict[Tuple[Word, Word], Scalar] = {}
    for (a, b), c in tensor.items():
        fa = F.apply({a: 1})
        gb = G.apply({b: 1})
        for wa, ca in fa.items():
            for wb, cb in gb.items():
                key = (wa, wb)
                v = out.get(key, 0) + c * ca * cb
                if v:
                    out[key] = v
                else:
                    out.pop(key, None)
    return out


# ---------------------------------------------------------------- sign conversion


def skew_sign(degrees: Sequence[int]) -> int:
    """``(-1)^n (-1)^{sum_i (n-i)|v_i|}`` relating symmetric and skew brackets (1-based ``i``)."""
    n = len(degrees)
    e = n + sum((n - i) * d for i, d in enumerate(degrees, start=1))
    return -1 if e & 1 else 1


def symm_to_skew(m: Callable[[Sequence], Vec], degree: Callable[[object], int]) -> Callable[[Sequence], Vec]:
    """``l_n(v_1..v_n) = skew_sign(|v_1|..|v_n|) m_n(v_1..v_n)``; the inverse uses the same sign."""

    def ell(args):
        s = skew_sign([degree(a) for a in args])
        v = m(args)
        return v if s == 1 else {i: -c for i, c in v.items()}

    return ell


skew_to_symm = symm_to_skew


# ---------------------------------------------------------------- verifiers


def _word_sample(space: SymSpace, n: int, sample: Optional[int], rng: Optional[random.Random]):
    words = list(space.words(n))
    if sample is not None and len(words) > sample:
        rng = rng or random.Random(0)
        words = sorted(rng.sample(words, sample))
    return words


def jacobiator_direct(m: TaylorMap, word: Word) -> Vec:
    """``sum_k sum_{Sh(k, n-k)} eps(sigma) m_{n-k+1}(m_k(v_sigma...), v_sigma...)``."""
    sp = m.space
    n = len(word)
    par = [sp.parity[x] for x in word]
    out: Vec = {}
    for k in range(n + 1):
        if not m.has_arity(k) or not m.has_arity(n - k + 1):
            continue
        for sh in enumerate_shuffles([k, n - k]):
            inner = m.value(tuple(word[i] for i in sh[:k]))
            if not inner:
                continue
            s = kernels.perm_sign(par, list(sh))
            rest = tuple(word[i] for i in sh[k:])
            for b, x in inner.items():
                add_into(out, m.value((b,) + rest), s * x)
    return out


def verify_jacobi(m: TaylorMap, N: int = DEFAULT_ARITY, sample: Optional[int] = None,
                  rng: Optional[random.Random] = None) -> Report:
    """Generalized Jacobi equations for arities ``0..N`` (all words or a sample per arity)."""
    rep = Report("generalized Jacobi")
    for n in range(N + 1):
        bad = []
        words = _word_sample(m.space, n, sample, rng)
        for w in words:
            r = jacobiator_direct(m, w)
            if r:
                bad.append({"word": [m.space.names[i] for i in w], "residual": r})
        rep.add(f"n={n}", not bad, detail=f"{len(words)} words", residuals=bad)
    return rep


def morphism_residual(f: CoalgebraMorphism, m_src: TaylorMap, m_tgt: TaylorMap, word: Word) -> Vec:
    """Left minus right side of the L-infinity morphism relation on one word."""
    sp = f.space
    n = len(word)
    par = [sp.parity[x] for x in word]
    out: Vec = {}
    if n == 0:
        add_into(out, m_tgt.component(0, ()) if m_tgt.has_arity(0) else {})
    else:
        for part in set_partitions(n):
            j = len(part)
            if not m_tgt.has_arity(j):
                continue
            perm = [i for blk in part for i in blk]
            s = kernels.perm_sign(par, perm)
            vals = []
            for blk in part:
                v = f.taylor.value(tuple(word[i] for i in blk))
                if not v:
                    break
                vals.append(v)
            else:
                add_into(out, m_tgt.evaluate(vals), s)
    for k in range(n + 1):
        if not m_src.has_arity(k):
            continue
        for sh in enumerate_shuffles([k, n - k]):
            inner = m_src.value(tuple(word[i] for i in sh[:k]))
            if not inner:
                continue
            s = kernels.perm_sign(par, list(sh))
            rest = tuple(word[i] for i in sh[k:])
            for b, x in inner.items():
                add_into(out, f.taylor.value((b,) + rest), -s * x)
    return out


def verify_morphism(f: CoalgebraMorphism, m_src: TaylorMap, m_tgt: TaylorMap,
                    N: int = DEFAULT_ARITY, sample: Optional[int] = None,
                    rng: Optional[random.Random] = None) -> Report:
    """L-infinity morphism relations for arities ``0..N``."""
    rep = Report("L-infinity morphism")
    for n in range(N + 1):
        bad = []
        words = _word_sample(f.space, n, sample, rng)
        for w in words:
            r = morphism_residual(f, m_src, m_tgt, w)
            if r:
                bad.append({"word": [f.space.names[i] for i in w], "residual": r})
        rep.add(f"n={n}", not bad, detail=f"{len(words)} words", residuals=bad)
    return rep


def maurer_cartan(m: TaylorMap, omega: Vec, max_arity: Optional[int] = None) -> Vec:
    """``sum_k (1/k!) m_k(omega^k)`` over the arities of ``m``."""
    top = m.max_arity() if max_arity is None else max_arity
    if top is None:
        raise ArityBoundError("Maurer-Cartan sum over an unbounded family")
    out: Vec = {}
    for k in range(top + 1):
        if m.has_arity(k):
            add_into(out, m.on_element(sym_power(m.space, omega, k)), Fraction(1, factorial(k)))
    return out


def mc_pushforward(f: CoalgebraMorphism, omega: Vec, order: Optional[int] = None) -> Vec:
    """``sum_{n>=1} (1/n!) f_n(omega^n)``, stopping when the t-truncation kills every later term."""
    T = current_order() if order is None else order
    v_om = min((valuation(c) for c in omega.values() if valuation(c) is not None), default=None)
    if v_om is None:
        return {}
    gain = f.taylor.valuation_gain
    out: Vec = {}
    power: SymElement = {(): 1}
    x = vec_to_sym(omega)
    n = 0
    while True:
        n += 1
        if n * v_om + (n - 1) * gain > T and n > 1:
            return out
        if n > f.bound:
            raise ArityBoundError(
                f"Maurer-Cartan pushforward does not terminate within arity {f.bound} "
                f"at truncation order {T}")
        power = sym_mul(f.space, power, x)
        if not power:
            return out
        add_into(out, f.on_power(n, power), Fraction(1, factorial(n)))
