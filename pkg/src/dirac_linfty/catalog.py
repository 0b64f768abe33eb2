"""Built-in doubles, Lie bialgebras and r-matrices, with the Schouten bracket and the CE differential.

Multivectors on ``g`` and forms on ``g`` are both ``{mask: scalar}`` dicts over
the basis of ``g``; all generators are odd.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .coalgebra import DEFAULT_ARITY, verify_jacobi, verify_morphism
from .courant import (CliffordOperator, LagrangianSplitting, QuadraticLieAlgebra,
                      gauge_conjugate, graph_lagrangian, is_subalgebra,
                      nijenhuis_expected, validate_double)
from .derived import (BVTorsor, DerivedLInfty, conjugated_taylor, derived_taylor, exp_r,
                      nested_commutator, structure_of)
from .coalgebra import Coderivation
from .graded import Vec, add_into, wedge_raw, word_of
from .linalg import Matrix
from .report import ConstructionError, Report
from .scalars import Scalar
from .specfile import AlgebraSpec, LieData, RMatrixData, SpecError, dumps, load

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")

# d_CE(theta^k) = CE_SIGN * sum_{i<j} c_ij^k theta^i theta^j, fixed so that d_CE = ell_1
CE_SIGN = 1
# r_st = R_ST_SCALE * e ^ f makes graph(r_st) over the anti-diagonal a subalgebra
R_ST_SCALE = Fraction(1, 4)
# [r_st, r_st] = R_ST_ETA_SCALE * eta^{-1}
R_ST_ETA_SCALE = Fraction(-1, 4)
# cubic structure of g + gbar: ell_3(a, b, c) = ELL3_SCALE * eta^{-1}(a, b, c) on 1-forms
ELL3_SCALE = Fraction(-1, 8)
# the degree -3 piece of the Hamiltonian is DBAR_SCALE * iota_{eta^{-1}}
DBAR_SCALE = Fraction(1, 8)


# ---------------------------------------------------------------- Lie algebras


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    name: str
    names: Tuple[str, ...]
    table: Tuple[Tuple[Dict[int, Scalar], ...], ...]
    gram: Optional[Tuple[Tuple[Scalar, ...], ...]] = None

    @classmethod
    def from_brackets(cls, name: str, names: Sequence[str], brackets, gram=None) -> "LieAlgebra":
        q = QuadraticLieAlgebra.from_brackets(name, names, brackets, gram or linalg.zeros(len(names)))
        return cls(name, q.names, q.table, tuple(tuple(r) for r in gram) if gram is not None else None)

    @classmethod
    def from_data(cls, name: str, data: LieData) -> "LieAlgebra":
        return cls.from_brackets(name, data.basis, data.brackets, data.gram)

    def to_data(self) -> LieData:
        br = [(i, j, k, c) for i in range(self.dim) for j in range(i + 1, self.dim)
              for k, c in sorted(self.table[i][j].items())]
        return LieData(list(self.names), br, [list(r) for r in self.gram] if self.gram else None)

    @property
    def dim(self) -> int:
        return len(self.names)

    def bracket(self, u, v) -> list:
        out = [0] * self.dim
        for i, ui in enumerate(u):
            if ui:
                for j, vj in enumerate(v):
                    if vj:
                        for k, c in self.table[i][j].items():
                            out[k] += ui * vj * c
        return out

    def basis_bracket(self, i: int, j: int) -> Vec:
        return {1 << k: c for k, c in self.table[i][j].items() if c}

    def jacobi_failures(self) -> list:
        n = self.dim
        e = [[1 if k == i else 0 for k in range(n)] for i in range(n)]
        bad = []
        for i, j, k in combinations(range(n), 3):
            r = [a + b + c for a, b, c in zip(self.bracket(e[i], self.bracket(e[j], e[k])),
                                              self.bracket(e[j], self.bracket(e[k], e[i])),
                                              self.bracket(e[k], self.bracket(e[i], e[j])))]
            if any(r):
                bad.append({"triple": [self.names[i], self.names[j], self.names[k]], "residual": r})
        return bad

    def quadratic(self) -> QuadraticLieAlgebra:
        if self.gram is None:
            raise ValueError(f"{self.name} carries no invariant pairing")
        return QuadraticLieAlgebra(self.name, self.names, self.table, self.gram)


def sl2() -> LieAlgebra:
    """``e, h, f`` with ``[h, e] = 2e``, ``[h, f] = -2f``, ``[e, f] = h`` and the trace form."""
    return LieAlgebra.from_brackets("sl2", ["e", "h", "f"],
                                    [(1, 0, 0, 2), (1, 2, 2, -2), (0, 2, 1, 1)],
                                    [[0, 0, 1], [0, 2, 0], [1, 0, 0]])


def nonabelian2() -> LieAlgebra:
    return LieAlgebra.from_brackets("nonabelian2", ["x", "y"], [(0, 1, 1, 1)])


def heisenberg() -> LieAlgebra:
    return LieAlgebra.from_brackets("heisenberg", ["x", "y", "z"], [(0, 1, 2, 1)])


# ---------------------------------------------------------------- multivectors and forms


def bivector(E: Matrix) -> Vec:
    n = len(E)
    return {(1 << i) | (1 << j): E[i][j] for i in range(n) for j in range(i + 1, n) if E[i][j]}


def bivector_matrix(r: Vec, n: int) -> Matrix:
    E = linalg.zeros(n)
    for mask, c in r.items():
        i, j = word_of(mask)
        E[i][j] += c
        E[j][i] -= c
    return E


def schouten_bracket(g: LieAlgebra, a: Vec, b: Vec) -> Vec:
    """``[x_1..x_p, y_1..y_q] = sum (-1)^{i+j} [x_i, y_j] x_1..^i..x_p y_1..^j..y_q``."""
    full = (1 << g.dim) - 1
    out: Vec = {}
    for wa, ca in a.items():
        xs = word_of(wa)
        for wb, cb in b.items():
            ys = word_of(wb)
            for i, x in enumerate(xs):
                rest_x = {wa ^ (1 << x): 1}
                for j, y in enumerate(ys):
                    br = g.basis_bracket(x, y)
                    if not br:
                        continue
                    term = wedge_raw(wedge_raw(br, rest_x, full), {wb ^ (1 << y): 1}, full)
                    add_into(out, term, ca * cb * (-1 if (i + j) & 1 else 1))
    return out


@dataclass
class CEDifferential:
    """``d_CE`` on forms on ``g``: ``theta^k -> CE_SIGN sum_{i<j} c_ij^k theta^i theta^j``, an odd derivation."""

    g: LieAlgebra
    _memo: Dict[int, Vec] = field(default_factory=dict, repr=False)

    def on_generator(self, k: int) -> Vec:
        n = self.g.dim
        return {(1 << i) | (1 << j): CE_SIGN * self.g.table[i][j][k]
                for i in range(n) for j in range(i + 1, n) if self.g.table[i][j].get(k)}

    def on_word(self, mask: int) -> Vec:
        v = self._memo.get(mask)
        if v is None:
            full = (1 << self.g.dim) - 1
            v = {}
            for pos, k in enumerate(word_of(mask)):
                before = mask & ((1 << k) - 1)
                after = mask & ~((1 << (k + 1)) - 1)
                term = wedge_raw(wedge_raw({before: 1}, self.on_generator(k), full), {after: 1}, full)
                add_into(v, term, -1 if pos & 1 else 1)
            self._memo[mask] = v
        return v

    def __call__(self, form: Vec) -> Vec:
        out: Vec = {}
        for w, c in form.items():
            add_into(out, self.on_word(w), c)
        return out


def ce_differential(g: LieAlgebra) -> CEDifferential:
    return CEDifferential(g)


def eta_inverse(g: LieAlgebra) -> Vec:
    """``eta(x, y, z) = <[x, y], z>/2`` with all indices raised by the pairing of ``g``."""
    if g.gram is None:
        raise ValueError("eta needs an invariant pairing")
    n = g.dim
    try:
        kinv = linalg.inverse([list(r) for r in g.gram])
    except linalg.SingularMatrixError:
        raise ValueError("pairing is degenerate") from None
    q = g.quadratic()
    e = [[1 if k == i else 0 for k in range(n)] for i in range(n)]
    eta = {(a, b, c): Fraction(1, 2) * q.cubic(e[a], e[b], e[c])
           for a in range(n) for b in range(n) for c in range(n)}
    out: Vec = {}
    for i, j, k in combinations(range(n), 3):
        s = sum(kinv[i][a] * kinv[j][b] * kinv[k][c] * v for (a, b, c), v in eta.items() if v)
        if s:
            out[(1 << i) | (1 << j) | (1 << k)] = s
    return out


def trivector_pairing(tri: Vec, a: int, b: int, c: int) -> Scalar:
    """``tri(theta^a, theta^b, theta^c)`` for the totally antisymmetric extension."""
    idx = [a, b, c]
    if len(set(idx)) < 3:
        return 0
    order = sorted(range(3), key=lambda p: idx[p])
    inv = sum(1 for x in range(3) for y in range(x + 1, 3) if order[x] > order[y])
    v = tri.get((1 << a) | (1 << b) | (1 << c), 0)
    return -v if inv & 1 else v


# ---------------------------------------------------------------- CYBE


@dataclass
class CYBEResult:
    kind: str
    square: Vec
    eta_inverse: Optional[Vec] = None
    ratio: Optional[Scalar] = None
    residual: Vec = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "square": self.square, "eta_inverse": self.eta_inverse,
                "ratio": self.ratio, "residual": self.residual}


def cybe_check(g: LieAlgebra, r, eta_scale: Scalar = 1) -> CYBEResult:
    """Classify ``r``: ``[r, r] = 0`` (triangular), ``[r, r] = eta_scale * eta^{-1}`` (quasi-triangular), or neither."""
    rv = bivector(r) if isinstance(r, list) else dict(r)
    sq = schouten_bracket(g, rv, rv)
    if not sq:
        return CYBEResult("triangular", sq)
    if g.gram is None:
        return CYBEResult("neither", sq, residual=sq)
    eta = eta_inverse(g)
    residual = add_into(dict(sq), eta, -eta_scale)
    ratio = _ratio(sq, eta)
    if not residual:
        return CYBEResult("quasi-triangular", sq, eta, ratio)
    return CYBEResult("neither", sq, eta, ratio, residual)


def _ratio(a: Vec, b: Vec) -> Optional[Scalar]:
    if not b or set(a) != set(b):
        return None
    k = next(iter(b))
    lam = a[k] / b[k]
    return lam if all(a[w] == lam * b[w] for w in b) else None


# ---------------------------------------------------------------- bialgebras and doubles


@dataclass
class BialgebraSpec:
    """``g`` with the dual bracket ``[xi^i, xi^j]_* = sum_k c xi^k`` given as ``(i, j, k, c)``."""

    g: LieAlgebra
    dual: List[Tuple[int, int, int, Scalar]]

    @classmethod
    def zero(cls, g: LieAlgebra) -> "BialgebraSpec":
        return cls(g, [])

    @classmethod
    def coboundary(cls, g: LieAlgebra, r) -> "BialgebraSpec":
        """``delta(x) = [x, r]``; ``[xi^i, xi^j]_*`` reads the ``x_i ^ x_j`` coefficient of ``delta``."""
        rv = bivector(r) if isinstance(r, list) else dict(r)
        dual = []
        for k in range(g.dim):
            delta = schouten_bracket(g, {1 << k: 1}, rv)
            for mask, c in sorted(delta.items()):
                i, j = word_of(mask)
                dual.append((i, j, k, c))
        return cls(g, dual)

    def dual_algebra(self) -> LieAlgebra:
        return LieAlgebra.from_brackets(self.g.name + "*", [n + "*" for n in self.g.names], self.dual)

    def cobracket(self, k: int) -> Vec:
        return {(1 << i) | (1 << j): c for i, j, kk, c in self.dual if kk == k and c}

    def validate(self) -> Report:
        rep = Report(f"bialgebra {self.g.name}")
        rep.add("g jacobi", not self.g.jacobi_failures(), residuals=self.g.jacobi_failures())
        dj = self.dual_algebra().jacobi_failures()
        rep.add("dual bracket jacobi", not dj, residuals=dj)
        n = self.g.dim
        bad = []
        for a in range(n):
            for b in range(a + 1, n):
                lhs: Vec = {}
                for k, c in self.g.table[a][b].items():
                    add_into(lhs, self.cobracket(k), c)
                rhs = schouten_bracket(self.g, {1 << a: 1}, self.cobracket(b))
                add_into(rhs, schouten_bracket(self.g, {1 << b: 1}, self.cobracket(a)), -1)
                r = add_into(lhs, rhs, -1)
                if r:
                    bad.append({"pair": [self.g.names[a], self.g.names[b]], "residual": r})
        rep.add("cobracket 1-cocycle", not bad, residuals=bad)
        return rep


def drinfeld_double(b: BialgebraSpec, name: Optional[str] = None):
    """``g + g*`` with pairing ``<x, xi> = xi(x)/2``; returns ``(double, g basis, g* basis)``."""
    pre = b.validate()
    if not pre.passed:
        raise ConstructionError(f"bialgebra axioms fail: {[c.name for c in pre.failures()]}")
    g = b.g
    n = g.dim
    dual = {}
    for i, j, k, c in b.dual:
        dual[(i, j, k)] = dual.get((i, j, k), 0) + c
        dual[(j, i, k)] = dual.get((j, i, k), 0) - c
    names = list(g.names) + [x + "*" for x in g.names]
    br = []
    for i in range(n):
        for j in range(n):
            for k, c in g.table[i][j].items():
                if i < j:
                    br.append((i, j, k, c))
    for (i, j, k), c in dual.items():
        if i < j and c:
            br.append((n + i, n + j, n + k, c))
    # [x_i, xi^j] = -sum_k c_ik^j xi^k + sum_k d^{jk}_i x_k
    for i in range(n):
        for j in range(n):
            for k in range(n):
                c = g.table[i][k].get(j, 0)
                if c:
                    br.append((i, n + j, n + k, -c))
                dc = dual.get((j, k, i), 0)
                if dc:
                    br.append((i, n + j, k, dc))
    gram = linalg.zeros(2 * n)
    for i in range(n):
        gram[i][n + i] = gram[n + i][i] = Fraction(1, 2)
    d = QuadraticLieAlgebra.from_brackets(name or f"D({g.name})", names, br, gram)
    rep = validate_double(d)
    if not rep.passed:
        raise ConstructionError(f"double bracket fails: {[c.name for c in rep.failures()]}")
    e = [[1 if k == i else 0 for k in range(2 * n)] for i in range(2 * n)]
    return d, e[:n], e[n:]


def cartan_double(g: LieAlgebra, name: Optional[str] = None):
    """``g + gbar`` with pairing ``kappa - kappa``; returns ``(double, diagonal, anti-diagonal)``."""
    if g.gram is None:
        raise ValueError("the doubled algebra needs an invariant pairing")
    n = g.dim
    names = list(g.names) + [x + "b" for x in g.names]
    br = []
    for i in range(n):
        for j in range(i + 1, n):
            for k, c in g.table[i][j].items():
                br.append((i, j, k, c))
                br.append((n + i, n + j, n + k, c))
    gram = linalg.zeros(2 * n)
    for i in range(n):
        for j in range(n):
            gram[i][j] = g.gram[i][j]
            gram[n + i][n + j] = -g.gram[i][j]
    d = QuadraticLieAlgebra.from_brackets(name or f"{g.name}+{g.name}bar", names, br, gram)
    diag = [[1 if k in (i, n + i) else 0 for k in range(2 * n)] for i in range(n)]
    anti = [[1 if k == i else (-1 if k == n + i else 0) for k in range(2 * n)] for i in range(n)]
    return d, diag, anti


# ---------------------------------------------------------------- certificates


def iota_trivector(tri: Vec, n: int) -> CliffordOperator:
    """``iota(x_a ^ x_b ^ x_c) = iota_c iota_b iota_a``."""
    op = CliffordOperator.zero(n)
    for mask, c in tri.items():
        a, b, cc = word_of(mask)
        g = CliffordOperator.generator
        op = op + c * (g(cc, n) @ g(b, n) @ g(a, n))
    return op


def _all_words(n: int):
    return range(1 << n)


def cartan_cubic_structure(g: LieAlgebra, N: int = DEFAULT_ARITY):
    """Structure of ``(Delta, Delta-bar)`` in ``g + gbar`` with its certificate; returns ``(structure, report)``."""
    d, diag, anti = cartan_double(g)
    sp = LagrangianSplitting(d, diag, anti, g.names)
    T = BVTorsor.from_splitting(sp)
    st = DerivedLInfty(T, derived_taylor(T, N))
    n = g.dim
    rep = Report(f"cubic structure on forms of {g.name}")
    rep.add("Delta is a subalgebra", is_subalgebra(d, diag))
    ce = ce_differential(g)
    bad = [w for w in _all_words(n) if st.ell({w: 1}) != ce({w: 1})]
    rep.add("ell_1 = d_CE on all words", not bad, residuals=bad)
    sq = [w for w in _all_words(n) if ce(ce({w: 1}))]
    rep.add("d_CE^2 = 0", not sq, residuals=sq)
    bad2 = [(a, b) for a in _all_words(n) for b in _all_words(n) if st.bracket({a: 1}, {b: 1})]
    rep.add("ell_2 = 0 on all words", not bad2, residuals=bad2)
    eta = eta_inverse(g)
    bad3 = []
    for a in range(n):
        for b in range(n):
            for c in range(n):
                v = st.ell({1 << a: 1}, {1 << b: 1}, {1 << c: 1})
                want = ELL3_SCALE * trivector_pairing(eta, a, b, c)
                if v != ({0: want} if want else {}):
                    bad3.append({"triple": [a, b, c], "value": v, "expected": want})
    rep.add("ell_3 = ELL3_SCALE * eta^{-1} on 1-forms", not bad3, residuals=bad3,
            detail=f"ELL3_SCALE = {ELL3_SCALE}")
    iop = iota_trivector(eta, n)
    piece = T.piece(-3)
    rep.add("degree -3 piece = DBAR_SCALE * iota_{eta^{-1}}", piece == DBAR_SCALE * iop,
            detail=f"DBAR_SCALE = {DBAR_SCALE}")
    bad4 = []
    for w in combinations(_all_words(n), 3):
        if not st.m.has_arity(3):
            break
        lhs = st.m.component(3, tuple(w))
        rhs = nested_commutator(DBAR_SCALE * iop, 1, list(w), {0: 1}, n)
        if lhs != rhs:
            bad4.append({"word": list(w), "value": lhs, "expected": rhs})
    rep.add("m_3 on all words = derived bracket of iota_{eta^{-1}}", not bad4, residuals=bad4)
    rep.extend(verify_jacobi(st.m, N), prefix="Delta side: ")
    sp_bar = LagrangianSplitting(d, anti, diag, g.names)
    bar = structure_of(sp_bar, N)
    rep.data["Delta-bar side curvature"] = bar.curvature()
    rep.extend(verify_jacobi(bar.m, N), prefix="Delta-bar side (curved): ")
    return st, rep


def triangular_formality(g: LieAlgebra, r, N: int = DEFAULT_ARITY) -> Report:
    """Inside the double of ``(g, 0)``: ``e^{-R_r}`` from the ``graph(r)`` structure to the abelian one."""
    E = r if isinstance(r, list) else bivector_matrix(r, g.dim)
    cy = cybe_check(g, E)
    if cy.kind != "triangular":
        raise ConstructionError(f"r is not triangular: [r, r] = {cy.square}")
    d, gvec, gstar = drinfeld_double(BialgebraSpec.zero(g))
    sp = LagrangianSplitting(d, gvec, gstar, g.names)
    spr = graph_lagrangian(sp, E)
    rep = Report(f"triangular formality for {g.name}")
    rep.add("graph(r) is a Lagrangian subalgebra", is_subalgebra(d, spr.l_raw))
    src = structure_of(sp, N)
    tgt = structure_of(spr, N)
    n = g.dim
    rep.add("abelian side: m_2 = 0",
            all(not src.m.component(2, w) for w in src.space.words(2)))
    rep.add("both sides flat", not src.curvature() and not tgt.curvature())
    rep.add("graph(r) side: m_3 = 0", all(not tgt.m.component(3, w) for w in tgt.space.words(3))
            if tgt.m.has_arity(3) else True)
    f = exp_r(linalg.neg(E), n, src.torsor.names, N + 1)
    rep.extend(verify_morphism(f, tgt.m, src.m, N), prefix="e^{-R_r}: ")
    back = conjugated_taylor(Coderivation(tgt.m), E, n, src.torsor.names, N)
    rep.add("transported m_2' = 0 on all words", all(not back.component(2, w) for w in src.space.words(2)))
    gauged = derived_taylor(BVTorsor(n, gauge_conjugate(tgt.torsor.H, E), src.torsor.names), N)
    rep.add("conjugated torsor: m_2 = 0 on all words",
            all(not gauged.component(2, w) for w in src.space.words(2)) if gauged.has_arity(2) else True)
    return rep


def quasitriangular_bridge(g: LieAlgebra, r, eta_scale: Scalar = R_ST_ETA_SCALE,
                           N: int = DEFAULT_ARITY) -> Report:
    """``graph(r)`` over ``Delta-bar`` and ``e^{R_r}`` from the cubic structure to the bialgebra DGLA."""
    E = r if isinstance(r, list) else bivector_matrix(r, g.dim)
    cy = cybe_check(g, E, eta_scale)
    d, diag, anti = cartan_double(g)
    sp = LagrangianSplitting(d, diag, anti, g.names)
    spr = graph_lagrangian(sp, E)
    if cy.kind != "quasi-triangular":
        nij = nijenhuis_expected(LagrangianSplitting(d, spr.l_raw, diag, g.names))
        raise ConstructionError(f"r is not quasi-triangular at scale {eta_scale} (ratio {cy.ratio}); "
                                f"Nijenhuis form of graph(r): {nij}")
    rep = Report(f"quasi-triangular bridge for {g.name}")
    nij = nijenhuis_expected(LagrangianSplitting(d, spr.l_raw, diag, g.names))
    rep.add("graph(r) over Delta-bar is a Lagrangian subalgebra",
            is_subalgebra(d, spr.l_raw), residuals=[nij] if nij else [])
    src = structure_of(sp, N)
    tgt = structure_of(spr, N)
    n = g.dim
    f = exp_r(E, n, src.torsor.names, N + 1)
    rep.extend(verify_morphism(f, src.m, tgt.m, N), prefix="e^{R_r}: ")
    rep.add("DGLA side: m_3 = 0 on all words",
            not tgt.m.has_arity(3) or all(not tgt.m.component(3, w) for w in tgt.space.words(3)))
    rep.add("DGLA side flat", not tgt.curvature())
    rep.data["cybe ratio"] = cy.ratio
    return rep


# ---------------------------------------------------------------- catalog entries


_SHIPPED = ("abelian(1)", "abelian(2)", "abelian(3)", "nonabelian2_double",
            "heisenberg_double", "sl2_double_diag", "sl2_bialgebra_double")


def catalog_names() -> List[str]:
    return list(_SHIPPED)


def _file_name(name: str) -> str:
    return name.replace("(", "").replace(")", "") + ".json"


def _graph(sp: LagrangianSplitting, E: Matrix) -> List[list]:
    return graph_lagrangian(sp, E).l_raw


def _spec_from_double(name, d: QuadraticLieAlgebra, splittings, pairs, **kw) -> AlgebraSpec:
    br = [(i, j, k, c) for i in range(d.dim) for j in range(i + 1, d.dim)
          for k, c in sorted(d.table[i][j].items())]
    return AlgebraSpec(name, list(d.names), br, [list(r) for r in d.gram], [0] * d.dim,
                       splittings, pairs, **kw)


def make_abelian(n: int) -> AlgebraSpec:
    """``R^n + R^n`` with ``<x_i, y_j> = delta_ij/2`` and zero bracket."""
    names = [f"x{i + 1}" for i in range(n)] + [f"y{i + 1}" for i in range(n)]
    gram = linalg.zeros(2 * n)
    for i in range(n):
        gram[i][n + i] = gram[n + i][i] = Fraction(1, 2)
    d = QuadraticLieAlgebra.from_brackets(f"abelian({n})", names, [], gram)
    e = [[1 if k == i else 0 for k in range(2 * n)] for i in range(2 * n)]
    X, Y = e[:n], e[n:]
    E = linalg.zeros(n)
    for i in range(n - 1):
        E[i][i + 1], E[i + 1][i] = 1, -1
    sp = LagrangianSplitting(d, X, Y)
    splits = {"x": X, "y": Y}
    pairs = []
    if n > 1:
        splits["graph"] = _graph(sp, E)
        pairs.append(("x", "y", "graph"))
    else:
        pairs.append(("x", "y", "y"))
    return _spec_from_double(f"abelian({n})", d, splits, pairs,
                             notes="zero bracket, hyperbolic pairing")


def make_nonabelian2_double() -> AlgebraSpec:
    g = nonabelian2()
    d, gv, gs = drinfeld_double(BialgebraSpec.zero(g), "nonabelian2_double")
    r = [[0, 1], [-1, 0]]
    sp = LagrangianSplitting(d, gv, gs)
    sps = LagrangianSplitting(d, gs, gv)
    splits = {"g": gv, "gstar": gs, "graph_r": _graph(sp, r), "graph_b": _graph(sps, r)}
    return _spec_from_double("nonabelian2_double", d, splits,
                             [("g", "gstar", "graph_r"), ("gstar", "g", "graph_b")],
                             lie_algebra=g.to_data(),
                             rmatrices={"r": RMatrixData([(0, 1, Fraction(1))], "triangular")},
                             cobracket=[],
                             notes="double of [x, y] = y with zero cobracket; r = x ^ y is triangular")


def make_heisenberg_double() -> AlgebraSpec:
    g = heisenberg()
    d, gv, gs = drinfeld_double(BialgebraSpec.zero(g), "heisenberg_double")
    sp = LagrangianSplitting(d, gv, gs)
    rxz = [[0, 0, 1], [0, 0, 0], [-1, 0, 0]]
    rxy = [[0, 1, 0], [-1, 0, 0], [0, 0, 0]]
    cm = [gv[0], gv[1], gs[2]]
    cl = [gs[0], gs[1], gv[2]]
    spc = LagrangianSplitting(d, cm, cl)
    splits = {"g": gv, "gstar": gs, "graph_xz": _graph(sp, rxz), "graph_xy": _graph(sp, rxy),
              "curved_m": cm, "curved_l": cl, "curved_graph": _graph(spc, rxz)}
    return _spec_from_double("heisenberg_double", d, splits,
                             [("g", "gstar", "graph_xz"), ("g", "gstar", "graph_xy"),
                              ("curved_m", "curved_l", "curved_graph")],
                             lie_algebra=g.to_data(),
                             rmatrices={"xz": RMatrixData([(0, 2, Fraction(1))], "triangular"),
                                        "xy": RMatrixData([(0, 1, Fraction(1))], "neither")},
                             cobracket=[],
                             notes="double of [x, y] = z with zero cobracket; curved_m = (x, y, z*) "
                                   "is not a subalgebra")


def make_sl2_double_diag() -> AlgebraSpec:
    g = sl2()
    d, diag, anti = cartan_double(g, "sl2_double_diag")
    sp = LagrangianSplitting(d, diag, anti)
    spa = LagrangianSplitting(d, anti, diag)
    rst = [[0, 0, R_ST_SCALE], [0, 0, 0], [-R_ST_SCALE, 0, 0]]
    ef = [[0, 0, 1], [0, 0, 0], [-1, 0, 0]]
    splits = {"diag": diag, "anti": anti, "graph_rst": _graph(sp, rst),
              "graph_minus_rst": _graph(sp, linalg.neg(rst)), "anti_graph": _graph(spa, ef)}
    return _spec_from_double("sl2_double_diag", d, splits,
                             [("diag", "anti", "graph_rst"), ("diag", "anti", "graph_minus_rst"),
                              ("anti", "diag", "anti_graph")],
                             lie_algebra=g.to_data(),
                             rmatrices={"r_st": RMatrixData([(0, 2, R_ST_SCALE)], "quasi-triangular",
                                                            R_ST_ETA_SCALE)},
                             constants={"ell3_scale": ELL3_SCALE, "dbar_scale": DBAR_SCALE,
                                        "r_st_scale": R_ST_SCALE, "r_st_eta_scale": R_ST_ETA_SCALE,
                                        "ce_sign": Fraction(CE_SIGN)},
                             notes="sl2 + sl2bar with trace form; diag is a subalgebra, "
                                   "[anti, anti] lies in diag")


def make_sl2_bialgebra_double() -> AlgebraSpec:
    g = sl2()
    rst = [[0, 0, R_ST_SCALE], [0, 0, 0], [-R_ST_SCALE, 0, 0]]
    b = BialgebraSpec.coboundary(g, rst)
    d, gv, gs = drinfeld_double(b, "sl2_bialgebra_double")
    sp = LagrangianSplitting(d, gv, gs)
    sps = LagrangianSplitting(d, gs, gv)
    ef = [[0, 0, 1], [0, 0, 0], [-1, 0, 0]]
    splits = {"g": gv, "gstar": gs, "graph_ef": _graph(sp, ef), "graph_b": _graph(sps, ef)}
    return _spec_from_double("sl2_bialgebra_double", d, splits,
                             [("g", "gstar", "graph_ef"), ("gstar", "g", "graph_b")],
                             lie_algebra=g.to_data(),
                             rmatrices={"r_st": RMatrixData([(0, 2, R_ST_SCALE)], "quasi-triangular",
                                                            R_ST_ETA_SCALE)},
                             cobracket=b.dual,
                             constants={"r_st_scale": R_ST_SCALE},
                             notes="Drinfeld double of sl2 with the cobracket of r_st")


def generate(name: str) -> AlgebraSpec:
    if name.startswith("abelian(") and name.endswith(")"):
        try:
            n = int(name[8:-1])
        except ValueError:
            raise KeyError(f"unknown catalog entry {name!r}") from None
        if not 1 <= n <= 4:
            raise KeyError("abelian(n) is catalogued for 1 <= n <= 4")
        return make_abelian(n)
    makers = {"nonabelian2_double": make_nonabelian2_double,
              "heisenberg_double": make_heisenberg_double,
              "sl2_double_diag": make_sl2_double_diag,
              "sl2_bialgebra_double": make_sl2_bialgebra_double}
    if name not in makers:
        raise KeyError(f"unknown catalog entry {name!r}; known: {', '.join(_SHIPPED)}")
    return makers[name]()


@lru_cache(maxsize=None)
def _load(name: str) -> AlgebraSpec:
    path = os.path.join(DATA_DIR, _file_name(name))
    if not os.path.exists(path):
        return generate(name)
    return load(path)


def builtin(name: str) -> AlgebraSpec:
    """Catalog entry by name (loaded from the data directory, validated once)."""
    spec = _load(name) if name in _SHIPPED else generate(name)
    rep = spec.validate()
    if not rep.passed:
        raise SpecError(f"catalog entry {name} fails validation: {[c.name for c in rep.failures()]}")
    return spec


def write_catalog(directory: str = DATA_DIR) -> List[str]:
    os.makedirs(directory, exist_ok=True)
    out = []
    for name in _SHIPPED:
        path = os.path.join(directory, _file_name(name))
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(dumps(generate(name)))
        out.append(path)
    return out


def lie_algebra_of(spec: AlgebraSpec) -> LieAlgebra:
    if spec.lie_algebra is None:
        raise ValueError(f"{spec.name} records no underlying Lie algebra")
    return LieAlgebra.from_data(spec.name.split("_")[0], spec.lie_algebra)


def random_bivector(n: int, rng: random.Random, lo: int = -3, hi: int = 3) -> Matrix:
    E = linalg.zeros(n)
    for i in range(n):
        for j in range(i + 1, n):
            x = Fraction(rng.randint(lo, hi), rng.randint(1, 3))
            E[i][j], E[j][i] = x, -x
    return E
