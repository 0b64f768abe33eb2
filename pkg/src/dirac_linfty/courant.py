"""Quadratic Lie algebras, Lagrangian splittings, the spinor module and the cubic Hamiltonian.

Conventions (fixed once, certified by tests):

* A splitting ``d = M + L`` carries an ``M`` basis ``m_i`` and an ``L`` basis
  ``l_i`` normalized so that ``2<l_i, m_j> = delta_ij``.
* The spinor module is the exterior algebra on generators ``theta^i`` dual to
  ``m_i``; ``m_i`` acts by the contraction ``iota_i`` and ``l_i`` by
  ``theta^i ^``.  Then ``uv + vu = 2<u, v>``.
* ``iota`` of a bivector composes innermost-first:
  ``iota(m_i ^ m_j) = iota_j o iota_i``.
* A bivector ``eps = sum_{i<j} E_ij m_i ^ m_j`` is stored as the skew matrix
  ``E``; it is read as the map ``L -> M``, ``l_k -> sum_i E_ik m_i``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement, product
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple

from . import linalg
from .graded import GradedBasis, Vec, add_into, scale
from .kernels import contract_sign, merge_sign
from .linalg import Matrix
from .report import ConstructionError, GeometricError, InvariantViolation, Report
from .scalars import Scalar

# coefficient of theta^i theta^j theta^k (i<j<k) in N_M . 1 relative to <[m_i, m_j], m_k>
NIJENHUIS_SCALE = -2


# ---------------------------------------------------------------- algebra


@dataclass(frozen=True, eq=False)
class QuadraticLieAlgebra:
    """Lie algebra with structure constants ``[e_i, e_j] = sum_k c[i][j][k] e_k`` and Gram matrix."""

    name: str
    names: Tuple[str, ...]
    table: Tuple[Tuple[Dict[int, Scalar], ...], ...]
    gram: Tuple[Tuple[Scalar, ...], ...]

    @classmethod
    def from_brackets(cls, name: str, names: Sequence[str], brackets, gram) -> "QuadraticLieAlgebra":
        """``brackets``: iterable of ``(i, j, k, c)``; a missing ``[e_j, e_i]`` is filled by antisymmetry."""
        n = len(names)
        if len(gram) != n or any(len(r) != n for r in gram):
            raise ValueError("Gram matrix shape does not match the basis")
        given: Dict[Tuple[int, int], Dict[int, Scalar]] = {}
        for i, j, k, c in brackets:
            if not all(0 <= x < n for x in (i, j, k)):
                raise ValueError(f"bracket index out of range: {(i, j, k)}")
            given.setdefault((i, j), {})
            given[(i, j)][k] = given[(i, j)].get(k, 0) + c
        table = [[{} for _ in range(n)] for _ in range(n)]
        for (i, j), row in given.items():
            table[i][j] = {k: c for k, c in row.items() if c}
            if (j, i) not in given and i != j:
                table[j][i] = {k: -c for k, c in row.items() if c}
        return cls(name, tuple(names), tuple(tuple(r) for r in table),
                   tuple(tuple(r) for r in gram))

    @property
    def dim(self) -> int:
        return len(self.names)

    def basis_vector(self, i: int) -> list:
        return [1 if k == i else 0 for k in range(self.dim)]

    def bracket(self, u: Sequence[Scalar], v: Sequence[Scalar]) -> list:
        out = [0] * self.dim
        for i, ui in enumerate(u):
            if not ui:
                continue
            for j, vj in enumerate(v):
                if not vj:
                    continue
                for k, c in self.table[i][j].items():
                    out[k] += ui * vj * c
        return out

    def pair(self, u: Sequence[Scalar], v: Sequence[Scalar]) -> Scalar:
        s = 0
        for i, ui in enumerate(u):
            if ui:
                row = self.gram[i]
                for j, vj in enumerate(v):
                    if vj and row[j]:
                        s += ui * row[j] * vj
        return s

    def cubic(self, u, v, w) -> Scalar:
        """``<[u, v], w>``."""
        return self.pair(self.bracket(u, v), w)

    def ad(self, u) -> Matrix:
        cols = [self.bracket(u, self.basis_vector(j)) for j in range(self.dim)]
        return linalg.transpose(cols)

    def with_constant(self, i: int, j: int, k: int, value: Scalar) -> "QuadraticLieAlgebra":
        """Copy with the single entry ``c[i][j][k]`` (and its antisymmetric partner) replaced."""
        table = [[dict(x) for x in r] for r in self.table]
        table[i][j][k] = value
        table[j][i][k] = -value
        for a, b in ((i, j), (j, i)):
            table[a][b] = {q: c for q, c in table[a][b].items() if c}
        return QuadraticLieAlgebra(self.name + "*", self.names,
                                   tuple(tuple(r) for r in table), self.gram)


def validate_double(d: QuadraticLieAlgebra) -> Report:
    """Antisymmetry, Jacobi, symmetry/nondegeneracy/invariance of the pairing."""
    rep = Report(f"validate_double {d.name}")
    n = d.dim
    e = [d.basis_vector(i) for i in range(n)]
    anti = [(d.names[i], d.names[j]) for i in range(n) for j in range(i, n)
            if any(a + b for a, b in zip(d.bracket(e[i], e[j]), d.bracket(e[j], e[i])))]
    rep.add("antisymmetry", not anti, residuals=anti)
    jac = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                r = [a + b + c for a, b, c in zip(
                    d.bracket(e[i], d.bracket(e[j], e[k])),
                    d.bracket(e[j], d.bracket(e[k], e[i])),
                    d.bracket(e[k], d.bracket(e[i], e[j])))]
                if any(r):
                    jac.append({"triple": [d.names[i], d.names[j], d.names[k]], "residual": r})
    rep.add("jacobi", not jac, residuals=jac)
    sym = [(i, j) for i in range(n) for j in range(n) if d.gram[i][j] != d.gram[j][i]]
    rep.add("pairing symmetric", not sym, residuals=sym)
    rk = linalg.rank([[x if not hasattr(x, "coeffs") else x.coeffs[0] for x in r] for r in d.gram])
    rep.add("pairing nondegenerate", rk == n, detail=f"rank {rk} of {n}")
    inv = []
    for i, j, k in product(range(n), repeat=3):
        r = d.cubic(e[i], e[j], e[k]) + d.pair(e[j], d.bracket(e[i], e[k]))
        if r:
            inv.append({"triple": [d.names[i], d.names[j], d.names[k]], "residual": r})
    rep.add("pairing invariant", not inv, residuals=inv)
    return rep


def validate_lagrangian(d: QuadraticLieAlgebra, vectors: Sequence[Sequence[Scalar]]) -> Report:
    """Isotropy and half-dimensionality of ``span(vectors)``."""
    vecs = [list(v) for v in vectors]
    if any(len(v) != d.dim for v in vecs):
        raise ValueError("subspace vectors have the wrong length")
    if linalg.rank([[_const(x) for x in v] for v in vecs]) != len(vecs):
        raise ValueError("spanning set is linearly dependent")
    rep = Report("validate_lagrangian")
    rep.add("half dimension", 2 * len(vecs) == d.dim, detail=f"{len(vecs)} of {d.dim}")
    bad = [(a, b, d.pair(vecs[a], vecs[b])) for a in range(len(vecs)) for b in range(a, len(vecs))
           if d.pair(vecs[a], vecs[b])]
    rep.add("isotropic", not bad, residuals=bad)
    return rep


def is_subalgebra(d: QuadraticLieAlgebra, vectors) -> bool:
    """Closure of ``span(vectors)`` under the bracket.

    For a Lagrangian span ``S = S^perp``, closure is the vanishing of ``<[s, s'], s''>``,
    which is exact over series scalars; otherwise a rational rank test is used.
    """
    vecs = [list(v) for v in vectors]
    if 2 * len(vecs) == d.dim and all(not d.pair(a, b) for a in vecs for b in vecs):
        return all(not d.cubic(a, b, c) for a in vecs for b in vecs for c in vecs)
    vecs = [[_const(x) for x in v] for v in vecs]
    r = linalg.rank(vecs)
    for a in range(len(vecs)):
        for b in range(a + 1, len(vecs)):
            if linalg.rank(vecs + [d.bracket(vecs[a], vecs[b])]) > r:
                return False
    return True


def _const(x):
    return x.coeffs[0] if hasattr(x, "coeffs") else x


# ---------------------------------------------------------------- splitting


@dataclass(eq=False)
class LagrangianSplitting:
    """Transverse Lagrangian pair ``(M, L)`` with the normalized ``L`` basis."""

    d: QuadraticLieAlgebra
    m: List[list]
    l_raw: List[list]
    m_names: Tuple[str, ...] = ()
    l: List[list] = field(init=False)

    def __post_init__(self):
        self.m = [list(v) for v in self.m]
        self.l_raw = [list(v) for v in self.l_raw]
        n = len(self.m)
        if not self.m_names:
            self.m_names = tuple(f"m{i + 1}" for i in range(n))
        for label, sub in (("M", self.m), ("L", self.l_raw)):
            rep = validate_lagrangian(self.d, sub)
            if not rep.passed:
                raise GeometricError(f"{label} is not Lagrangian: {rep.failures()[0].name}")
        pmat = [[2 * self.d.pair(lv, mv) for mv in self.m] for lv in self.l_raw]
        try:
            pinv = linalg.inverse(pmat)
        except linalg.SingularMatrixError:
            raise GeometricError("L is not transverse to M") from None
        self.l = [[sum((pinv[i][k] * self.l_raw[k][c] for k in range(n)), 0)
                   for c in range(self.d.dim)] for i in range(n)]
        self._split = None

    @property
    def n(self) -> int:
        return len(self.m)

    def coords(self, u) -> Tuple[list, list]:
        """``u = sum a_i m_i + sum b_i l_i``."""
        a = [2 * self.d.pair(u, lv) for lv in self.l]
        b = [2 * self.d.pair(u, mv) for mv in self.m]
        return a, b

    def vector(self, a, b) -> list:
        out = [0] * self.d.dim
        for coeff, vecs in ((a, self.m), (b, self.l)):
            for c, v in zip(coeff, vecs):
                if c:
                    for k, x in enumerate(v):
                        if x:
                            out[k] += c * x
        return out

    def split_basis(self) -> List[list]:
        return self.m + self.l

    def split_cubic(self) -> Dict[Tuple[int, int, int], Scalar]:
        """Nonzero ``<[u_a, u_b], u_c>`` over the split basis ``(m_1..m_n, l_1..l_n)``."""
        if self._split is None:
            basis = self.split_basis()
            brs = {}
            for a in range(2 * self.n):
                for b in range(2 * self.n):
                    brs[a, b] = self.d.bracket(basis[a], basis[b])
            out = {}
            for (a, b), br in brs.items():
                if not any(br):
                    continue
                for c in range(2 * self.n):
                    v = self.d.pair(br, basis[c])
                    if v:
                        out[a, b, c] = v
            self._split = out
        return self._split

    def form_basis(self) -> GradedBasis:
        return GradedBasis.odd([f"{nm}*" for nm in self.m_names])


def graph_lagrangian(sp: LagrangianSplitting, E: Matrix) -> LagrangianSplitting:
    """``(M, L')`` with ``l'_k = l_k + sum_i E_ik m_i``."""
    n = sp.n
    if len(E) != n or not linalg.is_skew(E):
        raise ValueError("bivector matrix must be a skew n x n matrix")
    lp = []
    for k in range(n):
        a = [E[i][k] for i in range(n)]
        b = [1 if i == k else 0 for i in range(n)]
        lp.append(sp.vector(a, b))
    return LagrangianSplitting(sp.d, sp.m, lp, sp.m_names)


def bivector_between(sp: LagrangianSplitting, l_prime: Sequence[Sequence[Scalar]]) -> Matrix:
    """Solve ``L' = graph(E)`` for the skew matrix ``E``; non-transverse ``L'`` is a geometric error."""
    target = LagrangianSplitting(sp.d, sp.m, l_prime, sp.m_names)
    n = sp.n
    E = linalg.zeros(n)
    for k, lv in enumerate(target.l):
        a, b = sp.coords(lv)
        if any(b[i] != (1 if i == k else 0) for i in range(n)):
            raise InvariantViolation("normalized L' basis does not project to the L basis")
        for i in range(n):
            E[i][k] = a[i]
    if not linalg.is_skew(E):
        raise InvariantViolation("graph map of a Lagrangian complement is not skew")
    return E


# ---------------------------------------------------------------- operators


def _gen_act(g: int, n: int, mask: int) -> Optional[Tuple[int, int]]:
    """Clifford generator ``g`` of the split basis on a word: ``g < n`` contracts, else wedges."""
    if g < n:
        bit = 1 << g
        if not mask & bit:
            return None
        return mask ^ bit, contract_sign(g, mask, mask)
    i = g - n
    bit = 1 << i
    if mask & bit:
        return None
    return mask | bit, merge_sign(bit, mask, mask | bit)


class CliffordOperator:
    """Linear operator on the spinor module, stored by sparse columns ``{word: image}``."""

    __slots__ = ("n", "cols")

    def __init__(self, n: int, cols: Dict[int, Vec] | None = None):
        self.n = n
        self.cols = {w: v for w, v in (cols or {}).items() if v}

    @classmethod
    def identity(cls, n: int) -> "CliffordOperator":
        return cls(n, {w: {w: 1} for w in range(1 << n)})

    @classmethod
    def zero(cls, n: int) -> "CliffordOperator":
        return cls(n)

    @classmethod
    def generator(cls, g: int, n: int) -> "CliffordOperator":
        cols = {}
        for w in range(1 << n):
            r = _gen_act(g, n, w)
            if r:
                cols[w] = {r[0]: r[1]}
        return cls(n, cols)

    @classmethod
    def wedge_by(cls, form: Vec, n: int) -> "CliffordOperator":
        """Left multiplication by a form."""
        cols = {}
        for w in range(1 << n):
            img: Vec = {}
            for m, c in form.items():
                if not m & w:
                    add_into(img, {m | w: c * merge_sign(m, w, m | w)})
            cols[w] = img
        return cls(n, cols)

    def apply(self, vec: Vec) -> Vec:
        out: Vec = {}
        for w, c in vec.items():
            col = self.cols.get(w)
            if col:
                add_into(out, col, c)
        return out

    def __matmul__(self, other: "CliffordOperator") -> "CliffordOperator":
        return CliffordOperator(self.n, {w: self.apply(v) for w, v in other.cols.items()})

    def __add__(self, other):
        cols = {w: dict(v) for w, v in self.cols.items()}
        for w, v in other.cols.items():
            cols[w] = add_into(cols.get(w, {}), v)
        return CliffordOperator(self.n, cols)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return CliffordOperator(self.n, {w: scale(v, -1) for w, v in self.cols.items()})

    def __mul__(self, k):
        return CliffordOperator(self.n, {w: scale(v, k) for w, v in self.cols.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, CliffordOperator) and self.n == other.n and self.cols == other.cols

    def __bool__(self):
        return bool(self.cols)

    def entries(self):
        for w in sorted(self.cols):
            for t in sorted(self.cols[w]):
                yield t, w, self.cols[w][t]

    def degrees(self) -> set[int]:
        """Form-degree shifts present (the Fock/U-grading)."""
        return {bin(t).count("1") - bin(w).count("1") for t, w, _ in self.entries()}

    def piece(self, k: int) -> "CliffordOperator":
        cols = {}
        for w, v in self.cols.items():
            pw = bin(w).count("1")
            part = {t: c for t, c in v.items() if bin(t).count("1") - pw == k}
            if part:
                cols[w] = part
        return CliffordOperator(self.n, cols)

    def pieces(self) -> Dict[int, "CliffordOperator"]:
        return {k: self.piece(k) for k in sorted(self.degrees())}

    @property
    def parity(self) -> int:
        ps = {k & 1 for k in self.degrees()}
        if len(ps) > 1:
            raise ValueError("operator is not parity-homogeneous")
        return ps.pop() if ps else 0

    def commutator(self, other: "CliffordOperator") -> "CliffordOperator":
        """Graded commutator ``[self, other]``."""
        if self.parity and other.parity:
            return (self @ other) + (other @ self)
        return (self @ other) - (other @ self)

    def is_scalar(self) -> Optional[Scalar]:
        """The scalar ``c`` when ``self = c * Id``, else None."""
        c = self.cols.get(0, {}).get(0, 0)
        for w in range(1 << self.n):
            col = self.cols.get(w, {})
            if (col != ({w: c} if c else {})):
                return None
        return c

    def matrix(self) -> Matrix:
        size = 1 << self.n
        out = linalg.zeros(size)
        for t, w, c in self.entries():
            out[t][w] = c
        return out

    def __repr__(self):
        return f"CliffordOperator(n={self.n}, nnz={sum(len(v) for v in self.cols.values())})"


@dataclass(eq=False)
class SpinorModule:
    """``Lambda M^*`` with the Clifford action of the double attached to a splitting."""

    splitting: LagrangianSplitting

    @property
    def n(self) -> int:
        return self.splitting.n

    @property
    def forms(self) -> GradedBasis:
        return self.splitting.form_basis()

    def gamma_split(self, g: int) -> CliffordOperator:
        return CliffordOperator.generator(g, self.n)

    def gamma(self, u: Sequence[Scalar]) -> CliffordOperator:
        a, b = self.splitting.coords(u)
        op = CliffordOperator.zero(self.n)
        for g, c in enumerate(list(a) + list(b)):
            if c:
                op = op + c * self.gamma_split(g)
        return op

    def unit(self) -> Vec:
        return {0: 1}


def clifford_act(sm: SpinorModule, u: Sequence[Scalar], rho: Vec) -> Vec:
    """``u . rho``: the ``M``-part contracts, the ``L``-part wedges."""
    a, b = sm.splitting.coords(u)
    out: Vec = {}
    n = sm.n
    for w, c in rho.items():
        for g, x in enumerate(list(a) + list(b)):
            if x:
                r = _gen_act(g, n, w)
                if r:
                    add_into(out, {r[0]: r[1] * c * x})
    return out


def cubic_clifford(n: int, f: Dict[Tuple[int, int, int], Scalar]) -> CliffordOperator:
    """``-(1/3) sum f_abc g(u^a) g(u^b) g(u^c)`` over split indices, ``u^a`` the dual generator of ``u_a``."""
    dual = lambda a: a + n if a < n else a - n  # noqa: E731
    cols: Dict[int, Vec] = {}
    coeff = Fraction(-1, 3)
    for w in range(1 << n):
        img: Vec = {}
        for (a, b, c), v in f.items():
            r = _gen_act(dual(c), n, w)
            if not r:
                continue
            r2 = _gen_act(dual(b), n, r[0])
            if not r2:
                continue
            r3 = _gen_act(dual(a), n, r2[0])
            if not r3:
                continue
            add_into(img, {r3[0]: coeff * v * r[1] * r2[1] * r3[1]})
        if img:
            cols[w] = img
    return CliffordOperator(n, cols)


def build_hamiltonian(sp: LagrangianSplitting, certify: bool = True) -> CliffordOperator:
    """Cubic Clifford element with ``[[H, x], y] = [x, y]`` on the spinor module.

    In the split basis with dual generators ``u^a`` (``m_i <-> l_i``, Gram
    inverse ``2``) this is ``H = -(1/3) sum f_abc g(u^a) g(u^b) g(u^c)``,
    ``f_abc = <[u_a, u_b], u_c>``.
    """
    H = cubic_clifford(sp.n, sp.split_cubic())
    if certify:
        bad = derived_bracket_failures(sp, H, first_only=True)
        if bad:
            raise ConstructionError(f"derived-bracket identity fails on pair {bad[0]}")
    return H


def derived_bracket_failures(sp: LagrangianSplitting, H: CliffordOperator,
                             first_only: bool = False) -> list:
    """Basis pairs ``(x, y)`` of the double where ``[[H, x], y] != [x, y]`` as operators."""
    sm = SpinorModule(sp)
    d = sp.d
    gens = [sm.gamma(d.basis_vector(i)) for i in range(d.dim)]
    bad = []
    for i in range(d.dim):
        hx = H.commutator(gens[i])
        for j in range(d.dim):
            lhs = hx.commutator(gens[j])
            rhs = sm.gamma(d.bracket(d.basis_vector(i), d.basis_vector(j)))
            if lhs != rhs:
                bad.append((d.names[i], d.names[j]))
                if first_only:
                    return bad
    return bad


def square_scalar(H: CliffordOperator) -> Optional[Scalar]:
    """``c`` with ``H^2 = c Id`` (None when the square is not scalar)."""
    return (H @ H).is_scalar()


@dataclass
class Decomposition:
    N_L: CliffordOperator
    d: CliffordOperator
    dbar: CliffordOperator
    N_M: CliffordOperator

    def total(self) -> CliffordOperator:
        return self.N_L + self.d + self.dbar + self.N_M


def decompose_by_degree(H: CliffordOperator) -> Decomposition:
    stray = H.degrees() - {-3, -1, 1, 3}
    if stray:
        raise InvariantViolation(f"components of degree {sorted(stray)} outside {{-3,-1,1,3}}")
    return Decomposition(H.piece(-3), H.piece(-1), H.piece(1), H.piece(3))


def nijenhuis_form(H: CliffordOperator) -> Vec:
    """``N_M`` as a 3-form: the degree-3 piece applied to the unit spinor."""
    return H.piece(3).apply({0: 1})


def nijenhuis_expected(sp: LagrangianSplitting) -> Vec:
    n = sp.n
    out: Vec = {}
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                v = sp.d.cubic(sp.m[i], sp.m[j], sp.m[k])
                if v:
                    out[(1 << i) | (1 << j) | (1 << k)] = NIJENHUIS_SCALE * v
    return out


# ---------------------------------------------------------------- order


@dataclass
class OrderCertificate:
    order: int
    passed: bool
    checked: int
    counterexample: Optional[Tuple[int, ...]] = None


def operator_order(op: CliffordOperator, k: int) -> OrderCertificate:
    """Check ``ad_{x_k} ... ad_{x_0} op = 0`` over all tuples of 1-form generators.

    Multiplication operators by generators pairwise graded-commute, so
    multisets of generators suffice.
    """
    n = op.n
    gens = [CliffordOperator.wedge_by({1 << i: 1}, n) for i in range(n)]
    checked = 0
    cache: Dict[Tuple[int, ...], CliffordOperator] = {(): op}

    def ad_chain(tup):
        if tup in cache:
            return cache[tup]
        prev = ad_chain(tup[:-1])
        res = gens[tup[-1]].commutator(prev) if prev else prev
        cache[tup] = res
        return res

    for tup in combinations_with_replacement(range(n), k + 1):
        checked += 1
        if ad_chain(tup):
            return OrderCertificate(k, False, checked, tup)
    return OrderCertificate(k, True, checked)


def minimal_order(op: CliffordOperator) -> int:
    """Smallest ``k`` with an order-``k`` certificate (``-1`` for the zero operator)."""
    if not op:
        return -1
    k = 0
    while not operator_order(op, k).passed:
        k += 1
    return k


# ---------------------------------------------------------------- gauge


def iota_bivector(E: Matrix, n: int) -> CliffordOperator:
    """``iota_eps = sum_{i<j} E_ij iota_j iota_i``."""
    op = CliffordOperator.zero(n)
    for i in range(n):
        for j in range(i + 1, n):
            if E[i][j]:
                op = op + E[i][j] * (CliffordOperator.generator(j, n) @ CliffordOperator.generator(i, n))
    return op


def gauge_conjugate(H: CliffordOperator, E: Matrix) -> CliffordOperator:
    """``e^{-iota_eps} H e^{iota_eps} = sum_k (-1)^k/k! ad_{iota}^k H`` (finite: ad lowers degree by 2)."""
    iota = iota_bivector(E, H.n)
    out = H
    term = H
    k = 0
    while True:
        k += 1
        term = term.commutator(iota)   # [term, iota] = -ad_iota term
        if not term:
            break
        out = out + Fraction(1, factorial(k)) * term
        if k > 2 * H.n + 4:
            raise InvariantViolation("gauge series failed to terminate")
    return out


def exp_nilpotent(op: CliffordOperator, sign: int = 1) -> CliffordOperator:
    out = CliffordOperator.identity(op.n)
    term = CliffordOperator.identity(op.n)
    k = 0
    while True:
        k += 1
        term = (sign * op) @ term * Fraction(1, k)
        if not term:
            return out
        out = out + term


def gauge_conjugate_direct(H: CliffordOperator, E: Matrix) -> CliffordOperator:
    """Same conjugation computed as a product of finite operator exponentials."""
    iota = iota_bivector(E, H.n)
    return exp_nilpotent(iota, -1) @ H @ exp_nilpotent(iota, 1)
