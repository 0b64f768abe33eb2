"""Maurer-Cartan elements, their transport, graph transforms, and the complex-structure block layer.

A 2-form ``omega = sum_{i<j} W_ij theta^i ^ theta^j`` is identified with the
skew matrix ``W``, read as the map ``M -> L``, ``m_k -> sum_i W_ik l_i``; its
graph is ``M' = {m + W m}``.  With this identification the Maurer-Cartan
equation of the ``(M, L)`` structure says ``M'`` is closed under the bracket,
and ``e^{R_eps}`` sends ``W`` to ``W (1 - E W)^{-1}``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from . import linalg
from .coalgebra import TaylorMap, maurer_cartan, mc_pushforward
from .courant import LagrangianSplitting, graph_lagrangian, is_subalgebra
from .derived import DerivedLInfty, exp_r, iota_forms, r_epsilon_value, structure_of
from .graded import Vec, add_into, wedge_raw
from .linalg import Matrix, SingularMatrixError
from .report import GeometricError, Report
from .scalars import Series, Scalar, current_order, t, truncation

# forms <-> maps: omega_ij (i<j coefficient) = FORM_MAP_SCALE * W_ij
FORM_MAP_SCALE = 1


# ---------------------------------------------------------------- forms and maps


def two_form_to_map(omega: Vec, n: int, scale: Scalar = FORM_MAP_SCALE) -> Matrix:
    W = linalg.zeros(n)
    for mask, c in omega.items():
        idx = [i for i in range(n) if mask >> i & 1]
        if len(idx) != 2:
            raise ValueError("not a 2-form")
        i, j = idx
        W[i][j] = c / scale if scale != 1 else c
        W[j][i] = -W[i][j]
    return W


def map_to_two_form(W: Matrix, scale: Scalar = FORM_MAP_SCALE) -> Vec:
    n = len(W)
    if not linalg.is_skew(W):
        raise ValueError("map is not skew")
    return {(1 << i) | (1 << j): W[i][j] * scale
            for i in range(n) for j in range(i + 1, n) if W[i][j]}


def graph_vectors(sp: LagrangianSplitting, W: Matrix) -> List[list]:
    """Basis ``m_k + sum_i W_ik l_i`` of ``graph(W: M -> L)``."""
    n = sp.n
    return [sp.vector([1 if i == k else 0 for i in range(n)], [W[i][k] for i in range(n)])
            for k in range(n)]


def graph_map_of(sp: LagrangianSplitting, vectors: Sequence[Sequence[Scalar]]) -> Matrix:
    """``W`` with ``span(vectors) = graph(W: M -> L)``; requires transversality to ``L``."""
    A, B = [], []
    for v in vectors:
        a, b = sp.coords(v)
        A.append(a)
        B.append(b)
    A, B = linalg.transpose(A), linalg.transpose(B)
    try:
        Ainv = linalg.inverse(A)
    except SingularMatrixError:
        raise GeometricError("subspace is not transverse to L") from None
    return linalg.mul(B, Ainv)


# ---------------------------------------------------------------- MC evaluation


@dataclass
class MCReport:
    residual: Vec
    by_degree: Dict[int, Vec] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.residual

    def __bool__(self):
        return self.passed


def mc_check(structure, omega: Vec) -> MCReport:
    """``sum_k (1/k!) m_k(omega, ..., omega)`` for a derived structure or a Taylor map."""
    m = structure.m if isinstance(structure, DerivedLInfty) else structure
    res = maurer_cartan(m, omega)
    by: Dict[int, Vec] = {}
    for w, c in res.items():
        by.setdefault(bin(w).count("1"), {})[w] = c
    return MCReport(res, by)


def mc_transport(E: Matrix, W: Matrix, order: Optional[int] = None) -> Matrix:
    """``sum_{n>=0} W (E W)^n``, stopping when the terms vanish or exceed the truncation order."""
    T = current_order() if order is None else order
    out = linalg.copy(W)
    term = linalg.copy(W)
    for _ in range(T + 1):
        term = linalg.chain(term, E, W)
        if linalg.is_zero(term):
            return out
        out = linalg.add(out, term)
    if _all_truncating(E, W, T):
        return out
    raise GeometricError("transport series does not terminate at this truncation order")


def _all_truncating(E, W, T) -> bool:
    from .scalars import valuation
    vals = [valuation(x) for r in E for x in r if x]
    return bool(vals) and min(vals) >= 1 or all(not x for r in W for x in r)


def mc_transport_inverse_form(rho: Matrix, E: Matrix, order: Optional[int] = None) -> Matrix:
    """``(1 + rho E)^{-1} rho = rho - rho E rho + rho E rho E rho - ...``."""
    n = len(rho)
    try:
        inv = linalg.inverse(linalg.add(linalg.identity(n), linalg.mul(rho, E)))
    except SingularMatrixError:
        raise GeometricError("1 + rho eps is not invertible") from None
    return linalg.mul(inv, rho)


def graph_transform(W: Matrix, E: Matrix, sp: Optional[LagrangianSplitting] = None) -> Matrix:
    """Re-express ``graph(W)`` over ``M`` in the decomposition ``(M, L' = graph(E))`` by solving the graph equations.

    Without a splitting, the double is modelled in split coordinates
    ``(m-part, l-part)``: ``graph(W)`` has columns ``(I; W)`` and ``l'_k = (E e_k; e_k)``.
    """
    n = len(W)
    if sp is not None:
        target = graph_lagrangian(sp, E)
        return graph_map_of(target, graph_vectors(sp, W))
    # coordinates of (x; y) in (M, L'): l'-part y, m-part x - E y
    A = linalg.sub(linalg.identity(n), linalg.mul(E, W))
    B = W
    try:
        Ainv = linalg.inverse(A)
    except SingularMatrixError:
        raise GeometricError("1 - eps omega is singular: graph not transverse") from None
    return linalg.mul(B, Ainv)


def graph_transform_closed(W: Matrix, E: Matrix) -> Matrix:
    n = len(W)
    return linalg.mul(W, linalg.inverse(linalg.sub(linalg.identity(n), linalg.mul(E, W))))


def graph_transform_certified(W: Matrix, E: Matrix, sp: Optional[LagrangianSplitting] = None) -> Matrix:
    out = graph_transform(W, E, sp)
    if not linalg.equal(out, graph_transform_closed(W, E)):
        raise GeometricError("graph solve disagrees with the closed formula")
    return out


# ---------------------------------------------------------------- MC solutions


def adjoint_exp(sp: LagrangianSplitting, X: Sequence[Scalar], order: Optional[int] = None) -> Matrix:
    """``exp(t ad_X)`` truncated in ``t``."""
    T = current_order() if order is None else order
    ad = sp.d.ad(list(X))
    dim = sp.d.dim
    out = linalg.identity(dim)
    term = linalg.identity(dim)
    tt = t(T)
    for k in range(1, T + 1):
        term = linalg.scale(linalg.mul(ad, term), tt * Fraction(1, k))
        out = linalg.add(out, term)
    return out


def mc_seed(sp: LagrangianSplitting, subalgebra: Sequence[Sequence[Scalar]], X: Sequence[Scalar],
            order: Optional[int] = None) -> Matrix:
    """Graph map of ``exp(t ad_X) D`` over ``M`` for a Lagrangian subalgebra ``D`` transverse to ``L``."""
    g = adjoint_exp(sp, X, order)
    moved = [linalg.mul_vec(g, list(v)) for v in subalgebra]
    return graph_map_of(sp, moved)


def is_dirac_graph(sp: LagrangianSplitting, W: Matrix) -> bool:
    return is_subalgebra(sp.d, graph_vectors(sp, W))


def solve_mc_order_by_order(m: TaylorMap, n: int, first: Matrix, order: Optional[int] = None) -> Matrix:
    """Flat structure: extend ``omega_1`` (an ``m_1``-closed 2-form) to ``omega = sum t^k omega_k``.

    Each order solves ``m_1(omega_k) = -[MC(omega_{<k})]_k`` on 2-forms;
    unsolvable orders raise :class:`GeometricError` (obstruction).
    """
    T = current_order() if order is None else order
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    masks = [(1 << i) | (1 << j) for i, j in pairs]
    triples = [w for w in range(1 << n) if bin(w).count("1") == 3]
    cols = [m.component(1, (w,)) for w in masks]
    mat = [[col.get(r, 0) for col in cols] for r in triples]
    coeffs: List[Matrix] = [linalg.zeros(n), [list(r) for r in first]]
    with truncation(T):
        for k in range(2, T + 1):
            omega = _series_form(coeffs, masks, pairs, T)
            res = maurer_cartan(m, omega)
            rhs = [-_coeff(res.get(r, 0), k) for r in triples]
            sol = _solve_particular(mat, rhs)
            if sol is None:
                raise GeometricError(f"Maurer-Cartan equation obstructed at order {k}")
            Wk = linalg.zeros(n)
            for (i, j), x in zip(pairs, sol):
                Wk[i][j] = x
                Wk[j][i] = -x
            coeffs.append(Wk)
        return two_form_to_map(_series_form(coeffs, masks, pairs, T), n)


def _coeff(x, k):
    return x[k] if isinstance(x, Series) else (x if k == 0 else 0)


def _series_form(coeffs, masks, pairs, T) -> Vec:
    out = {}
    for mask, (i, j) in zip(masks, pairs):
        s = Series([c[i][j] for c in coeffs], T)
        if s:
            out[mask] = s
    return out


def _solve_particular(mat, rhs) -> Optional[list]:
    if not mat:
        return [] if not any(rhs) else None
    aug = [list(r) + [b] for r, b in zip(mat, rhs)]
    red, piv = linalg.rref(aug)
    ncols = len(mat[0])
    if ncols in piv:
        return None
    sol = [Fraction(0)] * ncols
    for i, p in enumerate(piv):
        sol[p] = red[i][-1]
    return sol


# ---------------------------------------------------------------- certificates


def mc_equivalence_certificate(sp: LagrangianSplitting, W: Matrix, E: Matrix,
                               order: Optional[int] = None, N: int = 4) -> Report:
    """MC in ``(M, L)`` implies MC of the transformed element in ``(M, graph(E))``; all transports agree."""
    T = current_order() if order is None else order
    rep = Report("Maurer-Cartan equivalence")
    n = sp.n
    with truncation(T):
        src = structure_of(sp, N)
        tgt = structure_of(graph_lagrangian(sp, E), N)
        omega = map_to_two_form(W)
        pre = mc_check(src, omega)
        rep.add("precondition: MC in (M, L)", pre.passed, residuals=[pre.residual] if pre.residual else [])
        Wp = graph_transform(W, E, sp)
        rep.add("graph solve = closed formula", linalg.equal(Wp, graph_transform_closed(W, E)))
        rep.add("graph transform = series transport", linalg.equal(Wp, mc_transport(E, W, T)))
        push = mc_pushforward(exp_r(E, n, bound=T + 2), omega, T)
        rep.add("graph transform = e^R pushforward", push == map_to_two_form(Wp))
        post = mc_check(tgt, map_to_two_form(Wp))
        rep.add("MC in (M, L')", post.passed, residuals=[post.residual] if post.residual else [])
    return rep


# ---------------------------------------------------------------- complex-structure blocks


def _block_diag(a: Matrix, b: Matrix) -> Matrix:
    k, l = len(a), len(b)
    out = linalg.zeros(k + l)
    for i in range(k):
        for j in range(k):
            out[i][j] = a[i][j]
    for i in range(l):
        for j in range(l):
            out[k + i][k + j] = b[i][j]
    return out


@dataclass
class ComplexBlocks:
    """Pointwise data of a deformed complex structure; see :func:`complex_blocks`."""

    phi: Matrix
    phibar: Matrix
    Phi: Matrix
    Phibar: Matrix
    Psi: Matrix
    Psibar: Matrix
    Upsilon: Matrix
    E: Matrix
    eps: Matrix
    report: Report


def pointwise_double(k: int):
    """``T10 + T01 + T*10 + T*01`` with pairing ``(xi(Y) + eta(X))/2``; ``M = T01 + T*10``, ``L = T10 + T*01``."""
    from .courant import QuadraticLieAlgebra
    dim = 4 * k
    names = ([f"d{i}" for i in range(k)] + [f"db{i}" for i in range(k)]
             + [f"dz{i}" for i in range(k)] + [f"dzb{i}" for i in range(k)])
    gram = linalg.zeros(dim)
    half = Fraction(1, 2)
    for i in range(k):
        gram[i][2 * k + i] = gram[2 * k + i][i] = half        # T10 with T*10
        gram[k + i][3 * k + i] = gram[3 * k + i][k + i] = half  # T01 with T*01
    d = QuadraticLieAlgebra.from_brackets("pointwise", names, [], gram)
    unit = lambda i: [1 if c == i else 0 for c in range(dim)]  # noqa: E731
    M = [unit(k + i) for i in range(k)] + [unit(2 * k + i) for i in range(k)]
    L = [unit(3 * k + i) for i in range(k)] + [unit(i) for i in range(k)]
    return d, LagrangianSplitting(d, M, L)


def complex_blocks(phi: Matrix, phibar: Matrix) -> ComplexBlocks:
    """Blocks ``Phi, Psi, Upsilon, E`` of a deformation ``phi`` (with formal conjugate ``phibar``).

    Coordinates: ``M = T01 + T*10`` with basis ``(db_i, dz_i)``, dual ``L`` basis
    ``(dzb_i, d_i)``.  Maps ``M -> L`` and ``L -> M`` are matrices in these bases.
    """
    k = len(phi)
    I = linalg.identity(k)
    rep = Report("complex blocks")
    d, sp = pointwise_double(k)
    # Phi: M -> L, T01 -> T10 by phi, T*10 -> T*01 by -phi^T; in L-basis order (T*01, T10)
    Phi = linalg.zeros(2 * k)
    Phibar = linalg.zeros(2 * k)
    phiT = linalg.transpose(phi)
    phibarT = linalg.transpose(phibar)
    for i in range(k):
        for j in range(k):
            Phi[k + i][j] = phi[i][j]            # db_j -> d_i
            Phi[i][k + j] = -phiT[i][j]          # dz_j -> dzb_i
            Phibar[i][k + j] = phibar[i][j]      # d_j -> db_i
            Phibar[k + i][j] = -phibarT[i][j]    # dzb_j -> dz_i
    n2 = 2 * k
    I2 = linalg.identity(n2)
    try:
        inner = linalg.inverse(linalg.sub(I2, linalg.mul(Phibar, Phi)))
        inner_bar = linalg.inverse(linalg.sub(I2, linalg.mul(Phi, Phibar)))
    except SingularMatrixError:
        raise GeometricError("1 - Phibar Phi is not invertible") from None
    # Psi: M -> L^phi, written through l -> l + Phibar l
    Psi_L = linalg.mul(Phi, inner)               # L-component of Psi m
    Psibar_M = linalg.mul(Phibar, inner_bar)     # M-component of Psibar l

    def vec(mpart, lpart):
        return sp.vector(mpart, lpart)

    def col(mat, j):
        return [r[j] for r in mat]

    Mphi = [vec([1 if i == j else 0 for i in range(n2)], col(Phi, j)) for j in range(n2)]
    Lphi = [vec(col(Phibar, j), [1 if i == j else 0 for i in range(n2)]) for j in range(n2)]
    Psi_vecs = [vec(col(linalg.mul(Phibar, Psi_L), j), col(Psi_L, j)) for j in range(n2)]
    Psibar_vecs = [vec(col(Psibar_M, j), col(linalg.mul(Phi, Psibar_M), j)) for j in range(n2)]
    # graph(Psi) over M is M^phi, graph(Psibar) over L is L^phi
    ok_psi = all(_in_span(d, Mphi, linalg.add([sp.m[j]], [Psi_vecs[j]])[0]) for j in range(n2))
    ok_psibar = all(_in_span(d, Lphi, linalg.add([sp.l[j]], [Psibar_vecs[j]])[0]) for j in range(n2))
    rep.add("M^phi = graph(Psi: M -> L^phi)", ok_psi)
    rep.add("L^phi = graph(Psibar: L -> M^phi)", ok_psibar)
    # Upsilon = (1 + Psibar)^{-1} - 1 on L^phi: y = l + Psibar l  ->  -Psibar l
    ups_vecs = [[-x for x in v] for v in Psibar_vecs]   # Upsilon(y_j) for y_j = l_j + Psibar l_j
    ys = [linalg.add([sp.l[j]], [Psibar_vecs[j]])[0] for j in range(n2)]
    in_L = all(not any(sp.coords(linalg.add([ys[j]], [ups_vecs[j]])[0])[0]) for j in range(n2))
    in_Mphi = all(_in_span(d, Mphi, ups_vecs[j]) for j in range(n2))
    rep.add("L = graph(Upsilon: L^phi -> M^phi)", in_L and in_Mphi)
    # transport Upsilon to a bivector on M through (1 + Phi) and the dual identification
    E = _transport_bivector(d, sp, Mphi, Lphi, ys, ups_vecs)
    try:
        eps = linalg.neg(linalg.mul(phibar, linalg.inverse(linalg.sub(I, linalg.mul(phi, phibar)))))
    except SingularMatrixError:
        raise GeometricError("1 - phi phibar is not invertible") from None
    expected = linalg.zeros(n2)
    epsT = linalg.transpose(eps)
    for i in range(k):
        for j in range(k):
            expected[i][k + j] = eps[i][j]        # d_j -> db_i
            expected[k + i][j] = -epsT[i][j]      # dzb_j -> dz_i
    rep.add("E = diag(eps, -eps^T), eps = -phibar (1 - phi phibar)^{-1}", linalg.equal(E, expected))
    rep.add("E skew", linalg.is_skew(E))
    Upsilon = _upsilon_matrix(sp, Mphi, ys, ups_vecs)
    rep.add("conjugation bookkeeping on arity-2 components",
            _bookkeeping(E, Upsilon, Phi, n2))
    return ComplexBlocks(phi, phibar, Phi, Phibar, Psi_L, Psibar_M, Upsilon, E, eps, rep)


def _in_span(d, basis, v) -> bool:
    """``v`` in ``span(basis)`` for a Lagrangian ``basis``: ``<v, b> = 0`` for all ``b``."""
    return all(not d.pair(v, b) for b in basis)


def _transport_bivector(d, sp, Mphi, Lphi, ys, ups_vecs) -> Matrix:
    """``E l = (1 + Phi)^{-1} Upsilon(J l)``, ``J l in L^phi`` with ``<J l, (1 + Phi) m> = <l, m>``."""
    n2 = sp.n
    # J l_k = sum_j c_jk ys_j; solve sum_j c_jk <ys_j, Mphi_i> = <l_k, m_i>
    G = [[d.pair(ys[j], Mphi[i]) for j in range(n2)] for i in range(n2)]
    rhs = [[d.pair(sp.l[k], sp.m[i]) for k in range(n2)] for i in range(n2)]
    C = linalg.solve(G, rhs)
    E = linalg.zeros(n2)
    for k in range(n2):
        img = [0] * d.dim
        for j in range(n2):
            if C[j][k]:
                img = [a + C[j][k] * b for a, b in zip(img, ups_vecs[j])]
        # (1 + Phi)^{-1} on M^phi is the M-component
        a, _ = sp.coords(img)
        for i in range(n2):
            E[i][k] = a[i]
    return E


def _upsilon_matrix(sp, Mphi, ys, ups_vecs) -> Matrix:
    """``Upsilon`` in the bases ``(Mphi_i)`` of ``M^phi`` and normalized dual basis of ``L^phi``."""
    d = sp.d
    n2 = sp.n
    P = [[2 * d.pair(ys[j], Mphi[i]) for j in range(n2)] for i in range(n2)]
    # normalized dual vectors: y'_k = sum_j Q_jk ys_j with 2<y'_k, Mphi_i> = delta
    Q = linalg.inverse(P)
    U = linalg.zeros(n2)
    Mphi_coords = linalg.transpose([sp.coords(v)[0] for v in Mphi])  # M-parts of M^phi basis
    Minv = linalg.inverse(Mphi_coords)
    for k in range(n2):
        img = [0] * d.dim
        for j in range(n2):
            if Q[j][k]:
                img = [a + Q[j][k] * b for a, b in zip(img, ups_vecs[j])]
        a, _ = sp.coords(img)
        coeff = linalg.mul_vec(Minv, a)
        for i in range(n2):
            U[i][k] = coeff[i]
    return U


def _pullback_matrix(Phi: Matrix) -> Matrix:
    """Matrix of ``(1 + Phi)`` from ``M`` to ``M^phi`` in the bases ``m_i -> m_i + Phi m_i`` (identity)."""
    return linalg.identity(len(Phi))


def _bookkeeping(E: Matrix, U: Matrix, Phi: Matrix, n2: int) -> bool:
    """``R_E = P R_U P^{-1}`` on all pairs of basis forms, ``P`` the pullback along ``1 + Phi``."""
    P = _pullback_matrix(Phi)
    if not linalg.equal(P, linalg.identity(n2)):
        return False
    for a in range(1 << n2):
        for b in range(a, 1 << n2):
            if r_epsilon_value(E, a, b, n2) != r_epsilon_value(U, a, b, n2):
                return False
    return True


def embed_block(x: Matrix) -> Matrix:
    """``M -> L`` map of the pair ``(x, -x^T)``: ``T01 -> T10`` by ``x``, ``T*10 -> T*01`` by ``-x^T``."""
    k = len(x)
    out = linalg.zeros(2 * k)
    for i in range(k):
        for j in range(k):
            out[k + i][j] = x[i][j]
            out[i][k + j] = -x[j][i]
    return out


def inverse_transport_check(cb: ComplexBlocks, rho: Matrix) -> Report:
    """``B = (1 + rho eps)^{-1} rho`` three ways: closed form, series, and the full transport by ``-E``."""
    rep = Report("inverse transport")
    B = mc_transport_inverse_form(rho, cb.eps)
    series = mc_transport(linalg.neg(cb.eps), rho)
    k = len(rho)
    push = linalg.mul(rho, linalg.inverse(linalg.add(linalg.identity(k), linalg.mul(cb.eps, rho))))
    rep.add("B = sum (-1)^n rho (eps rho)^n", linalg.equal(B, series))
    rep.add("B = rho (1 + eps rho)^{-1}", linalg.equal(B, push))
    full = mc_transport(linalg.neg(cb.E), embed_block(rho))
    rep.add("block of the transport of rho by -E", linalg.equal(full, embed_block(B)))
    return rep


# ---------------------------------------------------------------- difference bracket


def difference_bracket_identity(src: DerivedLInfty, tgt: DerivedLInfty, E: Matrix) -> Report:
    """Arity-2 morphism relation for ``e^{R_eps}`` and its rewriting through ``D = [m_1', iota_eps]``.

    Relation: ``m_2' - m_2 = -m_1' R(a, b) + R(m_1 a, b) + (-1)^{|a|} R(a, m_1 b) + f_3(m_0, a, b)``.
    D-form: ``m_2' - m_2 = -D(a b) + D(a) b + (-1)^{|a|} a D(b) + K(a, b) + C(a, b)`` where
    ``K = De(iota a, b) + De(a, iota b) - iota De(a, b)`` uses the derivation defect
    ``De(a, b) = m_1'(a b) - m_1'(a) b - (-1)^{|a|} a m_1'(b)`` and the curvature term is
    ``C = f_3(m_0, a, b) - R(R(m_0, a), b) - (-1)^{|a|} R(a, R(m_0, b))``.  Both vanish for flat pairs
    whose ``m_1'`` is a derivation.
    On ``m_1'``-closed inputs of a flat pair the difference is ``m_1'(-R(a, b))``.
    """
    n = src.torsor.n
    full = (1 << n) - 1
    rep = Report("difference bracket identity")
    f = exp_r(E, n, bound=3)
    R = f.C.taylor
    m0 = src.curvature()
    flat = not m0 and not tgt.curvature()

    def m1(v):
        return src.m.evaluate([v])

    def m1p(v):
        return tgt.m.evaluate([v])

    def D(v):
        return add_into(m1p(iota_forms(E, v, n)), iota_forms(E, m1p(v), n), -1)

    def defect(va, vb):
        out = m1p(wedge_raw(va, vb, full))
        add_into(out, wedge_raw(m1p(va), vb, full), -1)
        sa = -1 if any(bin(w).count("1") & 1 for w in va) else 1
        add_into(out, wedge_raw(va, m1p(vb), full), -sa)
        return out

    def curv(va, vb, sa):
        if not m0:
            return {}
        out = dict(f.taylor.evaluate([m0, va, vb]))
        add_into(out, R.evaluate([R.evaluate([m0, va]), vb]), -1)
        add_into(out, R.evaluate([va, R.evaluate([m0, vb])]), -sa)
        return out

    bad_rel, bad_d = [], []
    derivation = True
    for a in range(1 << n):
        sa = -1 if bin(a).count("1") & 1 else 1
        for b in range(1 << n):
            va, vb = {a: 1}, {b: 1}
            diff = add_into(dict(tgt.m.evaluate([va, vb])), src.m.evaluate([va, vb]), -1)
            rel = add_into({}, m1p(R.evaluate([va, vb])), -1)
            add_into(rel, R.evaluate([m1(va), vb]))
            add_into(rel, R.evaluate([va, m1(vb)]), sa)
            if m0:
                add_into(rel, f.taylor.evaluate([m0, va, vb]))
            r = add_into(dict(diff), rel, -1)
            if r:
                bad_rel.append({"pair": [a, b], "residual": r})
            pred = add_into({}, D(wedge_raw(va, vb, full)), -1)
            add_into(pred, wedge_raw(D(va), vb, full))
            add_into(pred, wedge_raw(va, D(vb), full), sa)
            add_into(pred, curv(va, vb, sa))
            df = defect(va, vb)
            if df:
                derivation = False
            add_into(pred, defect(iota_forms(E, va, n), vb))
            add_into(pred, defect(va, iota_forms(E, vb, n)))
            add_into(pred, iota_forms(E, df, n), -1)
            r = add_into(dict(diff), pred, -1)
            if r:
                bad_d.append({"pair": [a, b], "residual": r})
    rep.add("arity-2 morphism relation", not bad_rel, residuals=bad_rel)
    rep.add("D-form of the difference", not bad_d, residuals=bad_d)
    rep.data["flat"] = flat
    rep.data["m1' is a derivation"] = derivation
    if flat and derivation:
        closed = _closed_basis(m1p, n)
        bad = []
        for x in closed:
            for y in closed:
                diff = add_into(dict(tgt.m.evaluate([x, y])), src.m.evaluate([x, y]), -1)
                r = add_into(diff, m1p(R.evaluate([x, y])))
                if r:
                    bad.append({"closed pair": [x, y], "residual": r})
        rep.add("closed inputs: difference = m1'(-R(a, b))", not bad, residuals=bad,
                detail=f"{len(closed)} closed basis forms")
    return rep


def _closed_basis(m1p, n) -> List[Vec]:
    """Basis of ``ker m_1'`` degree by degree (rational operators only)."""
    out = []
    for p in range(n + 1):
        words = [w for w in range(1 << n) if bin(w).count("1") == p]
        targets = [w for w in range(1 << n) if bin(w).count("1") == p + 1]
        cols = [m1p({w: 1}) for w in words]
        if any(isinstance(c, Series) for col in cols for c in col.values()):
            raise ValueError("closed-form basis needs rational m_1'")
        mat = [[col.get(r, 0) for col in cols] for r in targets] or [[0] * len(words)]
        for v in linalg.nullspace(mat):
            out.append({w: c for w, c in zip(words, v) if c})
    return out
