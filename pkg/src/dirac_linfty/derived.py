"""Derived brackets of an odd operator on the spinor module, and the coderivation R_eps.

For an operator ``H`` on ``P = Lambda M^*`` whose degree ``3 - 2k`` piece is a
``k``-th order differential operator over ``A = Lambda M^*``, the brackets

    m_k(x_1, ..., x_k) . 1 = [...[[H_{3-2k}, x_1], x_2], ..., x_k] . 1

form a curved L-infinity structure on ``A[2]`` (graded commutators, ``x_i``
acting by left multiplication).  Nested commutators are expanded on vectors, so
no intermediate operator is materialized.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence

from . import linalg
from .coalgebra import (DEFAULT_ARITY, Coderivation, ExpMorphism, SymSpace, TaylorMap,
                        coderivation_commutator, exterior_space, jacobiator_direct, project,
                        verify_morphism)
from .courant import (CliffordOperator, LagrangianSplitting, bivector_between, build_hamiltonian,
                      gauge_conjugate, iota_bivector, operator_order, square_scalar)
from .graded import Vec, add_into, contract_raw, wedge_raw
from .linalg import Matrix
from .report import InvariantViolation, Report
from .scalars import valuation


def _popcount(m: int) -> int:
    return bin(m).count("1")


def _full(n: int) -> int:
    return (1 << n) - 1


# ---------------------------------------------------------------- torsor


@dataclass(eq=False)
class BVTorsor:
    """``(A = Lambda M^*, P = spinors, H)`` with ``A`` acting on ``P`` by wedge, unit spinor as generator."""

    n: int
    H: CliffordOperator
    names: Sequence[str] = ()
    splitting: Optional[LagrangianSplitting] = None
    _pieces: Dict[int, CliffordOperator] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if not self.names:
            self.names = tuple(f"t{i + 1}" for i in range(self.n))
        self._pieces = self.H.pieces()

    @classmethod
    def from_splitting(cls, sp: LagrangianSplitting) -> "BVTorsor":
        return cls(sp.n, build_hamiltonian(sp), tuple(f"{nm}*" for nm in sp.m_names), sp)

    def piece(self, degree: int) -> CliffordOperator:
        return self._pieces.get(degree, CliffordOperator.zero(self.n))

    def arities(self) -> List[int]:
        """Arities ``k`` with a nonzero piece of degree ``3 - 2k``."""
        return sorted((3 - d) // 2 for d, p in self._pieces.items() if p and (3 - d) % 2 == 0)

    @property
    def space(self) -> SymSpace:
        return exterior_space(self.n, 2, self.names)


def check_almost_bv_torsor(T: BVTorsor) -> Report:
    """Order bound of every graded piece, plus centrality of ``H^2``."""
    rep = Report("almost BV-infinity torsor")
    for d, p in sorted(T._pieces.items(), reverse=True):
        if not p:
            continue
        if d > 3 or (3 - d) % 2:
            rep.add(f"piece of degree {d}", False, detail="degree not of the form 3-2k")
            continue
        k = (3 - d) // 2
        cert = operator_order(p, k)
        rep.add(f"piece of degree {d} has order {k}", cert.passed,
                detail=f"{cert.checked} generator tuples",
                residuals=[] if cert.passed else [list(cert.counterexample)])
    c = square_scalar(T.H)
    rep.data["square"] = "not central" if c is None else c
    return rep


def is_torsor(T: BVTorsor) -> bool:
    return square_scalar(T.H) is not None


# ---------------------------------------------------------------- brackets


def nested_commutator(op: CliffordOperator, op_parity: int, xs: Sequence[int], rho: Vec, n: int) -> Vec:
    """``[...[op, x_1], ..., x_k] rho`` for basis words ``x_i`` acting by left wedge."""
    if not xs:
        return op.apply(rho)
    full = _full(n)
    x = xs[-1]
    prev_par = (op_parity + sum(_popcount(y) for y in xs[:-1])) & 1
    first = nested_commutator(op, op_parity, xs[:-1], wedge_raw({x: 1}, rho, full), n)
    second = wedge_raw({x: 1}, nested_commutator(op, op_parity, xs[:-1], rho, n), full)
    sign = -1 if (prev_par and _popcount(x) & 1) else 1
    return add_into(first, second, -sign)


def derived_taylor(T: BVTorsor, bound: int = DEFAULT_ARITY, op: Optional[CliffordOperator] = None,
                   rho_check: Optional[Vec] = None) -> TaylorMap:
    """Taylor components ``m_k`` of the derived structure of ``op`` (default ``T.H``).

    ``rho_check``: a second spinor on which the order-0 property of each
    nested commutator is re-verified.
    """
    n = T.n
    operator = T.H if op is None else op
    pieces = operator.pieces()
    arities = sorted((3 - d) // 2 for d, p in pieces.items() if p and (3 - d) % 2 == 0 and d <= 3)
    if any(p and (d > 3 or (3 - d) % 2) for d, p in pieces.items()):
        raise InvariantViolation("operator has pieces outside degrees 3 - 2k")
    par = operator.parity
    full = _full(n)

    def compute(k, word):
        piece = pieces.get(3 - 2 * k)
        if piece is None:
            return {}
        val = nested_commutator(piece, par, word, {0: 1}, n)
        if rho_check is not None:
            lhs = nested_commutator(piece, par, word, rho_check, n)
            if lhs != wedge_raw(val, rho_check, full):
                raise InvariantViolation(
                    f"bracket m_{k} depends on the spinor (word {word}); order certificate is wrong")
        return val

    return TaylorMap(exterior_space(n, 2, T.names), 1, compute, arities, max([bound] + arities))


def random_spinor(n: int, rng: random.Random) -> Vec:
    out = {}
    for w in range(1 << n):
        c = rng.randint(-3, 3)
        if c:
            out[w] = Fraction(c, rng.randint(1, 3))
    return out or {0: 1}


@dataclass(eq=False)
class DerivedLInfty:
    """Curved L-infinity structure ``{m_k}`` on ``A[2]`` extracted from a torsor."""

    torsor: BVTorsor
    m: TaylorMap

    @property
    def space(self) -> SymSpace:
        return self.m.space

    def bracket(self, *forms: Vec) -> Vec:
        return self.m.evaluate(list(forms))

    def curvature(self) -> Vec:
        return self.m.component(0, ()) if self.m.has_arity(0) else {}

    def ell(self, *forms: Vec) -> Vec:
        """Skew-symmetric bracket on ``A[1]`` (degree of a ``p``-form is ``p - 1``), homogeneous inputs."""
        degs = []
        for f in forms:
            ps = {_popcount(w) for w in f}
            if len(ps) != 1:
                raise ValueError("skew brackets need homogeneous inputs")
            degs.append(ps.pop() - 1)
        k = len(degs)
        e = k + sum((k - i) * dg for i, dg in enumerate(degs, start=1))
        v = self.bracket(*forms)
        return v if e % 2 == 0 else {w: -c for w, c in v.items()}


def extract_brackets(T: BVTorsor, bound: int = DEFAULT_ARITY, seed: int = 0,
                     check_rho: bool = True) -> DerivedLInfty:
    rho = random_spinor(T.n, random.Random(seed)) if check_rho else None
    return DerivedLInfty(T, derived_taylor(T, bound, rho_check=rho))


# ---------------------------------------------------------------- Jacobiators


def jacobiator(structure: DerivedLInfty, word: Sequence[int]) -> Vec:
    """Generalized Jacobi sum on a word of basis forms."""
    w, s = structure.space.canon(tuple(word))
    if not s:
        return {}
    v = jacobiator_direct(structure.m, w)
    return v if s == 1 else {i: -c for i, c in v.items()}


def jacobiator_ad(T: BVTorsor, word: Sequence[int]) -> Vec:
    """``[...[(H^2)_{4-2k}, x_1], ..., x_k] . 1`` for ``k = len(word)``."""
    k = len(word)
    sq = (T.H @ T.H).piece(4 - 2 * k)
    if not sq:
        return {}
    return nested_commutator(sq, 0, list(word), {0: 1}, T.n)


# ---------------------------------------------------------------- R_eps


def iota_forms(E: Matrix, vec: Vec, n: int) -> Vec:
    """``iota_eps`` on forms with ``iota(m_i ^ m_j) = iota_j o iota_i``."""
    full = _full(n)
    out: Vec = {}
    for i in range(n):
        for j in range(i + 1, n):
            if E[i][j]:
                add_into(out, contract_raw(j, contract_raw(i, vec, full), full), E[i][j])
    return out


def r_epsilon_value(E: Matrix, a: int, b: int, n: int) -> Vec:
    """``R(a, b) = iota(a ^ b) - iota(a) ^ b - a ^ iota(b)`` on basis words."""
    full = _full(n)
    out = iota_forms(E, wedge_raw({a: 1}, {b: 1}, full), n)
    add_into(out, wedge_raw(iota_forms(E, {a: 1}, n), {b: 1}, full), -1)
    add_into(out, wedge_raw({a: 1}, iota_forms(E, {b: 1}, n), full), -1)
    return out


def _gain(E: Matrix) -> int:
    vals = [valuation(x) for r in E for x in r if valuation(x) is not None]
    return min(vals, default=0)


def r_epsilon(E: Matrix, n: int, names: Sequence[str] = (), bound: int = DEFAULT_ARITY) -> Coderivation:
    """The arity-2 even coderivation ``R_eps = [iota_eps, mu]`` on ``S(A[2])``."""
    space = exterior_space(n, 2, names or None)
    tm = TaylorMap(space, 0, lambda k, w: r_epsilon_value(E, w[0], w[1], n), (2,), bound,
                   valuation_gain=_gain(E))
    return Coderivation(tm)


def iota_coderivation(E: Matrix, n: int, names: Sequence[str] = (), bound: int = DEFAULT_ARITY) -> Coderivation:
    space = exterior_space(n, 2, names or None)
    return Coderivation(TaylorMap(space, 0, lambda k, w: iota_forms(E, {w[0]: 1}, n), (1,), bound))


def wedge_coderivation(n: int, names: Sequence[str] = (), bound: int = DEFAULT_ARITY) -> Coderivation:
    space = exterior_space(n, 2, names or None)
    full = _full(n)
    return Coderivation(TaylorMap(space, 0, lambda k, w: wedge_raw({w[0]: 1}, {w[1]: 1}, full),
                                  (2,), bound))


def r_epsilon_commutator(E: Matrix, n: int, names: Sequence[str] = (), bound: int = DEFAULT_ARITY) -> Coderivation:
    """``R_eps`` computed as the coderivation commutator of ``iota_eps`` and the wedge product."""
    return coderivation_commutator(iota_coderivation(E, n, names, bound),
                                   wedge_coderivation(n, names, bound))


def exp_r(E: Matrix, n: int, names: Sequence[str] = (), bound: int = DEFAULT_ARITY) -> ExpMorphism:
    return ExpMorphism(r_epsilon(E, n, names, bound), bound)


# ---------------------------------------------------------------- gauge equivariance


def conjugated_taylor(Q: Coderivation, E: Matrix, n: int, names: Sequence[str] = (),
                      bound: int = DEFAULT_ARITY) -> TaylorMap:
    """Components of ``e^{-R} Q e^{R}``."""
    plus = exp_r(E, n, names, bound + 1)
    minus = exp_r(linalg.neg(E), n, names, bound + 1)

    def compute(k, w):
        return project(minus.apply(Q.apply(plus.apply({w: 1}))))

    return TaylorMap(Q.space, Q.parity, compute, None, bound)


def verify_gauge_equivariance(T: BVTorsor, E: Matrix, N: int = DEFAULT_ARITY) -> Report:
    """(a) ``L([H, iota]) = [L(H), R]`` to arity N; (b) ``L(e^{-iota} H e^{iota}) = e^{-R} L(H) e^{R}``."""
    rep = Report("gauge equivariance")
    n = T.n
    base = derived_taylor(T, N)
    Q = Coderivation(base)
    iota = iota_bivector(E, n)
    infinitesimal = derived_taylor(T, N, op=T.H.commutator(iota))
    R = r_epsilon(E, n, T.names, N + 1)
    comm = coderivation_commutator(Q, R).taylor
    space = base.space
    for k in range(N + 1):
        bad = []
        for w in space.words(k):
            r = add_into(dict(infinitesimal.component(k, w)) if infinitesimal.has_arity(k) else {},
                         comm.component(k, w), -1)
            if r:
                bad.append({"word": [space.names[i] for i in w], "residual": r})
        rep.add(f"infinitesimal arity {k}", not bad, residuals=bad)
    gauged = derived_taylor(BVTorsor(n, gauge_conjugate(T.H, E), T.names), N)
    conj = conjugated_taylor(Q, E, n, T.names, N)
    for k in range(N + 1):
        bad = []
        for w in space.words(k):
            lhs = gauged.component(k, w) if gauged.has_arity(k) else {}
            r = add_into(dict(lhs), conj.component(k, w), -1)
            if r:
                bad.append({"word": [space.names[i] for i in w], "residual": r})
        rep.add(f"exponentiated arity {k}", not bad, residuals=bad)
    return rep


# ---------------------------------------------------------------- transport


@dataclass(eq=False)
class Transport:
    source: DerivedLInfty
    target: DerivedLInfty
    E: Matrix
    morphism: ExpMorphism
    report: Report


def transport_structure(sp: LagrangianSplitting, l_prime, N: int = DEFAULT_ARITY,
                        sample: Optional[int] = None, seed: int = 0) -> Transport:
    """Structures of ``(M, L)`` and ``(M, L')`` with the morphism ``e^{R_eps}``, ``L' = graph(eps)``."""
    E = bivector_between(sp, l_prime)
    src = DerivedLInfty(BVTorsor.from_splitting(sp), None)
    src.m = derived_taylor(src.torsor, N)
    target_sp = LagrangianSplitting(sp.d, sp.m, l_prime, sp.m_names)
    tgt = DerivedLInfty(BVTorsor.from_splitting(target_sp), None)
    tgt.m = derived_taylor(tgt.torsor, N)
    f = exp_r(E, sp.n, src.torsor.names, N + 1)
    rep = verify_morphism(f, src.m, tgt.m, N, sample=sample, rng=random.Random(seed))
    rep.title = "transport morphism e^R"
    return Transport(src, tgt, E, f, rep)


def structure_of(sp: LagrangianSplitting, N: int = DEFAULT_ARITY) -> DerivedLInfty:
    T = BVTorsor.from_splitting(sp)
    return DerivedLInfty(T, derived_taylor(T, N))
