"""The ten acceptance criteria as report-producing runners (shared by the CLI and the test suite)."""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import permutations
from typing import Callable, Dict, Iterator, List, Optional, Tuple

from . import catalog, linalg
from .coalgebra import DEFAULT_ARITY, verify_jacobi
from .courant import (LagrangianSplitting, bivector_between, build_hamiltonian, cubic_clifford,
                      derived_bracket_failures, is_subalgebra, square_scalar)
from .derived import (BVTorsor, check_almost_bv_torsor, exp_r, extract_brackets,
                      jacobiator, jacobiator_ad, structure_of, transport_structure,
                      verify_gauge_equivariance)
from .mc import (complex_blocks, difference_bracket_identity, graph_map_of, graph_transform,
                 map_to_two_form, mc_check, mc_seed, mc_transport, two_form_to_map, inverse_transport_check)
from .coalgebra import mc_pushforward
from .linalg import Matrix
from .report import Report
from .scalars import t, truncation
from .specfile import AlgebraSpec

DEFAULT_SEED = 0
GAUGE_SAMPLES = 20
MC_SAMPLES = 20
COMPLEX_SAMPLES = 50
JACOBIATOR_SAMPLES = 100
T_ORDER = 8


def catalog_specs() -> List[AlgebraSpec]:
    return [catalog.builtin(name) for name in catalog.catalog_names()]


def catalog_torsors() -> Iterator[Tuple[AlgebraSpec, str, str, LagrangianSplitting]]:
    for spec in catalog_specs():
        for m, l in spec.torsors():
            yield spec, m, l, spec.splitting(m, l)


def catalog_pairs() -> Iterator[Tuple[AlgebraSpec, Tuple[str, str, str], LagrangianSplitting, Matrix]]:
    for spec in catalog_specs():
        for m, l, lp in spec.pairs:
            sp = spec.splitting(m, l)
            yield spec, (m, l, lp), sp, bivector_between(sp, spec.splittings[lp])


def _label(spec, *keys) -> str:
    return f"{spec.name}[{'/'.join(keys)}]"


def random_cubic_torsor(n: int, rng: random.Random, lo: int = -2, hi: int = 2) -> BVTorsor:
    """Cubic operator of a random totally antisymmetric ``f`` on ``2n`` split indices (usually non-central)."""
    f: Dict[Tuple[int, int, int], Fraction] = {}
    for a in range(2 * n):
        for b in range(a + 1, 2 * n):
            for c in range(b + 1, 2 * n):
                v = Fraction(rng.randint(lo, hi))
                if not v:
                    continue
                for p in permutations((0, 1, 2)):
                    idx = tuple((a, b, c)[i] for i in p)
                    inv = sum(1 for x in range(3) for y in range(x + 1, 3) if p[x] > p[y])
                    f[idx] = -v if inv & 1 else v
    return BVTorsor(n, cubic_clifford(n, f), tuple(f"m{i + 1}" for i in range(n)))


def random_skew(n: int, rng: random.Random, lo: int = -3, hi: int = 3) -> Matrix:
    return catalog.random_bivector(n, rng, lo, hi)


def random_formal(rows: int, cols: int, rng: random.Random, skew: bool = False, lo: int = -2,
                  hi: int = 2) -> Matrix:
    """Matrix with entries ``a t + b t^2`` (valuation at least one)."""
    out = linalg.zeros(rows, cols)
    tt = t()
    for i in range(rows):
        for j in range(cols):
            if skew and j <= i:
                continue
            v = rng.randint(lo, hi) * tt + rng.randint(lo, hi) * tt * tt
            out[i][j] = v
            if skew:
                out[j][i] = -v
    return out


# ---------------------------------------------------------------- criteria


def criterion_1(seed: int = DEFAULT_SEED) -> Report:
    """Torsor integrity: order bounds and the derived-bracket identity on all basis pairs."""
    rep = Report("1 torsor integrity")
    for spec, m, l, sp in catalog_torsors():
        lab = _label(spec, m, l)
        T = BVTorsor(sp.n, build_hamiltonian(sp, certify=False), sp.m_names, sp)
        bad = derived_bracket_failures(sp, T.H)
        rep.add(f"{lab}: [[H, x], y] = [x, y]", not bad, detail=f"dim {sp.d.dim}", residuals=bad)
        orders = check_almost_bv_torsor(T)
        rep.add(f"{lab}: order bounds", orders.passed,
                detail=", ".join(c.name for c in orders.checks))
        rep.add(f"{lab}: H^2 central", square_scalar(T.H) is not None)
    return rep


def criterion_2(seed: int = DEFAULT_SEED, N: int = DEFAULT_ARITY) -> Report:
    """Generalized Jacobi to arity N for every catalog torsor, and the two Jacobiator routes."""
    rep = Report("2 jacobi suite")
    rng = random.Random(seed + 2)
    curved = 0
    for spec, m, l, sp in catalog_torsors():
        lab = _label(spec, m, l)
        st = structure_of(sp, N)
        if st.curvature():
            curved += 1
        jr = verify_jacobi(st.m, N)
        rep.add(f"{lab}: jacobi to arity {N}" + (" (curved)" if st.curvature() else ""), jr.passed,
                residuals=[r for c in jr.failures() for r in c.residuals])
        bad = _jacobiator_routes(st.torsor, st, rng, JACOBIATOR_SAMPLES, N)
        rep.add(f"{lab}: direct = ad Jacobiator on {JACOBIATOR_SAMPLES} random tuples", not bad,
                residuals=bad)
    rep.add("curved torsors present", curved > 0, detail=f"{curved} curved")
    T = random_cubic_torsor(3, rng)
    rep.add("random cubic operator is not central", square_scalar(T.H) is None)
    st = extract_brackets(T, N)
    bad = _jacobiator_routes(T, st, rng, JACOBIATOR_SAMPLES, N)
    rep.add(f"non-central operator: direct = ad Jacobiator on {JACOBIATOR_SAMPLES} random tuples",
            not bad, residuals=bad)
    nonzero = sum(1 for k in range(N + 1) for w in st.space.words(k) if jacobiator_ad(T, w))
    rep.add("non-central operator has nonzero Jacobiators", nonzero > 0, detail=f"{nonzero} words")
    return rep


def _jacobiator_routes(T, st, rng, samples, N) -> list:
    bad = []
    dim = st.space.dim
    for _ in range(samples):
        k = rng.randint(0, N)
        word = [rng.randrange(dim) for _ in range(k)]
        a = jacobiator(st, word)
        b = jacobiator_ad(T, word)
        if a != b:
            bad.append({"word": word, "direct": a, "ad": b})
    return bad


def criterion_3(seed: int = DEFAULT_SEED, N: int = DEFAULT_ARITY, samples: int = GAUGE_SAMPLES) -> Report:
    """Gauge equivariance, infinitesimal and exponentiated, for random rational bivectors."""
    rep = Report("3 gauge equivariance")
    rng = random.Random(seed + 3)
    for spec, m, l, sp in catalog_torsors():
        T = BVTorsor.from_splitting(sp)
        fails = []
        for s in range(samples):
            E = random_skew(sp.n, rng)
            r = verify_gauge_equivariance(T, E, N)
            if not r.passed:
                fails.append({"sample": s, "E": E, "failed": [c.name for c in r.failures()]})
        rep.add(f"{_label(spec, m, l)}: {samples} random eps, arity {N}", not fails, residuals=fails)
    return rep


def criterion_4(seed: int = DEFAULT_SEED, N: int = DEFAULT_ARITY) -> Report:
    """``e^{R_eps}`` is an L-infinity morphism for every catalog transversal pair."""
    rep = Report("4 morphism certificates")
    for spec, keys, sp, E in catalog_pairs():
        tr = transport_structure(sp, spec.splittings[keys[2]], N)
        rep.add(f"{_label(spec, *keys)}: verify_morphism to arity {N}", tr.report.passed,
                residuals=[r for c in tr.report.failures() for r in c.residuals])
    return rep


def criterion_5(seed: int = DEFAULT_SEED, samples: int = MC_SAMPLES, order: int = T_ORDER,
                seeds_per_pair: int = 3) -> Report:
    """graph_transform = mc_transport = mc_pushforward, and MC solutions go to MC solutions."""
    rep = Report("5 MC transport")
    rng = random.Random(seed + 5)
    with truncation(order):
        for spec, keys, sp, E in catalog_pairs():
            lab = _label(spec, *keys)
            n = sp.n
            f = exp_r(E, n, bound=order + 2)
            bad = []
            for s in range(samples):
                W = random_formal(n, n, rng, skew=True)
                a = graph_transform(W, E, sp)
                b = graph_transform(W, E)
                c = mc_transport(E, W, order)
                d = two_form_to_map(mc_pushforward(f, map_to_two_form(W), order), n)
                if not (a == b == c == d):
                    bad.append({"sample": s, "W": W})
            rep.add(f"{lab}: {samples} random instances agree at t-order {order}", not bad,
                    residuals=bad)
            src = structure_of(sp, 3)
            tgt = structure_of(spec.splitting(keys[0], keys[2]), 3)
            sols = list(_mc_solutions(spec, sp, src, rng, seeds_per_pair))
            bad = []
            for kind, W in sols:
                if not mc_check(src, map_to_two_form(W)).passed:
                    bad.append({"kind": kind, "stage": "source", "W": W})
                    continue
                try:
                    Wp = graph_transform(W, E, sp)
                except ArithmeticError:
                    continue  # graph(W) meets L': no MC element on the target side
                if not mc_check(tgt, map_to_two_form(Wp)).passed:
                    bad.append({"kind": kind, "stage": "target", "W": W})
                if kind == "formal":
                    push = two_form_to_map(mc_pushforward(f, map_to_two_form(W), order), n)
                    if push != Wp:
                        bad.append({"kind": kind, "stage": "pushforward", "W": W})
            rep.add(f"{lab}: MC solutions map to MC solutions", not bad,
                    detail=f"{len(sols)} solutions", residuals=bad)
    return rep


def _mc_solutions(spec: AlgebraSpec, sp: LagrangianSplitting, src, rng, count: int):
    """Formal seeds (adjoint orbit of ``M``) when ``M`` is a subalgebra; rational Dirac graphs otherwise."""
    d = sp.d
    if not src.curvature():
        yield "zero", linalg.zeros(sp.n)
    if is_subalgebra(d, sp.m):
        for _ in range(count):
            X = [Fraction(rng.randint(-2, 2)) for _ in range(d.dim)]
            yield "formal", mc_seed(sp, sp.m, X)
    for key, vecs in sorted(spec.splittings.items()):
        if not is_subalgebra(d, vecs):
            continue
        try:
            W = graph_map_of(sp, vecs)
        except ArithmeticError:
            continue
        yield f"graph of {key}", W


def criterion_6(seed: int = DEFAULT_SEED) -> Report:
    _, rep = catalog.cartan_cubic_structure(catalog.sl2())
    rep.title = "6 cubic structure on forms of sl2"
    return rep


def criterion_7(seed: int = DEFAULT_SEED) -> Report:
    rep = catalog.triangular_formality(catalog.nonabelian2(), [[0, 1], [-1, 0]])
    rep.title = "7 triangular formality"
    return rep


def criterion_8(seed: int = DEFAULT_SEED) -> Report:
    s = catalog.R_ST_SCALE
    rst = [[0, 0, s], [0, 0, 0], [-s, 0, 0]]
    rep = catalog.quasitriangular_bridge(catalog.sl2(), rst)
    rep.title = "8 quasi-triangular bridge"
    return rep


def criterion_9(seed: int = DEFAULT_SEED, samples: int = COMPLEX_SAMPLES, order: int = T_ORDER) -> Report:
    """Complex-structure blocks on random formal instances, and the difference bracket on catalog pairs."""
    rep = Report("9 complex-structure matrix layer")
    rng = random.Random(seed + 9)
    bad = []
    with truncation(order):
        for s in range(samples):
            k = 1 + s % 3
            phi = random_formal(k, k, rng)
            phibar = random_formal(k, k, rng)
            rho = random_formal(k, k, rng)
            cb = complex_blocks(phi, phibar)
            inv = inverse_transport_check(cb, rho)
            if not (cb.report.passed and inv.passed):
                bad.append({"sample": s, "size": k,
                            "failed": [c.name for c in cb.report.failures() + inv.failures()]})
    rep.add(f"complex blocks and inverse transport on {samples} random instances (sizes 1-3)",
            not bad, residuals=bad)
    for spec, keys, sp, E in catalog_pairs():
        src = structure_of(sp, 3)
        tgt = structure_of(spec.splitting(keys[0], keys[2]), 3)
        dr = difference_bracket_identity(src, tgt, E)
        rep.add(f"{_label(spec, *keys)}: difference bracket identity", dr.passed,
                detail="flat" if dr.data.get("flat") else "curved",
                residuals=[r for c in dr.failures() for r in c.residuals])
    return rep


OUT_OF_SCOPE = (
    "Manifold-level statements (the global existence results for Dirac structures on manifolds, "
    "the Poisson-Lie group integration, and the deformation result for complex manifolds) are "
    "infinite-dimensional and are not reproduced; their finite-dimensional algebraic engines are "
    "certified by criteria 3, 4, 5 and 9.")


def criterion_10(seed: int = DEFAULT_SEED) -> Report:
    rep = Report("10 out-of-scope acknowledgment")
    rep.add("manifold-level results documented as out of scope", True, detail=OUT_OF_SCOPE)
    return rep


CRITERIA: Dict[int, Callable[..., Report]] = {
    1: criterion_1, 2: criterion_2, 3: criterion_3, 4: criterion_4, 5: criterion_5,
    6: criterion_6, 7: criterion_7, 8: criterion_8, 9: criterion_9, 10: criterion_10,
}


def run(which: Optional[List[int]] = None, seed: int = DEFAULT_SEED) -> List[Report]:
    return [CRITERIA[k](seed=seed) for k in (which or sorted(CRITERIA))]
