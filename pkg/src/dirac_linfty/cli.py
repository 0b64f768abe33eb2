"""Command-line entry point: ``dirac-linfty <command> ...``.

Every command builds one or more :class:`Report` objects, prints them (text or
``--json``) and exits with a code that separates failed checks from bad input.
Output is deterministic for fixed inputs and seed; wall-clock timing is only
included with ``--timing``.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import random
import sys
import time
from fractions import Fraction
from typing import List, Optional, Sequence

from . import catalog, linalg, suite
from .coalgebra import DEFAULT_ARITY, verify_jacobi
from .courant import LagrangianSplitting, bivector_between, graph_lagrangian, is_subalgebra
from .derived import structure_of, transport_structure
from .graded import word_of
from .linalg import Matrix
from .mc import (complex_blocks, difference_bracket_identity, inverse_transport_check,
                 map_to_two_form, mc_check, mc_equivalence_certificate, mc_seed, pointwise_double)
from .report import (ArityBoundError, ConstructionError, GeometricError, InvariantViolation,
                     Report, render_value)
from .scalars import DEFAULT_ORDER, parse_scalar, truncation
from .specfile import SCHEMA_VERSION, AlgebraSpec, SpecError, dumps, load

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_UNKNOWN_SELECTOR = 4
EXIT_PRECONDITION = 5
EXIT_INVARIANT = 6
EXIT_ARITY = 7


class Outcome:
    """Reports of one invocation plus the inputs that determine them."""

    def __init__(self, command: str, inputs: dict, seed: int):
        self.command = command
        self.inputs = inputs
        self.seed = seed
        self.reports: List[Report] = []
        self.elapsed: Optional[float] = None

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports)

    def digest(self) -> str:
        blob = json.dumps(render_value(self.inputs), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()

    def to_dict(self) -> dict:
        doc = {"schema_version": SCHEMA_VERSION, "command": self.command,
               "inputs": {"digest": self.digest(), **render_value(self.inputs)},
               "seed": self.seed, "passed": self.passed,
               "reports": [r.to_dict() for r in self.reports]}
        if self.elapsed is not None:
            doc["timing_seconds"] = round(self.elapsed, 3)
        return doc

    def render(self) -> str:
        head = f"{self.command} (seed {self.seed}, inputs {self.digest()[:12]})"
        body = [r.render() for r in self.reports]
        tail = [f"elapsed: {self.elapsed:.3f}s"] if self.elapsed is not None else []
        return "\n".join([head] + body + tail + ["PASS" if self.passed else "FAIL"])


# ---------------------------------------------------------------- inputs


def resolve_spec(text: str, validate: bool = True) -> AlgebraSpec:
    """A spec file path, or a catalog name such as ``abelian(2)``."""
    if os.path.exists(text):
        spec = load(text)
        if validate:
            rep = spec.validate()
            if not rep.passed:
                raise SpecError(f"{text} fails validation: {[c.name for c in rep.failures()]}")
        return spec
    return catalog.builtin(text)


def parse_matrix(text: str, what: str) -> Matrix:
    """JSON matrix of rational strings; a list entry is read as series coefficients in t."""
    try:
        rows = json.loads(text, parse_float=_no_float)
    except json.JSONDecodeError as exc:
        raise SpecError(f"{what}: invalid JSON ({exc})") from None
    if not isinstance(rows, list) or not rows or any(not isinstance(r, list) or len(r) != len(rows)
                                                     for r in rows):
        raise SpecError(f"{what}: expected a square matrix")
    try:
        return [[parse_scalar(x) for x in r] for r in rows]
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise SpecError(f"{what}: {exc}") from None


def _no_float(s):
    raise SpecError(f"floating-point literal {s} not allowed; use 'p/q' strings")


def _spec_input(spec: AlgebraSpec) -> dict:
    return {"spec": spec.name, "spec_sha256": hashlib.sha256(dumps(spec).encode()).hexdigest()}


def _size_check(M: Matrix, n: int, what: str):
    if len(M) != n:
        raise SpecError(f"{what}: expected {n}x{n}, got {len(M)}x{len(M)}")


def _form_label(mask: int, names: Sequence[str]) -> str:
    return "^".join(names[i] for i in word_of(mask)) or "1"


def _form_text(v: dict, names) -> dict:
    return {_form_label(w, names): c for w, c in sorted(v.items())}


# ---------------------------------------------------------------- commands


def cmd_validate(args) -> Outcome:
    spec = resolve_spec(args.spec, validate=False)
    out = Outcome("validate", _spec_input(spec), args.seed)
    out.reports.append(spec.validate())
    return out


def cmd_brackets(args) -> Outcome:
    spec = resolve_spec(args.spec)
    sp = spec.splitting(args.m, args.l)
    if args.arity < 3:
        raise ArityBoundError(f"brackets up to ell_3 need --arity >= 3, got {args.arity}")
    out = Outcome("brackets", {**_spec_input(spec), "m": args.m, "l": args.l, "arity": args.arity},
                  args.seed)
    st = structure_of(sp, args.arity)
    names = st.torsor.names
    rep = Report(f"brackets of ({args.m}, {args.l})")
    gens = [{1 << i: 1} for i in range(sp.n)]
    rep.data["m_0"] = _form_text(st.curvature(), names)
    for k in range(1, 4):
        rows = {}
        for idx in _sorted_tuples(sp.n, k):
            v = st.ell(*(gens[i] for i in idx))
            rows[",".join(names[i] for i in idx)] = _form_text(v, names)
        nonzero = {key: v for key, v in rows.items() if v}
        rep.data[f"ell_{k} on generators"] = nonzero if nonzero else "identically zero"
    rep.extend(verify_jacobi(st.m, args.arity))
    out.reports.append(rep)
    return out


def _sorted_tuples(n: int, k: int):
    from itertools import combinations_with_replacement
    return combinations_with_replacement(range(n), k)


def _eps_or_lprime(args, spec: AlgebraSpec, sp: LagrangianSplitting) -> Matrix:
    if args.eps is not None:
        E = parse_matrix(args.eps, "--eps")
        _size_check(E, sp.n, "--eps")
        if not linalg.is_skew(E):
            raise ConstructionError("--eps must be skew-symmetric")
        return E
    if args.lprime is None:
        raise SpecError("give a target splitting L' or --eps")
    if args.lprime not in spec.splittings:
        raise KeyError(f"unknown splitting {args.lprime!r}; have {sorted(spec.splittings)}")
    return bivector_between(sp, spec.splittings[args.lprime])


def _default_omega(sp: LagrangianSplitting, rng: random.Random) -> Optional[Matrix]:
    """A Maurer-Cartan element in ``(M, L)``: a formal adjoint seed, or zero when flat."""
    if is_subalgebra(sp.d, sp.m):
        X = [Fraction(rng.randint(-2, 2)) for _ in range(sp.d.dim)]
        return mc_seed(sp, sp.m, X)
    if not structure_of(sp, 3).curvature():
        return linalg.zeros(sp.n)
    return None


def cmd_transport(args) -> Outcome:
    spec = resolve_spec(args.spec)
    sp = spec.splitting(args.m, args.l)
    E = _eps_or_lprime(args, spec, sp)
    out = Outcome("transport", {**_spec_input(spec), "m": args.m, "l": args.l, "eps": E,
                                "arity": args.arity, "t_order": args.t_order}, args.seed)
    tr = transport_structure(sp, graph_lagrangian(sp, E).l_raw, args.arity)
    tr.report.data["eps"] = E
    out.reports.append(tr.report)
    with truncation(args.t_order):
        W = _default_omega(sp, random.Random(args.seed))
        if W is None:
            rep = Report("Maurer-Cartan equivalence")
            rep.data["skipped"] = "(M, L) is curved and M is not a subalgebra: no Dirac graph over M"
        else:
            rep = mc_equivalence_certificate(sp, W, E, args.t_order, min(args.arity, 4))
            rep.data["omega"] = W
    out.reports.append(rep)
    return out


def cmd_mc(args) -> Outcome:
    spec = resolve_spec(args.spec)
    sp = spec.splitting(args.m, args.l)
    rng = random.Random(args.seed)
    with truncation(args.t_order):
        if args.omega is not None:
            W = parse_matrix(args.omega, "--omega")
            _size_check(W, sp.n, "--omega")
            if not linalg.is_skew(W):
                raise ConstructionError("--omega must be skew-symmetric")
        else:
            W = _default_omega(sp, rng)
            if W is None:
                raise ConstructionError("(M, L) is curved and M is not a subalgebra; pass --omega")
        if args.eps is not None or args.lprime is not None:
            E = _eps_or_lprime(args, spec, sp)
        else:
            E = suite.random_formal(sp.n, sp.n, rng, skew=True)
        out = Outcome("mc", {**_spec_input(spec), "m": args.m, "l": args.l, "omega": W, "eps": E,
                             "t_order": args.t_order}, args.seed)
        res = mc_check(structure_of(sp, 3), map_to_two_form(W))
        pre = Report("Maurer-Cartan check")
        pre.add("MC residual vanishes", res.passed, residuals=[res.residual] if res.residual else [])
        out.reports.append(pre)
        if res.passed:
            out.reports.append(mc_equivalence_certificate(sp, W, E, args.t_order, 3))
    return out


def cmd_example(args) -> Outcome:
    if args.list or args.name is None:
        out = Outcome("example --list", {}, args.seed)
        rep = Report("catalog")
        rep.data["entries"] = catalog.catalog_names()
        out.reports.append(rep)
        return out
    spec = catalog.builtin(args.name)
    out = Outcome("example", {**_spec_input(spec), "arity": args.arity}, args.seed)
    out.reports.extend(example_suite(spec, args.arity))
    return out


def example_suite(spec: AlgebraSpec, N: int = DEFAULT_ARITY) -> List[Report]:
    """Validation, transport morphisms of every pair, and the bialgebra certificates that apply."""
    reps = [spec.validate()]
    for m, l, lp in spec.pairs:
        tr = transport_structure(spec.splitting(m, l), spec.splittings[lp], N)
        tr.report.title = f"transport ({m}, {l}) -> ({m}, {lp})"
        reps.append(tr.report)
    if spec.lie_algebra is None:
        return reps
    g = catalog.lie_algebra_of(spec)
    if "ell3_scale" in spec.constants:
        reps.append(catalog.cartan_cubic_structure(g, N)[1])
    for key, rm in spec.rmatrices.items():
        E = rm.matrix(g.dim)
        eta = rm.eta_scale if rm.eta_scale is not None else 1
        cy = catalog.cybe_check(g, E, eta)
        rep = Report(f"r-matrix {key}")
        rep.add(f"classified as {rm.kind}", cy.kind == rm.kind, detail=f"found {cy.kind}")
        rep.data["[r, r]"] = cy.square
        reps.append(rep)
        if cy.kind == "triangular" and not spec.cobracket:
            reps.append(catalog.triangular_formality(g, E, N))
        elif cy.kind == "quasi-triangular":
            reps.append(catalog.quasitriangular_bridge(g, E, eta, N))
    return reps


def cmd_complex(args) -> Outcome:
    rng = random.Random(args.seed)
    with truncation(args.t_order):
        k = args.size
        mats = {}
        for key in ("phi", "phibar", "rho"):
            text = getattr(args, key)
            if text is None:
                mats[key] = suite.random_formal(k, k, rng)
            else:
                mats[key] = parse_matrix(text, f"--{key}")
                k = len(mats[key])
        if len({len(x) for x in mats.values()}) != 1:
            raise SpecError("phi, phibar and rho must have the same size")
        out = Outcome("complex", {**mats, "t_order": args.t_order}, args.seed)
        cb = complex_blocks(mats["phi"], mats["phibar"])
        out.reports.append(cb.report)
        out.reports.append(inverse_transport_check(cb, mats["rho"]))
        _, sp = pointwise_double(len(mats["phi"]))
        src = structure_of(sp, 3)
        tgt = structure_of(graph_lagrangian(sp, cb.E), 3)
        out.reports.append(difference_bracket_identity(src, tgt, cb.E))
        out.reports[-1].data["eps"] = cb.eps
    return out


def cmd_acceptance(args) -> Outcome:
    if args.criterion not in suite.CRITERIA:
        raise KeyError(f"unknown criterion {args.criterion}; choose 1-{len(suite.CRITERIA)}")
    kw = {"seed": args.seed}
    if args.criterion in (2, 3, 4):
        kw["N"] = args.arity
    if args.criterion in (5, 9):
        kw["order"] = args.t_order
    out = Outcome("acceptance", {"criterion": args.criterion, "arity": args.arity,
                                 "t_order": args.t_order}, args.seed)
    out.reports.append(suite.CRITERIA[args.criterion](**kw))
    return out


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--arity", type=int, default=DEFAULT_ARITY, help="arity bound N (default 4)")
    common.add_argument("--t-order", type=int, default=DEFAULT_ORDER, help="truncation order in t")
    common.add_argument("--seed", type=int, default=suite.DEFAULT_SEED, help="seed for random sampling")
    common.add_argument("--json", action="store_true", help="emit the report document as JSON")
    common.add_argument("--timing", action="store_true", help="include wall-clock time")

    p = argparse.ArgumentParser(prog="dirac-linfty", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="check the double and its splittings")
    s.add_argument("spec", help="spec file or catalog name")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("brackets", parents=[common], help="derived brackets of a splitting")
    s.add_argument("spec")
    s.add_argument("m")
    s.add_argument("l")
    s.set_defaults(func=cmd_brackets)

    for name, func, hlp in (("transport", cmd_transport, "e^R morphism and MC equivalence"),
                            ("mc", cmd_mc, "Maurer-Cartan check and transport")):
        s = sub.add_parser(name, parents=[common], help=hlp)
        s.add_argument("spec")
        s.add_argument("m")
        s.add_argument("l")
        s.add_argument("lprime", nargs="?", help="target splitting L'")
        s.add_argument("--eps", help="bivector as a JSON matrix (instead of L')")
        if name == "mc":
            s.add_argument("--omega", help="graph map of the MC element as a JSON matrix")
        s.set_defaults(func=func)

    s = sub.add_parser("example", parents=[common], help="certificate suite of a catalog entry")
    s.add_argument("name", nargs="?")
    s.add_argument("--list", action="store_true", help="list catalog entries")
    s.set_defaults(func=cmd_example)

    s = sub.add_parser("complex", parents=[common], help="complex-structure matrix layer")
    for key in ("phi", "phibar", "rho"):
        s.add_argument(f"--{key}", help="JSON matrix (random formal if omitted)")
    s.add_argument("--size", type=int, default=2, help="size of random matrices")
    s.set_defaults(func=cmd_complex)

    s = sub.add_parser("acceptance", parents=[common], help="run one acceptance criterion")
    s.add_argument("criterion", type=int)
    s.set_defaults(func=cmd_acceptance)
    return p


def _fail(code: int, kind: str, exc: BaseException, as_json: bool) -> int:
    if as_json:
        print(json.dumps({"schema_version": SCHEMA_VERSION, "error": kind, "message": str(exc)},
                         indent=2))
    else:
        print(f"error ({kind}): {exc}", file=sys.stderr)
    return code


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.arity < 0 or args.t_order < 0:
        parser.error("--arity and --t-order must be non-negative")
    start = time.perf_counter()
    try:
        out = args.func(args)
    except SpecError as exc:
        return _fail(EXIT_PARSE, "parse", exc, args.json)
    except KeyError as exc:
        return _fail(EXIT_UNKNOWN_SELECTOR, "unknown selector", exc, args.json)
    except ArityBoundError as exc:
        return _fail(EXIT_ARITY, "arity bound", exc, args.json)
    except (ConstructionError, GeometricError, ArithmeticError) as exc:
        return _fail(EXIT_PRECONDITION, "precondition", exc, args.json)
    except InvariantViolation as exc:
        return _fail(EXIT_INVARIANT, "invariant violation", exc, args.json)
    except (ValueError, TypeError) as exc:
        return _fail(EXIT_PARSE, "parse", exc, args.json)
    if args.timing:
        out.elapsed = time.perf_counter() - start
    print(json.dumps(out.to_dict(), indent=2) if args.json else out.render())
    return EXIT_OK if out.passed else EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
