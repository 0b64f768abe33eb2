"""Spec files: JSON documents describing a quadratic Lie algebra with named splittings.

Rationals are ``"p/q"`` strings (integers are accepted on input, floats never).
:func:`dumps` is canonical: ``dumps(loads(dumps(x))) == dumps(x)`` byte for byte.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .courant import LagrangianSplitting, QuadraticLieAlgebra, validate_double, validate_lagrangian
from .linalg import Matrix
from .report import Report
from .scalars import format_scalar, parse_rational

SCHEMA_VERSION = 1

_KEYS = ("schema_version", "name", "dim", "basis", "degrees", "brackets", "gram", "splittings",
         "pairs", "lie_algebra", "rmatrices", "cobracket", "constants", "notes")


class SpecError(ValueError):
    """Malformed spec file."""


@dataclass
class LieData:
    """Structure constants of a Lie algebra ``g`` (optionally with an invariant pairing)."""

    basis: List[str]
    brackets: List[Tuple[int, int, int, Fraction]]
    gram: Optional[Matrix] = None


@dataclass
class RMatrixData:
    """Bivector ``sum c r_ij x_i ^ x_j`` on the ``lie_algebra`` basis."""

    entries: List[Tuple[int, int, Fraction]]
    kind: str
    eta_scale: Optional[Fraction] = None

    def matrix(self, n: int) -> Matrix:
        E = [[Fraction(0)] * n for _ in range(n)]
        for i, j, c in self.entries:
            E[i][j] += c
            E[j][i] -= c
        return E


@dataclass
class AlgebraSpec:
    name: str
    basis: List[str]
    brackets: List[Tuple[int, int, int, Fraction]]
    gram: Matrix
    degrees: List[int] = field(default_factory=list)
    splittings: Dict[str, List[list]] = field(default_factory=dict)
    pairs: List[Tuple[str, str, str]] = field(default_factory=list)
    lie_algebra: Optional[LieData] = None
    rmatrices: Dict[str, RMatrixData] = field(default_factory=dict)
    cobracket: Optional[List[Tuple[int, int, int, Fraction]]] = None
    constants: Dict[str, Fraction] = field(default_factory=dict)
    notes: str = ""

    def __post_init__(self):
        if not self.degrees:
            self.degrees = [0] * len(self.basis)
        self._algebra = None

    @property
    def dim(self) -> int:
        return len(self.basis)

    def algebra(self) -> QuadraticLieAlgebra:
        if self._algebra is None:
            self._algebra = QuadraticLieAlgebra.from_brackets(
                self.name, self.basis, self.brackets, self.gram)
        return self._algebra

    def splitting(self, m: str, l: str) -> LagrangianSplitting:
        for key in (m, l):
            if key not in self.splittings:
                raise KeyError(f"unknown splitting {key!r}; have {sorted(self.splittings)}")
        return LagrangianSplitting(self.algebra(), self.splittings[m], self.splittings[l])

    def torsors(self) -> List[Tuple[str, str]]:
        out: List[Tuple[str, str]] = []
        for m, l, lp in self.pairs:
            for key in ((m, l), (m, lp)):
                if key not in out:
                    out.append(key)
        return out

    def validate(self) -> Report:
        rep = Report(f"validate {self.name}")
        rep.extend(validate_double(self.algebra()))
        for key, vecs in self.splittings.items():
            try:
                sub = validate_lagrangian(self.algebra(), vecs)
            except ValueError as exc:
                rep.add(f"splitting {key}: lagrangian", False, detail=str(exc))
                continue
            rep.extend(sub, prefix=f"splitting {key}: ")
        return rep


# ---------------------------------------------------------------- parsing


def _q(x, where: str) -> Fraction:
    if isinstance(x, bool) or isinstance(x, float):
        raise SpecError(f"{where}: rationals must be 'p/q' strings, got {x!r}")
    try:
        return parse_rational(x)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise SpecError(f"{where}: {exc}") from None


def _triples(rows, where: str, n: int) -> List[Tuple[int, int, int, Fraction]]:
    out = []
    for r in rows or []:
        if not isinstance(r, list) or len(r) != 4:
            raise SpecError(f"{where}: entries are [i, j, k, coefficient]")
        i, j, k = (_index(x, where, n) for x in r[:3])
        out.append((i, j, k, _q(r[3], where)))
    return out


def _index(x, where, n) -> int:
    if not isinstance(x, int) or isinstance(x, bool) or not 0 <= x < n:
        raise SpecError(f"{where}: index {x!r} out of range")
    return x


def _matrix(rows, where: str, n: int) -> Matrix:
    if not isinstance(rows, list) or len(rows) != n or any(
            not isinstance(r, list) or len(r) != n for r in rows):
        raise SpecError(f"{where}: expected a {n}x{n} matrix")
    return [[_q(x, where) for x in r] for r in rows]


def from_dict(doc: dict) -> AlgebraSpec:
    if not isinstance(doc, dict):
        raise SpecError("spec file must hold a JSON object")
    unknown = set(doc) - set(_KEYS)
    if unknown:
        raise SpecError(f"unknown fields: {sorted(unknown)}")
    version = doc.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise SpecError(f"unsupported schema_version {version!r}")
    for key in ("name", "basis", "gram"):
        if key not in doc:
            raise SpecError(f"missing field {key!r}")
    basis = doc["basis"]
    if not isinstance(basis, list) or not all(isinstance(b, str) for b in basis):
        raise SpecError("basis must be a list of names")
    n = len(basis)
    if "dim" in doc and doc["dim"] != n:
        raise SpecError(f"dim {doc['dim']} does not match {n} basis names")
    degrees = doc.get("degrees") or [0] * n
    if len(degrees) != n or not all(isinstance(x, int) for x in degrees):
        raise SpecError("degrees must list one integer per basis element")
    splittings = {}
    for key, vecs in (doc.get("splittings") or {}).items():
        if not isinstance(vecs, list) or any(not isinstance(v, list) or len(v) != n for v in vecs):
            raise SpecError(f"splitting {key!r}: vectors must have length {n}")
        splittings[key] = [[_q(x, f"splitting {key}") for x in v] for v in vecs]
    pairs = []
    for p in doc.get("pairs") or []:
        if not isinstance(p, list) or len(p) != 3 or any(x not in splittings for x in p):
            raise SpecError(f"pair {p!r} must name three declared splittings")
        pairs.append(tuple(p))
    lie = None
    if doc.get("lie_algebra") is not None:
        ld = doc["lie_algebra"]
        k = len(ld.get("basis", []))
        lie = LieData(list(ld["basis"]), _triples(ld.get("brackets"), "lie_algebra", k),
                      _matrix(ld["gram"], "lie_algebra gram", k) if ld.get("gram") is not None else None)
    rms = {}
    for key, rd in (doc.get("rmatrices") or {}).items():
        k = len(lie.basis) if lie else n
        entries = []
        for e in rd.get("entries", []):
            if not isinstance(e, list) or len(e) != 3:
                raise SpecError(f"rmatrix {key}: entries are [i, j, coefficient]")
            entries.append((_index(e[0], key, k), _index(e[1], key, k), _q(e[2], key)))
        kind = rd.get("type", "unknown")
        if kind not in ("triangular", "quasi-triangular", "neither", "unknown"):
            raise SpecError(f"rmatrix {key}: unknown type {kind!r}")
        eta = _q(rd["eta_scale"], key) if rd.get("eta_scale") is not None else None
        rms[key] = RMatrixData(entries, kind, eta)
    cob = None
    if doc.get("cobracket") is not None:
        k = len(lie.basis) if lie else n
        cob = _triples(doc["cobracket"], "cobracket", k)
    consts = {k: _q(v, f"constant {k}") for k, v in (doc.get("constants") or {}).items()}
    return AlgebraSpec(doc["name"], list(basis), _triples(doc.get("brackets"), "brackets", n),
                       _matrix(doc["gram"], "gram", n), list(degrees), splittings, pairs, lie, rms,
                       cob, consts, doc.get("notes", ""))


def loads(text: str) -> AlgebraSpec:
    try:
        doc = json.loads(text, parse_float=_reject_float)
    except json.JSONDecodeError as exc:
        raise SpecError(f"invalid JSON: {exc}") from None
    return from_dict(doc)


def _reject_float(s):
    raise SpecError(f"floating-point literal {s} not allowed; use 'p/q' strings")


def load(path) -> AlgebraSpec:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


# ---------------------------------------------------------------- canonical output


def _s(x) -> str:
    return format_scalar(x)


def to_dict(spec: AlgebraSpec) -> dict:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "name": spec.name,
        "dim": spec.dim,
        "basis": list(spec.basis),
        "degrees": list(spec.degrees),
        "brackets": [[i, j, k, _s(c)] for i, j, k, c in spec.brackets],
        "gram": [[_s(x) for x in r] for r in spec.gram],
        "splittings": {k: [[_s(x) for x in v] for v in vecs] for k, vecs in spec.splittings.items()},
        "pairs": [list(p) for p in spec.pairs],
    }
    if spec.lie_algebra is not None:
        ld = spec.lie_algebra
        doc["lie_algebra"] = {
            "basis": list(ld.basis),
            "brackets": [[i, j, k, _s(c)] for i, j, k, c in ld.brackets],
            "gram": [[_s(x) for x in r] for r in ld.gram] if ld.gram is not None else None,
        }
    if spec.rmatrices:
        doc["rmatrices"] = {
            k: {"entries": [[i, j, _s(c)] for i, j, c in r.entries], "type": r.kind,
                "eta_scale": _s(r.eta_scale) if r.eta_scale is not None else None}
            for k, r in spec.rmatrices.items()}
    if spec.cobracket is not None:
        doc["cobracket"] = [[i, j, k, _s(c)] for i, j, k, c in spec.cobracket]
    if spec.constants:
        doc["constants"] = {k: _s(v) for k, v in spec.constants.items()}
    if spec.notes:
        doc["notes"] = spec.notes
    return doc


def dumps(spec: AlgebraSpec) -> str:
    return _emit(to_dict(spec), 0) + "\n"


def _emit(x, indent: int) -> str:
    """JSON with two-space indentation; lists of scalars stay on one line."""
    pad = "  " * (indent + 1)
    if isinstance(x, dict):
        if not x:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {_emit(v, indent + 1)}" for k, v in x.items()]
        return "{\n" + ",\n".join(items) + "\n" + "  " * indent + "}"
    if isinstance(x, list):
        if all(not isinstance(v, (list, dict)) for v in x):
            return "[" + ", ".join(json.dumps(v) for v in x) + "]"
        items = [pad + _emit(v, indent + 1) for v in x]
        return "[\n" + ",\n".join(items) + "\n" + "  " * indent + "]"
    return json.dumps(x)
