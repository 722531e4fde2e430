"""JSON problem files and reports.

Every integer may be written as a JSON number or as a decimal string (for
values beyond double precision); rationals additionally accept ``"p/q"``.
Polynomials are lists of ``[exponent, coefficient]`` terms.  Output is
canonical: sorted keys, compact separators, integers of 53 bits or more
written as strings.
"""
from __future__ import annotations

import json
import os
import tempfile
from fractions import Fraction

import jsonschema

from .cone import RationalCone
from .funcbasis import FunctionBasis, ParamFamily
from .linalg import IntMatrix
from .optimality import PolyIP
from .polyhedron import (ConeMinusExcluded, ExplicitFinite, Polyhedron, PolyhedronPoints,
                         SemiAlgebraicPoints)
from .polynomial import MultiPoly, PolyMap

SAFE_INT = 2 ** 53

_int = {"oneOf": [{"type": "integer"}, {"type": "string", "pattern": "^-?[0-9]+$"}]}
_rat = {"oneOf": [{"type": "integer"}, {"type": "string", "pattern": "^-?[0-9]+(/[0-9]+)?$"}]}
_vec = {"type": "array", "items": _int, "minItems": 1}
_vecs = {"type": "array", "items": _vec}
_count = {"type": "integer", "minimum": 0}
_poly = {"type": "array", "items": {
    "type": "array", "minItems": 2, "maxItems": 2,
    "prefixItems": [{"type": "array", "items": {"type": "integer", "minimum": 0}}, _rat]}}
_comment = {"type": "string"}


def _doc(kind, props, required, extra=None):
    schema = {
        "type": "object",
        "properties": {"kind": {"const": kind}, "comment": _comment, **props},
        "required": ["kind"] + required,
        "additionalProperties": False,
    }
    if extra:
        schema.update(extra)
    return schema


def _when(variant, required):
    return {"if": {"properties": {"variant": {"const": variant}}},
            "then": {"required": required}}


LATTICE_SET = _doc("lattice_set", {
    "variant": {"enum": ["polyhedron", "cone_minus_excluded", "explicit", "semialgebraic"]},
    "A": _vecs, "b": {"type": "array", "items": _int}, "n": _count,
    "generators": _vecs, "excluded": _vecs,
    "points": _vecs, "ambient_dim": _count,
    "constraints": {"type": "array", "items": _poly},
    "cone": _vecs,
}, ["variant"], {"allOf": [
    _when("polyhedron", ["A", "b"]),
    _when("cone_minus_excluded", ["generators"]),
    _when("explicit", ["points", "ambient_dim"]),
    _when("semialgebraic", ["constraints", "ambient_dim"]),
]})

_family = {
    "type": "object",
    "properties": {"name": {"type": "string"}, "nparams": _count,
                   "map": {"type": "array", "items": _poly, "minItems": 1},
                   "constraints": {"type": "array", "items": _poly}},
    "required": ["nparams", "map"],
    "additionalProperties": False,
}

SCHEMAS = {
    "cone": _doc("cone", {"generators": _vecs, "ambient_dim": _count}, ["generators"]),
    "polyhedron": _doc("polyhedron", {"A": _vecs, "b": {"type": "array", "items": _int},
                                      "n": _count}, ["A", "b"]),
    "lattice_set": LATTICE_SET,
    "poly_map": _doc("poly_map", {"nvars": _count,
                                  "components": {"type": "array", "items": _poly, "minItems": 1},
                                  "names": {"type": "array", "items": {"type": "string"}}},
                     ["nvars", "components"]),
    "poly_ip": _doc("poly_ip", {"nvars": _count, "objective": _poly, "A": _vecs,
                                "b": {"type": "array", "items": _int}, "z0": _vec},
                    ["nvars", "objective", "A", "b"]),
    "function_basis": _doc("function_basis", {
        "ambient_dim": _count,
        "families": {"type": "array", "items": _family},
        "set": LATTICE_SET,
        "max_param_count": _count,
        "max_param_count_with_offset": _count,
        "box": {"type": "array"},
    }, ["ambient_dim", "families"]),
    "basis_report": _doc("basis_report", {
        "command": {"type": "string"}, "ambient_dim": _count, "set": LATTICE_SET,
        "empty": {"type": "boolean"}, "finite": {"type": "boolean"},
        "witness_ray": _vec, "pointed": {"type": "boolean"}, "minimal": {"type": "boolean"},
        "basis": _vecs, "size": _count, "certified_box": {"type": ["array", "null"]},
    }, ["command", "ambient_dim", "set"]),
}


class FormatError(ValueError):
    pass


def validate(doc, kinds=None) -> str:
    """Validate ``doc`` against the schema of its kind; return the kind."""
    if not isinstance(doc, dict) or "kind" not in doc:
        raise FormatError("document must be an object with a 'kind' field")
    kind = doc["kind"]
    if kind not in SCHEMAS:
        raise FormatError(f"unknown kind {kind!r}")
    if kinds is not None and kind not in kinds:
        raise FormatError(f"expected kind {' or '.join(kinds)}, got {kind!r}")
    try:
        jsonschema.validate(doc, SCHEMAS[kind], cls=jsonschema.Draft202012Validator)
    except jsonschema.ValidationError as e:
        path = "/".join(str(p) for p in e.absolute_path)
        raise FormatError(f"{kind}: {e.message} at /{path}") from None
    return kind


# --- decoding -----------------------------------------------------------------

def to_int(v) -> int:
    return int(v)


def to_rat(v) -> Fraction:
    return Fraction(v) if isinstance(v, str) else Fraction(int(v))


def to_vec(v) -> tuple:
    return tuple(int(a) for a in v)


def to_vecs(vs) -> list:
    return [to_vec(v) for v in vs]


def to_poly(terms, nvars: int) -> MultiPoly:
    d = {}
    for exp, c in terms:
        exp = tuple(exp)
        if len(exp) != nvars:
            raise FormatError(f"exponent {list(exp)} does not have {nvars} entries")
        d[exp] = d.get(exp, 0) + to_rat(c)
    return MultiPoly.from_dict(nvars, d)


def _same_len(vs, n, what):
    if any(len(v) != n for v in vs):
        raise FormatError(f"{what}: every vector must have {n} entries")


def decode_cone(doc) -> RationalCone:
    gens = to_vecs(doc["generators"])
    n = doc.get("ambient_dim", len(gens[0]) if gens else None)
    if n is None:
        raise FormatError("cone: ambient_dim is required without generators")
    _same_len(gens, n, "cone generators")
    if any(not any(g) for g in gens):
        raise FormatError("cone: generators must be nonzero")
    return RationalCone.of(gens, n)


def decode_polyhedron(doc) -> Polyhedron:
    A = to_vecs(doc["A"])
    b = [to_int(v) for v in doc["b"]]
    n = doc.get("n", len(A[0]) if A else None)
    if n is None:
        raise FormatError("polyhedron: n is required when A has no rows")
    _same_len(A, n, "polyhedron rows")
    if len(b) != len(A):
        raise FormatError("polyhedron: b needs one entry per row of A")
    return Polyhedron.of(A, b, n)


def decode_lattice_set(doc):
    """Return ``(S, cone or None)``."""
    v = doc["variant"]
    if v == "polyhedron":
        S = PolyhedronPoints(decode_polyhedron(doc))
    elif v == "cone_minus_excluded":
        C = decode_cone({"generators": doc["generators"], **(
            {"ambient_dim": doc["ambient_dim"]} if "ambient_dim" in doc else {})})
        ex = to_vecs(doc.get("excluded", []))
        _same_len(ex, C.ambient_dim, "excluded points")
        try:
            S = ConeMinusExcluded(C, frozenset(ex))
        except ValueError as e:
            raise FormatError(str(e)) from None
    elif v == "explicit":
        n = doc["ambient_dim"]
        pts = to_vecs(doc["points"])
        _same_len(pts, n, "explicit points")
        S = ExplicitFinite(tuple(pts), n)
    else:
        n = doc["ambient_dim"]
        S = SemiAlgebraicPoints(tuple(to_poly(q, n) for q in doc["constraints"]), n)
    cone = None
    if "cone" in doc:
        gens = to_vecs(doc["cone"])
        _same_len(gens, S.ambient_dim, "cone generators")
        cone = RationalCone.of(gens, S.ambient_dim)
    return S, cone


def decode_poly_map(doc) -> PolyMap:
    n = doc["nvars"]
    return PolyMap(tuple(to_poly(c, n) for c in doc["components"]))


def decode_poly_ip(doc) -> PolyIP:
    n = doc["nvars"]
    A = to_vecs(doc["A"])
    _same_len(A, n, "poly_ip rows")
    b = [to_int(v) for v in doc["b"]]
    if len(b) != len(A):
        raise FormatError("poly_ip: b needs one entry per row of A")
    return PolyIP(to_poly(doc["objective"], n), IntMatrix.from_rows(A, n), tuple(b))


def decode_family(doc, n: int) -> ParamFamily:
    m = doc["nparams"]
    comps = tuple(to_poly(c, m) for c in doc["map"])
    if len(comps) != n:
        raise FormatError(f"family map must have {n} components")
    cons = tuple(to_poly(c, m) for c in doc.get("constraints", []))
    return ParamFamily(PolyMap(comps), cons, doc.get("name", ""))


def decode_function_basis(doc) -> FunctionBasis:
    n = doc["ambient_dim"]
    return FunctionBasis(tuple(decode_family(f, n) for f in doc["families"]), n)


# --- encoding -----------------------------------------------------------------

def enc_int(v):
    v = int(v)
    return v if -SAFE_INT < v < SAFE_INT else str(v)


def enc_rat(v):
    v = Fraction(v)
    if v.denominator == 1:
        return enc_int(v.numerator)
    return f"{v.numerator}/{v.denominator}"


def enc_vec(v) -> list:
    return [enc_int(a) for a in v]


def enc_poly(p: MultiPoly) -> list:
    return [[list(e), enc_rat(c)] for e, c in p.terms]


def enc_family(T: ParamFamily) -> dict:
    out = {"nparams": T.param_count, "map": [enc_poly(c) for c in T.map.components]}
    if T.name:
        out["name"] = T.name
    if T.constraints:
        out["constraints"] = [enc_poly(q) for q in T.constraints]
    return out


def enc_function_basis(B: FunctionBasis, set_doc=None) -> dict:
    out = {"kind": "function_basis", "ambient_dim": B.ambient_dim,
           "families": [enc_family(T) for T in B.families],
           "max_param_count": B.max_param_count,
           "max_param_count_with_offset": B.max_param_count_with_offset}
    if set_doc is not None:
        out["set"] = set_doc
    return out


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"), ensure_ascii=True) + "\n"


def write_atomic(path: str, text: str):
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_json(path: str):
    with open(path, encoding="utf-8") as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as e:
            raise FormatError(f"{path}: invalid JSON ({e})") from None
