"""Command-line interface: ``ifbases <command> --input FILE [options]``.

Exit codes: 0 success, 2 bad input or schema violation, 3 a mathematical
precondition failed, 4 an infeasible point was supplied.
"""
from __future__ import annotations

import argparse
import sys

from . import formats as fmt
from .cone import RationalCone, is_pointed
from .errors import (CapExceededError, EmptySetError, IFBError, InfeasiblePointError,
                     InfiniteBasisError, NotPointedError, PreconditionError)
from .funcbasis import covers, ifb_from_cone, split_basis
from .intbasis import integral_basis
from .optimality import certify, verify_improvement
from .oracle import is_irreducible, verify_basis
from .polyhedron import PolyhedronPoints, has_finite_basis
from .polynomial import correction_bounds, evaluate, floor_vec

EXIT_OK, EXIT_INPUT, EXIT_MATH, EXIT_INFEASIBLE = 0, 2, 3, 4


class InputError(Exception):
    pass


def parse_box(text: str, dim: int):
    """``"LO..HI"`` with scalars (same bound on every axis) or comma-separated vectors."""
    try:
        lo_s, hi_s = text.split("..")
        lo = [int(v) for v in lo_s.split(",")]
        hi = [int(v) for v in hi_s.split(",")]
    except ValueError:
        raise InputError(f"bad --box {text!r}; expected LO..HI such as 0..6 or 0,0..16,4") from None
    if len(lo) == 1:
        lo = lo * dim
    if len(hi) == 1:
        hi = hi * dim
    if len(lo) != dim or len(hi) != dim:
        raise InputError(f"--box must have {dim} coordinates")
    if any(a > b for a, b in zip(lo, hi)):
        raise InputError("--box needs LO <= HI in every coordinate")
    return tuple(lo), tuple(hi)


def parse_vec(text: str):
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError:
        raise InputError(f"bad integer vector {text!r}") from None


def _set_doc_for_cone(C: RationalCone) -> dict:
    return {"kind": "lattice_set", "variant": "cone_minus_excluded",
            "generators": [fmt.enc_vec(g) for g in C.generators], "ambient_dim": C.ambient_dim}


def _set_doc_for_polyhedron(doc) -> dict:
    out = {"kind": "lattice_set", "variant": "polyhedron", "A": doc["A"], "b": doc["b"]}
    if "n" in doc:
        out["n"] = doc["n"]
    elif not doc["A"]:
        raise InputError("polyhedron: n is required when A has no rows")
    return out


def _strip_comment(doc) -> dict:
    return {k: v for k, v in doc.items() if k != "comment"}


def _basis_report(command, S, set_doc, basis, **extra) -> dict:
    out = {"kind": "basis_report", "command": command, "ambient_dim": S.ambient_dim,
           "set": set_doc, "basis": [fmt.enc_vec(p) for p in basis.points],
           "size": len(basis)}
    if basis.certified_box is not None:
        out["certified_box"] = [list(basis.certified_box[0]), list(basis.certified_box[1])]
    out.update(extra)
    return out


# --- commands -------------------------------------------------------------------

def cmd_hilbert(doc, args) -> dict:
    fmt.validate(doc, ["cone"])
    C = fmt.decode_cone(doc)
    pointed, _ = is_pointed(C)
    if args.minimal and not pointed:
        raise NotPointedError("cone contains a line; a minimal basis is not unique")
    from .polyhedron import ConeMinusExcluded

    S = ConeMinusExcluded(C)
    basis = integral_basis(S, C)
    return _basis_report("hilbert", S, _set_doc_for_cone(C), basis,
                         pointed=pointed, minimal=pointed, finite=True)


def cmd_intbasis(doc, args) -> dict:
    kind = fmt.validate(doc, ["polyhedron", "lattice_set"])
    if kind == "polyhedron":
        set_doc = _set_doc_for_polyhedron(doc)
        S = PolyhedronPoints(fmt.decode_polyhedron(doc))
        cone = None
    else:
        set_doc = _strip_comment(doc)
        S, cone = fmt.decode_lattice_set(doc)
    base = {"kind": "basis_report", "command": "intbasis", "ambient_dim": S.ambient_dim,
            "set": set_doc}
    if isinstance(S, PolyhedronPoints):
        try:
            finite, witness = has_finite_basis(S.P)
        except EmptySetError:
            return {**base, "empty": True}
        if not finite:
            return {**base, "empty": False, "finite": False, "witness_ray": fmt.enc_vec(witness)}
    box = parse_box(args.box, S.ambient_dim) if args.box else None
    try:
        basis = integral_basis(S, cone, box=box)
    except InfiniteBasisError as e:
        return {**base, "empty": False, "finite": False, "witness_ray": fmt.enc_vec(e.witness_ray)}
    pointed, _ = is_pointed(RationalCone.of(basis.points, S.ambient_dim)) if basis.points else (True, None)
    return _basis_report("intbasis", S, set_doc, basis, empty=False, finite=True,
                         pointed=pointed, minimal=pointed)


def cmd_ifb(doc, args) -> dict:
    fmt.validate(doc, ["lattice_set"])
    S, cone = fmt.decode_lattice_set(doc)
    if cone is None:
        raise InputError("ifb needs a 'cone' field listing the cone generators")
    if not args.box:
        raise InputError("ifb needs --box")
    box = parse_box(args.box, S.ambient_dim)
    B = ifb_from_cone(S, cone.generators, box)
    out = fmt.enc_function_basis(B, _strip_comment(doc))
    out["box"] = [list(box[0]), list(box[1])]
    return out


def cmd_split(doc, args) -> dict:
    fmt.validate(doc, ["function_basis"])
    if "set" not in doc:
        raise InputError("split needs the function basis to carry its 'set'")
    if not args.generator:
        raise InputError("split needs --generator")
    B = fmt.decode_function_basis(doc)
    S, _ = fmt.decode_lattice_set(doc["set"])
    out = fmt.enc_function_basis(split_basis(B, parse_vec(args.generator), S), doc["set"])
    if "box" in doc:
        out["box"] = doc["box"]
    return out


def _sandwich_ok(g, g_l, g_u, seed: int, samples: int = 200) -> bool:
    import random
    from fractions import Fraction

    rng = random.Random(seed)
    for _ in range(samples):
        y = tuple(Fraction(rng.randint(0, 400), rng.randint(1, 20)) for _ in range(g.nvars))
        lam = floor_vec(y)
        gy, glam = g(y), g(lam)
        for j in range(g.output_dim):
            r = gy[j] - glam[j]
            if not evaluate(g_l.components[j], lam) <= r <= evaluate(g_u.components[j], lam):
                return False
    return True


def cmd_taylor(doc, args) -> dict:
    fmt.validate(doc, ["poly_map"])
    g = fmt.decode_poly_map(doc)
    g_l, g_u = correction_bounds(g)
    names = doc.get("names") or [f"l{i + 1}" for i in range(g.nvars)]
    if len(names) != g.nvars:
        raise InputError("names must list one name per variable")
    drop = all(
        (c.degree <= 0) or (lo.degree < c.degree and up.degree < c.degree)
        for c, lo, up in zip(g.components, g_l.components, g_u.components))
    return {
        "kind": "taylor_report", "nvars": g.nvars,
        "g": [fmt.enc_poly(c) for c in g.components],
        "g_l": [fmt.enc_poly(c) for c in g_l.components],
        "g_u": [fmt.enc_poly(c) for c in g_u.components],
        "text": {"g": [c.to_str(names) for c in g.components],
                 "g_l": [c.to_str(names) for c in g_l.components],
                 "g_u": [c.to_str(names) for c in g_u.components]},
        "maxdeg": {"g": g.maxdeg, "g_l": g_l.maxdeg, "g_u": g_u.maxdeg},
        "degree_drop": drop,
        "sandwich_check": {"seed": args.seed, "samples": 200,
                           "ok": _sandwich_ok(g, g_l, g_u, args.seed)},
    }


def cmd_certify(doc, args) -> dict:
    fmt.validate(doc, ["poly_ip"])
    ip = fmt.decode_poly_ip(doc)
    if args.z0:
        z0 = parse_vec(args.z0)
    elif "z0" in doc:
        z0 = fmt.to_vec(doc["z0"])
    else:
        raise InputError("certify needs --z0 or a 'z0' field")
    if len(z0) != ip.n:
        raise InputError(f"z0 must have {ip.n} entries")
    bound = args.bound if args.bound is not None else 20
    cert = certify(ip, z0, bound)
    out = {"kind": "certificate", "verdict": cert.verdict, "z0": fmt.enc_vec(z0),
           "value": fmt.enc_rat(cert.value), "search_bound": bound, "explored": cert.explored}
    if cert.direction is not None:
        assert verify_improvement(ip, cert)
        out.update(direction=fmt.enc_vec(cert.direction), point=fmt.enc_vec(cert.point),
                   improved_value=fmt.enc_rat(cert.improved_value),
                   orthant="".join("+" if s > 0 else "-" for s in cert.orthant))
    return out


def cmd_verify(doc, args) -> dict:
    kind = fmt.validate(doc, ["basis_report", "function_basis"])
    if "set" not in doc:
        raise InputError("verify needs a document that carries its 'set'")
    S, _ = fmt.decode_lattice_set(doc["set"])
    if not args.box:
        raise InputError("verify needs --box")
    lo, hi = parse_box(args.box, S.ambient_dim)
    out = {"kind": "verify_report", "of": kind, "box": [list(lo), list(hi)]}
    if kind == "function_basis":
        B = fmt.decode_function_basis(doc)
        rep = covers(B, S, (lo, hi), args.bound)
        out.update(ok=rep.ok, checked=rep.checked,
                   counterexample=fmt.enc_vec(rep.counterexample) if rep.counterexample else None)
        origin = (0,) * S.ambient_dim
        if rep.ok and S.contains(origin):
            out["origin_terms"] = len(rep.witnesses[origin])
        return out
    if "basis" not in doc:
        return {**out, "ok": True, "note": "report carries no basis"}
    basis = fmt.to_vecs(doc["basis"])
    if not basis:
        pointed, c = True, (1,) * S.ambient_dim
    else:
        pointed, c = is_pointed(RationalCone.of(basis, S.ambient_dim))
    if not pointed:
        raise NotPointedError("the oracle needs a pointed cone(basis)")
    sound, complete, failure = verify_basis(basis, S, lo, hi, c)
    irreducible = all(is_irreducible(basis, g, c) for g in basis)
    out.update(ok=sound and complete, sound=sound, complete=complete,
               failure=fmt.enc_vec(failure) if failure else None, irreducible=irreducible)
    return out


def cmd_plot(doc, args) -> str:
    from .plot import render_svg

    kind = fmt.validate(doc, ["lattice_set", "function_basis", "basis_report"])
    if kind == "lattice_set":
        S, _ = fmt.decode_lattice_set(doc)
        highlight, fams = [], None
    elif kind == "basis_report":
        S, _ = fmt.decode_lattice_set(doc["set"])
        highlight, fams = fmt.to_vecs(doc.get("basis", [])), None
    else:
        if "set" not in doc:
            raise InputError("plotting a function basis needs its 'set'")
        S, _ = fmt.decode_lattice_set(doc["set"])
        highlight, fams = [], fmt.decode_function_basis(doc)
    if S.ambient_dim != 2:
        raise InputError("plot needs a 2-dimensional set")
    lo, hi = parse_box(args.box or "0..8", 2)
    return render_svg(S, lo, hi, highlight, fams)


COMMANDS = {
    "hilbert": cmd_hilbert, "intbasis": cmd_intbasis, "ifb": cmd_ifb, "split": cmd_split,
    "taylor": cmd_taylor, "certify": cmd_certify, "verify": cmd_verify, "plot": cmd_plot,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ifbases", description="Exact integral bases and function bases.")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--input", required=True, help="problem file (JSON)")
        sp.add_argument("--output", help="write the report here instead of stdout")
        sp.add_argument("--box", help="LO..HI, e.g. 0..6 or 0,0..16,4")
        sp.add_argument("--bound", type=int, help="search bound (certify) or parameter bound (verify)")
        sp.add_argument("--minimal", action="store_true", help="require a unique minimal basis")
        sp.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
        if name == "certify":
            sp.add_argument("--z0", help="feasible point, comma separated")
        if name == "split":
            sp.add_argument("--generator", help="cone generator to split off, comma separated")
    return p


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        doc = fmt.read_json(args.input)
        result = COMMANDS[args.command](doc, args)
    except (fmt.FormatError, InputError, OSError) as e:
        print(f"error: {e}", file=stderr)
        return EXIT_INPUT
    except InfeasiblePointError as e:
        print(fmt.dumps({"kind": "error", "error": "infeasible", "message": str(e),
                         "constraint": list(e.constraint)}), end="", file=stderr)
        return EXIT_INFEASIBLE
    except (PreconditionError, NotPointedError, CapExceededError, IFBError, ValueError) as e:
        print(f"error: {e}", file=stderr)
        return EXIT_MATH
    text = result if isinstance(result, str) else fmt.dumps(result)
    if args.output:
        fmt.write_atomic(args.output, text)
    else:
        stdout.write(text)
    return EXIT_OK


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
