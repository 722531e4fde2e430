"""Committed problem instances and their golden CLI reports.

Each fixture is a problem file in ``data/`` plus the CLI command that
processes it.  Goldens in ``golden/`` hold the canonical report; they are
only rewritten by :func:`regenerate` with ``force=True``.
"""
from __future__ import annotations

import io
import json
from dataclasses import dataclass
from pathlib import Path

from .. import formats as fmt

HERE = Path(__file__).resolve().parent
DATA = HERE / "data"
GOLDEN = HERE / "golden"

# name -> (command, extra CLI arguments)
REGISTRY = {
    "y_ge_1": ("intbasis", []),
    "y_ge_1_ifb": ("verify", ["--box", "0..8"]),
    "parabola_cone": ("verify", ["--box", "0,0..16,4"]),
    "parabola_cone_quadratic": ("verify", ["--box", "0,0..16,4"]),
    "parabola_ifb": ("ifb", ["--box", "0..6"]),
    "taylor_square": ("taylor", []),
    "zero_correction_k2": ("taylor", []),
    "zero_correction_k3": ("taylor", []),
    "cone_1_2": ("hilbert", ["--minimal"]),
    "cone_1_4": ("hilbert", ["--minimal"]),
    "quadrant": ("hilbert", ["--minimal"]),
    "line_cone": ("hilbert", []),
    "cube_corner": ("hilbert", ["--minimal"]),
    "triangle": ("intbasis", []),
    "wedge": ("intbasis", []),
    "cut_corner": ("intbasis", []),
    "product_ip": ("certify", ["--bound", "10"]),
    "product_ip_optimal": ("certify", ["--bound", "10"]),
    "unbounded_ip": ("certify", ["--bound", "5"]),
}


@dataclass(frozen=True)
class Fixture:
    name: str
    path: Path
    document: dict
    command: str
    args: tuple
    golden: str | None

    @property
    def comment(self) -> str:
        return self.document.get("comment", "")

    def argv(self, output: str | None = None) -> list:
        out = [self.command, "--input", str(self.path), *self.args]
        if output:
            out += ["--output", output]
        return out


def names() -> list:
    return sorted(REGISTRY)


def load(name: str) -> Fixture:
    if name not in REGISTRY:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(names())}")
    path = DATA / f"{name}.json"
    doc = fmt.read_json(str(path))
    fmt.validate(doc)
    command, args = REGISTRY[name]
    gpath = GOLDEN / f"{name}.json"
    golden = gpath.read_text(encoding="utf-8") if gpath.exists() else None
    return Fixture(name, path, doc, command, tuple(args), golden)


def run_fixture(fx: Fixture) -> tuple:
    """Run the fixture's CLI command in-process; return ``(exit_code, stdout)``."""
    from ..cli import run

    out, err = io.StringIO(), io.StringIO()
    code = run(fx.argv(), stdout=out, stderr=err)
    return code, out.getvalue()


def regenerate(force: bool = False) -> list:
    """Rewrite golden reports; refuses to overwrite existing files unless ``force``."""
    GOLDEN.mkdir(exist_ok=True)
    written = []
    for name in names():
        fx = load(name)
        code, text = run_fixture(fx)
        if code != 0:
            raise RuntimeError(f"fixture {name} exited with {code}")
        json.loads(text)
        gpath = GOLDEN / f"{name}.json"
        if gpath.exists() and not force:
            if gpath.read_text(encoding="utf-8") != text:
                raise RuntimeError(f"golden {name} would change; pass force=True to rewrite")
            continue
        fmt.write_atomic(str(gpath), text)
        written.append(name)
    return written
