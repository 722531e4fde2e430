"""Integral function bases: finite lists of polynomially parametrized families.

A family is ``{f(t) : t in Z_+^m, q(t) >= 0 for every constraint q}``.  A
list of families is an integral function basis of ``S`` when every point of
``S`` is a finite sum of family members that themselves lie in ``S``.  The
empty sum stands for the origin, so ``0`` is never listed as a member.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import product

from .cone import RationalCone, member
from .errors import PreconditionError
from .intbasis import _multiple_limit, _smallest_multiple, integral_basis
from .polyhedron import Augmented
from .polynomial import MultiPoly, PolyMap, evaluate


@dataclass(frozen=True)
class ParamFamily:
    map: PolyMap
    constraints: tuple = ()  # polynomials in the parameters, each required >= 0
    name: str = ""

    def __post_init__(self):
        if any(q.nvars != self.map.nvars for q in self.constraints):
            raise ValueError("constraint over the wrong number of parameters")

    @classmethod
    def affine(cls, offset, generators, name: str = "") -> "ParamFamily":
        """``{offset + sum t_j g_j}``; with no generators, the single point ``offset``."""
        n = len(offset)
        m = len(generators)
        comps = []
        for i in range(n):
            d = {(0,) * m: offset[i]}
            for j, g in enumerate(generators):
                if g[i]:
                    d[tuple(int(k == j) for k in range(m))] = g[i]
            comps.append(MultiPoly.from_dict(m, d))
        return cls(PolyMap(tuple(comps)), (), name)

    @property
    def param_count(self) -> int:
        return self.map.nvars

    @property
    def param_count_with_offset(self) -> int:
        """Parameter count when the choice of offset is counted as one more parameter."""
        return self.param_count + 1

    @property
    def ambient_dim(self) -> int:
        return self.map.output_dim

    def admits(self, t) -> bool:
        return all(v >= 0 for v in t) and all(evaluate(q, t) >= 0 for q in self.constraints)

    def __call__(self, t) -> tuple:
        vals = self.map(t)
        if any(v.denominator != 1 for v in vals):
            raise PreconditionError(f"family {self.name or '?'} leaves Z^n at {t}")
        return tuple(int(v) for v in vals)

    def members(self, bound: int):
        """Pairs ``(t, f(t))`` for admissible ``t`` in ``[0, bound]^m``."""
        for t in product(range(bound + 1), repeat=self.param_count):
            if self.admits(t):
                yield t, self(t)

    def affine_shape(self):
        """``(offset, generators)`` if the family is an unconstrained affine cone, else ``None``."""
        if self.constraints or any(c.degree > 1 for c in self.map.components):
            return None
        m = self.param_count
        zero = (0,) * m
        offset = self(zero)
        gens = []
        for j in range(m):
            e = tuple(int(k == j) for k in range(m))
            gens.append(tuple(a - b for a, b in zip(self(e), offset)))
        return offset, gens


@dataclass(frozen=True)
class FunctionBasis:
    families: tuple
    ambient_dim: int

    def __post_init__(self):
        if any(f.ambient_dim != self.ambient_dim for f in self.families):
            raise ValueError("families must share the ambient dimension")

    @property
    def max_param_count(self) -> int:
        return max((f.param_count for f in self.families), default=0)

    @property
    def max_param_count_with_offset(self) -> int:
        return self.max_param_count + 1


def _box_iter(lo, hi):
    return product(*(range(a, b + 1) for a, b in zip(lo, hi)))


def ifb_from_cone(S, generators, box) -> FunctionBasis:
    """Families ``h_i + cone_Z(v)`` from an integral basis of ``S ∪ {v_1..v_k}``.

    ``S ⊆ cone(v)`` is checked on ``box``; the finite basis is computed with
    completeness certified on that box for sets known only by membership.
    """
    gens = [tuple(int(a) for a in v) for v in generators]
    n = S.ambient_dim
    C = RationalCone.of(gens, n)
    lo, hi = box
    for x in _box_iter(lo, hi):
        if S.contains(x) and not member(C, x):
            raise PreconditionError(f"{x} lies in S but outside cone(v)")
    S_aug = Augmented(S, frozenset(gens))
    sub = []
    for g in C.generators:
        sub.append(_smallest_multiple(S_aug, g, _multiple_limit(S_aug, g, (tuple(lo), tuple(hi)))))
    basis = integral_basis(S_aug, C, box=(tuple(lo), tuple(hi)), minimize=False)
    offsets = [p for p in basis.points if p not in sub]
    fams = [ParamFamily.affine((0,) * n, sub, "T0")]
    fams += [ParamFamily.affine(h, sub, f"T{i + 1}") for i, h in enumerate(offsets)]
    return FunctionBasis(tuple(fams), n)


def split_family(T: ParamFamily, j0: int, S):
    """Split off generator ``j0`` (which must lie in ``S``): ``T = T' + T''``."""
    shape = T.affine_shape()
    if shape is None:
        raise PreconditionError("family is not of the form offset + nonnegative integer cone")
    offset, gens = shape
    if not 0 <= j0 < len(gens):
        raise PreconditionError(f"no generator with index {j0}")
    v = gens[j0]
    if not S.contains(v):
        raise PreconditionError(f"generator {v} is not in S")
    rest = gens[:j0] + gens[j0 + 1:]
    name = T.name or "T"
    return (ParamFamily.affine(offset, rest, name + "'"),
            ParamFamily.affine((0,) * len(v), [v], name + "''"))


def split_basis(B: FunctionBasis, v, S) -> FunctionBasis:
    """Split every affine family on generator ``v`` and add the single ray family ``{t v}``."""
    v = tuple(v)
    if not S.contains(v):
        raise PreconditionError(f"generator {v} is not in S")
    out = []
    ray = None
    for T in B.families:
        shape = T.affine_shape()
        if shape is not None and v in shape[1]:
            first, ray = split_family(T, shape[1].index(v), S)
            out.append(first)
        else:
            out.append(T)
    if ray is None:
        raise PreconditionError(f"no family has generator {v}")
    out.append(ParamFamily.affine((0,) * len(v), [v], "ray" + str(list(v))))
    return FunctionBasis(tuple(out), B.ambient_dim)


@dataclass
class CoverReport:
    ok: bool
    counterexample: tuple | None
    witnesses: dict = field(default_factory=dict)  # point -> ((family index, params), ...)
    checked: int = 0


def covers(B: FunctionBasis, S, box, param_bound: int | None = None) -> CoverReport:
    """Check that every point of ``S`` in ``box`` is a sum of family members lying in ``S``.

    Members are enumerated with parameters in ``[0, param_bound]`` and kept
    when they lie in ``S`` and in the box; partial sums are confined to the
    box (exact for sets of nonnegative points).  Breadth-first search over
    partial sums finds a shortest representation for each reachable point.
    """
    lo, hi = tuple(box[0]), tuple(box[1])
    if param_bound is None:
        param_bound = max(max(abs(a) for a in lo), max(abs(a) for a in hi))

    def in_box(x):
        return all(a <= v <= b for v, a, b in zip(x, lo, hi))

    members = {}
    for i, T in enumerate(B.families):
        for t, x in T.members(param_bound):
            if any(x) and in_box(x) and S.contains(x) and x not in members:
                members[x] = (i, t)
    zero = (0,) * B.ambient_dim
    parent = {zero: None}
    queue = deque([zero])
    while queue:
        r = queue.popleft()
        for m in members:
            y = tuple(a + b for a, b in zip(r, m))
            if y not in parent and in_box(y):
                parent[y] = (r, m)
                queue.append(y)
    report = CoverReport(True, None)
    for x in _box_iter(lo, hi):
        if not S.contains(x):
            continue
        report.checked += 1
        if x not in parent:
            report.ok = False
            report.counterexample = x
            return report
        terms = []
        y = x
        while parent[y] is not None:
            prev, m = parent[y]
            terms.append(members[m])
            y = prev
        report.witnesses[x] = tuple(sorted(terms))
    return report


# --- families from the worked examples ---------------------------------------

def _two_params():
    return MultiPoly.variables(2)


def vertical_ray_family() -> ParamFamily:
    """``{(0, t)}``."""
    t = MultiPoly.var(0, 1)
    return ParamFamily(PolyMap((MultiPoly.const(0, 1), t)), (), "T1")


def parabola_family(linear: bool = True) -> ParamFamily:
    """``{((x+1)^2 - s, x+1)}`` with ``s <= 2x+1`` (linear) or ``s <= (x+1)^2``."""
    x, s = _two_params()
    top = (x + 1) ** 2
    bound = (2 * x + 1 - s) if linear else (top - s)
    return ParamFamily(PolyMap((top - s, x + 1)), (bound,), "T2")


def parabola_basis(linear: bool = True) -> FunctionBasis:
    return FunctionBasis((vertical_ray_family(), parabola_family(linear)), 2)


def shifted_quadrant_basis() -> FunctionBasis:
    """``{(lam, 1 + mu)}``, a one-family basis of the points with ``y >= 1``."""
    lam, mu = _two_params()
    return FunctionBasis((ParamFamily(PolyMap((lam, 1 + mu)), (), "T1"),), 2)
