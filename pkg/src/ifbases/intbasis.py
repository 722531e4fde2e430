"""Finite integral bases of lattice-point sets.

Construction: triangulate ``cone(S)`` with generators taken from ``S``;
every lattice point of a simplicial piece is uniquely ``f + V a`` with ``f``
a lattice point of the half-open fundamental parallelepiped and ``a`` in
``Z_+^r``.  For each offset ``f`` the set ``{a : f + V a in S}`` has finitely
many componentwise-minimal elements, and those, mapped back, together with
the piece generators form an integral basis.  In the pointed case the result
is then reduced to the unique inclusion-minimal basis.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable

from .cone import (RationalCone, SimplicialPiece, canonical_order, is_pointed,
                   member, placing_triangulation)
from .errors import InfiniteBasisError, NotPointedError, PreconditionError
from .linalg import (ColumnSolver, IntMatrix, column_echelon, dot, lin_comb,
                     saturation_basis)
from .polyhedron import (Augmented, ConeMinusExcluded, ExplicitFinite, Polyhedron,
                         PolyhedronPoints, excluded_points, has_finite_basis,
                         lattice_box, lattice_points_in_box, ray_threshold,
                         recession_cone)


@dataclass(frozen=True)
class IntegralBasis:
    """Nonzero lattice points, sorted lexicographically.

    ``certified_box`` is ``None`` when the basis generates all of ``S``; a
    ``(lo, hi)`` pair means completeness was established only for points of
    ``S`` inside that box (sets given by an arbitrary membership test).
    """

    points: tuple
    ambient_dim: int
    certified_box: tuple | None = None

    def __post_init__(self):
        pts = sorted({tuple(int(a) for a in p) for p in self.points})
        if any(not any(p) for p in pts):
            raise ValueError("the zero vector is never a basis element")
        if any(len(p) != self.ambient_dim for p in pts):
            raise ValueError("basis point of the wrong dimension")
        object.__setattr__(self, "points", tuple(pts))

    def __iter__(self):
        return iter(self.points)

    def __len__(self):
        return len(self.points)


@dataclass(frozen=True)
class ParallelepipedFiber:
    offset: tuple
    piece: SimplicialPiece

    def point(self, alpha) -> tuple:
        return tuple(a + b for a, b in zip(self.offset, lin_comb(alpha, self.piece.generators, self.piece.dim)))


def _floor_div(a: int, d: int) -> int:
    return math.floor(Fraction(a, d))


def parallelepiped_points(piece: SimplicialPiece) -> list:
    """Lattice points ``sum a_j v_j`` with ``0 <= a_j < 1``.

    The lattice ``span(V) ∩ Z^n`` gets a basis ``B``; writing ``V = B M`` and
    bringing ``M`` to lower-triangular Hermite form ``H`` gives coset
    representatives ``B k`` with ``0 <= k_i < H_ii``, which are then folded
    into the parallelepiped.
    """
    V = [tuple(v) for v in piece.generators]
    n, r = piece.dim, len(V)
    B = saturation_basis(V, n)
    in_b = ColumnSolver(B, n)
    M_cols = []
    for v in V:
        c = in_b.in_span_coords(v)
        M_cols.append(tuple(int(a) for a in c))
    H, _, rk = column_echelon(IntMatrix.from_columns(M_cols, nrows=r))
    assert rk == r
    diag = [H[i][i] for i in range(r)]
    in_v = ColumnSolver(V, n)
    pts = []
    for k in product(*(range(d) for d in diag)):
        x = lin_comb(k, B, n)
        fl = [_floor_div(a, in_v.det) for a in in_v.numerators(x)]
        pts.append(tuple(a - b for a, b in zip(x, lin_comb(fl, V, n))))
    return sorted(pts)


def fibers(piece: SimplicialPiece) -> list:
    return [ParallelepipedFiber(f, piece) for f in parallelepiped_points(piece)]


def fiber_decompose(piece: SimplicialPiece, x, solver: ColumnSolver | None = None):
    """``(f, a)`` with ``x = f + V a``, ``f`` in the parallelepiped; ``None`` if ``x`` is outside the piece."""
    solver = solver or ColumnSolver(piece.generators, piece.dim)
    coords = solver.in_span_coords(x)
    if coords is None or any(c < 0 for c in coords):
        return None
    fl = tuple(math.floor(c) for c in coords)
    f = tuple(a - b for a, b in zip(x, lin_comb(fl, piece.generators, piece.dim)))
    return f, fl


# --- minimal elements -------------------------------------------------------

@dataclass(frozen=True)
class OrthantComplement:
    """``Z_+^dim`` minus a finite set."""

    dim: int
    removed: frozenset = frozenset()


@dataclass(frozen=True)
class BoxedSubset:
    """The points of ``[0, upper]`` accepted by ``predicate``."""

    upper: tuple
    predicate: Callable = field(compare=False)


def _leq(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _minimal_of_candidates(candidates, inside) -> list:
    accepted = []
    for p in sorted(set(candidates), key=lambda q: (sum(q), q)):
        if any(_leq(m, p) for m in accepted):
            continue
        if inside(p):
            accepted.append(p)
    return sorted(accepted)


def minimal_elements(M) -> list:
    """Componentwise-minimal points of ``M``.

    ``M`` is an explicit finite collection, an :class:`OrthantComplement`, or a
    :class:`BoxedSubset`.  For an orthant complement every nonzero minimal
    point ``p`` has ``p - e_k`` removed whenever ``p_k > 0``, so the
    candidates are the origin and the removed points shifted by unit vectors.
    """
    if isinstance(M, OrthantComplement):
        removed = M.removed
        cands = [(0,) * M.dim]
        for q in removed:
            for k in range(M.dim):
                cands.append(tuple(a + int(i == k) for i, a in enumerate(q)))
        return _minimal_of_candidates(cands, lambda p: p not in removed)
    if isinstance(M, BoxedSubset):
        cands = product(*(range(u + 1) for u in M.upper))
        return _minimal_of_candidates(cands, M.predicate)
    pts = [tuple(p) for p in M]
    return _minimal_of_candidates(pts, lambda p: True)


# --- assembly ---------------------------------------------------------------

@dataclass
class _Context:
    S: object
    box: tuple | None
    rec: RationalCone | None = None


def _box_alpha_upper(piece: SimplicialPiece, solver: ColumnSolver, f, box) -> tuple:
    """Per-coordinate bound on ``a`` for points ``f + V a`` lying in ``box``."""
    lo, hi = box
    d = solver.det
    ups = []
    for row in solver.adj:
        best = 0
        for w, k in zip(row, solver.row_sel):
            wk = w if d > 0 else -w
            best += max(wk * (lo[k] - f[k]), wk * (hi[k] - f[k]))
        ups.append(max(0, math.floor(Fraction(best, abs(d)))))
    return tuple(ups)


def _group_by_fiber(piece, solver, points) -> dict:
    out: dict = {}
    for x in points:
        dec = fiber_decompose(piece, x, solver)
        if dec is not None:
            out.setdefault(dec[0], []).append(dec[1])
    return out


def _fiber_minimals(S, piece: SimplicialPiece, offsets, ctx: _Context) -> dict:
    V = piece.generators
    solver = ColumnSolver(V, piece.dim)
    if isinstance(S, Augmented):
        base = _fiber_minimals(S.base, piece, offsets, ctx)
        extra = _group_by_fiber(piece, solver, S.extra)
        return {f: minimal_elements(base[f] + extra.get(f, [])) for f in offsets}
    if isinstance(S, ConeMinusExcluded) and all(member(S.cone, v) for v in V):
        removed = _group_by_fiber(piece, solver, S.excluded)
        return {f: minimal_elements(OrthantComplement(len(V), frozenset(removed.get(f, []))))
                for f in offsets}
    if isinstance(S, PolyhedronPoints):
        P = S.P
        if ctx.rec is None:
            ctx.rec = recession_cone(P)
        if all(member(ctx.rec, v) for v in V):
            removed = _group_by_fiber(piece, solver, excluded_points(P, piece))
            return {f: minimal_elements(OrthantComplement(len(V), frozenset(removed.get(f, []))))
                    for f in offsets}
        return {f: _polyhedral_fiber_minimals(P, V, f) for f in offsets}
    if ctx.box is None:
        raise PreconditionError("a search box is required for sets given only by membership")
    out = {}
    for f in offsets:
        ups = _box_alpha_upper(piece, solver, f, ctx.box)
        fib = ParallelepipedFiber(f, piece)
        out[f] = minimal_elements(BoxedSubset(ups, lambda a, fib=fib: S.contains(fib.point(a))))
    return out


def _polyhedral_fiber_minimals(P: Polyhedron, V, f) -> list:
    """Minimal ``a >= 0`` with ``f + V a`` in ``P``; the ``a``-set is itself a polyhedron."""
    rows = [[dot(row, v) for v in V] for row in P.A.rows]
    rhs = [bi - dot(row, f) for row, bi in zip(P.A.rows, P.b)]
    if any(a < 0 for v in V for a in v) or any(a < 0 for a in f):
        for i in range(P.n):
            rows.append([-v[i] for v in V])
            rhs.append(f[i])
    Q = Polyhedron.of(rows, rhs, n=len(V))
    U = lattice_box(Q)
    if U is None:
        return []
    return minimal_elements(lattice_points_in_box(Q, U))


def _smallest_multiple(S, g, limit: int):
    for k in range(1, limit + 1):
        x = tuple(k * a for a in g)
        if S.contains(x):
            return x
    raise PreconditionError(f"no multiple k*{g} with k <= {limit} lies in S")


def _multiple_limit(S, g, box) -> int:
    if isinstance(S, ConeMinusExcluded):
        return len(S.excluded) + 1
    if isinstance(S, Augmented):
        for p in S.extra:
            k = _multiple_of(p, g)
            if k:
                return max(k, _multiple_limit(S.base, g, box) if box or isinstance(S.base, ConeMinusExcluded) else k)
        return _multiple_limit(S.base, g, box)
    if box is None:
        raise PreconditionError("a search box is required to find cone generators inside S")
    lo, hi = box
    lim = 0
    while True:
        x = tuple((lim + 1) * a for a in g)
        if any(v < l or v > h for v, l, h in zip(x, lo, hi)):
            return max(lim, 1)
        lim += 1


def _multiple_of(p, g) -> int:
    """``k`` if ``p == k*g`` for a positive integer ``k``, else 0."""
    k = None
    for a, b in zip(p, g):
        if b == 0:
            if a != 0:
                return 0
            continue
        if a % b:
            return 0
        q = a // b
        if q <= 0 or (k is not None and q != k):
            return 0
        k = q
    return k or 0


def polyhedron_cone(P: Polyhedron):
    """Primitive extreme rays of ``cone(P ∩ Z^n)`` and, for each, its first multiple in ``P``.

    The cone is generated by the recession rays (scaled into ``P``) and the
    lattice points of ``P`` in :func:`lattice_box`.
    """
    rec = recession_cone(P)
    U = lattice_box(P)
    cands = [tuple(ray_threshold(P, v) * a for a in v) for v in rec.generators]
    cands += [x for x in lattice_points_in_box(P, U) if any(x)]
    if not cands:
        return [], []
    from .cone import extreme_rays

    rays = extreme_rays(RationalCone.of(cands, P.n))
    subs = []
    for g in rays:
        limit = max(_multiple_of(c, g) for c in cands)
        subs.append(_smallest_multiple(PolyhedronPoints(P), g, limit))
    return rays, subs


def integral_basis(S, cone: RationalCone | None = None, *, order="canonical",
                   box=None, minimize: bool = True) -> IntegralBasis:
    """A finite integral basis of the lattice-point set ``S``.

    ``cone`` must equal ``cone(S)``; it is derived automatically for
    polyhedra, cones with excluded points and finite sets.  ``box`` is
    ``(lo, hi)`` and is required for sets known only through membership; the
    result then certifies completeness on that box only.  ``order`` picks the
    triangulation insertion order (see :func:`ifbases.cone.triangulate`).
    """
    n = S.ambient_dim
    if isinstance(S, ExplicitFinite):
        return _finite_basis(S.points, n, minimize)
    ctx = _Context(S, tuple(tuple(c) for c in box) if box is not None else None)
    if isinstance(S, PolyhedronPoints):
        finite, witness = has_finite_basis(S.P)
        if not finite:
            raise InfiniteBasisError(f"extreme ray {witness} contains no point of P", witness)
        ctx.rec = recession_cone(S.P)
        if not ctx.rec.generators:
            U = lattice_box(S.P)
            return _finite_basis(lattice_points_in_box(S.P, U), n, minimize)
        if cone is None:
            prim, subs = polyhedron_cone(S.P)
        else:
            prim = list(cone.generators)
            subs = [_smallest_multiple(S, g, _multiple_limit(S, g, ctx.box) if ctx.box else 10 ** 4)
                    for g in prim]
    else:
        if cone is None:
            if isinstance(S, ConeMinusExcluded):
                cone = S.cone
            else:
                raise PreconditionError("cone(S) must be supplied for this kind of set")
        prim = list(cone.generators)
        subs = [_smallest_multiple(S, g, _multiple_limit(S, g, ctx.box)) for g in prim]

    if not prim:
        return IntegralBasis((), n)
    if order == "canonical":
        idx = canonical_order(prim)
    elif order == "given":
        idx = list(range(len(prim)))
    else:
        idx = list(order)
    raw = placing_triangulation(subs, n, idx)
    pieces = [SimplicialPiece(tuple(subs[i] for i in p), tuple(p)) for p in raw]

    points = set()
    for piece in pieces:
        points.update(piece.generators)
        offsets = parallelepiped_points(piece)
        mins = _fiber_minimals(S, piece, offsets, ctx)
        for f in offsets:
            fib = ParallelepipedFiber(f, piece)
            for a in mins[f]:
                points.add(fib.point(a))
    points.discard((0,) * n)
    basis = IntegralBasis(tuple(points), n, ctx.box)
    if minimize:
        pointed, c = is_pointed(RationalCone.of(prim, n))
        if pointed:
            basis = minimize_basis(basis, c)
    return basis


def _finite_basis(points, n, minimize) -> IntegralBasis:
    pts = [p for p in points if any(p)]
    basis = IntegralBasis(tuple(pts), n)
    if minimize and pts:
        pointed, c = is_pointed(RationalCone.of(pts, n))
        if pointed:
            basis = minimize_basis(basis, c)
    return basis


def is_representable(target, elements, c) -> bool:
    """Whether ``target`` is a nonnegative integer combination of ``elements``.

    Requires ``c.e > 0`` for every element; ``c.remainder`` strictly drops
    along any representation, which bounds the depth-first search.  Visited
    remainders are memoized.
    """
    target = tuple(target)
    if not any(target):
        return True
    ct = dot(c, target)
    elems = []
    for e in elements:
        ce = dot(c, e)
        if ce <= 0:
            raise PreconditionError(f"separator fails on {e}")
        if ce <= ct:
            elems.append((tuple(e), ce))
    n = len(target)
    # coordinates on which every element has a fixed sign keep that sign
    nonneg = [all(e[i] >= 0 for e, _ in elems) for i in range(n)]
    nonpos = [all(e[i] <= 0 for e, _ in elems) for i in range(n)]
    seen = set()
    stack = [target]
    while stack:
        rem = stack.pop()
        if rem in seen:
            continue
        seen.add(rem)
        cr = dot(c, rem)
        for e, ce in elems:
            if ce > cr:
                continue
            nxt = tuple(a - b for a, b in zip(rem, e))
            if not any(nxt):
                return True
            if any((nonneg[i] and nxt[i] < 0) or (nonpos[i] and nxt[i] > 0) for i in range(n)):
                continue
            if nxt not in seen:
                stack.append(nxt)
    return False


def minimize_basis(G: IntegralBasis, c=None) -> IntegralBasis:
    """Drop every element representable by the others (pointed ``cone(G)`` only)."""
    pts = list(G.points)
    if not pts:
        return G
    if c is None:
        pointed, c = is_pointed(RationalCone.of(pts, G.ambient_dim))
        if not pointed:
            raise NotPointedError("cone(G) is not pointed; no unique minimal basis")
    if any(dot(c, p) <= 0 for p in pts):
        raise NotPointedError("separator is not strictly positive on the basis")
    keep = [g for i, g in enumerate(pts)
            if not is_representable(g, pts[:i] + pts[i + 1:], c)]
    return IntegralBasis(tuple(keep), G.ambient_dim, G.certified_box)


def hilbert_basis(C: RationalCone, minimize: bool = True) -> IntegralBasis:
    return integral_basis(ConeMinusExcluded(C), C, minimize=minimize)
