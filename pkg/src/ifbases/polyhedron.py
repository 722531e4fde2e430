"""Polyhedra ``P = {x >= 0 : Ax <= b}`` and lattice-point sets.

The finiteness test rests on one observation about a ray direction ``v``
of the recession cone: ``t*v`` lies in ``P`` for all large ``t`` exactly when
every row with ``(Av)_i == 0`` has ``b_i >= 0``, and once ``t*v`` is in ``P``
so is every larger multiple.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Protocol

from .cone import RationalCone, SimplicialPiece, cone_from_constraints, member
from .errors import EmptySetError, PreconditionError
from .linalg import IntMatrix, dot, matvec, rank, solve_rational
from .polynomial import MultiPoly, evaluate


@dataclass(frozen=True)
class Polyhedron:
    A: IntMatrix
    b: tuple

    def __post_init__(self):
        if len(self.b) != self.A.nrows:
            raise ValueError("b must have one entry per row of A")

    @classmethod
    def of(cls, A, b, n: int | None = None) -> "Polyhedron":
        return cls(IntMatrix.from_rows(A, n), tuple(int(v) for v in b))

    @property
    def n(self) -> int:
        return self.A.ncols

    def contains(self, x) -> bool:
        if len(x) != self.n:
            raise ValueError("dimension mismatch")
        return all(v >= 0 for v in x) and all(
            dot(r, x) <= bi for r, bi in zip(self.A.rows, self.b))

    def constraint_rows(self):
        """All constraints as ``H x <= h`` including ``-x <= 0``."""
        n = self.n
        H = list(self.A.rows) + [tuple(-int(i == j) for j in range(n)) for i in range(n)]
        h = list(self.b) + [0] * n
        return H, h


def recession_cone(P: Polyhedron) -> RationalCone:
    """Extreme rays of ``{x >= 0 : Ax <= 0}``."""
    H, _ = P.constraint_rows()
    return cone_from_constraints(H, P.n)


def vertices(P: Polyhedron) -> list:
    """Vertices of ``P`` as tuples of Fractions (empty list when ``P`` is empty)."""
    H, h = P.constraint_rows()
    n = P.n
    found = []
    for rows in combinations(range(len(H)), n):
        M = IntMatrix.from_rows([H[i] for i in rows], n)
        if rank(M) != n:
            continue
        x = solve_rational(M, [h[i] for i in rows])
        if x is not None and x not in found and P.contains(x):
            found.append(x)
    return sorted(found)


def lattice_box(P: Polyhedron):
    """Upper corner ``U`` of a box ``[0, U]`` with two guarantees.

    Every integer point of ``P`` is ``y + sum k_j r_j`` with ``y`` an integer
    point of ``P`` inside the box, ``k_j >= 0`` integers and ``r_j`` the
    primitive extreme rays of the recession cone.  Returns ``None`` if ``P``
    is empty.
    """
    verts = vertices(P)
    if not verts:
        return None
    rays = recession_cone(P).generators
    return tuple(
        math.floor(max(v[k] for v in verts) + sum(r[k] for r in rays))
        for k in range(P.n))


def box_points(H, h, upper, lower=None) -> list:
    """Integer points of ``{x : Hx <= h}`` in the box ``[lower, upper]``, lexicographic.

    Depth-first over coordinates, pruning a prefix as soon as some row can no
    longer be satisfied by any completion inside the box.
    """
    n = len(upper)
    lower = lower or (0,) * n
    H = [tuple(r) for r in H]
    # rest_min[k][i]: minimum of sum_{j>=k} H[i][j] x_j over the box
    rest_min = [[0] * len(H) for _ in range(n + 1)]
    for k in range(n - 1, -1, -1):
        for i, r in enumerate(H):
            rest_min[k][i] = rest_min[k + 1][i] + min(r[k] * lower[k], r[k] * upper[k])
    out = []
    partial = [0] * len(H)
    x = [0] * n

    def rec(k):
        if k == n:
            out.append(tuple(x))
            return
        for v in range(lower[k], upper[k] + 1):
            ok = True
            for i, r in enumerate(H):
                if partial[i] + r[k] * v + rest_min[k + 1][i] > h[i]:
                    ok = False
                    break
            if not ok:
                continue
            x[k] = v
            for i, r in enumerate(H):
                partial[i] += r[k] * v
            rec(k + 1)
            for i, r in enumerate(H):
                partial[i] -= r[k] * v

    rec(0)
    return out


def lattice_points_in_box(P: Polyhedron, upper) -> list:
    return box_points(P.A.rows, P.b, tuple(upper))


def first_lattice_point(P: Polyhedron):
    U = lattice_box(P)
    if U is None:
        return None
    for x in lattice_points_in_box(P, U):
        return x
    return None


def has_finite_basis(P: Polyhedron):
    """Return ``(finite, witness_ray)``.

    Raises :class:`EmptySetError` if ``P`` has no integer point.
    """
    if first_lattice_point(P) is None:
        raise EmptySetError("P contains no lattice point")
    for v in recession_cone(P).generators:
        Av = matvec(P.A, v)
        if any(a == 0 and bi < 0 for a, bi in zip(Av, P.b)):
            return False, v
    return True, None


def ray_threshold(P: Polyhedron, v) -> int:
    """Smallest positive integer ``t`` with ``t*v`` in ``P`` for a recession direction ``v``."""
    if any(a < 0 for a in v):
        raise PreconditionError(f"{v} is not a recession direction")
    t = 1
    for a, bi in zip(matvec(P.A, v), P.b):
        if a > 0:
            raise PreconditionError(f"{v} is not a recession direction")
        if a == 0:
            if bi < 0:
                raise PreconditionError(f"no multiple of {v} lies in P")
        else:
            t = max(t, math.ceil(Fraction(bi, a)))
    return t


def excluded_points(P: Polyhedron, piece: SimplicialPiece, thresholds=None) -> list:
    """Lattice points of the piece that are not in ``P``.

    Only points with every barycentric coordinate below its threshold can be
    missing from ``P``, so the scan runs over ``f + sum a_j v_j`` with ``f`` in
    the fundamental parallelepiped and ``0 <= a_j < t_j``.
    """
    from .intbasis import parallelepiped_points

    if thresholds is None:
        thresholds = [ray_threshold(P, v) for v in piece.generators]
    thresholds = [int(t) for t in thresholds]
    for v, t in zip(piece.generators, thresholds):
        if t < 1 or not P.contains(tuple(t * a for a in v)):
            raise PreconditionError(f"threshold {t} does not put a multiple of {v} in P")
    out = set()
    gens = piece.generators
    n = piece.dim
    for f in parallelepiped_points(piece):
        for mult in _grid(thresholds):
            x = list(f)
            for m, v in zip(mult, gens):
                if m:
                    for i in range(n):
                        x[i] += m * v[i]
            x = tuple(x)
            if not P.contains(x):
                out.add(x)
    return sorted(out)


def _grid(bounds):
    if not bounds:
        yield ()
        return
    for head in range(bounds[0]):
        for tail in _grid(bounds[1:]):
            yield (head,) + tail


class LatticeSet(Protocol):
    ambient_dim: int

    def contains(self, x) -> bool: ...


def _is_int_point(x) -> bool:
    return all(Fraction(v).denominator == 1 for v in x)


@dataclass(frozen=True)
class PolyhedronPoints:
    P: Polyhedron

    @property
    def ambient_dim(self) -> int:
        return self.P.n

    def contains(self, x) -> bool:
        return _is_int_point(x) and self.P.contains(x)


@dataclass(frozen=True)
class ConeMinusExcluded:
    cone: RationalCone
    excluded: frozenset = frozenset()

    def __post_init__(self):
        ex = frozenset(tuple(int(a) for a in p) for p in self.excluded)
        for p in ex:
            if not member(self.cone, p):
                raise ValueError(f"excluded point {p} is not in the cone")
        object.__setattr__(self, "excluded", ex)

    @property
    def ambient_dim(self) -> int:
        return self.cone.ambient_dim

    def contains(self, x) -> bool:
        if not _is_int_point(x):
            return False
        x = tuple(int(v) for v in x)
        return x not in self.excluded and member(self.cone, x)


@dataclass(frozen=True)
class ExplicitFinite:
    points: tuple
    ambient_dim: int

    def __post_init__(self):
        pts = tuple(sorted({tuple(int(a) for a in p) for p in self.points}))
        if any(len(p) != self.ambient_dim for p in pts):
            raise ValueError("point of the wrong dimension")
        object.__setattr__(self, "points", pts)

    def contains(self, x) -> bool:
        return _is_int_point(x) and tuple(int(v) for v in x) in self.points


@dataclass(frozen=True)
class SemiAlgebraicPoints:
    """``{x in Z^n : q(x) >= 0 for every q in constraints}``."""

    constraints: tuple
    ambient_dim: int

    def __post_init__(self):
        if any(q.nvars != self.ambient_dim for q in self.constraints):
            raise ValueError("constraint over the wrong number of variables")

    def contains(self, x) -> bool:
        return _is_int_point(x) and all(evaluate(q, x) >= 0 for q in self.constraints)


@dataclass(frozen=True)
class Augmented:
    """``base`` together with finitely many extra lattice points."""

    base: object
    extra: frozenset

    def __post_init__(self):
        object.__setattr__(self, "extra", frozenset(tuple(int(a) for a in p) for p in self.extra))

    @property
    def ambient_dim(self) -> int:
        return self.base.ambient_dim

    def contains(self, x) -> bool:
        return (_is_int_point(x) and tuple(int(v) for v in x) in self.extra) or self.base.contains(x)


def contains(S, x) -> bool:
    if len(x) != S.ambient_dim:
        raise ValueError("dimension mismatch")
    return S.contains(x)


def nonneg_orthant_set(n: int) -> ConeMinusExcluded:
    return ConeMinusExcluded(RationalCone.of([tuple(int(i == j) for j in range(n)) for i in range(n)]))


def parabola_set() -> SemiAlgebraicPoints:
    """``{(x, y) in Z^2 : 0 <= x <= y^2, y >= 0}``."""
    x, y = MultiPoly.variables(2)
    return SemiAlgebraicPoints((x, y, y ** 2 - x), 2)
