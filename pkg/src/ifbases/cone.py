"""Finitely generated rational cones."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .errors import NotPointedError
from .linalg import (ColumnSolver, IntMatrix, as_ratvec, determinant, dot,
                     nonneg_solution, nullspace, primitive, rank)


@dataclass(frozen=True)
class RationalCone:
    """``cone(generators)`` in dimension ``ambient_dim``.

    Generators are stored primitive and without repeats, in first-seen order.
    An empty generator list denotes the zero cone.
    """

    generators: tuple
    ambient_dim: int

    def __post_init__(self):
        seen = []
        for g in self.generators:
            if len(g) != self.ambient_dim:
                raise ValueError(f"generator {g!r} is not of dimension {self.ambient_dim}")
            if not any(g):
                raise ValueError("cone generators must be nonzero")
            p = primitive(g)
            if p not in seen:
                seen.append(p)
        object.__setattr__(self, "generators", tuple(seen))

    @classmethod
    def of(cls, generators, ambient_dim: int | None = None) -> "RationalCone":
        generators = [tuple(int(a) for a in g) for g in generators]
        if ambient_dim is None:
            if not generators:
                raise ValueError("ambient_dim is required for the zero cone")
            ambient_dim = len(generators[0])
        return cls(tuple(generators), ambient_dim)

    @property
    def dim(self) -> int:
        if not self.generators:
            return 0
        return rank(IntMatrix.from_rows(self.generators, self.ambient_dim))

    def __contains__(self, x):
        return member(self, x)


@dataclass(frozen=True)
class SimplicialPiece:
    generators: tuple
    parent_indices: tuple = field(default=())

    @property
    def r(self) -> int:
        return len(self.generators)

    @property
    def dim(self) -> int:
        return len(self.generators[0])


def _matrix_of_columns(vectors, dim):
    return IntMatrix.from_columns(vectors, nrows=dim)


def member(C: RationalCone, x) -> bool:
    """Exact test of ``x in cone(C.generators)``."""
    x = as_ratvec(x)
    if len(x) != C.ambient_dim:
        raise ValueError("dimension mismatch")
    if not any(x):
        return True
    if not C.generators:
        return False
    return nonneg_solution(_matrix_of_columns(C.generators, C.ambient_dim), x) is not None


def _scale_to_int(c):
    c = as_ratvec(c)
    if not any(c):
        return tuple(0 for _ in c)
    return primitive(c)


def is_pointed(C: RationalCone):
    """Return ``(pointed, c)``; ``c`` is an integer vector with ``c.g >= 1`` for every generator."""
    n = C.ambient_dim
    gens = C.generators
    if not gens:
        return True, tuple(1 for _ in range(n))
    candidates = [tuple(1 for _ in range(n)),
                  tuple(sum(g[i] for g in gens) for i in range(n))]
    for c in candidates:
        if any(c) and all(dot(c, g) > 0 for g in gens):
            return True, _scale_to_int(c)
    # find c with G^T c - s = 1, c free (split as c+ - c-), s >= 0
    k = len(gens)
    rows = []
    for idx, g in enumerate(gens):
        rows.append(list(g) + [-a for a in g] + [-int(j == idx) for j in range(k)])
    sol = nonneg_solution(IntMatrix.from_rows(rows, 2 * n + k), [1] * k)
    if sol is None:
        return False, None
    c = tuple(sol[i] - sol[n + i] for i in range(n))
    return True, _scale_to_int(c)


def separator(C: RationalCone):
    pointed, c = is_pointed(C)
    if not pointed:
        raise NotPointedError("cone contains a line")
    return c


def extreme_rays(C: RationalCone) -> list:
    """Irredundant primitive generators, sorted lexicographically."""
    separator(C)
    gens = list(C.generators)
    rays = []
    for i, g in enumerate(gens):
        others = gens[:i] + gens[i + 1:]
        if not others or not member(RationalCone(tuple(others), C.ambient_dim), g):
            rays.append(g)
    return sorted(rays)


def canonical_order(generators) -> list:
    """Generator indices in the order used by canonical triangulations (lex descending)."""
    return sorted(range(len(generators)), key=lambda i: generators[i], reverse=True)


def placing_triangulation(generators, dim: int, order=None) -> list:
    """Placing triangulation of a vector configuration.

    Generators are inserted one at a time in ``order``.  A generator off the
    current linear span is coned over every existing piece; one inside the span
    is coned over each boundary facet it strictly sees.  Generators already in
    the current cone are skipped.  Returns tuples of generator indices.
    """
    gens = [tuple(g) for g in generators]
    if order is None:
        order = range(len(gens))
    pieces: list = []
    for idx in order:
        g = gens[idx]
        if not pieces:
            pieces = [(idx,)]
            continue
        solver = ColumnSolver([gens[i] for i in pieces[0]], dim)
        if solver.in_span_coords(g) is None:
            pieces = [p + (idx,) for p in pieces]
            continue
        coords = {}

        def proj(i):
            if i not in coords:
                coords[i] = solver.numerators(gens[i])
            return coords[i]

        counts: dict = {}
        for p in pieces:
            for k in range(len(p)):
                f = frozenset(p[:k] + p[k + 1:])
                counts[f] = counts.get(f, 0) + 1
        gp = solver.numerators(g)
        r = len(pieces[0])
        new = []
        for p in pieces:
            cols = [proj(i) for i in p]
            d = determinant(IntMatrix.from_columns(cols, nrows=r))
            for k in range(len(p)):
                facet = p[:k] + p[k + 1:]
                if counts[frozenset(facet)] != 1:
                    continue
                swapped = cols[:k] + [gp] + cols[k + 1:]
                dk = determinant(IntMatrix.from_columns(swapped, nrows=r))
                if dk * d < 0:
                    new.append(facet + (idx,))
        pieces.extend(new)
    return pieces


def triangulate(C: RationalCone, order: str | list = "canonical") -> list:
    """Simplicial pieces whose generators are drawn from ``C``'s generators.

    ``order`` is ``"canonical"`` (independent of input order), ``"given"``
    (the cone's stored order) or an explicit list of generator indices.
    """
    separator(C)
    gens = C.generators
    if not gens:
        return []
    if order == "canonical":
        idx = canonical_order(gens)
    elif order == "given":
        idx = list(range(len(gens)))
    else:
        idx = list(order)
    raw = placing_triangulation(gens, C.ambient_dim, idx)
    return [SimplicialPiece(tuple(gens[i] for i in p), tuple(p)) for p in raw]


def barycentric(piece: SimplicialPiece, x):
    """Coordinates of ``x`` w.r.t. the piece generators, or ``None`` if off their span."""
    return ColumnSolver(piece.generators, piece.dim).in_span_coords(x)


def in_piece(piece: SimplicialPiece, x, strict: bool = False) -> bool:
    a = barycentric(piece, x)
    if a is None:
        return False
    return all(c > 0 for c in a) if strict else all(c >= 0 for c in a)


def cone_from_constraints(H, dim: int, E=None) -> RationalCone:
    """Extreme rays of the pointed cone ``{x : H x <= 0, E x = 0}``.

    Active-set enumeration: every extreme ray is the one-dimensional solution
    space of the equations together with ``dim - 1 - rank(E)`` tight rows of H.
    """
    H = [tuple(r) for r in H]
    E = [tuple(r) for r in (E or [])]
    if rank(IntMatrix.from_rows(H + E, dim)) < dim:
        raise NotPointedError("constraint system leaves a nonzero lineality space")
    rank_e = rank(IntMatrix.from_rows(E, dim)) if E else 0
    k = dim - 1 - rank_e
    if k < 0:
        return RationalCone((), dim)
    rays = []
    for rows in combinations(range(len(H)), k):
        system = E + [H[i] for i in rows]
        if rank(IntMatrix.from_rows(system, dim)) != dim - 1:
            continue
        (z,) = nullspace(IntMatrix.from_rows(system, dim))
        for cand in (z, tuple(-a for a in z)):
            if all(dot(h, cand) <= 0 for h in H) and cand not in rays:
                rays.append(cand)
    return RationalCone(tuple(sorted(rays)), dim)


def random_interior_point(C: RationalCone, rng, max_weight: int = 20):
    """A strictly positive rational combination of the generators (for sampling tests)."""
    gens = C.generators
    w = [Fraction(rng.randint(1, max_weight), rng.randint(1, max_weight)) for _ in gens]
    return tuple(sum(wi * g[i] for wi, g in zip(w, gens)) for i in range(C.ambient_dim))
