"""Optimality certificates for ``max{p(z) : Az = b, z >= 0, z integer}``.

A feasible ``z0`` is optimal iff no difference vector ``v = z1 - z0`` to a
feasible ``z1`` improves ``p``.  Each such ``v`` lies in ``ker A`` and in one
closed orthant; the lattice points of ``ker A ∩ orthant`` form a pointed
rational cone whose Hilbert basis generates them.  Walking from ``0`` by
Hilbert-basis steps keeps every partial sum between ``0`` and ``v`` in the
sign-compatible sense, so ``z0 + partial >= 0`` along the way and the search
can prune any step that leaves ``z >= 0``.
"""
from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass, field
from itertools import product

from .cone import RationalCone, cone_from_constraints
from .errors import CapExceededError, InfeasiblePointError
from .intbasis import hilbert_basis
from .linalg import IntMatrix, matvec
from .polynomial import MultiPoly, PolyMap, evaluate

DEFAULT_MAX_DIM = 6

OPTIMAL = "optimal"
IMPROVABLE = "improvable"
INCONCLUSIVE = "inconclusive"


def max_dim() -> int:
    return int(os.environ.get("INTBASIS_MAX_DIM", DEFAULT_MAX_DIM))


@dataclass(frozen=True)
class PolyIP:
    p: MultiPoly
    A: IntMatrix
    b: tuple

    def __post_init__(self):
        if self.p.nvars != self.A.ncols:
            raise ValueError("objective and constraint matrix disagree on the variable count")
        if len(self.b) != self.A.nrows:
            raise ValueError("b must have one entry per row of A")

    @classmethod
    def of(cls, p, A, b, n=None) -> "PolyIP":
        n = p.nvars if n is None else n
        return cls(p, IntMatrix.from_rows(A, n), tuple(int(v) for v in b))

    @property
    def n(self) -> int:
        return self.A.ncols

    def value(self, z):
        return evaluate(self.p, z)

    def check_feasible(self, z):
        """Raise :class:`InfeasiblePointError` naming the first violated constraint."""
        for k, v in enumerate(z):
            if v < 0:
                raise InfeasiblePointError(f"z[{k}] = {v} < 0", ("nonneg", k))
        for i, (lhs, rhs) in enumerate(zip(matvec(self.A, z), self.b)):
            if lhs != rhs:
                raise InfeasiblePointError(f"row {i}: {lhs} != {rhs}", ("row", i))


@dataclass(frozen=True)
class OrthantCone:
    signs: tuple
    rays: tuple

    def cone(self) -> RationalCone:
        return RationalCone(self.rays, len(self.signs))


@dataclass
class Certificate:
    verdict: str
    z0: tuple
    value: object
    direction: tuple | None = None
    point: tuple | None = None
    improved_value: object = None
    orthant: tuple | None = None
    explored: int = 0
    details: dict = field(default_factory=dict)


def _sign(s) -> int:
    if s in ("+", 1, "1"):
        return 1
    if s in ("-", -1, "-1"):
        return -1
    raise ValueError(f"bad orthant sign {s!r}")


def orthant_rays(A: IntMatrix, signs) -> OrthantCone:
    """Extreme rays of ``{x : Ax = 0, signs_i * x_i >= 0}``."""
    sig = tuple(_sign(s) for s in signs)
    n = len(sig)
    H = [tuple(-sig[i] * int(i == j) for j in range(n)) for i in range(n)]
    E = [tuple(r) for r in A.rows if any(r)]
    C = cone_from_constraints(H, n, E or None)
    return OrthantCone(sig, C.generators)


def orthant_cones(A: IntMatrix) -> list:
    return [orthant_rays(A, s) for s in product((1, -1), repeat=A.ncols)]


def orthant_moves(A: IntMatrix) -> list:
    """``(signs, Hilbert basis)`` per orthant with a nonzero cone, deduplicated by basis."""
    out = []
    seen = set()
    for oc in orthant_cones(A):
        if not oc.rays:
            continue
        moves = hilbert_basis(oc.cone()).points
        if moves not in seen:
            seen.add(moves)
            out.append((oc.signs, moves))
    return out


def lifted_map(ip: PolyIP, z0, rays) -> PolyMap:
    """``lam -> (W lam, p(z0 + W lam) - p(z0))`` over ``len(rays)`` parameters."""
    k = len(rays)
    lam = MultiPoly.variables(k)
    zero = MultiPoly.const(0, k)
    coords = []
    for i in range(ip.n):
        c = zero
        for j, w in enumerate(rays):
            if w[i]:
                c = c + w[i] * lam[j]
        coords.append(c)
    shifted = [c + int(z0[i]) for i, c in enumerate(coords)]
    gain = ip.p.compose(shifted) - ip.value(z0)
    return PolyMap(tuple(coords) + (gain,))


def certify(ip: PolyIP, z0, search_bound: int, moves=None) -> Certificate:
    """Optimal / Improvable / Inconclusive verdict for the feasible point ``z0``.

    Breadth-first over ``v = sum lam_j h_j`` with ``sum lam <= search_bound``
    in each orthant, where ``h_j`` runs over that orthant's Hilbert basis.  If
    every orthant's search dies out before the bound, all feasible points were
    seen and the verdict is Optimal.  ``moves`` may carry a precomputed
    :func:`orthant_moves` result.
    """
    if ip.n > max_dim():
        raise CapExceededError(
            f"{ip.n} variables exceed the cap {max_dim()}; set INTBASIS_MAX_DIM to raise it")
    if search_bound < 1:
        raise ValueError("search_bound must be positive")
    z0 = tuple(int(v) for v in z0)
    if len(z0) != ip.n:
        raise ValueError("z0 has the wrong dimension")
    ip.check_feasible(z0)
    base = ip.value(z0)
    if moves is None:
        moves = orthant_moves(ip.A)
    explored = 0
    bound_hit = False
    zero = (0,) * ip.n
    for signs, hb in moves:
        depth = {zero: 0}
        queue = deque([zero])
        while queue:
            v = queue.popleft()
            d = depth[v]
            for h in hb:
                w = tuple(a + b for a, b in zip(v, h))
                if w in depth:
                    continue
                z = tuple(a + b for a, b in zip(z0, w))
                if any(c < 0 for c in z):
                    continue
                if d + 1 > search_bound:
                    bound_hit = True
                    continue
                depth[w] = d + 1
                explored += 1
                val = ip.value(z)
                if val > base:
                    return Certificate(IMPROVABLE, z0, base, w, z, val, signs, explored)
                queue.append(w)
    verdict = INCONCLUSIVE if bound_hit else OPTIMAL
    return Certificate(verdict, z0, base, explored=explored)


def verify_improvement(ip: PolyIP, cert: Certificate) -> bool:
    """Direct arithmetic check of an Improvable certificate."""
    z1 = cert.point
    if any(c < 0 for c in z1) or tuple(matvec(ip.A, z1)) != ip.b:
        return False
    if tuple(a - b for a, b in zip(z1, cert.z0)) != cert.direction:
        return False
    return ip.value(z1) > ip.value(cert.z0)
