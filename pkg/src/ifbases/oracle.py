"""Brute-force reference checks.

Deliberately naive and independent of the construction code: no
triangulations, no memoization, only exhaustive bounded search.  Instance
sizes are capped so that test runs stay quick.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import CapExceededError, PreconditionError

MAX_DIM = 4
MAX_BASIS = 20
MAX_BOX_SIDE = 10


@dataclass(frozen=True)
class RepresentationWitness:
    terms: tuple  # ((basis_point, multiplier), ...), multipliers >= 1

    def total(self, dim: int) -> tuple:
        out = [0] * dim
        for p, m in self.terms:
            for i in range(dim):
                out[i] += m * p[i]
        return tuple(out)

    def as_dict(self) -> dict:
        return dict(self.terms)


def _ip(u, v):
    return sum(a * b for a, b in zip(u, v))


def represent(basis, target, c):
    """A witness that ``target`` is a nonnegative integer combination of ``basis``, or ``None``.

    Multiplier of each element ``g`` is bounded by ``c.target / c.g``.
    """
    basis = [tuple(g) for g in basis]
    target = tuple(target)
    n = len(target)
    if n > MAX_DIM:
        raise CapExceededError(f"oracle dimension cap {MAX_DIM} exceeded")
    if len(basis) > MAX_BASIS:
        raise CapExceededError(f"oracle basis cap {MAX_BASIS} exceeded")
    for g in basis:
        if _ip(c, g) <= 0:
            raise PreconditionError(f"c.g > 0 fails for g = {g}")
    if not any(target):
        return RepresentationWitness(())
    ct = _ip(c, target)
    if ct < 0:
        return None

    def search(i, rem, rem_c):
        if not any(rem):
            return []
        if i == len(basis):
            return None
        g = basis[i]
        cg = _ip(c, g)
        for m in range(rem_c // cg, -1, -1):
            nxt = tuple(r - m * a for r, a in zip(rem, g))
            found = search(i + 1, nxt, rem_c - m * cg)
            if found is not None:
                return ([(g, m)] if m else []) + found
        return None

    terms = search(0, target, ct)
    if terms is None:
        return None
    return RepresentationWitness(tuple(terms))


def enumerate_box(S, lo, hi) -> list:
    """All points of ``S`` in the closed box ``[lo, hi]``, lexicographic."""
    if any(a > b for a, b in zip(lo, hi)):
        raise ValueError("lo must be <= hi componentwise")
    return [x for x in product(*(range(a, b + 1) for a, b in zip(lo, hi))) if S.contains(x)]


def check_box_side(lo, hi, cap: int = MAX_BOX_SIDE):
    if any(b - a > cap for a, b in zip(lo, hi)):
        raise CapExceededError(f"oracle box side cap {cap} exceeded")


def verify_basis(basis, S, lo, hi, c):
    """Return ``(sound, complete, failure)`` of ``basis`` for ``S`` on a box.

    ``failure`` is the first non-member basis point or unrepresented set point.
    """
    check_box_side(lo, hi)
    for g in basis:
        if not S.contains(g):
            return False, False, tuple(g)
    for x in enumerate_box(S, lo, hi):
        if represent(basis, x, c) is None:
            return True, False, x
    return True, True, None


def is_irreducible(basis, g, c) -> bool:
    others = [tuple(h) for h in basis if tuple(h) != tuple(g)]
    return represent(others, g, c) is None
