"""Exact multivariate polynomials over Q and Taylor correction bounds.

For a polynomial map ``g`` and ``y >= 0`` with ``lam = floor(y)``, the
residual ``g(y) - g(lam)`` is sandwiched between two polynomial maps in
``lam`` of strictly lower degree, obtained from the Taylor expansion of
``g(lam + h)`` by sorting its ``h``-dependent terms by coefficient sign.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Mapping, Sequence

from .errors import PreconditionError


def _grlex_key(exp):
    return (-sum(exp), tuple(-e for e in exp))


@dataclass(frozen=True)
class MultiPoly:
    nvars: int
    terms: tuple  # ((exponent, Fraction), ...) in graded lex order, no zero coefficients

    @classmethod
    def from_dict(cls, nvars: int, coeffs: Mapping) -> "MultiPoly":
        clean = {}
        for exp, c in coeffs.items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != nvars or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent {exp!r} for {nvars} variables")
            c = Fraction(c)
            if c:
                clean[exp] = clean.get(exp, 0) + c
        items = [(e, c) for e, c in clean.items() if c]
        items.sort(key=lambda t: _grlex_key(t[0]))
        return cls(nvars, tuple(items))

    @classmethod
    def const(cls, c, nvars: int) -> "MultiPoly":
        return cls.from_dict(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, i: int, nvars: int) -> "MultiPoly":
        return cls.from_dict(nvars, {tuple(int(j == i) for j in range(nvars)): 1})

    @classmethod
    def variables(cls, nvars: int) -> list:
        return [cls.var(i, nvars) for i in range(nvars)]

    def as_dict(self) -> dict:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e, _ in self.terms), default=-1)

    def coefficient(self, exp) -> Fraction:
        return self.as_dict().get(tuple(exp), Fraction(0))

    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise ValueError("polynomials over different variable counts")
            return other
        return MultiPoly.const(other, self.nvars)

    def __add__(self, other):
        other = self._coerce(other)
        d = self.as_dict()
        for e, c in other.terms:
            d[e] = d.get(e, 0) + c
        return MultiPoly.from_dict(self.nvars, d)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly(self.nvars, tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        d: dict = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                d[e] = d.get(e, 0) + c1 * c2
        return MultiPoly.from_dict(self.nvars, d)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power")
        out = MultiPoly.const(1, self.nvars)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __call__(self, point):
        return evaluate(self, point)

    def compose(self, subs: Sequence["MultiPoly"]) -> "MultiPoly":
        """Substitute ``subs[i]`` for variable ``i``; all ``subs`` share one variable count."""
        if len(subs) != self.nvars:
            raise ValueError("need one substitute per variable")
        m = subs[0].nvars if subs else 0
        out = MultiPoly.const(0, m)
        powers: dict = {}
        for e, c in self.terms:
            term = MultiPoly.const(c, m)
            for i, k in enumerate(e):
                if k:
                    if (i, k) not in powers:
                        powers[(i, k)] = subs[i] ** k
                    term = term * powers[(i, k)]
            out = out + term
        return out

    def to_str(self, names: Sequence[str] | None = None) -> str:
        names = names or [f"x{i + 1}" for i in range(self.nvars)]
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __str__(self):
        return self.to_str()


def evaluate(p: MultiPoly, point) -> Fraction:
    if len(point) != p.nvars:
        raise ValueError("dimension mismatch")
    point = [Fraction(v) for v in point]
    total = Fraction(0)
    for e, c in p.terms:
        t = c
        for v, k in zip(point, e):
            if k:
                t *= v ** k
        total += t
    return total


@dataclass(frozen=True)
class PolyMap:
    components: tuple

    def __post_init__(self):
        if not self.components:
            raise ValueError("a polynomial map needs at least one component")
        n = self.components[0].nvars
        if any(c.nvars != n for c in self.components):
            raise ValueError("components must share the variable count")

    @classmethod
    def of(cls, components) -> "PolyMap":
        return cls(tuple(components))

    @property
    def nvars(self) -> int:
        return self.components[0].nvars

    @property
    def output_dim(self) -> int:
        return len(self.components)

    @property
    def maxdeg(self) -> int:
        return max(c.degree for c in self.components)

    def __call__(self, point) -> tuple:
        return tuple(evaluate(c, point) for c in self.components)

    def compose(self, subs) -> "PolyMap":
        return PolyMap(tuple(c.compose(subs) for c in self.components))


def taylor_shift(p: MultiPoly) -> MultiPoly:
    """Expand ``p(lam + h)`` as a polynomial in ``(lam_1..lam_n, h_1..h_n)``."""
    n = p.nvars
    d: dict = {}
    for e, c in p.terms:
        for ks in product(*(range(a + 1) for a in e)):
            coef = c
            for a, k in zip(e, ks):
                coef *= math.comb(a, k)
            exp = tuple(a - k for a, k in zip(e, ks)) + tuple(ks)
            d[exp] = d.get(exp, 0) + coef
    return MultiPoly.from_dict(2 * n, d)


def _bounds_for(p: MultiPoly):
    n = p.nvars
    lower: dict = {}
    upper: dict = {}
    for exp, c in taylor_shift(p).terms:
        lam, h = exp[:n], exp[n:]
        if not any(h):
            continue
        target = upper if c > 0 else lower
        target[lam] = target.get(lam, 0) + c
    return MultiPoly.from_dict(n, lower), MultiPoly.from_dict(n, upper)


def correction_bounds(g: PolyMap):
    """Return ``(g_l, g_u)`` with ``g_l(lam) <= g(y) - g(lam) <= g_u(lam)`` for ``lam = floor(y)``."""
    lows, ups = zip(*(_bounds_for(c) for c in g.components))
    return PolyMap(tuple(lows)), PolyMap(tuple(ups))


def floor_vec(y) -> tuple:
    return tuple(math.floor(Fraction(v)) for v in y)


def correction_residual(g: PolyMap, x, y):
    """Split an integer point ``x = g(y)`` as ``g(lam) + v_x`` with ``lam = floor(y)``."""
    y = tuple(Fraction(v) for v in y)
    if len(y) != g.nvars:
        raise ValueError("dimension mismatch")
    if any(v < 0 for v in y):
        raise PreconditionError(f"preimage {y} has a negative component")
    x = tuple(Fraction(v) for v in x)
    if any(v.denominator != 1 for v in x):
        raise PreconditionError(f"{x} is not an integer point")
    if g(y) != x:
        raise PreconditionError("x != g(y)")
    lam = floor_vec(y)
    g_lam = g(lam)
    if any(v.denominator != 1 for v in g_lam):
        raise PreconditionError("g does not map integer points to integer points")
    v = tuple(int(a - b) for a, b in zip(x, g_lam))
    return lam, v


def maps_integers_to_integers(g: PolyMap, samples: int = 200, bound: int = 20, seed: int = 0) -> bool:
    """Sampled check that ``g(Z_+^d)`` stays inside ``Z^n``."""
    rng = random.Random(seed)
    pts = [tuple(0 for _ in range(g.nvars))]
    pts += [tuple(rng.randint(0, bound) for _ in range(g.nvars)) for _ in range(samples)]
    return all(v.denominator == 1 for p in pts for v in g(p))
