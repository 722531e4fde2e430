"""Brute-force reference computations shared by the tests.

None of these call into the construction code paths they are used to check.
"""
from fractions import Fraction
from itertools import product

from hypothesis import assume, strategies as st


def det(m):
    """Laplace expansion; fine for the 2x2 and 3x3 matrices used here."""
    if len(m) == 1:
        return m[0][0]
    return sum((-1) ** j * m[0][j] * det([row[:j] + row[j + 1:] for row in m[1:]])
               for j in range(len(m)))


def solve_square(cols, x):
    """Coordinates of ``x`` in the basis ``cols`` by Cramer's rule (square, nonsingular)."""
    n = len(x)
    M = [[cols[j][i] for j in range(n)] for i in range(n)]
    d = det(M)
    out = []
    for j in range(n):
        Mj = [row[:j] + [x[i]] + row[j + 1:] for i, row in enumerate(M)]
        out.append(Fraction(det(Mj), d))
    return out, d


def brute_parallelepiped(cols):
    """Lattice points of the half-open parallelepiped by scanning its bounding box."""
    n = len(cols[0])
    lo = [sum(min(0, c[i]) for c in cols) for i in range(n)]
    hi = [sum(max(0, c[i]) for c in cols) for i in range(n)]
    pts = []
    for x in product(*(range(a, b + 1) for a, b in zip(lo, hi))):
        coords, _ = solve_square(cols, list(x))
        if all(0 <= a < 1 for a in coords):
            pts.append(tuple(x))
    return sorted(pts)


def brute_hilbert_2d(gens, side):
    """Irreducible nonzero points of a 2-D pointed cone, found in ``[-side, side]^2``.

    Irreducible means not a sum of two nonzero cone points; for side large
    enough this is the Hilbert basis.
    """
    def in_cone(x):
        # x in cone(g1, g2) for a 2-D cone given by two extreme rays
        (a, b), (c, d) = gens
        det = a * d - b * c
        s = (x[0] * d - x[1] * c) * det
        t = (a * x[1] - b * x[0]) * det
        return s >= 0 and t >= 0

    pts = [x for x in product(range(-side, side + 1), repeat=2) if any(x) and in_cone(x)]
    pset = set(pts)
    irreducible = []
    for x in pts:
        if not any((x[0] - y[0], x[1] - y[1]) in pset for y in pts if y != x):
            irreducible.append(x)
    return sorted(irreducible)


def nonneg_combos(basis, bound):
    """All sums of at most ``bound`` basis elements (with repetition)."""
    dim = len(basis[0])
    reach = {tuple([0] * dim)}
    frontier = set(reach)
    for _ in range(bound):
        nxt = set()
        for r in frontier:
            for g in basis:
                nxt.add(tuple(a + b for a, b in zip(r, g)))
        nxt -= reach
        reach |= nxt
        frontier = nxt
    return reach


def int_vectors(dim, lo=-5, hi=5):
    return st.tuples(*[st.integers(lo, hi)] * dim)


@st.composite
def nonsingular_matrices(draw, dim, lo=-5, hi=5):
    cols = draw(st.lists(int_vectors(dim, lo, hi), min_size=dim, max_size=dim))
    assume(det([list(c) for c in cols]) != 0)
    return [tuple(c) for c in cols]


def random_bounded_ip(rng, max_n=3, max_deg=3):
    """Random ``max{p(z) : Az = b, z >= 0}`` with positive rows, hence bounded."""
    from ifbases.optimality import PolyIP
    from ifbases.polynomial import MultiPoly

    n = rng.randint(2, max_n)
    m = 1 if n == 2 or rng.random() < 0.7 else 2
    A = [[rng.randint(1, 2) for _ in range(n)] for _ in range(m)]
    z = [rng.randint(2, 9) for _ in range(n)]
    b = [sum(a * v for a, v in zip(row, z)) for row in A]
    coeffs = {}
    for _ in range(rng.randint(1, 5)):
        e = [0] * n
        for _ in range(rng.randint(0, max_deg)):
            e[rng.randrange(n)] += 1
        coeffs[tuple(e)] = rng.randint(-3, 3)
    return PolyIP.of(MultiPoly.from_dict(n, coeffs), A, b)


def feasible_points(ip):
    hi = max(ip.b) if ip.b else 0
    return [z for z in product(range(hi + 1), repeat=ip.n)
            if all(sum(a * v for a, v in zip(row, z)) == bi for row, bi in zip(ip.A.rows, ip.b))]
