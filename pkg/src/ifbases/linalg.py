"""Exact integer and rational linear algebra.

Vectors are plain tuples (``tuple[int, ...]`` or ``tuple[Fraction, ...]``);
matrices are :class:`IntMatrix`, which remembers its column count so that
matrices with zero rows stay well-formed.  Nothing here touches floats.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import RankDeficientError, SingularMatrixError

IntVector = tuple  # tuple[int, ...]
RatVector = tuple  # tuple[Fraction, ...]


@dataclass(frozen=True)
class IntMatrix:
    rows: tuple
    ncols: int

    def __post_init__(self):
        for r in self.rows:
            if len(r) != self.ncols:
                raise ValueError(f"row {r!r} does not have {self.ncols} entries")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], ncols: int | None = None) -> "IntMatrix":
        rows = tuple(tuple(int(v) for v in r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(rows[0])
        return cls(rows, ncols)

    @classmethod
    def from_columns(cls, cols: Iterable[Sequence[int]], nrows: int | None = None) -> "IntMatrix":
        cols = [tuple(int(v) for v in c) for c in cols]
        if nrows is None:
            if not cols:
                raise ValueError("nrows is required for a matrix with no columns")
            nrows = len(cols[0])
        return cls(tuple(tuple(c[i] for c in cols) for i in range(nrows)), len(cols))

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def columns(self) -> list:
        return [tuple(r[j] for r in self.rows) for j in range(self.ncols)]

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix.from_columns(self.rows, nrows=self.ncols)

    def __matmul__(self, v):
        return matvec(self, v)

    def __len__(self):
        return self.nrows


def as_matrix(M) -> IntMatrix:
    if isinstance(M, IntMatrix):
        return M
    return IntMatrix.from_rows(M)


def as_intvec(v) -> IntVector:
    out = tuple(int(x) for x in v)
    for x, orig in zip(out, v):
        if x != orig:
            raise ValueError(f"{orig!r} is not an integer")
    return out


def as_ratvec(v) -> RatVector:
    return tuple(Fraction(x) for x in v)


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def matvec(M, v):
    M = as_matrix(M)
    return tuple(dot(r, v) for r in M.rows)


def vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vscale(k, v):
    return tuple(k * a for a in v)


def lin_comb(coeffs, vectors, dim):
    out = [0] * dim
    for c, v in zip(coeffs, vectors):
        if c:
            for i, a in enumerate(v):
                out[i] += c * a
    return tuple(out)


def content(v) -> int:
    g = 0
    for a in v:
        g = gcd(g, int(a))
    return g


def primitive(v) -> IntVector:
    """Scale a nonzero rational vector to the primitive integer vector on its ray."""
    v = as_ratvec(v)
    den = 1
    for a in v:
        den = lcm(den, a.denominator)
    w = tuple(int(a * den) for a in v)
    g = content(w)
    if g == 0:
        raise ValueError("zero vector has no primitive representative")
    return tuple(a // g for a in w)


def rank(M) -> int:
    """Rank over Q by fraction-free (Bareiss) elimination."""
    M = as_matrix(M)
    a = [list(r) for r in M.rows]
    m, n = len(a), M.ncols
    prev, r = 1, 0
    for c in range(n):
        piv = next((i for i in range(r, m) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, m):
            for j in range(c + 1, n):
                a[i][j] = (a[i][j] * a[r][c] - a[i][c] * a[r][j]) // prev
            a[i][c] = 0
        prev = a[r][c]
        r += 1
        if r == m:
            break
    return r


def determinant(M) -> int:
    M = as_matrix(M)
    n = M.nrows
    if n != M.ncols:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    a = [list(r) for r in M.rows]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if piv is None:
                return 0
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def lattice_index(M) -> int:
    """|det M|: the number of lattice points in the half-open parallelepiped of M's columns."""
    d = determinant(M)
    if d == 0:
        raise SingularMatrixError("lattice index of a singular matrix")
    return abs(d)


def _rref(rows, ncols):
    """Reduced row echelon form over Q. Returns (rows, pivot_columns)."""
    a = [[Fraction(v) for v in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        a[r] = [v / p for v in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a, pivots


def solve_rational(M, y):
    """The unique ``c`` with ``M c = y``, or ``None`` when ``y`` is outside the column span.

    Raises :class:`RankDeficientError` if the columns of ``M`` are dependent.
    """
    M = as_matrix(M)
    if len(y) != M.nrows:
        raise ValueError("dimension mismatch")
    if rank(M) != M.ncols:
        raise RankDeficientError("columns are linearly dependent")
    aug = [list(r) + [y[i]] for i, r in enumerate(M.rows)]
    red, pivots = _rref(aug, M.ncols + 1)
    if M.ncols in pivots:
        return None
    return tuple(red[i][-1] for i in range(M.ncols))


def nullspace(M) -> list:
    """Primitive integer basis of the rational kernel of ``M``."""
    M = as_matrix(M)
    n = M.ncols
    red, pivots = _rref(M.rows, n)
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -red[i][f]
        basis.append(primitive(v))
    return basis


def xgcd(a: int, b: int):
    """Return (g, x, y) with x*a + y*b == g == gcd(a, b) >= 0."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a - (a // b) * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def column_echelon(M):
    """Unimodular column reduction ``E = M U`` with ``E`` in lower column-echelon form.

    Returns ``(E, U, r)`` where ``r`` is the rank; columns ``r..`` of ``E`` are
    zero, so the matching columns of ``U`` are a lattice basis of the integer
    kernel of ``M``.  Pivots of ``E`` are positive.
    """
    M = as_matrix(M)
    m, n = M.nrows, M.ncols
    E = [list(r) for r in M.rows]
    U = [[int(i == j) for j in range(n)] for i in range(n)]

    def combine(p, j, a, b, c, d):
        # col_p, col_j <- a*col_p + b*col_j, c*col_p + d*col_j
        for mat in (E, U):
            for row in mat:
                x, z = row[p], row[j]
                row[p], row[j] = a * x + b * z, c * x + d * z

    piv = 0
    for i in range(m):
        if piv >= n:
            break
        for j in range(piv + 1, n):
            b = E[i][j]
            if b == 0:
                continue
            a = E[i][piv]
            g, x, y = xgcd(a, b)
            combine(piv, j, x, y, -b // g, a // g)
        if E[i][piv] != 0:
            if E[i][piv] < 0:
                for mat in (E, U):
                    for row in mat:
                        row[piv] = -row[piv]
            piv += 1
    return E, U, piv


def integer_kernel(M) -> list:
    """Lattice basis of ``{x in Z^n : M x = 0}``."""
    M = as_matrix(M)
    _, U, r = column_echelon(M)
    n = M.ncols
    return [tuple(U[i][j] for i in range(n)) for j in range(r, n)]


def saturation_basis(cols, dim: int) -> list:
    """Lattice basis of ``span(cols) ∩ Z^dim`` for independent integer columns."""
    cols = [tuple(c) for c in cols]
    if len(cols) == dim:
        return [tuple(int(i == j) for i in range(dim)) for j in range(dim)]
    if not cols:
        return []
    normals = nullspace(IntMatrix.from_rows(cols, dim))
    return integer_kernel(IntMatrix.from_rows(normals, dim))


class ColumnSolver:
    """Repeated exact coordinate solves against fixed independent integer columns.

    A nonsingular square row-selection of the column matrix is inverted once
    (integer adjugate plus determinant); ``coords`` then costs one integer
    matrix-vector product per call.
    """

    def __init__(self, cols, dim: int | None = None):
        self.cols = [tuple(c) for c in cols]
        self.r = len(self.cols)
        self.dim = dim if dim is not None else len(self.cols[0])
        M = IntMatrix.from_columns(self.cols, nrows=self.dim)
        if rank(M) != self.r:
            raise RankDeficientError("columns are linearly dependent")
        # greedily choose r rows giving a nonsingular square block
        chosen = []
        for i in range(self.dim):
            trial = chosen + [i]
            if rank(IntMatrix.from_rows([M.rows[k] for k in trial], self.r)) == len(trial):
                chosen = trial
            if len(chosen) == self.r:
                break
        self.row_sel = tuple(chosen)
        block = IntMatrix.from_rows([M.rows[k] for k in chosen], self.r)
        self.det = determinant(block)
        inv, _ = _rref([list(r) + [int(i == j) for j in range(self.r)]
                        for i, r in enumerate(block.rows)], 2 * self.r)
        self.adj = [[int(inv[i][self.r + j] * self.det) for j in range(self.r)]
                    for i in range(self.r)]

    def numerators(self, x):
        """Integer vector ``det * coords(x)`` for x assumed to be in the span."""
        xs = [x[k] for k in self.row_sel]
        return tuple(dot(row, xs) for row in self.adj)

    def in_span_coords(self, x):
        """Coordinates of ``x`` in the columns, or ``None`` when ``x`` is off the span."""
        num = self.numerators(x)
        d = self.det
        if self.r < self.dim:
            back = lin_comb(num, self.cols, self.dim)
            if any(b != d * a for a, b in zip(x, back)):
                return None
        return tuple(Fraction(a, d) for a in num)


def nonneg_solution(M, y):
    """Some ``x >= 0`` (exact rationals) with ``M x = y``, or ``None`` if infeasible.

    Phase-one simplex on a dense Fraction tableau with Bland's rule.
    """
    M = as_matrix(M)
    m, n = M.nrows, M.ncols
    if len(y) != m:
        raise ValueError("dimension mismatch")
    if m == 0:
        return tuple(Fraction(0) for _ in range(n))
    width = n + m
    rows = []
    for i in range(m):
        r = [Fraction(v) for v in M.rows[i]]
        rhs = Fraction(y[i])
        if rhs < 0:
            r = [-v for v in r]
            rhs = -rhs
        rows.append(r + [Fraction(int(i == k)) for k in range(m)] + [rhs])
    basis = [n + i for i in range(m)]
    obj = [sum(rows[i][j] for i in range(m)) for j in range(width + 1)]
    for j in range(n, width):
        obj[j] = Fraction(0)

    while True:
        enter = next((j for j in range(width) if obj[j] > 0), None)
        if enter is None:
            break
        best = None
        for i in range(m):
            a = rows[i][enter]
            if a > 0:
                ratio = rows[i][-1] / a
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:  # pragma: no cover - phase one is bounded below by zero
            break
        r = best[1]
        p = rows[r][enter]
        rows[r] = [v / p for v in rows[r]]
        for i in range(m):
            if i != r and rows[i][enter] != 0:
                f = rows[i][enter]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        f = obj[enter]
        obj = [a - f * b for a, b in zip(obj, rows[r])]
        basis[r] = enter

    if obj[-1] != 0:
        return None
    x = [Fraction(0)] * n
    for i, b in enumerate(basis):
        if b < n:
            x[b] = rows[i][-1]
    return tuple(x)
