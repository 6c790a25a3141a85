"""Exact linear algebra over the rationals and small integer lattice routines.

Everything here works on tuples of ``int`` or ``fractions.Fraction``; no
floating point enters at any stage.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd

IntVec = tuple[int, ...]
QVec = tuple[Fraction, ...]


def dot(u, v):
    """Exact dot product of two equal-length vectors."""
    if len(u) != len(v):
        raise ValueError(f"rank mismatch: {len(u)} vs {len(v)}")
    return sum(a * b for a, b in zip(u, v))


def vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, v):
    return tuple(c * a for a in v)


def is_zero_vec(v) -> bool:
    return all(a == 0 for a in v)


def integerize(v) -> IntVec:
    """Scale a rational vector to its primitive integer representative.

    The direction (sign) is preserved; the zero vector maps to itself.
    """
    fracs = [Fraction(a) for a in v]
    if all(a == 0 for a in fracs):
        return tuple(0 for _ in v)
    lcm = 1
    for a in fracs:
        d = a.denominator
        lcm = lcm // gcd(lcm, d) * d
    ints = [int(a * lcm) for a in fracs]
    g = 0
    for a in ints:
        g = gcd(g, abs(a))
    return tuple(a // g for a in ints)


def rref(rows: list) -> list[QVec]:
    """Reduced row echelon form of the span of `rows`.

    The result depends only on the row space, which makes every construction
    built on it canonical: equal subspaces yield identical output.
    """
    mat = [[Fraction(a) for a in r] for r in rows]
    if not mat:
        return []
    ncols = len(mat[0])
    out: list[list[Fraction]] = []
    pivot_cols: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = 1 / mat[r][c]
        mat[r] = [a * inv for a in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivot_cols.append(c)
        r += 1
        if r == len(mat):
            break
    return [tuple(row) for row in mat[:r]]


def rank(rows: list) -> int:
    return len(rref(rows))


def kernel_basis(rows: list, n: int) -> list[QVec]:
    """Canonical basis of {x : r . x = 0 for every row r}, inside rank n."""
    red = rref(rows)
    pivots: dict[int, int] = {}
    for i, row in enumerate(red):
        for c in range(n):
            if row[c] != 0:
                pivots[c] = i
                break
    basis = []
    for free in range(n):
        if free in pivots:
            continue
        v = [Fraction(0)] * n
        v[free] = Fraction(1)
        for c, i in pivots.items():
            v[c] = -red[i][free]
        basis.append(tuple(v))
    return basis


def det(rows: list) -> Fraction:
    """Determinant of a square matrix by fraction-free-ish Gaussian elimination."""
    mat = [[Fraction(a) for a in r] for r in rows]
    n = len(mat)
    sign = 1
    result = Fraction(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if mat[i][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            mat[c], mat[pivot] = mat[pivot], mat[c]
            sign = -sign
        result *= mat[c][c]
        inv = 1 / mat[c][c]
        for i in range(c + 1, n):
            if mat[i][c] != 0:
                f = mat[i][c] * inv
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[c])]
    return sign * result


def minors_gcd(rows: list[IntVec], k: int) -> int:
    """gcd of all k x k minors of an integer matrix (0 if all vanish)."""
    m, n = len(rows), len(rows[0]) if rows else 0
    if k == 0:
        return 1
    if k > m or k > n:
        return 0
    g = 0
    for ris in combinations(range(m), k):
        for cis in combinations(range(n), k):
            sub = [[rows[i][j] for j in cis] for i in ris]
            g = gcd(g, abs(int(det(sub))))
            if g == 1:
                return 1
    return g


def column_hnf(rows: list[IntVec], n: int) -> tuple[list[list[int]], list[list[int]]]:
    """Column-style Hermite reduction A*H = B with H unimodular.

    Returns (H, B) where H is an n x n unimodular matrix of column operations
    and B is in column echelon form: the trailing columns of B that are zero
    mark columns of H forming a Z-basis of the integer kernel of A (saturated,
    since the kernel of an integer matrix over Z is its own saturation).
    """
    a = [list(r) for r in rows]
    m = len(a)
    h = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def col_combine(j, k, u, v, s, t):
        # (col_j, col_k) <- (u*col_j + v*col_k, s*col_j + t*col_k)
        for row in a:
            row[j], row[k] = u * row[j] + v * row[k], s * row[j] + t * row[k]
        for row in h:
            row[j], row[k] = u * row[j] + v * row[k], s * row[j] + t * row[k]

    r = 0
    for i in range(m):
        if r == n:
            break
        piv = next((j for j in range(r, n) if a[i][j] != 0), None)
        if piv is None:
            continue
        if piv != r:
            col_combine(r, piv, 0, 1, 1, 0)
        for j in range(r + 1, n):
            while a[i][j] != 0:
                q = a[i][j] // a[i][r]
                col_combine(j, r, 1, -q, 0, 1)
                if a[i][j] != 0:
                    col_combine(r, j, 0, 1, 1, 0)
        r += 1
    # normalize signs of pivot columns (keep unimodularity: negate a column)
    for j in range(n):
        col = [a[i][j] for i in range(m)]
        lead = next((x for x in col if x != 0), None)
        if lead is not None and lead < 0:
            for row in a:
                row[j] = -row[j]
            for row in h:
                row[j] = -row[j]
    return h, a


def integer_kernel(rows: list[IntVec], n: int) -> list[IntVec]:
    """Z-basis of {x in Z^n : A x = 0}; a saturated sublattice of Z^n."""
    if not rows:
        return [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]
    h, b = column_hnf(rows, n)
    out = []
    for j in range(n):
        if all(b[i][j] == 0 for i in range(len(b))):
            out.append(tuple(h[i][j] for i in range(n)))
    return out


def unimodular_extension(rows: list[IntVec], n: int) -> list[IntVec]:
    """Extend a basis of a saturated sublattice to a Z-basis of Z^n.

    The input rows are returned unchanged, followed by n - k completing
    vectors. Raises if the rows do not form a basis of a saturated sublattice
    (in which case no extension exists).
    """
    k = len(rows)
    if k == 0:
        return [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]
    h, _ = column_hnf(rows, n)
    hinv = invert_unimodular(h)
    full = [tuple(r) for r in rows] + hinv[k:]
    if len(full) != n or abs(int(det([list(r) for r in full]))) != 1:
        raise ValueError("rows are not a basis of a saturated sublattice")
    return full


def invert_unimodular(rows: list[IntVec]) -> list[IntVec]:
    """Exact inverse of a unimodular integer matrix, returned over Z."""
    n = len(rows)
    mat = [[Fraction(a) for a in r] + [Fraction(1 if i == j else 0) for j in range(n)]
           for i, r in enumerate(rows)]
    for c in range(n):
        piv = next(i for i in range(c, n) if mat[i][c] != 0)
        mat[c], mat[piv] = mat[piv], mat[c]
        inv = 1 / mat[c][c]
        mat[c] = [a * inv for a in mat[c]]
        for i in range(n):
            if i != c and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[c])]
    out = []
    for i in range(n):
        row = mat[i][n:]
        if any(a.denominator != 1 for a in row):
            raise ValueError("matrix is not unimodular")
        out.append(tuple(int(a) for a in row))
    return out
