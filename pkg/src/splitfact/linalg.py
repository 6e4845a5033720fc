"""Exact integer and rational linear algebra.

Matrices are lists of rows. Integer routines never leave ``int``; rational
routines use :class:`fractions.Fraction`. Sizes here are tiny (at most a few
dozen rows), so the algorithms favour clarity over asymptotics.
"""
from __future__ import annotations

from fractions import Fraction as Q
from typing import List, Sequence, Tuple

IntMatrix = List[List[int]]
IntVector = Tuple[int, ...]


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(a: Sequence[Sequence]) -> list:
    if not a:
        return []
    return [list(col) for col in zip(*a)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


# --- row echelon / Hermite normal form -------------------------------------

def _echelon(rows: IntMatrix, aug: IntMatrix | None = None) -> int:
    """Integer row reduction in place; returns the rank.

    ``aug`` receives the same unimodular row operations. After the call the
    first ``rank`` rows form an echelon basis of the row lattice (positive
    pivots, entries above each pivot reduced into ``[0, pivot)``) and the
    remaining rows are zero.
    """
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    pivots = []
    for c in range(ncols):
        while True:
            nz = [i for i in range(r, len(rows)) if rows[i][c] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: abs(rows[i][c]))
            _swap(rows, aug, r, i0)
            done = True
            for i in range(r + 1, len(rows)):
                if rows[i][c]:
                    q = rows[i][c] // rows[r][c]
                    _addrow(rows, aug, i, r, -q)
                    if rows[i][c]:
                        done = False
            if done:
                break
        if r < len(rows) and rows[r][c] != 0:
            if rows[r][c] < 0:
                _negrow(rows, aug, r)
            for i in range(r):
                q = rows[i][c] // rows[r][c]
                if q:
                    _addrow(rows, aug, i, r, -q)
            pivots.append(c)
            r += 1
            if r == len(rows):
                break
    return r


def _swap(rows, aug, i, j):
    if i != j:
        rows[i], rows[j] = rows[j], rows[i]
        if aug is not None:
            aug[i], aug[j] = aug[j], aug[i]


def _addrow(rows, aug, i, j, q):
    rows[i] = [x + q * y for x, y in zip(rows[i], rows[j])]
    if aug is not None:
        aug[i] = [x + q * y for x, y in zip(aug[i], aug[j])]


def _negrow(rows, aug, i):
    rows[i] = [-x for x in rows[i]]
    if aug is not None:
        aug[i] = [-x for x in aug[i]]


def hnf_basis(vectors: Sequence[Sequence[int]], dim: int | None = None) -> List[IntVector]:
    """Echelon (Hermite) basis of the lattice spanned by ``vectors``."""
    rows = [list(map(int, v)) for v in vectors]
    if not rows:
        return []
    if dim is not None and any(len(v) != dim for v in rows):
        raise ValueError("dimension mismatch")
    rank = _echelon(rows)
    return [tuple(v) for v in rows[:rank]]


def integer_kernel(a: Sequence[Sequence[int]], ncols: int | None = None) -> List[IntVector]:
    """A basis of ``{x in Z^n : a x = 0}``."""
    n = len(a[0]) if a else ncols
    if n is None:
        raise ValueError("cannot infer column count of an empty matrix")
    if not a:
        return [tuple(r) for r in identity(n)]
    rows = transpose([list(map(int, r)) for r in a])
    aug = identity(n)
    rank = _echelon(rows, aug)
    return hnf_basis(aug[rank:]) if rank < n else []


# --- rational solves ---------------------------------------------------------

def rational_solve(a: Sequence[Sequence], b: Sequence) -> Tuple[Q, ...] | None:
    """Some solution of ``a x = b`` over Q, or ``None`` if inconsistent."""
    m = len(a)
    n = len(a[0]) if m else 0
    rows = [[Q(x) for x in a[i]] + [Q(b[i])] for i in range(m)]
    piv_cols = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
    if any(rows[i][n] != 0 for i in range(r, m)):
        return None
    x = [Q(0)] * n
    for i, c in enumerate(piv_cols):
        x[c] = rows[i][n]
    return tuple(x)


def rational_rank(vectors: Sequence[Sequence]) -> int:
    rows = [[Q(x) for x in v] for v in vectors]
    if not rows:
        return 0
    r = 0
    for c in range(len(rows[0])):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        for i in range(r + 1, len(rows)):
            if rows[i][c] != 0:
                f = rows[i][c] / rows[r][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
    return r


def rational_inverse(a: Sequence[Sequence]) -> List[List[Q]]:
    n = len(a)
    rows = [[Q(x) for x in a[i]] + [Q(int(i == j)) for j in range(n)] for i in range(n)]
    for c in range(n):
        p = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if p is None:
            raise ZeroDivisionError("singular matrix")
        rows[c], rows[p] = rows[p], rows[c]
        inv = 1 / rows[c][c]
        rows[c] = [x * inv for x in rows[c]]
        for i in range(n):
            if i != c and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return [row[n:] for row in rows]


def integer_inverse(a: Sequence[Sequence[int]]) -> IntMatrix:
    inv = rational_inverse(a)
    if any(x.denominator != 1 for row in inv for x in row):
        raise ValueError("matrix is not unimodular")
    return [[int(x) for x in row] for row in inv]


# --- lattices ----------------------------------------------------------------

def coords_in_basis(basis: Sequence[Sequence[int]], v: Sequence[int]) -> IntVector | None:
    """Integer coordinates of ``v`` in a lattice basis, ``None`` if ``v`` is outside."""
    if not basis:
        return () if all(x == 0 for x in v) else None
    x = rational_solve(transpose(basis), v)
    if x is None or any(c.denominator != 1 for c in x):
        return None
    return tuple(int(c) for c in x)


def lattice_contains(basis: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
    return coords_in_basis(basis, v) is not None


def lattice_sum(*bases: Sequence[Sequence[int]], dim: int) -> List[IntVector]:
    vecs = [v for b in bases for v in b]
    return hnf_basis(vecs, dim) if vecs else []


def lattice_intersection(b1: Sequence[Sequence[int]], b2: Sequence[Sequence[int]]) -> List[IntVector]:
    if not b1 or not b2:
        return []
    # x b1 = y b2 <=> [b1; -b2]^T (x, y) = 0
    m = transpose([list(v) for v in b1] + [[-c for c in v] for v in b2])
    ker = integer_kernel(m)
    k = len(b1)
    vecs = [tuple(sum(c * v[j] for c, v in zip(z[:k], b1)) for j in range(len(b1[0]))) for z in ker]
    return hnf_basis(vecs) if vecs else []


def lattice_index(sub: Sequence[Sequence[int]], sup: Sequence[Sequence[int]]) -> int:
    """Index ``[sup : sub]`` for full-rank ``sub`` inside ``sup``; 0 if infinite."""
    rel = []
    for v in sub:
        c = coords_in_basis(sup, v)
        if c is None:
            raise ValueError("not a sublattice")
        rel.append(list(c))
    if len(hnf_basis(rel)) < len(sup):
        return 0
    _, d, _ = smith_normal_form(transpose(rel))
    out = 1
    for i in range(len(sup)):
        out *= d[i][i]
    return abs(out)


# --- Smith normal form -----------------------------------------------------

def smith_normal_form(a: Sequence[Sequence[int]]) -> Tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(U, D, V)`` with ``U a V = D`` diagonal, ``U, V`` unimodular.

    Diagonal entries are nonnegative and each divides the next.
    """
    m = len(a)
    n = len(a[0]) if m else 0
    d = [list(map(int, row)) for row in a]
    u = identity(m)
    v = identity(n)

    def row_op(i, j, q):  # row_i += q row_j
        d[i] = [x + q * y for x, y in zip(d[i], d[j])]
        u[i] = [x + q * y for x, y in zip(u[i], u[j])]

    def col_op(i, j, q):  # col_i += q col_j
        for row in d:
            row[i] += q * row[j]
        for row in v:
            row[i] += q * row[j]

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    t = 0
    while t < min(m, n):
        nz = [(abs(d[i][j]), i, j) for i in range(t, m) for j in range(t, n) if d[i][j]]
        if not nz:
            break
        _, i0, j0 = min(nz)
        swap_rows(t, i0)
        swap_cols(t, j0)
        while True:
            clean = True
            for i in range(t + 1, m):
                if d[i][t]:
                    row_op(i, t, -(d[i][t] // d[t][t]))
                    if d[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if d[t][j]:
                    col_op(j, t, -(d[t][j] // d[t][t]))
                    if d[t][j]:
                        clean = False
            if clean:
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                            if d[i][j] % d[t][t]), None)
                if bad is None:
                    break
                row_op(t, bad[0], 1)
                continue
            _, i0, j0 = min((abs(d[i][j]), i, j) for i in range(t, m) for j in range(t, n)
                            if d[i][j] and (i == t or j == t))
            swap_rows(t, i0)
            swap_cols(t, j0)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return u, d, v


def elementary_divisors(a: Sequence[Sequence[int]]) -> List[int]:
    """Diagonal of the Smith form (including zeros for rank deficiency)."""
    if not a:
        return []
    _, d, _ = smith_normal_form(a)
    return [d[i][i] for i in range(min(len(d), len(d[0])))]
