"""Independent reference implementations, used only to cross-check the package.

These deliberately avoid the package's fraction-free elimination: rank and
kernels come from a plain Gauss-Jordan reduction with Fraction arithmetic,
determinants from cofactor expansion, and the generic rank of a matrix of
linear forms from symbolic cofactor minors.
"""

from fractions import Fraction
from itertools import combinations


def rref(rows):
    """Reduced row echelon form over Q by naive Gauss-Jordan.

    Returns (rref rows, pivot columns)."""
    m = [[Fraction(x) for x in row] for row in rows]
    nr = len(m)
    nc = len(m[0]) if nr else 0
    pivots = []
    r = 0
    for c in range(nc):
        pr = next((i for i in range(r, nr) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        piv = m[r][c]
        m[r] = [x / piv for x in m[r]]
        for i in range(nr):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nr:
            break
    return m, pivots


def rank_oracle(rows, ncols=None):
    return len(rref(rows)[1])


def nullspace_oracle(rows, ncols):
    """Kernel basis read off the RREF: one vector per free column, with a 1
    at the free column (the canonical basis, same convention the package
    promises)."""
    if not rows:
        basis = []
        for j in range(ncols):
            v = [0] * ncols
            v[j] = 1
            basis.append(v)
        return basis
    m, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][fc]
        basis.append([int(x) if x.denominator == 1 else x for x in v])
    return basis


def det_cofactor(rows):
    """Determinant by Laplace expansion along the first row (exact)."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(rows[0][0])
    total = Fraction(0)
    sign = 1
    for j in range(n):
        if rows[0][j]:
            minor = [[row[c] for c in range(n) if c != j] for row in rows[1:]]
            total += sign * Fraction(rows[0][j]) * det_cofactor(minor)
        sign = -sign
    return total


def det_cofactor_poly(entries):
    """Cofactor determinant of a matrix of MultiPoly entries (tiny sizes only)."""
    n = len(entries)
    if n == 1:
        return entries[0][0]
    total = None
    sign = 1
    for j in range(n):
        minor = [[row[c] for c in range(n) if c != j] for row in entries[1:]]
        piece = entries[0][j] * det_cofactor_poly(minor)
        piece = piece if sign > 0 else -piece
        total = piece if total is None else total + piece
        sign = -sign
    return total


def symbolic_rank_oracle(matrix, ring):
    """Rank of a linear-form matrix over the function field of its target
    variables: the largest k with a symbolically nonzero k x k minor."""
    entries = [[matrix.entry_poly(i, j, ring) for j in range(matrix.cols)] for i in range(matrix.rows)]
    for k in range(min(matrix.rows, matrix.cols), 0, -1):
        for rows_pick in combinations(range(matrix.rows), k):
            for cols_pick in combinations(range(matrix.cols), k):
                sub = [[entries[i][j] for j in cols_pick] for i in rows_pick]
                if not det_cofactor_poly(sub).is_zero():
                    return k
    return 0
