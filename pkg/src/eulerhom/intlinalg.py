"""Integer matrix utilities: echelonization, exact solving, Smith form.

Everything here is plain Python ints in lists of lists; matrices at the
intended scale are tiny, so clarity wins over asymptotics.  Two engines
are exposed on purpose: a Hermite-style column echelon form used for
solvability with witnesses and kernel bases, and a Smith normal form
with both transformation matrices used to classify quotients.  They are
cross-checked against each other and against brute force in the tests.
"""

from __future__ import annotations

from typing import Sequence

Matrix = list[list[int]]
Vector = list[int]


def identity_matrix(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def copy_matrix(a: Sequence[Sequence[int]]) -> Matrix:
    return [list(row) for row in a]


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    if a and b:
        assert len(a[0]) == len(b)
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [
        [sum(row[t] * b[t][j] for t in range(inner)) for j in range(cols)]
        for row in a
    ]


def mat_vec(a: Sequence[Sequence[int]], v: Sequence[int]) -> Vector:
    return [sum(row[j] * v[j] for j in range(len(v))) for row in a]


def determinant(a: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free Bareiss elimination."""
    n = len(a)
    if n == 0:
        return 1
    m = copy_matrix(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def column_echelon(a: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix]:
    """Hermite-style column echelon form: returns (H, C) with H = A C.

    C is unimodular (built from column swaps, negations and integer
    shears).  Pivot columns come first with strictly increasing pivot
    rows, pivots positive, entries to the left of each pivot reduced to
    [0, pivot); the remaining columns are zero.
    """
    h = copy_matrix(a)
    rows = len(h)
    cols = len(h[0]) if h else 0
    c = identity_matrix(cols)

    def col_axpy(dst: int, src: int, t: int) -> None:
        # column dst -= t * column src
        for i in range(rows):
            h[i][dst] -= t * h[i][src]
        for i in range(cols):
            c[i][dst] -= t * c[i][src]

    def col_swap(i: int, j: int) -> None:
        if i == j:
            return
        for r in range(rows):
            h[r][i], h[r][j] = h[r][j], h[r][i]
        for r in range(cols):
            c[r][i], c[r][j] = c[r][j], c[r][i]

    def col_negate(j: int) -> None:
        for r in range(rows):
            h[r][j] = -h[r][j]
        for r in range(cols):
            c[r][j] = -c[r][j]

    pivots: list[tuple[int, int]] = []
    lead = 0
    for row in range(rows):
        if lead >= cols:
            break
        # gcd out the row among columns >= lead
        while True:
            live = [j for j in range(lead, cols) if h[row][j] != 0]
            if not live:
                break
            jmin = min(live, key=lambda j: abs(h[row][j]))
            col_swap(lead, jmin)
            done = True
            for j in range(lead + 1, cols):
                if h[row][j] != 0:
                    t = h[row][j] // h[row][lead]
                    col_axpy(j, lead, t)
                    if h[row][j] != 0:
                        done = False
            if done:
                break
        if h[row][lead] != 0:
            if h[row][lead] < 0:
                col_negate(lead)
            pivots.append((row, lead))
            lead += 1
    # reduce entries left of each pivot into [0, pivot)
    for row, j in pivots:
        for j2 in range(j):
            t = h[row][j2] // h[row][j]
            if t:
                col_axpy(j2, j, t)
    return h, c


def _pivots_of_echelon(h: Matrix) -> list[tuple[int, int]]:
    pivots = []
    rows = len(h)
    cols = len(h[0]) if h else 0
    for j in range(cols):
        row = next((i for i in range(rows) if h[i][j] != 0), None)
        if row is None:
            break
        pivots.append((row, j))
    return pivots


def solve(a: Sequence[Sequence[int]], b: Sequence[int]) -> Vector | None:
    """One integer solution x of A x = b, or None when none exists."""
    rows = len(a)
    cols = len(a[0]) if a else 0
    if len(b) != rows:
        raise ValueError("dimension mismatch")
    if cols == 0:
        return [] if all(v == 0 for v in b) else None
    h, c = column_echelon(a)
    pivots = _pivots_of_echelon(h)
    y = [0] * cols
    for row, j in pivots:
        s = sum(h[row][j2] * y[j2] for j2 in range(j))
        num = b[row] - s
        if num % h[row][j] != 0:
            return None
        y[j] = num // h[row][j]
    # rows without pivots must be consistent
    for row in range(rows):
        if sum(h[row][j] * y[j] for j in range(cols)) != b[row]:
            return None
    x = mat_vec(c, y)
    assert mat_vec(a, x) == list(b)
    return x


def kernel_basis(a: Sequence[Sequence[int]]) -> list[Vector]:
    """A lattice basis of {x : A x = 0}, as a list of vectors.

    Since H = A C is echelon with unimodular C, the kernel is exactly
    the span of C's columns beyond the pivot columns, and those columns
    form a basis of the kernel as a direct summand of Z^cols.
    """
    cols = len(a[0]) if a else 0
    if cols == 0:
        return []
    h, c = column_echelon(a)
    rank = len(_pivots_of_echelon(h))
    return [[c[i][j] for i in range(cols)] for j in range(rank, cols)]


def smith_normal_form(a: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    """(D, U, V) with D = U A V diagonal, d1 | d2 | ..., U and V unimodular."""
    d = copy_matrix(a)
    rows = len(d)
    cols = len(d[0]) if d else 0
    u = identity_matrix(rows)
    v = identity_matrix(cols)

    def row_axpy(dst: int, src: int, t: int) -> None:
        for j in range(cols):
            d[dst][j] -= t * d[src][j]
        for j in range(rows):
            u[dst][j] -= t * u[src][j]

    def col_axpy(dst: int, src: int, t: int) -> None:
        for i in range(rows):
            d[i][dst] -= t * d[i][src]
        for i in range(cols):
            v[i][dst] -= t * v[i][src]

    def row_swap(i: int, j: int) -> None:
        if i != j:
            d[i], d[j] = d[j], d[i]
            u[i], u[j] = u[j], u[i]

    def col_swap(i: int, j: int) -> None:
        if i == j:
            return
        for r in range(rows):
            d[r][i], d[r][j] = d[r][j], d[r][i]
        for r in range(cols):
            v[r][i], v[r][j] = v[r][j], v[r][i]

    def row_negate(i: int) -> None:
        for j in range(cols):
            d[i][j] = -d[i][j]
        for j in range(rows):
            u[i][j] = -u[i][j]

    t = 0
    while True:
        entries = [
            (i, j) for i in range(t, rows) for j in range(t, cols) if d[i][j] != 0
        ]
        if not entries:
            break
        while True:
            i, j = min(entries, key=lambda ij: abs(d[ij[0]][ij[1]]))
            row_swap(t, i)
            col_swap(t, j)
            p = d[t][t]
            dirty = False
            for r in range(t + 1, rows):
                if d[r][t] != 0:
                    row_axpy(r, t, d[r][t] // p)
                    if d[r][t] != 0:
                        dirty = True
            for cc in range(t + 1, cols):
                if d[t][cc] != 0:
                    col_axpy(cc, t, d[t][cc] // p)
                    if d[t][cc] != 0:
                        dirty = True
            if not dirty and all(d[r][t] == 0 for r in range(t + 1, rows)) and all(
                d[t][cc] == 0 for cc in range(t + 1, cols)
            ):
                # pivot cleared; enforce the divisibility chain
                p = d[t][t]
                offender = next(
                    (
                        (r, cc)
                        for r in range(t + 1, rows)
                        for cc in range(t + 1, cols)
                        if d[r][cc] % p != 0
                    ),
                    None,
                )
                if offender is None:
                    break
                row_axpy(t, offender[0], -1)  # add the offending row onto row t
            entries = [
                (i, j) for i in range(t, rows) for j in range(t, cols) if d[i][j] != 0
            ]
        if d[t][t] < 0:
            row_negate(t)
        t += 1
        if t >= min(rows, cols):
            break
    return d, u, v
