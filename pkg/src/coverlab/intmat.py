"""Integer matrix normal forms over Python ints (no overflow, no floats).

Matrices are plain lists of row lists.  Both normal forms return the
unimodular transforms alongside the canonical matrix so callers can map
coordinates back and forth.
"""

from __future__ import annotations

from typing import Sequence

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    if not a:
        return []
    cols = len(b[0]) if b else 0
    return [
        [sum(row[k] * b[k][j] for k in range(len(b))) for j in range(cols)]
        for row in a
    ]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``x*a + y*b == g == gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def determinant(m: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(m)
    if n == 0:
        return 1
    a = [list(row) for row in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _swap_rows(a: Matrix, i: int, j: int) -> None:
    a[i], a[j] = a[j], a[i]


def _swap_cols(a: Matrix, i: int, j: int) -> None:
    for row in a:
        row[i], row[j] = row[j], row[i]


def _add_row(a: Matrix, dst: int, src: int, factor: int) -> None:
    # row[dst] += factor * row[src]
    rs, rd = a[src], a[dst]
    for k in range(len(rd)):
        rd[k] += factor * rs[k]


def _add_col(a: Matrix, dst: int, src: int, factor: int) -> None:
    for row in a:
        row[dst] += factor * row[src]


def smith_normal_form(m: Sequence[Sequence[int]], ncols: int | None = None) -> tuple[Matrix, Matrix, Matrix]:
    """Return ``(U, D, V)`` with ``U @ M @ V == D``.

    ``D`` has the shape of ``M``; its diagonal is non-negative and each
    nonzero diagonal entry divides the next.  ``U`` and ``V`` are
    unimodular.  ``ncols`` is only needed when ``M`` has no rows.
    """
    a = [[int(x) for x in row] for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else (ncols or 0)
    u, v = identity(rows), identity(cols)

    for t in range(min(rows, cols)):
        while True:
            pivot = None
            for i in range(t, rows):
                for j in range(t, cols):
                    if a[i][j] and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                return u, a, v
            _swap_rows(a, t, pivot[0])
            _swap_rows(u, t, pivot[0])
            _swap_cols(a, t, pivot[1])
            _swap_cols(v, t, pivot[1])
            p = a[t][t]

            clean = True
            for i in range(t + 1, rows):
                q = a[i][t] // p
                if q:
                    _add_row(a, i, t, -q)
                    _add_row(u, i, t, -q)
                clean = clean and a[i][t] == 0
            for j in range(t + 1, cols):
                q = a[t][j] // p
                if q:
                    _add_col(a, j, t, -q)
                    _add_col(v, j, t, -q)
                clean = clean and a[t][j] == 0
            if not clean:
                continue

            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            _add_row(a, t, bad, 1)
            _add_row(u, t, bad, 1)

        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
    return u, a, v


def invariant_factors(m: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero diagonal of the Smith form of ``m``."""
    _, d, _ = smith_normal_form(m)
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0)) if d[i][i]]


def hermite_normal_form(m: Sequence[Sequence[int]], ncols: int | None = None) -> tuple[Matrix, Matrix]:
    """Row-style Hermite normal form.

    Returns ``(H, U)`` where ``U`` is unimodular and ``U @ M`` equals ``H``
    padded with zero rows.  ``H`` holds only the nonzero rows: echelon
    form, positive pivots, entries above each pivot reduced into
    ``[0, pivot)``.
    """
    a = [[int(x) for x in row] for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else (ncols or 0)
    u = identity(rows)
    r = 0
    for c in range(cols):
        if r == rows:
            break
        for i in range(r + 1, rows):
            if a[i][c] == 0:
                continue
            x, y = a[r][c], a[i][c]
            g, s, t = xgcd(x, y)
            xg, yg = x // g, y // g
            for mat in (a, u):
                top, low = mat[r], mat[i]
                mat[r] = [s * p + t * q for p, q in zip(top, low)]
                mat[i] = [-yg * p + xg * q for p, q in zip(top, low)]
        if a[r][c] == 0:
            continue
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
            u[r] = [-x for x in u[r]]
        p = a[r][c]
        for i in range(r):
            q = a[i][c] // p
            if q:
                _add_row(a, i, r, -q)
                _add_row(u, i, r, -q)
        r += 1
    return a[:r], u
