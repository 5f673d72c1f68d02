"""Integer lattice utilities: Smith and Hermite normal forms, kernels mod N.

Matrices are lists of lists of Python ints.  Sizes here are tiny (d <= 4ish),
so the plain pivoting algorithms are more than enough.
"""

from __future__ import annotations

from math import gcd


def _identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def smith_normal_form(a) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Return (d, u, v) with u @ a @ v == d diagonal and u, v unimodular.

    Diagonal entries are nonnegative and each divides the next.
    """
    d = [list(row) for row in a]
    m = len(d)
    n = len(d[0]) if m else 0
    u = _identity(m)
    v = _identity(n)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, c):
        # row_dst += c * row_src
        for k in range(n):
            d[dst][k] += c * d[src][k]
        for k in range(m):
            u[dst][k] += c * u[src][k]

    def add_col(dst, src, c):
        for row in d:
            row[dst] += c * row[src]
        for row in v:
            row[dst] += c * row[src]

    def negate_row(i):
        d[i] = [-x for x in d[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    while t < min(m, n):
        # find a nonzero pivot of minimal absolute value
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = d[i][j]
                if x != 0 and (best is None or abs(x) < abs(d[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        dirty = False
        for i in range(t + 1, m):
            if d[i][t]:
                q = d[i][t] // d[t][t]
                add_row(i, t, -q)
                if d[i][t]:
                    dirty = True
        for j in range(t + 1, n):
            if d[t][j]:
                q = d[t][j] // d[t][t]
                add_col(j, t, -q)
                if d[t][j]:
                    dirty = True
        if dirty:
            continue
        # enforce divisibility of the remaining block by the pivot
        p = d[t][t]
        culprit = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if d[i][j] % p:
                    culprit = i
                    break
            if culprit is not None:
                break
        if culprit is not None:
            add_row(t, culprit, 1)
            continue
        if p < 0:
            negate_row(t)
        t += 1
    return d, u, v


def hermite_normal_form(rows) -> list[list[int]]:
    """Row-style HNF of the lattice spanned by ``rows``.

    Pivots are positive, entries below a pivot are zero, and entries above a
    pivot are reduced into [0, pivot).  The result is the canonical basis of
    the row lattice; zero rows are dropped.
    """
    h = [list(r) for r in rows]
    if not h:
        return []
    n = len(h[0])
    pivot_row = 0
    for col in range(n):
        # gcd out the column below pivot_row
        j = None
        for i in range(pivot_row, len(h)):
            if h[i][col]:
                j = i
                break
        if j is None:
            continue
        h[pivot_row], h[j] = h[j], h[pivot_row]
        for i in range(pivot_row + 1, len(h)):
            while h[i][col]:
                q = h[pivot_row][col] // h[i][col]
                h[pivot_row] = [a - q * b for a, b in zip(h[pivot_row], h[i])]
                h[pivot_row], h[i] = h[i], h[pivot_row]
        if h[pivot_row][col] < 0:
            h[pivot_row] = [-x for x in h[pivot_row]]
        for i in range(pivot_row):
            q = h[i][col] // h[pivot_row][col]
            if q:
                h[i] = [a - q * b for a, b in zip(h[i], h[pivot_row])]
        pivot_row += 1
        if pivot_row == len(h):
            break
    return [row for row in h[:pivot_row] if any(row)]


def smith_kernel_mod(a, n: int) -> list[list[int]]:
    """HNF basis of the full-rank lattice {x in Z^d : a @ x == 0 (mod n)}.

    With u a v = s in Smith form, write x = v y; the congruence becomes
    s_i y_i == 0 (mod n), i.e. y_i a multiple of n / gcd(s_i, n).
    """
    if n < 1:
        raise ValueError("modulus must be a positive integer")
    ncols = len(a[0]) if a else 0
    s, _, v = smith_normal_form(a)
    gens = []
    for i in range(ncols):
        s_i = s[i][i] if i < len(s) and i < len(s[i]) else 0
        mult = n // gcd(s_i, n)
        gens.append([mult * v[j][i] for j in range(ncols)])
    return hermite_normal_form(gens)


def in_lattice(basis: list[list[int]], x) -> bool:
    """Membership of ``x`` in the row lattice of an HNF ``basis``."""
    v = list(x)
    n = len(v)
    rows = list(basis)
    for row in rows:
        col = next(j for j in range(n) if row[j])
        if v[col] % row[col]:
            return False
        q = v[col] // row[col]
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    return all(x == 0 for x in v)
