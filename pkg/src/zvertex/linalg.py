"""Exact dense linear algebra over the integers and rationals.

Certification demands unconditional arithmetic, so matrices are plain
nested lists of ints/Fractions and nothing here ever rounds: a routine
returns an exact answer or raises.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

IntMatrix = list[list[int]]
FracMatrix = list[list[Fraction]]


def identity(n: int) -> IntMatrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(rows: Sequence[Sequence]) -> list[list]:
    return [list(col) for col in zip(*rows)] if rows else []


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def mat_vec(a: Sequence[Sequence], v: Sequence) -> list:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def frac_rows(rows: Iterable[Sequence]) -> FracMatrix:
    return [[Fraction(x) for x in row] for row in rows]


def inverse(rows: Sequence[Sequence]) -> FracMatrix:
    """Exact inverse by Gauss-Jordan elimination; raises on singular input."""
    n = len(rows)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
           for i, row in enumerate(rows)]
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        aug[col], aug[piv] = aug[piv], aug[col]
        fac = aug[col][col]
        aug[col] = [x / fac for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def det(rows: Sequence[Sequence]) -> Fraction:
    n = len(rows)
    a = [[Fraction(x) for x in row] for row in rows]
    result = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            result = -result
        result *= a[col][col]
        inv = 1 / a[col][col]
        for r in range(col + 1, n):
            if a[r][col] != 0:
                f = a[r][col] * inv
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return result


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = gcd(a,b) >= 0 and x*a + y*b = g."""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return g, x, y


def _leading(vec: Sequence[int]) -> int | None:
    for j, x in enumerate(vec):
        if x != 0:
            return j
    return None


def hnf(rows: Iterable[Sequence[int]]) -> IntMatrix:
    """Canonical row Hermite normal form of the integer row span.

    Zero rows are dropped; pivots are positive with pivot columns strictly
    increasing, and entries above each pivot are reduced into [0, pivot).
    The result depends only on the ZZ-row-span of the input.
    """
    basis: list[list[int]] = []
    pivot_of: dict[int, int] = {}
    for vec0 in rows:
        vec = list(vec0)
        while True:
            j = _leading(vec)
            if j is None:
                break
            if j not in pivot_of:
                if vec[j] < 0:
                    vec = [-x for x in vec]
                pivot_of[j] = len(basis)
                basis.append(vec)
                break
            row = basis[pivot_of[j]]
            a, b = row[j], vec[j]
            if b % a == 0:
                q = b // a
                vec = [x - q * y for x, y in zip(vec, row)]
            else:
                g, x, y = xgcd(a, b)
                new_row = [x * r + y * v for r, v in zip(row, vec)]
                vec = [(-(b // g)) * r + (a // g) * v for r, v in zip(row, vec)]
                basis[pivot_of[j]] = new_row
    order = sorted(range(len(basis)), key=lambda i: _leading(basis[i]))
    basis = [basis[i] for i in order]
    # reduce entries above each pivot into [0, pivot); walking the reducers in
    # increasing pivot order keeps earlier canonical entries intact because a
    # later reducer row is zero left of its own pivot
    for r in range(len(basis)):
        for j in range(r + 1, len(basis)):
            p = _leading(basis[j])
            q = basis[r][p] // basis[j][p]
            if q != 0:
                basis[r] = [x - q * y for x, y in zip(basis[r], basis[j])]
    return basis


def snf(a: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form: returns (U, D, V) with U*A*V = D.

    U and V are unimodular; D is diagonal with non-negative entries
    satisfying the divisibility chain d1 | d2 | ... .
    """
    m = len(a)
    n = len(a[0]) if m else 0
    d = [list(row) for row in a]
    u = identity(m)
    v = identity(n)

    def row_op(i: int, k: int, x: int, y: int, xx: int, yy: int) -> None:
        d[i], d[k] = [x * p + y * q for p, q in zip(d[i], d[k])], \
                     [xx * p + yy * q for p, q in zip(d[i], d[k])]
        u[i], u[k] = [x * p + y * q for p, q in zip(u[i], u[k])], \
                     [xx * p + yy * q for p, q in zip(u[i], u[k])]

    def col_op(j: int, k: int, x: int, y: int, xx: int, yy: int) -> None:
        for row in d:
            row[j], row[k] = x * row[j] + y * row[k], xx * row[j] + yy * row[k]
        for row in v:
            row[j], row[k] = x * row[j] + y * row[k], xx * row[j] + yy * row[k]

    t = 0
    while t < min(m, n):
        piv = next(((i, j) for i in range(t, m) for j in range(t, n)
                    if d[i][j] != 0), None)
        if piv is None:
            break
        i0, j0 = piv
        if i0 != t:
            row_op(t, i0, 0, 1, 1, 0)
        if j0 != t:
            col_op(t, j0, 0, 1, 1, 0)
        while True:
            changed = False
            for i in range(t + 1, m):
                if d[i][t] != 0:
                    g, x, y = xgcd(d[t][t], d[i][t])
                    row_op(t, i, x, y, -(d[i][t] // g), d[t][t] // g)
                    changed = True
            for j in range(t + 1, n):
                if d[t][j] != 0:
                    g, x, y = xgcd(d[t][t], d[t][j])
                    col_op(t, j, x, y, -(d[t][j] // g), d[t][t] // g)
                    changed = True
            if changed:
                continue
            # enforce divisibility of the remaining block by the pivot
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if d[i][j] % d[t][t] != 0), None)
            if bad is None:
                break
            row_op(t, bad[0], 1, 1, 0, 1)
        t += 1
    for i in range(min(m, n)):
        if d[i][i] < 0:
            d[i] = [-x for x in d[i]]
            u[i] = [-x for x in u[i]]
    return u, d, v


def rref(rows: Iterable[Sequence]) -> tuple[FracMatrix, list[int]]:
    """Reduced row echelon form over QQ; returns (matrix, pivot columns)."""
    a = frac_rows(rows)
    if not a:
        return [], []
    n = len(a[0])
    pivots: list[int] = []
    r = 0
    for col in range(n):
        piv = next((i for i in range(r, len(a)) if a[i][col] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        fac = a[r][col]
        a[r] = [x / fac for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][col] != 0:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(col)
        r += 1
        if r == len(a):
            break
    return a[:r], pivots


def nullspace(rows: Iterable[Sequence]) -> FracMatrix:
    """Basis of the right nullspace {x : A x = 0} over QQ."""
    a = frac_rows(rows)
    if not a:
        return []
    n = len(a[0])
    red, pivots = rref(a)
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for f in free:
        vec = [Fraction(0)] * n
        vec[f] = Fraction(1)
        for r, p in enumerate(pivots):
            vec[p] = -red[r][f]
        basis.append(vec)
    return basis


def rank(rows: Iterable[Sequence]) -> int:
    return len(rref(rows)[0])


def in_row_space(rows: Iterable[Sequence], vec: Sequence) -> bool:
    """Whether vec lies in the QQ-row-space of rows."""
    base = frac_rows(rows)
    return rank(base + [list(map(Fraction, vec))]) == rank(base)
