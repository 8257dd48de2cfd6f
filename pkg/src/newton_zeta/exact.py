"""Exact integer and rational linear algebra.

Matrices are plain lists of row lists holding Python ints (or Fractions
where noted). Nothing here ever rounds.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence

Matrix = list  # list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(r: int, c: int) -> Matrix:
    return [[0] * c for _ in range(r)]


def transpose(m: Matrix, ncols: int | None = None) -> Matrix:
    if not m:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*m)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    bt = transpose(b)
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def matvec(a: Matrix, v: Sequence) -> list:
    return [sum(x * y for x, y in zip(row, v)) for row in a]


def columns_to_matrix(cols: Sequence[Sequence[int]], nrows: int) -> Matrix:
    """Stack vectors as the columns of an nrows x len(cols) matrix."""
    return [[c[i] for c in cols] for i in range(nrows)]


def shape(m: Matrix) -> tuple[int, int]:
    return len(m), (len(m[0]) if m else 0)


def gcd_list(xs: Iterable[int]) -> int:
    g = 0
    for x in xs:
        g = gcd(g, x)
    return g


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b if a and b else 0


def lcm_list(xs: Iterable[int]) -> int:
    out = 1
    for x in xs:
        out = lcm(out, x)
    return out


def primitive(v: Sequence) -> tuple[int, ...]:
    """Scale a nonzero rational vector to the primitive integer vector on its ray."""
    fr = [Fraction(x) for x in v]
    den = lcm_list(x.denominator for x in fr)
    ints = [int(x * den) for x in fr]
    g = gcd_list(ints)
    if g == 0:
        raise ValueError("zero vector has no primitive representative")
    return tuple(x // g for x in ints)


# ---------------------------------------------------------------- Hermite


def hnf(m: Matrix) -> tuple[Matrix, Matrix]:
    """Column Hermite normal form.

    Returns (h, u) with h = m*u, u unimodular, h lower-triangular in
    staircase form: each pivot is positive and the entries of its row to the
    left of the pivot lie in [0, pivot). Zero columns are pushed right.
    """
    rows, cols = shape(m)
    h = [list(r) for r in m]
    u = identity(cols)

    def colop(i: int, j: int, a: int, b: int, c: int, d: int) -> None:
        # (col_i, col_j) <- (a col_i + b col_j, c col_i + d col_j)
        for mat in (h, u):
            for r in mat:
                x, y = r[i], r[j]
                r[i] = a * x + b * y
                r[j] = c * x + d * y

    def swap(i: int, j: int) -> None:
        for mat in (h, u):
            for r in mat:
                r[i], r[j] = r[j], r[i]

    def negate(i: int) -> None:
        for mat in (h, u):
            for r in mat:
                r[i] = -r[i]

    piv = 0
    for r in range(rows):
        if piv >= cols:
            break
        # gcd-combine row r across columns piv.. into column piv
        for j in range(piv + 1, cols):
            b = h[r][j]
            if b == 0:
                continue
            a = h[r][piv]
            if a and b % a == 0:
                colop(piv, j, 1, 0, -(b // a), 1)
                continue
            g, x, y = _xgcd(a, b)
            # new piv col = x*a_col + y*b_col (value g); new j col kills entry
            colop(piv, j, x, y, -b // g, a // g)
        if h[r][piv] == 0:
            continue
        if h[r][piv] < 0:
            negate(piv)
        p = h[r][piv]
        for j in range(piv):
            q = h[r][j] // p
            if q:
                colop(j, piv, 1, -q, 0, 1)
        piv += 1
    return h, u


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with g = x*a + y*b = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


# ---------------------------------------------------------------- Smith


def snf(m: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    """Smith normal form: returns (s, p, q) with p*m*q = s diagonal, d1 | d2 | ..."""
    rows, cols = shape(m)
    s = [list(r) for r in m]
    p = identity(rows)
    q = identity(cols)

    def rowop(i, j, a, b, c, d):
        for mat in (s, p):
            ri, rj = mat[i], mat[j]
            mat[i] = [a * x + b * y for x, y in zip(ri, rj)]
            mat[j] = [c * x + d * y for x, y in zip(ri, rj)]

    def colop(i, j, a, b, c, d):
        for mat in (s, q):
            for r in mat:
                x, y = r[i], r[j]
                r[i] = a * x + b * y
                r[j] = c * x + d * y

    t = 0
    while t < min(rows, cols):
        # pivot: smallest nonzero magnitude in the remaining block
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                v = s[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        _, i, j = best
        if i != t:
            rowop(t, i, 0, 1, 1, 0)
        if j != t:
            colop(t, j, 0, 1, 1, 0)
        done = False
        while not done:
            done = True
            for i in range(t + 1, rows):
                b = s[i][t]
                if b:
                    a = s[t][t]
                    if b % a == 0:
                        rowop(t, i, 1, 0, -(b // a), 1)
                        continue
                    g, x, y = _xgcd(a, b)
                    rowop(t, i, x, y, -b // g, a // g)
                    done = False
            for j in range(t + 1, cols):
                b = s[t][j]
                if b:
                    a = s[t][t]
                    if b % a == 0:
                        colop(t, j, 1, 0, -(b // a), 1)
                        continue
                    g, x, y = _xgcd(a, b)
                    colop(t, j, x, y, -b // g, a // g)
                    done = False
            if done:
                d = s[t][t]
                bad = None
                for i in range(t + 1, rows):
                    for j in range(t + 1, cols):
                        if s[i][j] % d:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is not None:
                    # fold the offending row into the pivot row and redo
                    rowop(t, bad, 1, 1, 0, 1)
                    done = False
        if s[t][t] < 0:
            _negate_row(s, p, t)
        t += 1
    return s, p, q


def _negate_row(s: Matrix, p: Matrix, t: int) -> None:
    s[t] = [-x for x in s[t]]
    p[t] = [-x for x in p[t]]


def invariant_factors(m: Matrix) -> list[int]:
    s, _, _ = snf(m)
    rows, cols = shape(m)
    return [s[i][i] for i in range(min(rows, cols)) if s[i][i]]


# ---------------------------------------------------------------- rational


def det_int(m: Sequence[Sequence[int]]) -> int:
    """Integer determinant; Bareiss divisions are exact."""
    n = len(m)
    a = [[int(x) for x in r] for r in m]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


def det(m: Matrix) -> Fraction:
    """Determinant by fraction-free Bareiss elimination."""
    n = len(m)
    if n == 0:
        return Fraction(1)
    a = [[Fraction(x) for x in r] for r in m]
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def rref(m: Matrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over Q; returns (matrix, pivot columns)."""
    a = [[Fraction(x) for x in r] for r in m]
    rows, cols = shape(a)
    pivots = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        k = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if k is None:
            continue
        a[r], a[k] = a[k], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def rank(vectors: Sequence[Sequence]) -> int:
    if not vectors:
        return 0
    return len(rref([list(v) for v in vectors])[1])


def solve_rational(m: Matrix, b: Sequence) -> tuple[Optional[list[Fraction]], list[list[Fraction]]]:
    """Solve m x = b over Q.

    Returns (x, kernel) where x is a particular solution (free variables
    set to zero) or None when the system is inconsistent, and kernel is a
    basis of the null space of m.
    """
    rows, cols = shape(m)
    if rows == 0:
        return [Fraction(0)] * cols, [[Fraction(int(i == j)) for i in range(cols)] for j in range(cols)]
    aug = [list(r) + [b[i]] for i, r in enumerate(m)]
    red, pivots = rref(aug)
    if cols in pivots:
        x = None
    else:
        x = [Fraction(0)] * cols
        for i, c in enumerate(pivots):
            x[c] = red[i][cols]
    free = [c for c in range(cols) if c not in pivots]
    kernel = []
    for fc in free:
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        for i, c in enumerate(pivots):
            if c < cols:
                v[c] = -red[i][fc]
        kernel.append(v)
    return x, kernel


def express(basis: Sequence[Sequence], v: Sequence) -> Optional[list[Fraction]]:
    """Coordinates of v in the (independent) vectors `basis`, or None."""
    if not basis:
        return [] if all(x == 0 for x in v) else None
    m = columns_to_matrix(basis, len(v))
    x, _ = solve_rational(m, v)
    return x


def inverse(m: Matrix) -> list[list[Fraction]]:
    n = len(m)
    aug = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(m)]
    red, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [r[n:] for r in red]


def int_inverse(m: Matrix) -> Matrix:
    """Inverse of a unimodular integer matrix."""
    inv = inverse(m)
    out = []
    for r in inv:
        if any(x.denominator != 1 for x in r):
            raise ValueError("matrix is not unimodular")
        out.append([int(x) for x in r])
    return out


# ---------------------------------------------------------------- lattices


def saturated_basis(vectors: Sequence[Sequence[int]], n: int) -> list[tuple[int, ...]]:
    """Z-basis of Span_R(vectors) intersected with Z^n."""
    vecs = [list(v) for v in vectors if any(v)]
    if not vecs:
        return []
    m = columns_to_matrix(vecs, n)
    s, p, _ = snf(m)
    r = sum(1 for i in range(min(len(s), len(s[0]))) if s[i][i])
    pinv = int_inverse(p)
    return [tuple(pinv[i][j] for i in range(n)) for j in range(r)]


def lattice_index(gens: Sequence[Sequence[int]], n: int) -> int:
    """Index of the lattice spanned by gens inside its saturation."""
    vecs = [list(v) for v in gens]
    if not vecs:
        return 1
    prod = 1
    for d in invariant_factors(columns_to_matrix(vecs, n)):
        prod *= abs(d)
    return prod


def integer_kernel(row_matrix: Matrix) -> list[tuple[int, ...]]:
    """Z-basis of {x in Z^c : row_matrix x = 0}."""
    rows, cols = shape(row_matrix)
    if rows == 0:
        return [tuple(int(i == j) for i in range(cols)) for j in range(cols)]
    h, u = hnf(row_matrix)
    out = []
    for j in range(cols):
        if all(h[i][j] == 0 for i in range(rows)):
            out.append(tuple(u[i][j] for i in range(cols)))
    return out


def frac_part(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)
