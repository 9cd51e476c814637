"""Exact linear algebra over Z and Q.

Everything here is fraction-free where it matters: determinants use the
one-step Bareiss scheme (all intermediate divisions are exact), ranks are
computed on denominator-cleared integer rows with cross-multiplication
updates.  No floats anywhere.
"""

from fractions import Fraction
from math import gcd


def bareiss_determinant(rows):
    """Determinant of a square matrix of ints/Fractions (Bareiss).

    Rows are scaled integral first, so all intermediate divisions are
    exact integer divisions; the scaling is divided back out at the end.
    Returns an int when the result is integral, else a Fraction.
    """
    n = len(rows)
    for row in rows:
        if len(row) != n:
            raise ValueError("matrix is not square")
    if n == 0:
        return 1
    a = []
    scale = 1
    for row in rows:
        fr = [Fraction(x) for x in row]
        s = 1
        for v in fr:
            s = s * v.denominator // gcd(s, v.denominator)
        a.append([int(v * s) for v in fr])
        scale *= s
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if pivot is None:
                return 0
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                # exact by Sylvester's identity
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    det = Fraction(sign * a[n - 1][n - 1], scale)
    return int(det) if det.denominator == 1 else det


def _integer_rows(rows):
    """Scale each row by the lcm of its denominators, then divide out the gcd."""
    out = []
    for row in rows:
        fr = [Fraction(x) for x in row]
        scale = 1
        for x in fr:
            d = x.denominator
            scale = scale * d // gcd(scale, d)
        ints = [int(x * scale) for x in fr]
        g = 0
        for x in ints:
            g = gcd(g, x)
        if g > 1:
            ints = [x // g for x in ints]
        out.append(ints)
    return out


def rank(rows):
    """Rank over Q of a matrix with int/Fraction entries."""
    m = _integer_rows(rows)
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][col] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        p = m[r][col]
        for i in range(r + 1, len(m)):
            f = m[i][col]
            if f:
                new = [p * x - f * y for x, y in zip(m[i], m[r])]
                g = 0
                for x in new:
                    g = gcd(g, x)
                if g > 1:
                    new = [x // g for x in new]
                m[i] = new
        r += 1
        if r == len(m):
            break
    return r


def nullspace(rows):
    """Primitive integer basis of {x : A.x = 0} for an int/Fraction matrix A.

    Returned vectors are tuples of ints with content 1 and first nonzero
    entry positive, listed in order of their free column.
    """
    a = [[Fraction(x) for x in row] for row in rows]
    if not a:
        return []
    ncols = len(a[0])
    pivots = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(a)) if a[i][col] != 0), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv = 1 / a[r][col]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][col]:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(col)
        r += 1
        if r == len(a):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -a[i][fc]
        scale = 1
        for x in v:
            d = x.denominator
            scale = scale * d // gcd(scale, d)
        ints = [int(x * scale) for x in v]
        g = 0
        for x in ints:
            g = gcd(g, x)
        if g > 1:
            ints = [x // g for x in ints]
        lead = next(x for x in ints if x != 0)
        if lead < 0:
            ints = [-x for x in ints]
        basis.append(tuple(ints))
    return basis


def left_nullspace(rows):
    """Primitive integer basis of {v : v.A = 0} (nullspace of the transpose)."""
    if not rows:
        return []
    transpose = [list(col) for col in zip(*rows)]
    return nullspace(transpose)
