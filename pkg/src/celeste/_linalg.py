"""Tiny exact linear algebra over Q for the rank <= 3 matrices of fans."""

from fractions import Fraction
from itertools import combinations
from math import gcd


def _rref(rows):
    """Row-reduce a list of rows of Fractions; returns (rref, pivot columns)."""
    a = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    ncols = len(a[0]) if a else 0
    for c in range(ncols):
        p = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        a[r] = [x / piv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == len(a):
            break
    return a, pivots


def rank(vectors):
    if not vectors:
        return 0
    return len(_rref(vectors)[1])


def solve_columns(columns, target):
    """Coefficients ``c`` with ``sum c_i columns[i] == target``, or None.

    The columns must be linearly independent; the solution is then unique.
    """
    n = len(target)
    k = len(columns)
    rows = [[columns[j][i] for j in range(k)] + [target[i]] for i in range(n)]
    red, piv = _rref(rows)
    if k in piv:
        return None
    if len(piv) < k:
        raise ValueError("columns are linearly dependent")
    sol = [Fraction(0)] * k
    for row, c in zip(red, piv):
        sol[c] = row[k]
    return sol


def solve_square(rows, rhs):
    """Unique solution of ``rows @ x == rhs`` for an invertible square system."""
    n = len(rows)
    red, piv = _rref([list(r) + [b] for r, b in zip(rows, rhs)])
    if piv != list(range(n)):
        raise ValueError("singular system")
    return [red[i][n] for i in range(n)]


def nullspace(columns):
    """Basis of {x : sum x_j columns[j] == 0} as lists of Fractions."""
    if not columns:
        return []
    n = len(columns[0])
    k = len(columns)
    rows = [[columns[j][i] for j in range(k)] for i in range(n)]
    red, piv = _rref(rows)
    free = [c for c in range(k) if c not in piv]
    basis = []
    for f in free:
        x = [Fraction(0)] * k
        x[f] = Fraction(1)
        for row, c in zip(red, piv):
            x[c] = -row[f]
        basis.append(x)
    return basis


def det(rows):
    n = len(rows)
    if n == 0:
        return Fraction(1)
    a = [[Fraction(x) for x in r] for r in rows]
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            d = -d
        d *= a[c][c]
        for i in range(c + 1, n):
            f = a[i][c] / a[c][c]
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return d


def lattice_index(vectors, dim):
    """Index of the sublattice spanned by ``vectors`` in its saturation.

    Equals the gcd of the maximal minors; 1 iff the vectors extend to a
    lattice basis.  Returns 0 for dependent vectors.
    """
    k = len(vectors)
    if k == 0:
        return 1
    g = 0
    for rows in combinations(range(dim), k):
        minor = det([[v[r] for v in vectors] for r in rows])
        g = gcd(g, abs(int(minor)))
    return g


def has_positive_kernel_vector(columns):
    """True iff some x with all x_j > 0 satisfies sum x_j columns[j] == 0.

    Uses conformal decomposition: the nonnegative kernel vectors are
    nonnegative combinations of sign-consistent circuits, so a strictly
    positive one exists iff those circuits cover every column.
    """
    k = len(columns)
    covered = set()
    for size in range(1, k + 1):
        for subset in combinations(range(k), size):
            cols = [columns[j] for j in subset]
            ker = nullspace(cols)
            if len(ker) != 1:
                continue
            x = ker[0]
            if all(v > 0 for v in x) or all(v < 0 for v in x):
                covered.update(subset)
        if len(covered) == k:
            return True
    return len(covered) == k
