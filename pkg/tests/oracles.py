"""Brute-force reference computations that share no code with the package.

Everything here uses plain ``Fraction`` arithmetic on explicit vectors and
evaluates rational functions of m at sample points only.
"""

from fractions import Fraction
from itertools import combinations
from math import atan2, gcd


def solve(rows, rhs):
    """Gauss-Jordan on a square rational system; None if singular."""
    n = len(rows)
    a = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]


def coords_in_cone(cone, v):
    """Coefficients of v in the full-dimensional simplicial ``cone``, or None."""
    n = len(v)
    cols = list(cone)
    rows = [[cols[j][i] for j in range(n)] for i in range(n)]
    return solve(rows, v)


def base_coordinates(max_cones, v):
    """(cone rays, coeffs) over the first maximal cone with v in it."""
    for cone in max_cones:
        c = coords_in_cone(cone, v)
        if c is not None and all(x >= 0 for x in c):
            return cone, c
    raise ValueError(f"{v} outside the fan")


# -- global degree over a smooth complete toric model ---------------------

def one_plus_m(base_max_cones, base_coeffs, v):
    """1 + m_v for a ray of a tower over a smooth base: sum of c_rho (1 + d_rho)."""
    cone, c = base_coordinates(base_max_cones, v)
    return sum((ci * (1 + Fraction(base_coeffs.get(tuple(r), 0))) for r, ci in zip(cone, c)),
               Fraction(0))


def ambient_degree(top_max_cones, weights):
    """Degree of the integral over the whole space on a smooth complete model.

    Each torus-fixed point (maximal cone) tau is the unique point of the
    open stratum of the atoms it meets, so the degree is the sum over
    tau of prod_{r in tau, r in J} 1/(1 + m_r).  ``weights`` maps a ray
    in J to 1 + m_r.
    """
    total = Fraction(0)
    for tau in top_max_cones:
        w = Fraction(1)
        for r in tau:
            if r in weights:
                w /= weights[r]
        total += w
    return total


def set_degree(top_max_cones, weights, set_rays):
    """Same as ambient_degree, but only fixed points on the given divisors count.

    The open strata E_I with I meeting the set contribute; a fixed point
    tau lies in E_I for I = tau & J.
    """
    total = Fraction(0)
    for tau in top_max_cones:
        inter = [r for r in tau if r in weights]
        if not set(inter) & set(set_rays):
            continue
        w = Fraction(1)
        for r in inter:
            w /= weights[r]
        total += w
    return total


# -- bridge -----------------------------------------------------------------

def open_stratum_points(max_cones, E, I):
    """Number of fixed points of V(I) lying on no divisor of E outside I."""
    return sum(1 for t in max_cones if set(I) <= set(t) and set(t) & set(E) == set(I))


def all_cones(max_cones):
    out = {()}
    for c in max_cones:
        for k in range(1, len(c) + 1):
            out.update(tuple(sorted(s)) for s in combinations(c, k))
    return out


# -- plane curve germs --------------------------------------------------------

def newton_order(exponents, v):
    return min(v[0] * a + v[1] * b for a, b in exponents)


def face_length(exponents, v):
    n = newton_order(exponents, v)
    pts = [e for e in exponents if v[0] * e[0] + v[1] * e[1] == n]
    if len(pts) < 2:
        return 0
    # lattice length of the segment between the extreme points
    pts.sort()
    (a, b), (c, d) = pts[0], pts[-1]
    return gcd(abs(c - a), abs(d - b))


def germ_zeta(rays, exponents, m):
    """Local zeta function of a germ on a smooth quadrant subdivision, at m.

    ``rays`` are the rays of the subdivided quadrant.  They are ordered by
    angle, consecutive rays span the 2-cones, and the interior rays are the
    exceptional curves, each a P^1 meeting its two neighbours.  The strict
    transform meets E_v in ``face_length`` points.  Every stratum in the
    fiber over the origin contributes chi / prod(N_i m + nu_i).
    """
    m = Fraction(m)
    rs = sorted(rays, key=lambda r: -atan2(r[1], r[0]))
    N = {r: newton_order(exponents, r) for r in rs}
    nu = {r: r[0] + r[1] for r in rs}
    w = {r: N[r] * m + nu[r] for r in rs}
    exc = [r for r in rs if r not in ((1, 0), (0, 1))]
    in_j = {r for r in rs if r in exc or N[r] > 0}
    total = Fraction(0)
    for k, r in enumerate(rs):
        if r not in exc:
            continue
        neighbours = [rs[k - 1], rs[k + 1]]
        length = face_length(exponents, r)
        chi = 2 - sum(1 for s in neighbours if s in in_j) - length
        total += Fraction(chi) / w[r]
        total += Fraction(length) / (w[r] * (m + 1))
    for a, b in zip(rs, rs[1:]):
        if a in in_j and b in in_j and (a in exc or b in exc):
            total += 1 / (w[a] * w[b])
    return total


def cusp_zeta_closed_form(m):
    m = Fraction(m)
    return (4 * m + 5) / ((m + 1) * (6 * m + 5))
