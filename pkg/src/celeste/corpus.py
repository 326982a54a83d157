"""A small library of named fans, germs and towers used by tests and demos."""

from __future__ import annotations

from itertools import combinations, product

from .fan import Fan, star_subdivide
from .models import QUADRANT, NewtonPolygon, ResolutionTower


def projective_line():
    return Fan(1, [(1,), (-1,)], [[(1,)], [(-1,)]])


def projective_plane():
    return Fan(2, [(1, 0), (0, 1), (-1, -1)],
               [[(1, 0), (0, 1)], [(0, 1), (-1, -1)], [(-1, -1), (1, 0)]])


def hirzebruch(a):
    """F_a; F_0 is P^1 x P^1."""
    rays = [(1, 0), (0, 1), (-1, a), (0, -1)]
    return Fan(2, rays, [[rays[i], rays[(i + 1) % 4]] for i in range(4)])


def p1_times_p1():
    return hirzebruch(0)


def blowup_plane():
    return star_subdivide(projective_plane(), (1, 1))[0]


def projective_space3():
    rays = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1)]
    return Fan(3, rays, [list(c) for c in combinations(rays, 3)])


def plane_times_line():
    p2 = projective_plane()
    cones = []
    for c in p2.max_cones:
        for z in (1, -1):
            cones.append([r + (0,) for r in c] + [(0, 0, z)])
    return Fan(3, [r + (0,) for r in p2.rays] + [(0, 0, 1), (0, 0, -1)], cones)


def p1_cubed():
    cones = []
    for signs in product((1, -1), repeat=3):
        cones.append([tuple(s if j == i else 0 for j in range(3))
                      for i, s in enumerate(signs)])
    return Fan(3, [r for c in cones for r in c], cones)


def blowup_space3():
    return star_subdivide(projective_space3(), (1, 1, 1))[0]


def weighted_plane_112():
    """P(1,1,2); the cone {(1,0),(-1,-2)} has index 2."""
    return Fan(2, [(1, 0), (0, 1), (-1, -2)],
               [[(1, 0), (0, 1)], [(0, 1), (-1, -2)], [(-1, -2), (1, 0)]])


SMOOTH_COMPLETE = {
    "P1": projective_line,
    "P2": projective_plane,
    "P1xP1": p1_times_p1,
    "Bl_pt P2": blowup_plane,
    "F1": lambda: hirzebruch(1),
    "F2": lambda: hirzebruch(2),
    "F3": lambda: hirzebruch(3),
    "P3": projective_space3,
    "P2xP1": plane_times_line,
    "P1xP1xP1": p1_cubed,
    "Bl_pt P3": blowup_space3,
}


def smooth_complete_fans():
    """``{name: Fan}`` for every smooth complete fan of the corpus."""
    return {name: make() for name, make in SMOOTH_COMPLETE.items()}


# germs of plane curves at the origin, by Newton polygon exponents
CUSP = NewtonPolygon(((3, 0), (0, 2)))
SMOOTH_GERM = NewtonPolygon(((1, 0),))
NODE = NewtonPolygon(((1, 1),))


def cusp_tower():
    """Quadrant blown up at (1,1), (1,2), (2,3): the minimal log resolution of the cusp."""
    return ResolutionTower.build(QUADRANT, [(1, 1), (1, 2), (2, 3)])
