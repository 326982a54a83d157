"""Simplicial fans in ranks 1-3 and their star subdivisions.

Rays are primitive integer tuples.  A cone is the sorted tuple of its ray
vectors, so a cone keeps its identity across the levels of a tower of
subdivisions (rays are never removed).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import gcd

from . import _linalg
from .errors import (NotComplete, OutsideSupport, RayExists, UnknownCone,
                     ZeroVector)

Ray = tuple
Cone = tuple  # sorted tuple of Ray


def primitive_vector(v):
    """Divide an integer vector by the gcd of its entries."""
    v = tuple(int(x) for x in v)
    g = 0
    for x in v:
        g = gcd(g, abs(x))
    if g == 0:
        raise ZeroVector(f"zero vector {v}")
    return tuple(x // g for x in v)


def is_primitive(v):
    g = 0
    for x in v:
        g = gcd(g, abs(x))
    return g == 1


def make_cone(rays):
    return tuple(sorted(tuple(r) for r in rays))


class Fan:
    """A fan given by its rays and maximal cones.

    Construction does not validate; call :func:`validate_fan` for a report.
    Instances are treated as immutable and compare by (rank, rays, cones).
    """

    def __init__(self, rank, rays, max_cones, *, declared_complete=None,
                 declared_smooth=None):
        self.rank = int(rank)
        self.rays = tuple(sorted(set(tuple(int(x) for x in r) for r in rays)))
        cones = set()
        for c in max_cones:
            c = make_cone(c)
            cones.add(c)
        self.max_cones = tuple(sorted(cones))
        self.declared_complete = declared_complete
        self.declared_smooth = declared_smooth
        self._key = (self.rank, self.rays, self.max_cones)
        self._hash = hash(self._key)

    @classmethod
    def from_indices(cls, rank, rays, cones, **flags):
        """Build from a ray list and cones given as 0-based ray indices."""
        rays = [tuple(int(x) for x in r) for r in rays]
        for c in cones:
            for i in c:
                if not 0 <= i < len(rays):
                    raise UnknownCone(f"ray index {i} out of range")
        return cls(rank, rays, [[rays[i] for i in c] for c in cones], **flags)

    def __eq__(self, other):
        return isinstance(other, Fan) and self._key == other._key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Fan(rank={self.rank}, rays={list(self.rays)}, max_cones={len(self.max_cones)})"

    # -- cones ------------------------------------------------------------
    @cached_property
    def cones(self):
        """All cones (faces of maximal cones), sorted by dimension then rays."""
        out = set()
        for c in self.max_cones:
            for k in range(len(c) + 1):
                out.update(combinations(c, k))
        return tuple(sorted(out, key=lambda c: (len(c), c)))

    @cached_property
    def _cone_set(self):
        return frozenset(self.cones)

    def has_cone(self, cone):
        return make_cone(cone) in self._cone_set

    def check_cone(self, cone):
        cone = make_cone(cone)
        if cone not in self._cone_set:
            raise UnknownCone(f"{cone} is not a cone of {self!r}")
        return cone

    def cones_of_dim(self, k):
        return tuple(c for c in self.cones if len(c) == k)

    def max_cones_containing(self, cone):
        s = set(cone)
        return tuple(c for c in self.max_cones if s.issubset(c))

    @cached_property
    def _neighbors(self):
        """ray -> set of rays spanning a 2-cone with it."""
        nb = {r: set() for r in self.rays}
        for c in self.max_cones:
            for a in c:
                nb[a].update(b for b in c if b != a)
        return nb

    @cached_property
    def is_simplicial(self):
        return all(_linalg.rank(list(c)) == len(c) for c in self.max_cones)

    @cached_property
    def is_smooth(self):
        return all(is_smooth_cone(self, c) for c in self.max_cones)

    @cached_property
    def is_complete(self):
        n = self.rank
        if not self.max_cones or any(len(c) != n for c in self.max_cones):
            return False
        count = {}
        for c in self.max_cones:
            for f in combinations(c, n - 1):
                count[f] = count.get(f, 0) + 1
        return all(v == 2 for v in count.values())

    def is_in_support(self, v):
        try:
            barycentric_coords(self, v)
        except OutsideSupport:
            return False
        return True


def is_smooth_cone(fan, cone):
    """True iff the rays of ``cone`` extend to a basis of the lattice."""
    cone = fan.check_cone(cone)
    return _linalg.lattice_index(list(cone), fan.rank) == 1


def barycentric_coords(fan, v):
    """Minimal cone containing ``v`` and the coefficients of ``v`` on its rays.

    Returns ``(cone, coeffs)`` with ``coeffs`` a tuple of positive Fractions
    aligned with ``cone``.  ``v`` need not be primitive.
    """
    v = tuple(v)
    if not any(v):
        return (), ()
    for c in fan.max_cones:
        sol = _linalg.solve_columns(list(c), v)
        if sol is None or any(x < 0 for x in sol):
            continue
        face = tuple((r, x) for r, x in zip(c, sol) if x > 0)
        return tuple(r for r, _ in face), tuple(x for _, x in face)
    raise OutsideSupport(f"{v} is not in the support of {fan!r}")


def orbit_euler(fan, cone):
    """Euler characteristic of the orbit closure V(cone).

    It is the number of maximal cones containing ``cone``; raises
    :class:`NotComplete` unless the star of ``cone`` is complete.
    """
    cone = fan.check_cone(cone)
    star = fan.max_cones_containing(cone)
    if any(len(c) != fan.rank for c in star):
        raise NotComplete(f"V{cone} is not complete")
    s = set(cone)
    count = {}
    for c in star:
        for f in combinations(c, fan.rank - 1):
            if s.issubset(f):
                count[f] = count.get(f, 0) + 1
    if any(v != 2 for v in count.values()):
        raise NotComplete(f"V{cone} is not complete")
    return len(star)


@dataclass(frozen=True)
class StarSubdivision:
    """One toric blow-up: ``before`` subdivided at ``new_ray``."""

    new_ray: Ray
    target_cone: Cone
    coords: tuple
    before: Fan = field(repr=False, compare=False)
    after: Fan = field(repr=False, compare=False)

    @property
    def discrepancy(self):
        """``sum(coords) - 1``, relative to ``before``."""
        return sum(self.coords, Fraction(0)) - 1


def star_subdivide(fan, v):
    """Insert the ray ``v`` and subdivide every cone containing it."""
    v = tuple(int(x) for x in v)
    if not any(v):
        raise ZeroVector("cannot subdivide at the zero vector")
    if not is_primitive(v):
        raise ValueError(f"{v} is not primitive")
    if v in fan.rays:
        raise RayExists(f"{v} is already a ray")
    target, coords = barycentric_coords(fan, v)
    ts = set(target)
    new_cones = []
    for c in fan.max_cones:
        if ts.issubset(c):
            for r in target:
                new_cones.append([x for x in c if x != r] + [v])
        else:
            new_cones.append(list(c))
    after = Fan(fan.rank, list(fan.rays) + [v], new_cones)
    return after, StarSubdivision(v, target, coords, fan, after)


@dataclass
class ValidationReport:
    violations: list
    is_smooth: bool = False
    is_complete: bool = False

    @property
    def ok(self):
        return not self.violations

    def __bool__(self):
        return self.ok


def validate_fan(fan):
    """Check that ``fan`` is a well-formed simplicial fan; never raises."""
    bad = []
    n = fan.rank
    if n not in (1, 2, 3):
        bad.append(f"unsupported rank {n}")
    for r in fan.rays:
        if len(r) != n:
            bad.append(f"ray {r} has length {len(r)}, expected {n}")
        elif not any(r):
            bad.append("zero ray")
        elif not is_primitive(r):
            bad.append(f"non-primitive ray {r}")
    used = {r for c in fan.max_cones for r in c}
    for r in fan.rays:
        if r not in used:
            bad.append(f"ray {r} lies in no cone")
    if bad:
        return ValidationReport(bad)
    for c in fan.max_cones:
        if _linalg.rank(list(c)) != len(c):
            bad.append(f"non-simplicial cone {c}")
    maxset = set(fan.max_cones)
    for a, b in combinations(fan.max_cones, 2):
        if set(a) <= set(b) or set(b) <= set(a):
            bad.append(f"cone {a if len(a) < len(b) else b} listed as maximal but is a face")
    if bad:
        return ValidationReport(bad)
    # distinct nonzero cones must have disjoint relative interiors
    faces = [c for c in fan.cones if c]
    for a, b in combinations(faces, 2):
        if set(a) & set(b) and (set(a) <= set(b) or set(b) <= set(a)):
            continue
        if any(set(a) | set(b) <= set(m) for m in maxset):
            continue
        cols = list(a) + [tuple(-x for x in r) for r in b]
        if _linalg.has_positive_kernel_vector(cols):
            bad.append(f"cones {a} and {b} overlap")
    smooth = fan.is_smooth
    complete = fan.is_complete
    if fan.declared_complete is not None and fan.declared_complete != complete:
        bad.append(f"completeness mismatch: declared {fan.declared_complete}, actual {complete}")
    if fan.declared_smooth is not None and fan.declared_smooth != smooth:
        bad.append(f"smoothness mismatch: declared {fan.declared_smooth}, actual {smooth}")
    return ValidationReport(bad, smooth, complete)
