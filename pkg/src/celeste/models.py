"""Resolution towers, divisor/constructible-set atoms and resolved data.

A :class:`ResolutionTower` is a base fan with an ordered list of star
subdivisions; level 0 is the base, level ``k`` the fan after ``k`` steps.
Divisors and constructible sets of the modification system are finite
combinations of *atoms*:

* :class:`BoundaryAtom` -- an invariant prime divisor ``D_ray`` on the fan
  of some level (by default the level where the ray first appears), pulled
  back through the rest of the tower;
* :class:`OrbitAtom` -- the closure of an invariant orbit ``V(cone)``; only
  usable in constructible sets, whose preimage must be divisorial;
* :class:`HypersurfaceAtom` -- a Newton-nondegenerate plane-curve germ on
  the affine plane (base = the positive quadrant);
* :data:`AMBIENT` -- the whole system.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Optional

from .chow import pullback_divisor
from .errors import (EmptyFiber, NonConvergent, NotResolved, NotSmooth, NotSNC,
                     UnknownCone)
from .fan import Fan, barycentric_coords, make_cone, star_subdivide
from .scalar import Scalar, as_scalar


# -- atoms ----------------------------------------------------------------

@dataclass(frozen=True)
class BoundaryAtom:
    ray: tuple
    level: Optional[int] = None

    def __str__(self):
        return "ray:(" + ",".join(map(str, self.ray)) + ")"


@dataclass(frozen=True)
class OrbitAtom:
    cone: tuple
    level: Optional[int] = None

    def __str__(self):
        return "cone:(" + ",".join("(" + ",".join(map(str, r)) + ")" for r in self.cone) + ")"


@dataclass(frozen=True)
class NewtonPolygon:
    """Monomial support of a plane-curve germ ``f`` at the origin."""

    exponents: frozenset
    nondegenerate: bool = True

    def __post_init__(self):
        exps = frozenset(tuple(int(x) for x in e) for e in self.exponents)
        if not exps:
            raise ValueError("empty Newton polygon")
        if any(len(e) != 2 or min(e) < 0 for e in exps):
            raise ValueError("exponents must be points of the positive quadrant")
        if (0, 0) in exps:
            raise ValueError("germ must vanish at the origin")
        object.__setattr__(self, "exponents", exps)

    def order(self, v):
        """``min <v, e>`` over the exponents (multiplicity of f along E_v)."""
        return min(v[0] * e[0] + v[1] * e[1] for e in self.exponents)

    def face(self, v):
        n = self.order(v)
        return sorted(e for e in self.exponents if v[0] * e[0] + v[1] * e[1] == n)

    def face_length(self, v):
        f = self.face(v)
        if len(f) < 2:
            return 0
        a, b = f[0], f[-1]
        return gcd(abs(b[0] - a[0]), abs(b[1] - a[1]))

    @cached_property
    def facet_normals(self):
        """Primitive strictly positive normals of the compact edges."""
        out = set()
        pts = sorted(self.exponents)
        for i, a in enumerate(pts):
            for b in pts[i + 1:]:
                dx, dy = b[0] - a[0], b[1] - a[1]
                w = (dy, -dx) if dy > 0 else (-dy, dx)
                if w[0] <= 0 or w[1] <= 0:
                    continue
                g = gcd(*w)
                w = (w[0] // g, w[1] // g)
                if self.order(w) == w[0] * a[0] + w[1] * a[1] == w[0] * b[0] + w[1] * b[1]:
                    out.add(w)
        return tuple(sorted(out))

    @cached_property
    def vertices(self):
        verts = set()
        for w in self.facet_normals:
            f = self.face(w)
            verts.update((f[0], f[-1]))
        if not verts:
            # a single vertex: the minimum for any positive direction
            verts.add(self.face((1, 1))[0] if len(self.face((1, 1))) == 1
                      else min(self.exponents))
        return tuple(sorted(verts))


def newton_data(polygon, v):
    """``(N, face_length)`` of the germ along the ray ``v``."""
    return polygon.order(v), polygon.face_length(v)


@dataclass(frozen=True)
class HypersurfaceAtom:
    name: str
    polygon: NewtonPolygon = field(compare=True)

    def __str__(self):
        return f"germ:{self.name}"


@dataclass(frozen=True)
class AmbientAtom:
    def __str__(self):
        return "ambient"


AMBIENT = AmbientAtom()


class SystemDivisor:
    """Finite combination ``sum coeff * atom``; coefficients linear in m."""

    def __init__(self, terms=None):
        clean = {}
        for atom, c in (terms or {}).items():
            if isinstance(atom, (AmbientAtom, OrbitAtom)):
                raise TypeError(f"{atom} cannot appear in a divisor")
            c = as_scalar(c)
            if not c.is_polynomial or c.degree > 1:
                raise ValueError(f"coefficient {c} must be linear in m")
            if c:
                clean[atom] = clean.get(atom, Scalar.const(0)) + c
        self.terms = {a: c for a, c in clean.items() if c}

    def __add__(self, other):
        t = dict(self.terms)
        for a, c in other.terms.items():
            t[a] = t.get(a, Scalar.const(0)) + c
        return SystemDivisor(t)

    def scale(self, c):
        return SystemDivisor({a: v * as_scalar(c) for a, v in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, SystemDivisor) and self.terms == other.terms

    def __repr__(self):
        return "SystemDivisor(" + ", ".join(f"{a}: {c}" for a, c in self.terms.items()) + ")"

    @property
    def germs(self):
        return [a for a in self.terms if isinstance(a, HypersurfaceAtom)]


class ConstructibleSet:
    """Closed union of the supports of finitely many atoms."""

    def __init__(self, atoms):
        atoms = frozenset(atoms)
        if not atoms:
            raise ValueError("a constructible set needs at least one atom")
        if AMBIENT in atoms:
            atoms = frozenset([AMBIENT])
        self.atoms = atoms

    @classmethod
    def ambient(cls):
        return cls([AMBIENT])

    @property
    def is_ambient(self):
        return AMBIENT in self.atoms

    def union(self, other):
        return ConstructibleSet(self.atoms | other.atoms)

    def __eq__(self, other):
        return isinstance(other, ConstructibleSet) and self.atoms == other.atoms

    def __hash__(self):
        return hash(self.atoms)

    def __repr__(self):
        return "ConstructibleSet(" + ", ".join(sorted(map(str, self.atoms))) + ")"


# -- towers ---------------------------------------------------------------

class ResolutionTower:
    """A base fan and an ordered sequence of star subdivisions."""

    def __init__(self, base, steps=()):
        self.base = base
        self.steps = tuple(steps)
        levels = [base]
        for s in self.steps:
            if s.before != levels[-1]:
                raise ValueError("subdivision does not apply to the previous level")
            levels.append(s.after)
        self.levels = tuple(levels)

    @classmethod
    def build(cls, base, rays=()):
        t = cls(base)
        for v in rays:
            t = t.extend(v)
        return t

    def extend(self, v):
        _, sub = star_subdivide(self.top, v)
        return ResolutionTower(self.base, self.steps + (sub,))

    def truncate(self, k):
        return ResolutionTower(self.base, self.steps[:k])

    def from_level(self, k):
        """The tower of levels ``k..top`` with level ``k`` as its base."""
        return ResolutionTower(self.levels[k], self.steps[k:])

    @property
    def top(self):
        return self.levels[-1]

    @property
    def height(self):
        return len(self.steps)

    @property
    def new_rays(self):
        return tuple(s.new_ray for s in self.steps)

    def birth_level(self, ray):
        ray = tuple(ray)
        for k, fan in enumerate(self.levels):
            if ray in fan.rays:
                return k
        raise UnknownCone(f"{ray} is not a ray of any level")

    def cone_level(self, cone):
        cone = make_cone(cone)
        for k, fan in enumerate(self.levels):
            if fan.has_cone(cone):
                return k
        raise UnknownCone(f"{cone} is not a cone of any level")

    def pull_back(self, divisor, start, stop):
        """Pull an invariant divisor ``{ray: coeff}`` from level start to stop."""
        d = {tuple(r): as_scalar(c) for r, c in divisor.items()}
        for s in self.steps[start:stop]:
            d = pullback_divisor(s, d)
        return d

    def push_forward(self, a, start, stop):
        """Push a class from level ``start`` down to level ``stop <= start``."""
        from .chow import pushforward
        for s in reversed(self.steps[stop:start]):
            a = pushforward(s, a)
        return a

    def __eq__(self, other):
        return (isinstance(other, ResolutionTower) and self.base == other.base
                and self.new_rays == other.new_rays)

    def __hash__(self):
        return hash((self.base, self.new_rays))

    def __repr__(self):
        return f"ResolutionTower(base={self.base!r}, new_rays={list(self.new_rays)})"


def extend_tower(tower, v):
    return tower.extend(v)


def relative_canonical(tower, i, j):
    """Discrepancies over level ``i`` of the rays created up to level ``j``."""
    if i > j:
        raise ValueError("need i <= j")
    old = set(tower.levels[i].rays)
    out = {}
    for v in tower.levels[j].rays:
        if v in old:
            continue
        _, coords = barycentric_coords(tower.levels[i], v)
        out[v] = Scalar.const(sum(coords, Fraction(0)) - 1)
    return out


QUADRANT = Fan(2, [(1, 0), (0, 1)], [[(1, 0), (0, 1)]])


# -- resolved data ----------------------------------------------------------

@dataclass
class ResolvedData:
    """Normal-crossing data (J, J_S, m_j) on one level of a tower."""

    tower: ResolutionTower
    level: int
    base_level: int
    atoms: tuple          # J: BoundaryAtom(ray, level) and at most one HypersurfaceAtom
    set_atoms: frozenset  # J_S, or {AMBIENT}
    m: dict               # atom in J -> Scalar
    ray_m: dict           # every ray of the model -> Scalar (D + K coefficient)
    germ: Optional[HypersurfaceAtom] = None
    face_lengths: dict = field(default_factory=dict)

    @property
    def model(self):
        return self.tower.levels[self.level]

    @property
    def boundary_rays(self):
        return tuple(a.ray for a in self.atoms if isinstance(a, BoundaryAtom))

    @property
    def is_toric(self):
        return self.germ is None or self.germ not in self.atoms

    def weight(self, atom):
        """``1 / (1 + m_atom)``."""
        return (Scalar.const(1) + self.m[atom]).inverse()


def _check_germ(tower, germ, model):
    if tower.base != QUADRANT:
        raise NotResolved("germs require the positive quadrant as base fan")
    if not germ.polygon.nondegenerate:
        raise NotResolved(f"germ {germ.name} is not flagged Newton-nondegenerate")
    missing = [w for w in germ.polygon.facet_normals if w not in model.rays]
    if missing:
        raise NotResolved(f"germ {germ.name}: facet normals {missing} are not rays")


def divisor_on_level(tower, D, level):
    """Coefficients on the rays of ``level`` and on each germ's strict transform."""
    model = tower.levels[level]
    rays = {r: Scalar.const(0) for r in model.rays}
    germs = {}
    for atom, c in D.terms.items():
        if isinstance(atom, BoundaryAtom):
            lvl = tower.birth_level(atom.ray) if atom.level is None else atom.level
            if lvl > level:
                raise NotResolved(f"{atom} does not exist at level {level}")
            if atom.ray not in tower.levels[lvl].rays:
                raise UnknownCone(f"{atom.ray} is not a ray of level {lvl}")
            for r, x in tower.pull_back({atom.ray: c}, lvl, level).items():
                rays[r] = rays[r] + x
        elif isinstance(atom, HypersurfaceAtom):
            for r in model.rays:
                n = atom.polygon.order(r)
                if n:
                    rays[r] = rays[r] + c * n
            germs[atom] = germs.get(atom, Scalar.const(0)) + c
        else:
            raise TypeError(f"unsupported divisor atom {atom!r}")
    return rays, germs


def _orbit_preimage(tower, atom, level):
    lvl = tower.cone_level(atom.cone) if atom.level is None else atom.level
    if lvl > level:
        raise NotResolved(f"{atom} does not exist at level {level}")
    src = tower.levels[lvl]
    cone = src.check_cone(atom.cone)
    model = tower.levels[level]

    def over(tau):
        v = tuple(sum(col) for col in zip(*tau))
        image, _ = barycentric_coords(src, v)
        return set(cone).issubset(image)

    rays = {r for r in model.rays if over((r,))}
    for tau in model.cones:
        if tau and over(tau) and not rays.intersection(tau):
            raise NotResolved(f"preimage of {atom} is not divisorial at level {level}")
    return rays


def set_preimage(tower, S, level):
    """Rays (and germs) whose union is the preimage of ``S`` at ``level``."""
    rays, germs = set(), set()
    for atom in S.atoms:
        if isinstance(atom, BoundaryAtom):
            lvl = tower.birth_level(atom.ray) if atom.level is None else atom.level
            if lvl > level:
                raise NotResolved(f"{atom} does not exist at level {level}")
            pb = tower.pull_back({atom.ray: 1}, lvl, level)
            rays.update(r for r, c in pb.items() if c.constant_value() > 0)
        elif isinstance(atom, OrbitAtom):
            rays.update(_orbit_preimage(tower, atom, level))
        elif isinstance(atom, HypersurfaceAtom):
            germs.add(atom)
            rays.update(r for r in tower.levels[level].rays if atom.polygon.order(r) > 0)
        elif isinstance(atom, AmbientAtom):
            continue
        else:
            raise TypeError(f"unsupported set atom {atom!r}")
    return rays, germs


def check_convergence(m):
    """Raise NonConvergent unless every ``m_j > -1`` (or ``!= -1`` in m)."""
    for atom, c in m.items():
        one_plus = c + 1
        if one_plus.is_constant:
            if one_plus.constant_value() <= 0:
                raise NonConvergent(f"m_j = {c} <= -1 on {atom}")
        elif not one_plus:
            raise NonConvergent(f"m_j = -1 identically on {atom}")


def resolve(tower, D, S, level=None, base_level=0):
    """Check that ``level`` resolves (D, S) and assemble (J, J_S, m_j).

    Discrepancies are taken relative to the fan of ``base_level``.
    """
    level = tower.height if level is None else level
    model = tower.levels[level]
    if not model.is_smooth:
        raise NotSmooth(f"level {level} is not smooth")
    germs_in = set(D.germs) | {a for a in S.atoms if isinstance(a, HypersurfaceAtom)}
    if len(germs_in) > 1:
        raise NotSNC("at most one hypersurface germ is supported")
    germ = next(iter(germs_in), None)
    if germ is not None:
        _check_germ(tower, germ, model)

    ray_coef, germ_coef = divisor_on_level(tower, D, level)
    base_rays = set(tower.levels[base_level].rays)
    ray_m = {}
    for r in model.rays:
        a = Scalar.const(0)
        if r not in base_rays:
            _, coords = barycentric_coords(tower.levels[base_level], r)
            a = Scalar.const(sum(coords, Fraction(0)) - 1)
        ray_m[r] = ray_coef[r] + a

    s_rays, s_germs = set_preimage(tower, S, level)
    J, m = [], {}
    for r in model.rays:
        if ray_m[r] or r in s_rays:
            atom = BoundaryAtom(r, level)
            J.append(atom)
            m[atom] = ray_m[r]
    face_lengths = {}
    if germ is not None:
        c = germ_coef.get(germ, Scalar.const(0))
        if c or germ in s_germs:
            J.append(germ)
            m[germ] = c
        face_lengths = {r: germ.polygon.face_length(r) for r in model.rays
                        if germ.polygon.face_length(r) and all(x > 0 for x in r)}
    check_convergence(m)
    if S.is_ambient:
        js = frozenset([AMBIENT])
    else:
        js = frozenset([BoundaryAtom(r, level) for r in s_rays]
                       + list(s_germs))
    return ResolvedData(tower, level, base_level, tuple(J), js, m, ray_m, germ,
                        face_lengths)


# -- fibers -----------------------------------------------------------------

def exceptional_over(tower, p, level=None):
    """Rays of ``level`` lying over the interior of the base cone ``p``."""
    level = tower.height if level is None else level
    base = tower.base
    p = base.check_cone(p)
    if len(p) != base.rank or p not in base.max_cones:
        raise UnknownCone(f"{p} is not a full-dimensional maximal cone of the base")
    model = tower.levels[level]

    def over(tau):
        v = tuple(sum(col) for col in zip(*tau))
        return barycentric_coords(base, v)[0] == p

    exc = {r for r in model.rays if over((r,))}
    if not exc:
        raise EmptyFiber(f"no exceptional divisor lies over {p}")
    for tau in model.cones:
        if tau and over(tau) and not exc.intersection(tau):
            raise EmptyFiber(f"the fiber over {p} is not divisorial at level {level}")
    return exc


def restrict_to_point(tower, S, p, level=None):
    """``S`` intersected with the fiber over the torus-fixed point ``p``."""
    level = tower.height if level is None else level
    exc = exceptional_over(tower, p, level)
    if S.is_ambient:
        chosen = exc
    else:
        rays, _ = set_preimage(tower, S, level)
        chosen = exc & rays
    if not chosen:
        raise EmptyFiber(f"{S} does not meet the fiber over {make_cone(p)}")
    return ConstructibleSet(BoundaryAtom(r, level) for r in sorted(chosen))


def newton_resolution(polygon, tower=None):
    """Extend ``tower`` (default: the quadrant) until ``polygon`` is resolved.

    Every primitive facet normal is reached by repeatedly inserting the sum
    of the two adjacent rays of the 2-cone containing it, so each step is a
    point blow-up and the result stays smooth.
    """
    tower = ResolutionTower(QUADRANT) if tower is None else tower
    if tower.base != QUADRANT:
        raise NotResolved("germs live on the quadrant base")
    for v in polygon.facet_normals:
        while v not in tower.top.rays:
            cone, _ = barycentric_coords(tower.top, v)
            tower = tower.extend(tuple(a + b for a, b in zip(*cone)))
    return tower
