"""Quantities derived from celestial integrals.

Zeta functions (global degree of the integral of m*D, and local germ
versions), stringy Chern classes, Chern-Schwartz-MacPherson classes of
invariant strata, and the Chern numbers c_1^i . c_{n-i}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .celestial import Report, integrate, local_value
from .chow import ChowClass, degree, equal, multiply, total_chern
from .errors import NotComplete, NotSmooth, NotSNC
from .fan import make_cone
from .models import (BoundaryAtom, ConstructibleSet, HypersurfaceAtom,
                     OrbitAtom, QUADRANT, ResolutionTower, SystemDivisor, resolve)
from .scalar import Scalar, _factor_den, format_scalar


@dataclass(frozen=True)
class ZetaFunction:
    value: Scalar

    @property
    def poles(self):
        """``[(root, multiplicity), ...]`` in increasing order of the root."""
        if self.value.is_polynomial:
            return []
        _, factors = _factor_den(self.value.den)
        out = []
        for f, k in factors:
            if len(f) != 2:
                raise ValueError(f"denominator factor of degree {len(f) - 1}")
            out.append((Fraction(-f[0], f[1]), k))
        return sorted(out)

    def denominator_factors(self):
        """Primitive integer factors ``(N, nu)`` of ``N*m + nu`` with multiplicity."""
        if self.value.is_polynomial:
            return []
        _, factors = _factor_den(self.value.den)
        return [((int(f[1]), int(f[0])), k) for f, k in factors]

    def __call__(self, x):
        return self.value(x)

    def format(self):
        poles = ", ".join(f"{_fmt(r)} (mult {k})" for r, k in self.poles)
        return f"Z(m) = {format_scalar(self.value)}; poles: [{poles}]"

    def __str__(self):
        return self.format()


def _fmt(r):
    return str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}"


def zeta_global(tower, D):
    """Degree of the identity manifestation of the integral of m*D."""
    if not (tower.base.is_smooth and tower.base.is_complete):
        raise NotComplete("the global zeta function needs a smooth complete base")
    mD = D.scale(Scalar.m())
    cc = integrate(tower, mD, ConstructibleSet.ambient())
    return ZetaFunction(cc.degree())


def zeta_local(tower, germ, p=None, name="f"):
    """Local zeta function of a plane-curve germ at the origin."""
    if not isinstance(germ, HypersurfaceAtom):
        germ = HypersurfaceAtom(name, germ)
    p = QUADRANT.max_cones[0] if p is None else make_cone(p)
    D = SystemDivisor({germ: Scalar.m()})
    return ZetaFunction(local_value(tower, D, ConstructibleSet.ambient(), p))


def candidate_poles(tower, germ):
    """``{-nu/N}`` over exceptional rays with N > 0, together with -1."""
    if not isinstance(germ, HypersurfaceAtom):
        germ = HypersurfaceAtom("f", germ)
    rd = resolve(tower, SystemDivisor({germ: Scalar.m()}), ConstructibleSet.ambient())
    out = {Fraction(-1)}
    for r in rd.model.rays:
        n = germ.polygon.order(r)
        if n:
            nu = 1 + rd.ray_m[r].coefficients()[0] if rd.ray_m[r] else 1
            out.add(Fraction(-nu) / n)
    return out


@dataclass
class StringyClass:
    """Stringy Chern class on the (possibly singular) base of a tower."""

    base_class: ChowClass
    euler: Scalar
    celestial: object

    @property
    def tower(self):
        return self.celestial.tower


def stringy_chern(tower):
    """Identity manifestation of the integral of 0 over the whole system.

    Raises NonConvergent when some discrepancy is <= -1 (not log terminal).
    """
    if not tower.base.is_simplicial:
        raise NotSmooth("the base must be simplicial")
    cc = integrate(tower, SystemDivisor(), ConstructibleSet.ambient())
    return StringyClass(cc.identity, cc.degree(), cc)


def stringy_classes_agree(t1, t2):
    """Compare two stringy classes of the same base.

    Manifestations are compared on every common smooth complete level with
    ring equality; the stringy Euler numbers are compared on the base.
    """
    if t1.base != t2.base:
        raise ValueError("the towers have different bases")
    s1, s2 = stringy_chern(t1), stringy_chern(t2)
    rep = Report("stringy class tower independence")
    rep.add("stringy Euler number", s1.euler, s2.euler, s1.euler == s2.euler)
    for k1, f1 in enumerate(t1.levels):
        for k2, f2 in enumerate(t2.levels):
            if f1 == f2 and f1.is_smooth and f1.is_complete:
                a, b = s1.celestial[k1], s2.celestial[k2]
                rep.add(f"common level ({k1}, {k2})", a, b, equal(a, b))
    return rep


def csm_tower(model, strata):
    """Tower blowing up the strata of codimension >= 2 of ``strata``."""
    tower = ResolutionTower(model)
    for cone in sorted(strata, key=lambda c: (-len(c), c)):
        if len(cone) >= 2 and tower.top.has_cone(cone):
            v = tuple(sum(col) for col in zip(*cone))
            tower = tower.extend(v)
    return tower


def csm_set(strata):
    atoms = []
    for cone in strata:
        if len(cone) == 0:
            return ConstructibleSet.ambient()
        if len(cone) == 1:
            atoms.append(BoundaryAtom(cone[0], 0))
        else:
            atoms.append(OrbitAtom(cone, 0))
    return ConstructibleSet(atoms)


def csm_class(model, strata=None):
    """CSM class of a union of invariant orbit closures of ``model``.

    ``strata`` is an iterable of cones (the closures V(cone)); ``None`` or
    the empty cone means the whole model.
    """
    if not (model.is_smooth and model.is_complete):
        raise NotComplete("csm_class needs a smooth complete model")
    strata = [()] if strata is None else [model.check_cone(c) for c in strata]
    if not strata:
        raise NotSNC("empty set of strata")
    tower = csm_tower(model, strata)
    return integrate(tower, SystemDivisor(), csm_set(strata)).identity


def toric_csm(model):
    """``sum over all cones of [V(sigma)]``."""
    return ChowClass(model, {c: 1 for c in model.cones})


def chern_numbers(model):
    """``(c_1^i . c_{n-i})`` for i = 0..n-1 (i = n repeats i = n-1)."""
    if not model.is_smooth:
        raise NotSmooth("chern_numbers needs a smooth model")
    c = total_chern(model)
    n = model.rank
    c1 = c.graded(1)
    out = []
    power = ChowClass.one(model)
    for i in range(n):
        out.append(degree(multiply(power, c.graded(n - i))))
        power = multiply(power, c1)
    return tuple(out)
