"""Manifestations of celestial integrals and the identities they satisfy.

On a level where the data is resolved by the normal-crossing atoms J with
coefficients m_j, the manifestation is

    c(Omega(log E)^vee)  cap  sum_{I subset J, I meets J_S}  [E_I] / prod_{i in I} (1 + m_i)

and every lower level is reached by proper pushforward.  Local values at
torus-fixed points use the Euler characteristics of the open strata of the
fiber instead of Chow classes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from .chow import (ChowClass, degree, equal, format_class,
                   log_chern, multiply)
from .errors import NonToricAtom, NotComplete, NotDisjoint, NotSmooth
from .fan import barycentric_coords, make_cone, orbit_euler
from .models import (AMBIENT, BoundaryAtom, ConstructibleSet, SystemDivisor,
                     check_convergence, exceptional_over, relative_canonical,
                     resolve, restrict_to_point, set_preimage)
from .scalar import Scalar, format_scalar


# -- reports --------------------------------------------------------------

@dataclass
class Check:
    label: str
    lhs: str
    rhs: str
    passed: bool


@dataclass
class Report:
    title: str
    checks: list = field(default_factory=list)

    def add(self, label, lhs, rhs, passed):
        self.checks.append(Check(label, _oneline(lhs), _oneline(rhs), bool(passed)))

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def __bool__(self):
        return self.passed

    def format(self):
        lines = [f"report: {self.title}"]
        for c in self.checks:
            lines.append(f"check: {c.label}")
            lines.append(f"  lhs: {c.lhs}")
            lines.append(f"  rhs: {c.rhs}")
            lines.append(f"  result: {'PASS' if c.passed else 'FAIL'}")
        lines.append(f"overall: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)


def _oneline(x):
    if isinstance(x, ChowClass):
        return "; ".join(format_class(x).splitlines()) or "0"
    if isinstance(x, Scalar):
        return format_scalar(x)
    return str(x)


def same_class(a, b):
    """Ring equality on smooth complete models, literal equality elsewhere."""
    m = a.model
    if m.is_smooth and m.is_complete:
        return equal(a, b)
    return a == b


# -- the definition -------------------------------------------------------

def manifestation_terms(rd):
    """The pairs (I, 1/prod(1+m_i)) of the defining sum, I as a cone."""
    if not rd.is_toric:
        raise NonToricAtom("a hypersurface strict transform has no Chow class here; "
                           "use local_value")
    J = set(rd.boundary_rays)
    ambient = AMBIENT in rd.set_atoms
    js = {a.ray for a in rd.set_atoms if isinstance(a, BoundaryAtom)}
    weight = {a.ray: rd.weight(a) for a in rd.atoms if isinstance(a, BoundaryAtom)}
    out = []
    for cone in rd.model.cones:
        s = set(cone)
        if not s <= J:
            continue
        if not ambient and not s & js:
            continue
        w = Scalar.const(1)
        for r in cone:
            w = w * weight[r]
        out.append((cone, w))
    return out


def evaluate_manifestation(rd):
    """The manifestation of the integral on the resolving level of ``rd``."""
    model = rd.model
    terms = manifestation_terms(rd)
    if not model.is_complete:
        raise NotComplete("manifestations are evaluated on complete models only")
    total = ChowClass(model, {cone: w for cone, w in terms})
    return multiply(log_chern(model, rd.boundary_rays), total)


class CelestialClass:
    """Compatible manifestations of one integral on the levels of a tower."""

    def __init__(self, tower, manifestations, resolved):
        self.tower = tower
        self.manifestations = tuple(manifestations)
        self.resolved = resolved

    def __getitem__(self, level):
        return self.manifestations[level]

    @property
    def identity(self):
        return self.manifestations[0]

    @property
    def evaluation_level(self):
        return self.resolved.level

    def degree(self):
        return degree(self.identity)

    def verify_compatibility(self):
        rep = Report("inverse-limit compatibility")
        top = self.evaluation_level
        for k in range(top):
            pushed = self.tower.push_forward(self.manifestations[k + 1], k + 1, k)
            rep.add(f"pushforward(level {k + 1}) = level {k}", pushed,
                    self.manifestations[k], same_class(pushed, self.manifestations[k]))
        return rep


def integrate(tower, D, S, level=None, base_level=0):
    """The integral of D over S, evaluated on ``level`` (default: top).

    Levels below the evaluation level get pushforwards; levels above it
    are left as ``None``.
    """
    rd = resolve(tower, D, S, level=level, base_level=base_level)
    top_class = evaluate_manifestation(rd)
    mans = [None] * (tower.height + 1)
    mans[rd.level] = top_class
    for k in range(rd.level - 1, -1, -1):
        mans[k] = tower.push_forward(mans[k + 1], k + 1, k)
    cc = CelestialClass(tower, mans, rd)
    rep = cc.verify_compatibility()
    assert rep.passed, rep.format()
    return cc


def resolution_independence(tower, D, S, base_level=0):
    """Evaluate directly on every resolving level and compare with the top."""
    rep = Report("resolution independence")
    top = integrate(tower, D, S, base_level=base_level)
    for k in range(base_level, tower.height):
        model = tower.levels[k]
        if not (model.is_smooth and model.is_complete):
            continue
        direct = integrate(tower.truncate(k), D, S, base_level=base_level)
        rep.add(f"level {k}: direct vs pushed from level {tower.height}",
                direct[k], top[k], same_class(direct[k], top[k]))
    return rep


# -- change of variables ----------------------------------------------------

def check_change_of_variables(tower, D, S, i, j):
    """Compare the integral of D on C_{X_i} with that of D + K_{i->j} on C_{X_j}.

    The first side is evaluated on level j (discrepancies over level i),
    the second on the top level (discrepancies over level j); both are
    compared on levels i and j.  Germ data is compared through its fiber
    sums over the base point instead.
    """
    rep = Report(f"change of variables, levels {i} -> {j}")
    if i == j:
        rep.add("identity modification", "i = j", "i = j", True)
        return rep
    if i > j:
        raise ValueError("need i <= j")
    for k in (i, j):
        if not tower.levels[k].is_smooth:
            raise NotSmooth(f"level {k} is not smooth")
    K = relative_canonical(tower, i, j)
    DK = D + SystemDivisor({BoundaryAtom(v, j): a for v, a in K.items()})
    rd_a = resolve(tower, D, S, level=j, base_level=i)
    rd_b = resolve(tower, DK, S, base_level=j)
    if rd_a.is_toric and rd_b.is_toric:
        side_a = integrate(tower.truncate(j), D, S, base_level=i)
        side_b = integrate(tower, DK, S, base_level=j)
        for k in (j, i):
            rep.add(f"level {k} manifestation", side_a[k], side_b[k],
                    same_class(side_a[k], side_b[k]))
        return rep
    p = tower.base.max_cones[0]
    fa = local_sum(rd_a, p, ConstructibleSet.ambient())
    fb = local_sum(rd_b, p, ConstructibleSet.ambient())
    rep.add("fiber degree over the base point", fa, fb, fa == fb)
    if rd_a.level == rd_b.level:
        ma = {str(a): rd_a.m[a] for a in rd_a.atoms}
        mb = {str(a): rd_b.m[a] for a in rd_b.atoms}
        rep.add("coefficients m_j on the common level",
                ", ".join(f"{k}: {v}" for k, v in sorted(ma.items())),
                ", ".join(f"{k}: {v}" for k, v in sorted(mb.items())), ma == mb)
    return rep


# -- local values -----------------------------------------------------------

@dataclass
class Stratum:
    atoms: tuple
    euler: int
    weight: Scalar

    @property
    def contribution(self):
        return self.weight * self.euler


def _over(base, p, tau):
    v = tuple(sum(col) for col in zip(*tau))
    return barycentric_coords(base, v)[0] == p


def fiber_strata(rd, p, fiber):
    """Open strata E_I minus the other atoms, inside the fiber over ``p``.

    Toric Euler characteristics come from inclusion-exclusion over closed
    intersections; the strict transform of a germ meets each E_v in
    ``face_length(v)`` points of the open orbit of E_v and nothing else.
    """
    tower, model = rd.tower, rd.model
    p = make_cone(p)
    exc = exceptional_over(tower, p, rd.level)
    m = dict(rd.m)
    for a in fiber.atoms:
        m.setdefault(a, rd.ray_m[a.ray])
    check_convergence(m)
    fiber_rays = {a.ray for a in fiber.atoms}
    toric = {a.ray for a in m if isinstance(a, BoundaryAtom)}
    germ = rd.germ if rd.germ in m else None
    weight = {a.ray if isinstance(a, BoundaryAtom) else a: (m[a] + 1).inverse() for a in m}

    cones = [c for c in model.cones if c and set(c) <= toric]

    closed = {}

    def chi_closed(cone):
        if cone not in closed:
            if _over(tower.base, p, cone):
                closed[cone] = orbit_euler(model, cone)
            else:
                closed[cone] = sum(1 for c in model.max_cones_containing(cone)
                                   if _over(tower.base, p, c))
        return closed[cone]

    strata = []
    for cone in cones:
        if not set(cone) & fiber_rays:
            continue
        chi = 0
        for bigger in cones:
            if set(cone) <= set(bigger):
                chi += (-1) ** (len(bigger) - len(cone)) * chi_closed(bigger)
        if germ is not None and len(cone) == 1 and cone[0] in exc:
            chi -= rd.face_lengths.get(cone[0], 0)
        w = Scalar.const(1)
        for r in cone:
            w = w * weight[r]
        strata.append(Stratum(cone, chi, w))
    if germ is not None:
        for r in sorted(fiber_rays & toric):
            k = rd.face_lengths.get(r, 0)
            if k and r in exc:
                strata.append(Stratum((r, germ.name), k, weight[r] * weight[germ]))
    return strata


def local_sum(rd, p, S):
    fiber = restrict_to_point(rd.tower, S, p, rd.level)
    total = Scalar.const(0)
    for s in fiber_strata(rd, p, fiber):
        total = total + s.contribution
    return total


def local_value(tower, D, S, p):
    """The constructible function I(D, S) at the torus-fixed point ``p``."""
    rd = resolve(tower, D, S)
    return local_sum(rd, p, S)


# -- additivity -------------------------------------------------------------

def additivity_check(tower, D, S1, S2):
    """Integral over a disjoint union equals the sum of the integrals."""
    if S1.is_ambient or S2.is_ambient:
        raise NotDisjoint("the ambient set meets every nonempty set")
    top = tower.height
    r1, g1 = set_preimage(tower, S1, top)
    r2, g2 = set_preimage(tower, S2, top)
    if g1 or g2:
        raise NonToricAtom("additivity is checked for toric sets only")
    if r1 & r2 or any(set(c) & r1 and set(c) & r2 for c in tower.top.cones):
        raise NotDisjoint("the two sets meet on the top level")
    whole = integrate(tower, D, S1.union(S2))
    a = integrate(tower, D, S1)
    b = integrate(tower, D, S2)
    rep = Report("additivity over a disjoint union")
    for k in range(top + 1):
        lhs = whole[k]
        rhs = a[k] + b[k]
        model = tower.levels[k]
        if model.is_smooth and model.is_complete:
            ok = equal(lhs, rhs)
        else:
            ok = degree(lhs) == degree(rhs)
        rep.add(f"level {k}", lhs, rhs, ok)
    return rep
