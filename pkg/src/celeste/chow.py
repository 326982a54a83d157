"""Rational Chow rings of smooth toric models in the cone-class basis.

A class is a finite combination of orbit-closure classes ``[V(sigma)]`` with
:class:`~celeste.scalar.Scalar` coefficients.  Products are brought to
squarefree normal form by rewriting repeated rays through linear
equivalences; the rewrite is deterministic, so every product has a single
normal form regardless of term order.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from . import _linalg
from .errors import ModelMismatch, NotComplete, NotSmooth, NotSNC
from .fan import barycentric_coords, make_cone
from .scalar import Scalar, as_scalar, format_scalar


class ChowClass:
    """Mixed-degree cycle class on ``model``; ``terms`` maps Cone -> Scalar."""

    __slots__ = ("model", "terms")

    def __init__(self, model, terms=None):
        self.model = model
        clean = {}
        for cone, c in (terms or {}).items():
            c = as_scalar(c)
            if c:
                clean[make_cone(cone)] = c
        self.terms = clean

    @classmethod
    def _from_clean(cls, model, terms):
        obj = object.__new__(cls)
        obj.model = model
        obj.terms = terms
        return obj

    @classmethod
    def zero(cls, model):
        return cls._from_clean(model, {})

    @classmethod
    def one(cls, model):
        return cls._from_clean(model, {(): Scalar.const(1)})

    # -- linear structure ---------------------------------------------------
    def _check(self, other):
        if self.model != other.model:
            raise ModelMismatch("classes live on different models")

    def __add__(self, other):
        if not isinstance(other, ChowClass):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = out.get(k)
            s = v if s is None else s + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return ChowClass._from_clean(self.model, out)

    def __neg__(self):
        return ChowClass._from_clean(self.model, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = as_scalar(c)
        if not c:
            return ChowClass.zero(self.model)
        return ChowClass._from_clean(self.model, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, ChowClass):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __truediv__(self, c):
        return self.scale(as_scalar(1) / as_scalar(c))

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        """Literal equality of normal forms; see :func:`equal` for ring equality."""
        return (isinstance(other, ChowClass) and self.model == other.model
                and self.terms == other.terms)

    __hash__ = None

    def graded(self, codim):
        """The part of codimension ``codim``."""
        return ChowClass._from_clean(
            self.model, {k: v for k, v in self.terms.items() if len(k) == codim})

    def degree(self):
        return degree(self)

    def __repr__(self):
        return f"ChowClass({'; '.join(format_class(self).splitlines()) or '0'})"


def format_class(a):
    """One line per term: ``codim k: coeff * [V(r1,...,rk)]``."""
    lines = []
    for cone in sorted(a.terms, key=lambda c: (len(c), c)):
        rays = ",".join("(" + ",".join(str(x) for x in r) + ")" for r in cone)
        lines.append(f"codim {len(cone)}: {format_scalar(a.terms[cone])} * [V({rays})]")
    return "\n".join(lines)


def cycle_class(model, cone):
    """The class ``[V(cone)]``."""
    cone = model.check_cone(cone)
    return ChowClass._from_clean(model, {cone: Scalar.const(1)})


def divisor_class(model, coeffs):
    """``sum a_rho [D_rho]`` from a mapping ray -> coefficient."""
    return ChowClass(model, {(tuple(r),): c for r, c in coeffs.items()})


# -- multiplication -------------------------------------------------------

@lru_cache(maxsize=None)
def _dual_vector(fan, support, rho):
    """m with <m,rho> = 1, <m,s> = 0 for s in support - {rho}.

    The system is completed to a square one by the first standard basis
    vectors independent of ``support`` (on which m vanishes).
    """
    rows = list(support)
    rhs = [Fraction(1) if s == rho else Fraction(0) for s in support]
    n = fan.rank
    for i in range(n):
        if len(rows) == n:
            break
        e = tuple(1 if j == i else 0 for j in range(n))
        if _linalg.rank(rows + [e]) == len(rows) + 1:
            rows.append(e)
            rhs.append(Fraction(0))
    return tuple(_linalg.solve_square(rows, rhs))


@lru_cache(maxsize=None)
def _reduce(fan, mono):
    """Normal form of the monomial ``prod x_r`` (``mono`` sorted, with repeats).

    Returns a tuple of (cone, Fraction) pairs.
    """
    support = tuple(sorted(set(mono)))
    if support not in fan._cone_set:
        return ()
    if len(support) == len(mono):
        return ((support, Fraction(1)),)
    # first repeated ray
    rho = next(r for i, r in enumerate(mono) if i + 1 < len(mono) and mono[i + 1] == r)
    m = _dual_vector(fan, support, rho)
    rest = list(mono)
    rest.remove(rho)
    sset = set(support)
    acc = {}
    for other in _adjacent(fan, support):
        if other in sset:
            continue
        w = sum(a * b for a, b in zip(m, other))
        if not w:
            continue
        for cone, c in _reduce(fan, tuple(sorted(rest + [other]))):
            acc[cone] = acc.get(cone, 0) - w * c
    return tuple((k, v) for k, v in sorted(acc.items()) if v)


@lru_cache(maxsize=None)
def _adjacent(fan, support):
    """Rays r not in ``support`` such that support + {r} spans a cone."""
    s = set(support)
    out = set()
    for c in fan.max_cones:
        if s.issubset(c):
            out.update(x for x in c if x not in s)
    return tuple(sorted(out))


def multiply(a, b):
    """Product in the Chow ring of a smooth model, in squarefree normal form."""
    a._check(b)
    fan = a.model
    if not fan.is_smooth:
        raise NotSmooth("multiplication requires a smooth model")
    acc = {}
    for ca, va in a.terms.items():
        for cb, vb in b.terms.items():
            if len(ca) + len(cb) > fan.rank:
                continue
            prod = va * vb
            for cone, c in _reduce(fan, tuple(sorted(ca + cb))):
                t = prod * c
                s = acc.get(cone)
                acc[cone] = t if s is None else s + t
    return ChowClass._from_clean(fan, {k: v for k, v in acc.items() if v})


def degree(a):
    """Sum of the point-class coefficients."""
    n = a.model.rank
    total = Scalar.const(0)
    for cone, c in a.terms.items():
        if len(cone) == n:
            total = total + c
    return total


def equal(a, b):
    """Equality in the Chow ring, tested by Poincare pairing."""
    a._check(b)
    fan = a.model
    if not fan.is_complete:
        raise NotComplete("equality is only certified on complete models")
    if not fan.is_smooth:
        raise NotSmooth("equality requires a smooth model")
    diff = a - b
    n = fan.rank
    for k in range(n + 1):
        part = diff.graded(k)
        if not part:
            continue
        for tau in fan.cones_of_dim(n - k):
            if degree(multiply(part, cycle_class(fan, tau))):
                return False
    return True


def total_chern(model):
    """``c(TX) cap [X] = prod_rho (1 + [D_rho])``."""
    if not model.is_smooth:
        raise NotSmooth("total_chern needs a smooth model")
    if not model.is_complete:
        raise NotComplete("total_chern needs a complete model")
    out = ChowClass.one(model)
    for r in model.rays:
        out = multiply(out, ChowClass.one(model) + cycle_class(model, (r,)))
    return out


def _inverse_one_plus(model, ray):
    """``(1 + D)^-1`` as a terminating geometric series."""
    d = cycle_class(model, (ray,))
    term = ChowClass.one(model)
    out = ChowClass.one(model)
    for k in range(1, model.rank + 1):
        term = multiply(term, -d)
        if not term:
            break
        out = out + term
    return out


def log_chern(model, atoms):
    """``c(TX) * prod_j (1 + E_j)^-1`` for distinct boundary divisors E_j."""
    atoms = [tuple(a) for a in atoms]
    if len(set(atoms)) != len(atoms):
        raise NotSNC("repeated atom")
    for a in atoms:
        if a not in model.rays:
            raise NotSNC(f"{a} is not a boundary divisor of the model")
    if not model.is_smooth:
        raise NotSmooth("log_chern needs a smooth model")
    out = ChowClass.one(model)
    for r in model.rays:
        out = multiply(out, ChowClass.one(model) + cycle_class(model, (r,)))
    for a in sorted(atoms):
        out = multiply(out, _inverse_one_plus(model, a))
    return out


# -- functoriality --------------------------------------------------------

def pushforward(sub, a):
    """Proper pushforward along the blow-down of a star subdivision."""
    if a.model != sub.after:
        raise ModelMismatch("class does not live on the subdivided model")
    return pushforward_to(sub.before, a)


def pushforward_to(target, a):
    """Pushforward to a coarser fan ``target`` refined by ``a.model``."""
    acc = {}
    for cone, c in a.terms.items():
        if cone:
            v = tuple(sum(col) for col in zip(*cone))
            image, _ = barycentric_coords(target, v)
        else:
            image = ()
        if len(image) != len(cone):
            continue
        s = acc.get(image)
        acc[image] = c if s is None else s + c
    return ChowClass._from_clean(target, {k: v for k, v in acc.items() if v})


def pullback_divisor(sub, d):
    """Pull back an invariant Q-divisor ``{ray: coeff}`` along ``sub``."""
    d = {tuple(r): as_scalar(c) for r, c in d.items()}
    for r in d:
        if r not in sub.before.rays:
            raise ModelMismatch(f"{r} is not a ray of the subdivided fan")
    out = dict(d)
    val = Scalar.const(0)
    for r, c in zip(sub.target_cone, sub.coords):
        if r in d:
            val = val + d[r] * c
    if val:
        out[sub.new_ray] = val
    return {r: c for r, c in out.items() if c}
