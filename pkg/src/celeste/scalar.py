"""Exact rational functions in one formal variable ``m``.

A :class:`Scalar` is a reduced fraction ``num(m) / den(m)`` of polynomials
with rational coefficients, ``den`` monic.  Purely numeric values are the
special case of constant polynomials and take a fast path through
:class:`fractions.Fraction`.
"""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering
from math import lcm

# Polynomials are tuples of Fractions, lowest degree first, no trailing zeros.
_ZERO: tuple = ()
_ONE = (Fraction(1),)


def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(p)


def _padd(p, q):
    if len(p) < len(q):
        p, q = q, p
    out = list(p)
    for i, c in enumerate(q):
        out[i] += c
    return _trim(out)


def _pneg(p):
    return tuple(-c for c in p)


def _pmul(p, q):
    if not p or not q:
        return _ZERO
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return _trim(out)


def _pscale(p, c):
    if c == 0:
        return _ZERO
    return tuple(a * c for a in p)


def _pdivmod(p, q):
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = list(p)
    dq = len(q) - 1
    lead = q[-1]
    quo = [Fraction(0)] * max(len(p) - dq, 0)
    for k in range(len(p) - 1 - dq, -1, -1):
        c = r[k + dq] / lead
        quo[k] = c
        if c:
            for i, b in enumerate(q):
                r[k + i] -= c * b
    return _trim(quo), _trim(r[:dq])


def _pmonic(p):
    return _pscale(p, 1 / p[-1])


def _pgcd(p, q):
    while q:
        p, q = q, _pdivmod(p, q)[1]
    return _pmonic(p) if p else _ONE


def _peval(p, x):
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


@total_ordering
class Scalar:
    """Element of Q(m), kept in canonical reduced form."""

    __slots__ = ("num", "den")

    def __init__(self, num=0, den=None):
        if isinstance(num, Scalar) and den is None:
            self.num, self.den = num.num, num.den
            return
        n = _as_poly(num)
        d = _ONE if den is None else _as_poly(den)
        if not d:
            raise ZeroDivisionError("Scalar with zero denominator")
        if not n:
            self.num, self.den = _ZERO, _ONE
            return
        if len(d) > 1:
            g = _pgcd(n, d)
            if len(g) > 1:
                n = _pdivmod(n, g)[0]
                d = _pdivmod(d, g)[0]
        lead = d[-1]
        if lead != 1:
            n = _pscale(n, 1 / lead)
            d = _pscale(d, 1 / lead)
        self.num, self.den = n, d

    @classmethod
    def _raw(cls, num, den):
        s = object.__new__(cls)
        s.num, s.den = num, den
        return s

    @classmethod
    def m(cls):
        """The formal variable."""
        return cls._raw((Fraction(0), Fraction(1)), _ONE)

    @classmethod
    def const(cls, c):
        c = Fraction(c)
        return cls._raw((c,) if c else _ZERO, _ONE)

    @classmethod
    def linear(cls, alpha, beta):
        """``alpha + beta*m``."""
        return cls._raw(_trim((Fraction(alpha), Fraction(beta))), _ONE)

    # -- predicates -------------------------------------------------------
    @property
    def is_constant(self):
        return len(self.den) == 1 and len(self.num) <= 1

    @property
    def is_polynomial(self):
        return len(self.den) == 1

    def is_zero(self):
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def constant_value(self):
        """The value as a Fraction; raises ValueError if ``m`` occurs."""
        if not self.is_constant:
            raise ValueError(f"{self} depends on m")
        return self.num[0] if self.num else Fraction(0)

    @property
    def degree(self):
        """Polynomial degree in m (``-1`` for zero); only for polynomials."""
        if not self.is_polynomial:
            raise ValueError(f"{self} is not a polynomial")
        return len(self.num) - 1

    def coefficients(self):
        """Coefficients of a polynomial scalar, lowest degree first."""
        if not self.is_polynomial:
            raise ValueError(f"{self} is not a polynomial")
        return self.num

    def __call__(self, x):
        """Evaluate at ``m = x``."""
        x = Fraction(x)
        d = _peval(self.den, x)
        if d == 0:
            raise ZeroDivisionError(f"{self} has a pole at m={x}")
        return _peval(self.num, x) / d

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        if self.is_constant and o.is_constant:
            return Scalar.const(self._c() + o._c())
        if self.den == o.den:
            return Scalar(_padd(self.num, o.num), self.den)
        return Scalar(_padd(_pmul(self.num, o.den), _pmul(o.num, self.den)),
                      _pmul(self.den, o.den))

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw(_pneg(self.num), self.den)

    def __sub__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        if self.is_constant and o.is_constant:
            return Scalar.const(self._c() * o._c())
        if o.is_constant:
            return Scalar._raw(_pscale(self.num, o._c()), self.den) if o else Scalar()
        if self.is_constant:
            return Scalar._raw(_pscale(o.num, self._c()), o.den) if self else Scalar()
        return Scalar(_pmul(self.num, o.num), _pmul(self.den, o.den))

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of zero Scalar")
        return Scalar(self.den, self.num)

    def __truediv__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return o
        if o.is_constant:
            c = o._c()
            if c == 0:
                raise ZeroDivisionError("Scalar division by zero")
            return Scalar._raw(_pscale(self.num, 1 / c), self.den)
        return self * o.inverse()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = Scalar.const(1)
        for _ in range(k):
            out = out * self
        return out

    def _c(self):
        return self.num[0] if self.num else Fraction(0)

    # -- comparison -------------------------------------------------------
    def __eq__(self, other):
        o = _coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __lt__(self, other):
        # only meaningful for numeric values
        return self.constant_value() < _coerce(other).constant_value()

    def __hash__(self):
        if self.is_constant:
            return hash(self._c())
        return hash((self.num, self.den))

    # -- printing ---------------------------------------------------------
    def __repr__(self):
        return f"Scalar({str(self)!r})"

    def __str__(self):
        return format_scalar(self)


def _as_poly(x):
    if isinstance(x, Scalar):
        if not x.is_polynomial:
            raise TypeError("expected a polynomial Scalar")
        return x.num
    if isinstance(x, (int, Fraction)):
        x = Fraction(x)
        return (x,) if x else _ZERO
    return _trim(Fraction(c) for c in x)


def _coerce(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, (int, Fraction)):
        return Scalar.const(x)
    return NotImplemented


def as_scalar(x):
    """Coerce ints, Fractions, numeric strings and Scalars to Scalar."""
    if isinstance(x, str):
        return parse_scalar(x)
    o = _coerce(x)
    if o is NotImplemented:
        raise TypeError(f"cannot interpret {x!r} as a Scalar")
    return o


def parse_scalar(text):
    """Parse a rational number or a polynomial expression in ``m``.

    Accepts forms such as ``3``, ``-1/2``, ``m``, ``2m+1``, ``1/2*m - 3``.
    """
    import sympy
    from sympy.parsing.sympy_parser import (
        implicit_multiplication_application, parse_expr, standard_transformations)

    m = sympy.Symbol("m")
    try:
        expr = parse_expr(text.replace("^", "**"), local_dict={"m": m},
                          transformations=standard_transformations
                          + (implicit_multiplication_application,),
                          evaluate=True)
        num, den = sympy.fraction(sympy.together(expr))
        pn, pd = sympy.Poly(num, m), sympy.Poly(den, m)
        if pn.free_symbols - {m} or pd.free_symbols - {m}:
            raise ValueError
        if not (pn.domain.is_QQ or pn.domain.is_ZZ) or not (pd.domain.is_QQ or pd.domain.is_ZZ):
            raise ValueError
    except Exception as exc:  # sympy raises a zoo of exception types
        raise ValueError(f"cannot parse scalar {text!r}") from exc

    def coeffs(p):
        return [Fraction(int(c.p), int(c.q)) for c in reversed(p.all_coeffs())]

    return Scalar(coeffs(pn), coeffs(pd))


# -- formatting ----------------------------------------------------------

def _fmt_frac(c):
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _fmt_intpoly(coeffs):
    """Integer polynomial, lowest degree first, as e.g. ``6m^2+11m+5``."""
    parts = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if k == 0:
            body = str(a)
        else:
            body = ("" if a == 1 else str(a)) + ("m" if k == 1 else f"m^{k}")
        parts.append((sign, body))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        out += sign + body
    return out


def _primitive(poly):
    """Split a rational polynomial into (content, primitive integer coeffs)."""
    den = lcm(*(c.denominator for c in poly))
    ints = [int(c * den) for c in poly]
    from math import gcd
    g = 0
    for x in ints:
        g = gcd(g, x)
    if ints[-1] < 0:
        g = -g
    return Fraction(g, den), [x // g for x in ints]


def _factor_den(den):
    """Factor a monic rational polynomial into primitive integer factors."""
    import sympy

    m = sympy.Symbol("m")
    poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(den)], m)
    content, factors = sympy.factor_list(poly)
    out = []
    for f, k in factors:
        cs = [Fraction(int(c.p), int(c.q)) for c in reversed(f.all_coeffs())]
        out.append((cs, k))
    out.sort(key=lambda fk: (len(fk[0]), [abs(c) for c in reversed(fk[0])]))
    return Fraction(int(sympy.Rational(content).p), int(sympy.Rational(content).q)), out


def format_scalar(s):
    """Human-readable form, e.g. ``(4m+5)/((m+1)(6m+5))`` or ``3/2``."""
    if s.is_constant:
        return _fmt_frac(s._c())
    num = s.num
    if s.is_polynomial:
        content, prim = _primitive(num)
        body = _fmt_intpoly([x * content.numerator for x in prim])
        if content.denominator == 1:
            return body
        if len([x for x in prim if x]) > 1:
            body = f"({body})"
        return f"{body}/{content.denominator}"
    dcontent, factors = _factor_den(s.den)
    # s = num / (dcontent * prod f^k)
    ncontent, nprim = _primitive(num)
    c = ncontent / dcontent
    numer_int = [x * c.numerator for x in nprim]
    numer = _fmt_intpoly(numer_int)
    if len([x for x in numer_int if x]) > 1:
        numer = f"({numer})"
    dparts = []
    if c.denominator != 1:
        dparts.append(str(c.denominator))
    for f, k in factors:
        piece = f"({_fmt_intpoly(f)})"
        if k > 1:
            piece += f"^{k}"
        dparts.append(piece)
    if len(dparts) == 1 and dparts[0].startswith("("):
        den = dparts[0]
    else:
        den = "(" + "".join(dparts) + ")"
    return f"{numer}/{den}"
