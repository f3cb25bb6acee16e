"""Local blow-ups of 1-forms and curves: strict transforms, characteristic
polynomials, singularity classification, and curve tracking through charts.

All local data lives at an origin of a two-variable chart.  Blowing up at a
divisor coordinate lambda recentres first, so every blow-up is a blow-up at
the local origin; the V1 chart keeps the first variable as the divisor
equation, the V2 chart keeps the second.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt

from .field import FieldElement
from .poly import MultiPoly, poly_gcd

V1 = "V1"
V2 = "V2"

NONSINGULAR = "nonsingular"
SIMPLE = "simple"
ORDINARY = "ordinary-nondicritical"
DICRITICAL = "dicritical"


class DivisibilityViolation(RuntimeError):
    """The exceptional power removed by a blow-up was not m or m+1."""


@dataclass(frozen=True)
class LocalOneForm:
    """a d(first) + b d(second) at a chart origin."""

    a: MultiPoly
    b: MultiPoly
    vars: tuple
    frame: tuple = ()

    def __post_init__(self):
        if tuple(sorted(self.vars)) != self.vars:
            raise ValueError("local variables must be given in sorted order")

    def is_zero(self):
        return self.a.is_zero() and self.b.is_zero()

    def __str__(self):
        u, v = self.vars
        return f"({self.a}) d{u} + ({self.b}) d{v}"


@dataclass
class TrackedCurve:
    """A curve followed through a chain of blow-ups by its local equation."""

    label: str
    equation: MultiPoly

    def passes_through_origin(self):
        eq = self.equation
        o = eq.order()
        return o is not None and o >= 1


def multiplicity(omega):
    """Algebraic multiplicity at the origin: the order of the lowest jet."""
    if omega.is_zero():
        raise ValueError("zero 1-form")
    orders = [p.order() for p in (omega.a, omega.b) if not p.is_zero()]
    return min(orders)


def char_poly(omega):
    """Characteristic polynomial of the lowest jet.

    With omega = p dy - q dx (so p is the second component and q minus the
    first), this is y p_m - x q_m; identically zero exactly at dicritical
    singularities.
    """
    m = multiplicity(omega)
    u, v = omega.vars
    up = MultiPoly.variable(u, omega.a.tower)
    vp = MultiPoly.variable(v, omega.a.tower)
    am = omega.a.with_vars(omega.vars).initial_form(m)
    bm = omega.b.with_vars(omega.vars).initial_form(m)
    return vp * bm + up * am


def _div_power(p, var, e):
    if e == 0 or p.is_zero():
        return p
    i = p.vars.index(var)
    terms = {}
    for exps, c in p.terms.items():
        if exps[i] < e:
            return None
        terms[exps[:i] + (exps[i] - e,) + exps[i + 1 :]] = c
    return MultiPoly(p.vars, terms, p.tower)


def _common_power(polys, var):
    e = None
    for p in polys:
        if p.is_zero():
            continue
        i = p.vars.index(var)
        low = min(exps[i] for exps in p.terms)
        e = low if e is None else min(e, low)
    return 0 if e is None else e


def blow_up_form(omega, center, branch):
    """Strict transform of omega under one blow-up.

    branch V1 pulls back along (u, v) = (u, u(t + center)) and keeps (u, t)
    (the divisor is u = 0); branch V2 along (u, v) = (v(s + center), v) and
    keeps (s, v).  Both components are divided by the maximal common power e
    of the divisor variable; e must be m (non-dicritical) or m+1
    (dicritical).
    """
    m = multiplicity(omega)
    u, v = omega.vars
    tower = omega.a.tower
    if isinstance(center, FieldElement):
        lam = MultiPoly.constant(center)
        tower = center.tower if center.tower.depth > tower.depth else tower
    else:
        lam = MultiPoly.constant(Fraction(center), (), tower)
    up = MultiPoly.variable(u, tower)
    vp = MultiPoly.variable(v, tower)
    if branch == V1:
        sub = {v: up * (vp + lam)}
        a0 = omega.a.substitute(sub)
        b0 = omega.b.substitute(sub)
        na = a0 + (vp + lam) * b0
        nb = up * b0
        divisor_var = u
    elif branch == V2:
        sub = {u: vp * (up + lam)}
        a0 = omega.a.substitute(sub)
        b0 = omega.b.substitute(sub)
        na = vp * a0
        nb = (up + lam) * a0 + b0
        divisor_var = v
    else:
        raise ValueError("branch must be V1 or V2")
    na = na.with_vars(omega.vars)
    nb = nb.with_vars(omega.vars)
    e = _common_power([na, nb], divisor_var)
    dicritical = char_poly(omega).is_zero()
    expected = m + 1 if dicritical else m
    if e != expected:
        raise DivisibilityViolation(
            f"removed exceptional power {e}, expected {expected}"
        )
    na = _div_power(na, divisor_var, e)
    nb = _div_power(nb, divisor_var, e)
    key = center.sort_key() if isinstance(center, FieldElement) else (Fraction(center),)
    return LocalOneForm(na, nb, omega.vars, omega.frame + ((branch, key),))


def blow_up_curve(equation, center, branch, vars):
    """Strict transform of a local curve under the same blow-up maps.

    Divides the pull-back by the divisor variable to the multiplicity of the
    curve at the blown-up origin.  Returns the new local equation.
    """
    u, v = vars
    mult = equation.order()
    if mult is None:
        raise ValueError("zero curve cannot be tracked")
    tower = equation.tower
    if isinstance(center, FieldElement):
        lam = MultiPoly.constant(center)
        if center.tower.depth > tower.depth:
            tower = center.tower
    else:
        lam = MultiPoly.constant(Fraction(center), (), tower)
    up = MultiPoly.variable(u, tower)
    vp = MultiPoly.variable(v, tower)
    if branch == V1:
        pulled = equation.substitute({v: up * (vp + lam)}).with_vars(vars)
        divisor_var = u
    elif branch == V2:
        pulled = equation.substitute({u: vp * (up + lam)}).with_vars(vars)
        divisor_var = v
    else:
        raise ValueError("branch must be V1 or V2")
    out = _div_power(pulled, divisor_var, mult)
    if out is None:
        raise DivisibilityViolation("curve pull-back not divisible to multiplicity")
    return out


def _is_rational_square(q):
    if q < 0:
        return False
    n, d = q.numerator, q.denominator
    return isqrt(n) ** 2 == n and isqrt(d) ** 2 == d


def _ratio_in_positive_rationals(T, Delta):
    """Whether the two eigenvalues of a matrix with trace T and determinant
    Delta != 0 have a ratio in Q+ (exact test)."""
    if Delta.is_zero():
        raise ValueError("Delta must be nonzero here")
    s = (T * T) / Delta - 2
    sq = s.is_rational()
    if sq is None:
        return False
    # ratio + 1/ratio = s; real positive ratio needs s >= 2, rational ratio
    # needs the discriminant s^2 - 4 to be a rational square
    return sq >= 2 and _is_rational_square(sq * sq - 4)


def classify(omega):
    """One of nonsingular / simple / ordinary-nondicritical / dicritical."""
    if omega.is_zero():
        raise ValueError("zero 1-form")
    m = multiplicity(omega)
    if m == 0:
        return NONSINGULAR
    if char_poly(omega).is_zero():
        return DICRITICAL
    if m != 1:
        return ORDINARY
    u, v = omega.vars
    # linear part of the dual vector field (p, q) = (b, -a)
    p1 = omega.b.initial_form(1).with_vars(omega.vars)
    q1 = (-omega.a).initial_form(1).with_vars(omega.vars)
    a11 = p1.coefficient((1, 0))
    a12 = p1.coefficient((0, 1))
    a21 = q1.coefficient((1, 0))
    a22 = q1.coefficient((0, 1))
    T = a11 + a22
    Delta = a11 * a22 - a12 * a21
    if Delta.is_zero():
        # one eigenvalue zero: simple iff the other is not (T != 0)
        return SIMPLE if not T.is_zero() else ORDINARY
    if _ratio_in_positive_rationals(T, Delta):
        return ORDINARY
    return SIMPLE
