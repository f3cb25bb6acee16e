"""Affine polynomial vector fields, their projective 1-forms, chart
restrictions, invariant curves and cofactors."""

from __future__ import annotations

from dataclasses import dataclass

from .blowup import LocalOneForm
from .poly import MultiPoly, poly_gcd


class NotInvariant(ValueError):
    """The candidate curve is not invariant for the vector field."""


@dataclass(frozen=True)
class AffineVectorField:
    """The system x' = p(x,y), y' = q(x,y)."""

    p: MultiPoly
    q: MultiPoly

    def __post_init__(self):
        if self.p.is_zero() and self.q.is_zero():
            raise ValueError("p and q cannot both vanish")
        bad = set(self.p.effective_vars() + self.q.effective_vars()) - {"x", "y"}
        if bad:
            raise ValueError(f"vector field must use x,y only, found {sorted(bad)}")

    @property
    def degree(self):
        return max(self.p.total_degree(), self.q.total_degree())


@dataclass(frozen=True)
class ProjectiveOneForm:
    """A dX + B dY + C dZ with XA + YB + ZC = 0."""

    A: MultiPoly
    B: MultiPoly
    C: MultiPoly

    def check(self):
        X = MultiPoly.variable("X")
        Y = MultiPoly.variable("Y")
        Z = MultiPoly.variable("Z")
        if not (X * self.A + Y * self.B + Z * self.C).is_zero():
            raise ValueError("XA+YB+ZC != 0")
        for comp in (self.A, self.B, self.C):
            if not comp.is_homogeneous():
                raise ValueError("components must be homogeneous")

    def reduced(self):
        """Divide out the common polynomial factor of A, B, C."""
        g = poly_gcd(poly_gcd(self.A, self.B), self.C)
        if g.is_constant() or g.is_zero():
            return self
        return ProjectiveOneForm(
            self.A.divide_exact(g), self.B.divide_exact(g), self.C.divide_exact(g)
        )

    def components_gcd(self):
        return poly_gcd(poly_gcd(self.A, self.B), self.C)


def homogenize(p, d, vars=("X", "Y", "Z")):
    """Z^d p(X/Z, Y/Z) as a degree-d homogeneous polynomial."""
    VX, VY, VZ = vars
    terms = {}
    for e, c in p.terms.items():
        exp = dict(zip(p.vars, e))
        a = exp.get("x", 0)
        b = exp.get("y", 0)
        if a + b > d:
            raise ValueError("degree of p exceeds homogenization degree")
        terms[(a, b, d - a - b)] = c
    out = MultiPoly((VX, VY, VZ), terms, p.tower)
    return out._reorder(tuple(sorted((VX, VY, VZ))))


def projectivize(V):
    """Extend the affine field to the projective plane as a 1-form.

    With P = Z^d p(X/Z,Y/Z) and Q likewise, returns the form with components
    A = -ZQ, B = ZP, C = XQ - YP (so the affine restriction is p dy - q dx
    and the line at infinity is invariant).
    """
    d = V.degree
    Z = MultiPoly.variable("Z")
    X = MultiPoly.variable("X")
    Y = MultiPoly.variable("Y")
    P = homogenize(V.p, d)
    Q = homogenize(V.q, d)
    return ProjectiveOneForm(-(Z * Q), Z * P, X * Q - Y * P)


#: chart name -> (set-to-one variable, local variable names in order)
CHARTS = {
    "X": ("X", ("y", "z")),
    "Y": ("Y", ("x", "z")),
    "Z": ("Z", ("x", "y")),
}


def restrict_to_chart(omega, chart):
    """Restrict to an affine chart; returns a LocalOneForm in the two chart
    variables, reduced by the gcd of its components."""
    if chart not in CHARTS:
        raise ValueError("chart must be one of 'X', 'Y', 'Z'")
    one_var, (u, v) = CHARTS[chart]
    others = [w for w in ("X", "Y", "Z") if w != one_var]
    sub = {one_var: 1, others[0]: MultiPoly.variable(u), others[1]: MultiPoly.variable(v)}
    comps = {"X": omega.A, "Y": omega.B, "Z": omega.C}
    a = comps[others[0]].substitute(sub)
    b = comps[others[1]].substitute(sub)
    g = poly_gcd(a, b)
    if not (g.is_constant() or g.is_zero()):
        a = a.divide_exact(g)
        b = b.divide_exact(g)
    return LocalOneForm(a.with_vars((u, v)), b.with_vars((u, v)), (u, v), frame=(chart,))


def cofactor(V, f):
    """Exact cofactor k with p f_x + q f_y = k f; raises NotInvariant."""
    if f.is_constant():
        raise ValueError("curve must be nonconstant")
    lie = V.p * f.diff("x") + V.q * f.diff("y")
    if lie.is_zero():
        return MultiPoly.zero(("x", "y"), lie.tower)
    k = lie.divide_exact(f)
    if k is None:
        raise NotInvariant(f"{f} is not invariant")
    return k


def verify_first_integral(V, H):
    """(is_integral, residual) with residual = p H_x + q H_y."""
    if H.is_constant():
        raise ValueError("candidate first integral must be nonconstant")
    residual = V.p * H.diff("x") + V.q * H.diff("y")
    return residual.is_zero(), residual
