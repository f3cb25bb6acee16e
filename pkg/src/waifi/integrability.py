"""Deciding WAI polynomial integrability.

Given the dicritical configuration of a reduced vector field, this module
builds the vector family S, computes the orthogonal vector R, extracts the
candidate curves from cluster linear systems, solves for the exponents
(either through the pairing decomposition or through Darboux cofactors),
and verifies the product is a first integral.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import linalg
from .field import FieldElement, QQ_TOWER
from .infnear import Cluster, PairingVector, e_vector, multiplicity_system, pairing
from .linsys import EmptySystem, linear_system
from .poly import MultiPoly
from .reduction import (
    StructureMismatch,
    dicritical_points,
    max_free_points,
    reduce as reduce_form,
)
from .vfield import (
    AffineVectorField,
    NotInvariant,
    cofactor,
    projectivize,
    verify_first_integral,
)

LINE_NOT_INVARIANT = "line-not-invariant"
WRONG_FREE_MAXIMAL_COUNT = "wrong-free-maximal-count"
S_DEPENDENT = "S-dependent"
R_NOT_RANK_ONE = "R-not-rank-one"
R_NON_INTEGRAL = "R-non-integral"
DEGREE_CHECKS_FAILED = "degree-checks-failed"
CURVE_NOT_UNIQUE = "curve-not-unique"
EXPONENTS_INVALID = "exponents-invalid"
VERIFICATION_FAILED = "verification-failed"


class AnalysisFailure(Exception):
    """A Theorem-level check failed: the field has no WAI first integral."""

    def __init__(self, reason, detail=""):
        super().__init__(f"{reason}: {detail}" if detail else reason)
        self.reason = reason


class NoAdmissiblePlacement(ValueError):
    pass


@dataclass
class SFamily:
    configuration: object
    maximal: list          # R_1..R_r (pids)
    free_maximal: list     # M_1..M_r (pids)
    c_vectors: list        # PairingVector per R_i
    e_vectors: dict        # pid -> PairingVector, over N(X)
    h_systems: list        # per i: pid -> multiplicity
    d_values: list         # per i: degree d_i
    infinity: frozenset


@dataclass
class IntegralCertificate:
    factors: list          # affine MultiPoly, possibly over an extension
    exponents: list
    degree: int
    R: PairingVector
    residual: MultiPoly
    route: str
    display_factors: list  # after conjugate recombination
    display_exponents: list

    def as_json(self):
        return {
            "degree": self.degree,
            "factors": [
                {"poly": f.to_string(), "exponent": n}
                for f, n in zip(self.display_factors, self.display_exponents)
            ],
            "R": [str(x) for x in self.R.as_list()],
            "route": self.route,
            "residual": "0",
            "reason": None,
        }


def _maximal_free_structure(conf):
    """R_i, M_i for a dicritical configuration; StructureMismatch when the
    free/maximal shape rules out a WAI integral."""
    R = conf.maximal_points()
    free = set(conf.free_points())
    maximal_free = [
        pid
        for pid in conf.order
        if pid in free
        and not any(q != pid and pid in conf.ancestors(q) for q in free)
    ]
    if len(maximal_free) != len(R):
        raise StructureMismatch(
            f"{len(maximal_free)} maximal free points, {len(R)} maximal"
        )
    M = []
    for rid in R:
        best = None
        for pid in conf.ancestors(rid):
            if pid in free:
                best = pid
        if best is None or best not in maximal_free:
            raise StructureMismatch(f"no maximal free point under {rid}")
        M.append(best)
    if len(set(M)) != len(M):
        raise StructureMismatch("maximal points share a free point")
    return R, M


def assemble_S_from(conf, infinity):
    """The family S = {c_i} ∪ {e_Q} from combinatorial data alone."""
    R, M = _maximal_free_structure(conf)
    c_vectors = []
    h_systems = []
    d_values = []
    for mid in M:
        sub = conf.subconfiguration(conf.ancestors(mid))
        h = multiplicity_system(sub, conf)
        d = sum(h[q] for q in conf.order if q in infinity)
        c_vectors.append(PairingVector.make(conf, d, h))
        h_systems.append(h)
        d_values.append(d)
    maximal = set(R)
    e_vectors = {
        pid: e_vector(conf, pid) for pid in conf.order if pid not in maximal
    }
    return SFamily(
        configuration=conf,
        maximal=R,
        free_maximal=M,
        c_vectors=c_vectors,
        e_vectors=e_vectors,
        h_systems=h_systems,
        d_values=d_values,
        infinity=frozenset(infinity),
    )


def assemble_S(res):
    return assemble_S_from(
        res.dicritical_configuration,
        frozenset(res.infinity_points) & set(res.dicritical_configuration.order),
    )


def _q(x):
    return FieldElement.rational(Fraction(x), QQ_TOWER)


def compute_R(family):
    """The positive integer generator of the orthogonal complement of S."""
    conf = family.configuration
    S = family.c_vectors + [family.e_vectors[p] for p in sorted(family.e_vectors)]
    rows = []
    for s in S:
        lst = s.as_list()
        rows.append([_q(lst[0])] + [_q(-x) for x in lst[1:]])
    if linalg.rank(rows) < len(S):
        raise AnalysisFailure(S_DEPENDENT, "the family S is linearly dependent")
    vecs = linalg.nullspace(rows)
    if len(vecs) != 1:
        raise AnalysisFailure(R_NOT_RANK_ONE, f"solution space has dim {len(vecs)}")
    raw = []
    for x in vecs[0]:
        q = x.tower.as_rational(x.v)
        if q is None:
            raise AnalysisFailure(R_NON_INTEGRAL, "non-rational solution")
        raw.append(q)
    denom = 1
    for q in raw:
        denom = denom * q.denominator // gcd(denom, q.denominator)
    ints = [int(q * denom) for q in raw]
    g = 0
    for n in ints:
        g = gcd(g, n)
    if g:
        ints = [n // g for n in ints]
    if ints[0] < 0:
        ints = [-n for n in ints]
    if any(n <= 0 for n in ints):
        raise AnalysisFailure(R_NON_INTEGRAL, "R has nonpositive components")
    R = PairingVector.make(conf, ints[0], dict(zip(conf.order, ints[1:])))
    n = R.v0
    inf_sum = sum(R.components[p] for p in conf.order if p in family.infinity)
    if n != inf_sum:
        raise AnalysisFailure(
            DEGREE_CHECKS_FAILED, f"n={n} but sum over infinity points is {inf_sum}"
        )
    if n * n != sum(x * x for x in R.components.values()):
        raise AnalysisFailure(DEGREE_CHECKS_FAILED, "Noether degree identity fails")
    return R


def extract_curves(res, family, R):
    """Defining polynomials F_i of the candidate curves C_i."""
    conf = family.configuration
    plane = {
        pid: res.plane_coords[pid] for pid in conf.roots() if pid in res.plane_coords
    }
    r = len(family.maximal)
    if r == 1:
        n = int(R.v0)
        mults = {pid: int(R.components[pid]) for pid in conf.order}
        K = Cluster(conf, mults)
        try:
            basis = linear_system(n, K, plane_points=plane).basis
        except EmptySystem:
            raise AnalysisFailure(CURVE_NOT_UNIQUE, "empty pencil system")
        if len(basis) != 2:
            raise AnalysisFailure(
                CURVE_NOT_UNIQUE, f"expected a pencil, got dimension {len(basis)}"
            )
        zn = MultiPoly.variable("Z") ** n
        coords = _in_span(zn, basis, n)
        if coords is None:
            raise AnalysisFailure(CURVE_NOT_UNIQUE, "pencil does not contain Z^n")
        member = None
        for b in basis:
            cand = _drop_zn_multiple(b, n)
            if not cand.is_zero():
                member = cand
                break
        if member is None:
            raise AnalysisFailure(CURVE_NOT_UNIQUE, "pencil degenerates to Z^n")
        return [member.monic()]
    curves = []
    for h, d in zip(family.h_systems, family.d_values):
        K = Cluster(conf, {pid: h[pid] for pid in conf.order})
        try:
            basis = linear_system(d, K, plane_points=plane).basis
        except EmptySystem:
            raise AnalysisFailure(CURVE_NOT_UNIQUE, "no curve in the linear system")
        if len(basis) != 1:
            raise AnalysisFailure(
                CURVE_NOT_UNIQUE, f"linear system has dimension {len(basis)}"
            )
        curves.append(basis[0].monic())
    return curves


def _in_span(target, basis, n):
    """Coordinates of target in the span of basis (all degree-n forms)."""
    from .linsys import degree_monomials

    mons = degree_monomials(n)
    tower = basis[0].tower
    for b in basis:
        if b.tower.depth > tower.depth:
            tower = b.tower
    rows = []
    rhs = []
    for exps in mons:
        rows.append([b.lift_to(tower).coefficient(exps) if b.tower.is_prefix_of(tower) else b.coefficient(exps) for b in basis])
        t = target.lift_to(tower) if target.tower.is_prefix_of(tower) else target
        rhs.append(t.coefficient(exps))
    return linalg.solve(rows, rhs)


def _drop_zn_multiple(F, n):
    """Remove the Z^n component of a degree-n form."""
    c = F.coefficient((0, 0, n)) if F.vars == ("X", "Y", "Z") else None
    if c is None:
        F = F.with_vars(("X", "Y", "Z"))
        c = F.coefficient((0, 0, n))
    if c.is_zero():
        return F
    return F - MultiPoly.constant(c) * MultiPoly.variable("Z") ** n


def exponents_pairing(family, R):
    """Solve R = sum n_i c_i + sum b_P e_P in the basis S."""
    e_ids = sorted(family.e_vectors)
    S = family.c_vectors + [family.e_vectors[p] for p in e_ids]
    cols = [s.as_list() for s in S]
    rhs = [_q(x) for x in R.as_list()]
    rows = [[_q(col[k]) for col in cols] for k in range(len(rhs))]
    sol = linalg.solve(rows, rhs)
    if sol is None:
        raise AnalysisFailure(EXPONENTS_INVALID, "R is not in the span of S")
    vals = []
    for x in sol:
        q = x.tower.as_rational(x.v)
        if q is None or q.denominator != 1:
            raise AnalysisFailure(EXPONENTS_INVALID, "non-integer coefficient")
        vals.append(int(q))
    r = len(family.c_vectors)
    n_i = vals[:r]
    b_P = dict(zip(e_ids, vals[r:]))
    if any(n <= 0 for n in n_i):
        raise AnalysisFailure(EXPONENTS_INVALID, "exponents must be positive")
    if any(b < 0 for b in b_P.values()):
        raise AnalysisFailure(EXPONENTS_INVALID, "negative e-coefficients")
    return n_i, b_P


def exponents_darboux(V, factors):
    """Coprime positive integers n_i with sum n_i k_i = 0."""
    cofactors = [cofactor(V, f) for f in factors]
    tower = QQ_TOWER
    for k in cofactors:
        if k.tower.depth > tower.depth:
            tower = k.tower
    cofactors = [
        k.lift_to(tower).with_vars(("x", "y")) if k.tower.is_prefix_of(tower) else k.with_vars(("x", "y"))
        for k in cofactors
    ]
    exps = sorted({e for k in cofactors for e in k.terms})
    if not exps:
        # all cofactors vanish: any positive vector works, take all ones
        return [1] * len(factors)
    rows = [[k.coefficient(e) for k in cofactors] for e in exps]
    vecs = linalg.nullspace(rows)
    if len(vecs) != 1:
        raise AnalysisFailure(
            EXPONENTS_INVALID, f"cofactor relation space has dim {len(vecs)}"
        )
    raw = []
    for x in vecs[0]:
        q = x.tower.as_rational(x.v)
        if q is None:
            raise AnalysisFailure(EXPONENTS_INVALID, "non-rational cofactor relation")
        raw.append(q)
    denom = 1
    for q in raw:
        denom = denom * q.denominator // gcd(denom, q.denominator)
    ints = [int(q * denom) for q in raw]
    g = 0
    for v in ints:
        g = gcd(g, v)
    if g:
        ints = [v // g for v in ints]
    if all(v < 0 for v in ints):
        ints = [-v for v in ints]
    if any(v <= 0 for v in ints):
        raise AnalysisFailure(EXPONENTS_INVALID, "no positive cofactor relation")
    return ints


def _affine(F):
    return F.substitute({"Z": 1}).rename_vars({"X": "x", "Y": "y"})


def _recombine_conjugates(factors, exponents):
    """Group non-rational factors with equal exponent into rational products
    for display; the raw factorization stays in the certificate."""
    out = []
    by_exp = {}
    for f, n in zip(factors, exponents):
        rational = all(f.tower.as_rational(c) is not None for c in f.terms.values())
        if rational and f.tower.depth > 0:
            f = MultiPoly.from_coeff_dict(
                f.vars, {e: f.tower.as_rational(c) for e, c in f.terms.items()}
            )
        if rational:
            out.append((f, n))
        else:
            by_exp.setdefault(n, []).append(f)
    for n, group in by_exp.items():
        prod = group[0]
        for f in group[1:]:
            prod = prod * f
        if all(prod.tower.as_rational(c) is not None for c in prod.terms.values()):
            prod = MultiPoly.from_coeff_dict(
                prod.vars,
                {e: prod.tower.as_rational(c) for e, c in prod.terms.items()},
            )
            out.append((prod.monic() if prod.tower.depth == 0 else prod, n))
        else:
            out.extend((f, n) for f in group)
    return [f for f, _ in out], [n for _, n in out]


def _check_line_invariant(res):
    om = res.one_form
    Z = MultiPoly.variable("Z")
    if om.A.divide_exact(Z) is None or om.B.divide_exact(Z) is None:
        raise AnalysisFailure(LINE_NOT_INVARIANT, "Z=0 is not invariant")
    for rid in res.dicritical_configuration.roots():
        triple = res.plane_coords[rid]
        z0 = triple[2]
        z_zero = z0.is_zero() if isinstance(z0, FieldElement) else z0 == 0
        if not z_zero:
            raise AnalysisFailure(
                LINE_NOT_INVARIANT,
                "a dicritical plane point lies outside the line at infinity",
            )


def _run(V, route, max_depth=64, max_tower_degree=16):
    if not isinstance(V, AffineVectorField):
        raise TypeError("expected an AffineVectorField")
    res = reduce_form(projectivize(V), max_depth=max_depth,
                      max_tower_degree=max_tower_degree)
    _check_line_invariant(res)
    try:
        family = assemble_S(res)
    except StructureMismatch as exc:
        raise AnalysisFailure(WRONG_FREE_MAXIMAL_COUNT, str(exc))
    R = compute_R(family)
    curves = extract_curves(res, family, R)
    n = int(R.v0)
    factors = [_affine(F) for F in curves]
    if route == "pairing":
        n_i, _ = exponents_pairing(family, R)
    else:
        try:
            n_i = exponents_darboux(V, factors)
        except NotInvariant as exc:
            raise AnalysisFailure(VERIFICATION_FAILED, str(exc))
    if sum(ni * F.total_degree() for ni, F in zip(n_i, curves)) != n:
        raise AnalysisFailure(DEGREE_CHECKS_FAILED, "exponent degrees do not sum to n")
    g = 0
    for ni in n_i:
        g = gcd(g, ni)
    if g != 1:
        raise AnalysisFailure(EXPONENTS_INVALID, "exponents are not coprime")
    H = MultiPoly.constant(1, ("x", "y"))
    for f, ni in zip(factors, n_i):
        H = H * f ** ni
    ok, residual = verify_first_integral(V, H)
    if not ok:
        raise AnalysisFailure(VERIFICATION_FAILED, "residual is nonzero")
    # second, independent verification through cofactors
    try:
        combo = MultiPoly.zero(("x", "y"))
        for f, ni in zip(factors, n_i):
            combo = combo + ni * cofactor(V, f)
        if not combo.is_zero():
            raise AnalysisFailure(VERIFICATION_FAILED, "cofactor relation fails")
    except NotInvariant as exc:
        raise AnalysisFailure(VERIFICATION_FAILED, str(exc))
    disp_f, disp_e = _recombine_conjugates(factors, n_i)
    return IntegralCertificate(
        factors=factors,
        exponents=n_i,
        degree=n,
        R=R,
        residual=residual,
        route=route,
        display_factors=disp_f,
        display_exponents=disp_e,
    )


def algorithm1(V, **kw):
    """Pairing-route decision: a certificate, or (None, reason)."""
    try:
        return _run(V, "pairing", **kw), None
    except AnalysisFailure as exc:
        return None, exc.reason


def algorithm2(V, **kw):
    """Darboux-route decision: a certificate, or (None, reason)."""
    try:
        return _run(V, "darboux", **kw), None
    except AnalysisFailure as exc:
        return None, exc.reason


def poincare_degree(conf, infinity):
    """Degree and exponents of the minimal integral from combinatorial data
    (the proximity structure of D(X) and the infinity points)."""
    try:
        family = assemble_S_from(conf, frozenset(infinity))
    except StructureMismatch as exc:
        raise AnalysisFailure(WRONG_FREE_MAXIMAL_COUNT, str(exc))
    R = compute_R(family)
    n_i, _ = exponents_pairing(family, R)
    return int(R.v0), n_i


def _free_prefix_chains(conf, root):
    """All downward chains of consecutive free points starting at a root."""
    chains = []

    def grow(chain):
        chains.append(tuple(chain))
        tip = chain[-1]
        for cid in conf.children(tip):
            if conf.point(cid).free:
                grow(chain + [cid])

    grow([root])
    return chains


def poincare_bound(conf):
    """Largest degree over the admissible placements of the infinity line."""
    from itertools import product

    per_root = [_free_prefix_chains(conf, rid) for rid in conf.roots()]
    best = None
    for combo in product(*per_root):
        infinity = frozenset(pid for chain in combo for pid in chain)
        try:
            n, _ = poincare_degree(conf, infinity)
        except AnalysisFailure:
            continue
        if best is None or n > best:
            best = n
    if best is None:
        raise NoAdmissiblePlacement("every infinity-line placement fails")
    return best
