"""Linear systems of curves through clusters, and base-point clusters of
pencils.

The linear system L_m(K) is assembled by carrying a generic degree-m curve
with symbolic coefficients through the virtual transforms of the cluster:
at each point every jet coefficient below the virtual multiplicity is a
linear functional of the unknowns, and the system's basis is the nullspace
of the collected constraints.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .blowup import V1, V2, _div_power, blow_up_curve
from .factor import roots_in_extension
from .field import FieldElement, QQ_TOWER, Tower
from .infnear import Cluster, Configuration, InfNearPoint
from .linalg import nullspace
from .poly import MultiPoly, poly_gcd, resultant


class EmptySystem(ValueError):
    """Only the zero polynomial passes through the cluster."""


class CommonComponent(ValueError):
    """The two pencil generators share a polynomial factor."""


@dataclass
class LinearSystemBasis:
    degree: int
    cluster: Cluster
    basis: list
    monomials: list


def degree_monomials(m):
    """Exponents (a, b, c) of the degree-m monomials X^a Y^b Z^c, in a fixed
    canonical (descending) order."""
    out = []
    for a in range(m, -1, -1):
        for b in range(m - a, -1, -1):
            out.append((a, b, m - a - b))
    return out


def _generic_curve(m, tower):
    mons = degree_monomials(m)
    names = [f"@c{j}" for j in range(len(mons))]
    F = MultiPoly.zero(tuple(sorted(names + ["X", "Y", "Z"])), tower)
    for name, (a, b, c) in zip(names, mons):
        F = F + (
            MultiPoly.variable(name, tower)
            * MultiPoly.variable("X", tower) ** a
            * MultiPoly.variable("Y", tower) ** b
            * MultiPoly.variable("Z", tower) ** c
        )
    return F, names, mons


def _as_field(value, tower):
    if isinstance(value, FieldElement):
        return value.lift_to(tower)
    return FieldElement.rational(value, tower)


def _localize(F, triple, tower):
    """Local equation of the generic curve at a plane point, in variables
    (u, v) matching the chart conventions of the reduction driver."""
    x0, y0, z0 = (_as_field(c, tower) for c in triple)
    u = MultiPoly.variable("u", tower)
    v = MultiPoly.variable("v", tower)
    if not z0.is_zero():
        sub = {
            "Z": 1,
            "X": u + MultiPoly.constant(x0 / z0),
            "Y": v + MultiPoly.constant(y0 / z0),
        }
    elif not y0.is_zero():
        sub = {
            "Y": 1,
            "X": u + MultiPoly.constant(x0 / y0),
            "Z": v,
        }
    else:
        sub = {"X": 1, "Y": u, "Z": v}
    return F.substitute(sub)


def _split_jet(eq, mu, cindex):
    """Constraint rows from all terms of (u,v)-degree below mu, and the
    polynomial with those terms removed."""
    iu = eq.vars.index("u") if "u" in eq.vars else None
    iv = eq.vars.index("v") if "v" in eq.vars else None
    tower = eq.tower
    U = len(cindex)
    groups = {}
    keep = {}
    for exps, c in eq.terms.items():
        d = (exps[iu] if iu is not None else 0) + (
            exps[iv] if iv is not None else 0
        )
        if d >= mu:
            keep[exps] = c
            continue
        j = None
        rest = []
        for var, e in zip(eq.vars, exps):
            if var in cindex:
                if e:
                    j = cindex[var]
            elif var not in ("u", "v"):
                rest.append((var, e))
        if j is None:
            raise EmptySystem("constant obstruction in a virtual transform")
        key = tuple(
            e if var in ("u", "v") else 0 for var, e in zip(eq.vars, exps)
        )
        row = groups.setdefault(key, [tower.zero()] * U)
        row[j] = tower.add(row[j], c)
    rows = [
        [FieldElement(tower, c) for c in row] for row in groups.values()
    ]
    return rows, MultiPoly(eq.vars, keep, tower)


def _virtual_children(eq, mu, conf, pid):
    """Virtual transforms of eq (already pruned below mu) at the children of
    pid, recentred at each child."""
    out = []
    tower = eq.tower
    u = MultiPoly.variable("u", tower)
    v = MultiPoly.variable("v", tower)
    for cid in conf.children(pid):
        child = conf.point(cid)
        lam = child.coordinate
        if lam is None:
            lam = FieldElement.rational(0, tower)
        lam_c = MultiPoly.constant(_as_field(lam, tower))
        if child.branch == V1:
            pulled = eq.substitute({"v": u * (v + lam_c)})
            divisor = "u"
        else:
            pulled = eq.substitute({"u": v * (u + lam_c)})
            divisor = "v"
        pulled = pulled.with_vars(eq.vars)
        divided = _div_power(pulled, divisor, mu)
        if divided is None:
            raise AssertionError("virtual transform not divisible after pruning")
        out.append((cid, divided))
    return out


def linear_system(m, K, plane_points=None):
    """Basis of the curves of degree m passing virtually through the cluster
    K.  Plane (root) locations are taken from the root points' coordinate
    triples, or from plane_points[pid]."""
    if m < 1:
        raise ValueError("degree must be at least 1")
    conf = K.configuration
    plane_points = plane_points or {}
    tower = QQ_TOWER
    for pid in conf.order:
        c = conf.point(pid).coordinate
        if isinstance(c, FieldElement) and c.tower.depth > tower.depth:
            tower = c.tower
        if isinstance(c, tuple):
            for comp in c:
                if isinstance(comp, FieldElement) and comp.tower.depth > tower.depth:
                    tower = comp.tower
    for triple in plane_points.values():
        for comp in triple:
            if isinstance(comp, FieldElement) and comp.tower.depth > tower.depth:
                tower = comp.tower

    F, names, mons = _generic_curve(m, tower)
    cindex = {name: j for j, name in enumerate(names)}
    constraints = []

    def walk(pid, eq):
        mu = K.multiplicities[pid]
        rows, pruned = _split_jet(eq, mu, cindex)
        constraints.extend(rows)
        for cid, child_eq in _virtual_children(pruned, mu, conf, pid):
            walk(cid, child_eq)

    for rid in conf.roots():
        p = conf.point(rid)
        triple = p.coordinate if isinstance(p.coordinate, tuple) else None
        if triple is None:
            triple = plane_points.get(rid)
        if triple is None:
            raise ValueError(f"no plane location for root point {rid}")
        walk(rid, _localize(F, triple, tower))

    U = len(names)
    if not constraints:
        vectors = []
        for j in range(U):
            vec = [FieldElement.rational(0, tower)] * U
            vec[j] = FieldElement.rational(1, tower)
            vectors.append(vec)
    else:
        vectors = nullspace(constraints)
    if not vectors:
        raise EmptySystem(f"no curve of degree {m} passes through the cluster")
    basis = []
    for vec in vectors:
        terms = {}
        vt = vec[0].tower
        for coeff, exps in zip(vec, mons):
            if not coeff.is_zero():
                terms[exps] = coeff.lift_to(vt).v
        basis.append(MultiPoly(("X", "Y", "Z"), terms, vt))
    return LinearSystemBasis(m, K, basis, mons)


# -- pencils ---------------------------------------------------------------


@dataclass
class BasePointCluster:
    cluster: Cluster
    dicritical: frozenset
    tower: Tower
    plane_coords: dict

    @property
    def configuration(self):
        return self.cluster.configuration

    @property
    def multiplicities(self):
        return self.cluster.multiplicities


def _check_pencil(F1, F2):
    for F in (F1, F2):
        if F.is_zero() or not F.is_homogeneous():
            raise ValueError("pencil generators must be nonzero homogeneous")
        if set(F.effective_vars()) - {"X", "Y", "Z"}:
            raise ValueError("pencil generators must use X, Y, Z")
    if F1.total_degree() != F2.total_degree():
        raise ValueError("pencil generators must have equal degree")
    if not poly_gcd(F1, F2).is_constant():
        raise CommonComponent("the generators share a factor")


def _common_affine_zeros(f, g, tower):
    """Common zeros of two coprime affine polynomials in x, y."""
    if f.is_constant() or g.is_constant():
        return [], tower
    fdx = f.degree_in("x") if "x" in f.vars else 0
    gdx = g.degree_in("x") if "x" in g.vars else 0
    points = []
    if fdx == 0 and gdx == 0:
        return [], tower
    if fdx == 0 or gdx == 0:
        pure, other = (f, g) if fdx == 0 else (g, f)
        yroots, tower = roots_in_extension(pure.with_vars(("y",)), tower)
        for y0 in yroots:
            gx = other.substitute({"y": y0})
            if gx.is_constant():
                continue
            xroots, tower = roots_in_extension(gx, tower)
            for x0 in xroots:
                points.append((x0, y0))
        return points, tower
    ry = resultant(f, g, "x")
    if ry.is_zero():
        raise CommonComponent("resultant vanishes identically")
    if ry.is_constant():
        return [], tower
    yroots, tower = roots_in_extension(ry.with_vars(("y",)), tower)
    for y0 in yroots:
        h = poly_gcd(f.substitute({"y": y0}), g.substitute({"y": y0}))
        if h.is_constant():
            continue
        xroots, tower = roots_in_extension(h, tower)
        for x0 in xroots:
            points.append((x0, y0))
    return points, tower


def _common_plane_zeros(F1, F2, tower):
    """Common projective zeros, infinity points first, with chart data.

    Returns a list of (triple, local_f1, local_f2) and the grown tower."""
    h1 = F1.substitute({"Z": 0})
    h2 = F2.substitute({"Z": 0})
    if h1.is_zero() and h2.is_zero():
        raise CommonComponent("Z divides both generators")
    forms = [h for h in (h1, h2) if not h.is_zero()]
    h = forms[0].monic()
    for other in forms[1:]:
        h = poly_gcd(h, other)
    triples = []
    if not h.is_constant():
        if h.evaluate({"X": 1, "Y": 0}).is_zero():
            triples.append((1, 0, 0))
        univ = h.substitute({"X": MultiPoly.variable("x"), "Y": 1})
        roots, tower = roots_in_extension(univ, tower)
        one = FieldElement.rational(1, tower)
        zero = FieldElement.rational(0, tower)
        for xi in roots:
            triples.append((xi.lift_to(tower), one, zero))
    f1 = F1.substitute({"Z": 1}).rename_vars({"X": "x", "Y": "y"})
    f2 = F2.substitute({"Z": 1}).rename_vars({"X": "x", "Y": "y"})
    aff, tower = _common_affine_zeros(f1, f2, tower)
    aff.sort(key=lambda p: (p[0].sort_key(), p[1].sort_key()))
    one = FieldElement.rational(1, tower)
    for x0, y0 in aff:
        triples.append((x0.lift_to(tower), y0.lift_to(tower), one))
    return triples, tower


def _localize_member(F, triple, tower):
    """Local equation of a member at a plane point (u, v chart)."""
    return _localize(F.lift_to(tower) if F.tower.is_prefix_of(tower) else F,
                     triple, tower).with_vars(("u", "v"))


_MAX_PENCIL_DEPTH = 64


def pencil_base_points(F1, F2, seed=0):
    """Cluster of base points of the pencil <F1, F2>, with generic
    multiplicities and dicritical flags, verified on a generic member."""
    _check_pencil(F1, F2)
    tower = QQ_TOWER
    triples, tower = _common_plane_zeros(F1, F2, tower)

    nodes = []
    stack = []
    for triple in reversed(triples):
        f = _localize_member(F1, triple, tower)
        g = _localize_member(F2, triple, tower)
        stack.append(
            {
                "parent": None,
                "branch": None,
                "coordinate": None,
                "level": 0,
                "f": f,
                "g": g,
                "tracked": {},
                "plane": triple,
            }
        )

    while stack:
        item = stack.pop()
        f, g = item["f"], item["g"]
        of = f.order()
        og = g.order()
        mP = min(o for o in (of, og) if o is not None)
        if mP == 0:
            continue  # generic members no longer pass through this point
        if item["level"] > _MAX_PENCIL_DEPTH:
            raise CommonComponent("base-point recursion too deep")
        pid = len(nodes)
        prox = frozenset(int(lbl[1:]) for lbl in item["tracked"])
        phi1 = f.initial_form(mP) if of == mP else MultiPoly.zero(f.vars, f.tower)
        phi2 = g.initial_form(mP) if og == mP else MultiPoly.zero(g.vars, g.tower)
        D = poly_gcd(phi1, phi2)
        r = mP - max(D.total_degree(), 0)
        nodes.append(
            {
                "pid": pid,
                "parent": item["parent"],
                "branch": item["branch"],
                "coordinate": item["coordinate"],
                "level": item["level"],
                "prox": prox,
                "mult": mP,
                "dicritical": r > 0,
                "plane": item["plane"],
            }
        )
        children = []
        Dv = D.with_vars(("u", "v"))
        if not D.is_constant():
            deg = Dv.total_degree()
            # the direction (0:1) of the divisor lies in the V2 chart
            if Dv.coefficient((0, deg)).is_zero():
                children.append((V2, None))
            d1 = Dv.substitute({"u": 1}).with_vars(("v",))
            lams, tower = roots_in_extension(d1, tower)
            for lam in lams:
                children.append((V1, lam))
            children.sort(
                key=lambda c: (0,) if c[0] == V2 else (1, c[1].sort_key())
            )
        u = MultiPoly.variable("u", tower)
        v = MultiPoly.variable("v", tower)
        descs = []
        for branch, lam in children:
            lam_f = (
                FieldElement.rational(0, tower) if lam is None else lam
            )
            lam_c = MultiPoly.constant(lam_f)
            if branch == V1:
                sub = {"v": u * (v + lam_c)}
                divisor = "u"
            else:
                sub = {"u": v * (u + lam_c)}
                divisor = "v"
            nf = _div_power(f.substitute(sub).with_vars(("u", "v")), divisor, mP)
            ng = _div_power(g.substitute(sub).with_vars(("u", "v")), divisor, mP)
            tracked = {f"E{pid}": MultiPoly.variable(divisor, tower)}
            for lbl, eq in item["tracked"].items():
                new_eq = blow_up_curve(eq, lam_f, branch, ("u", "v"))
                o = new_eq.order()
                if o is not None and o >= 1:
                    tracked[lbl] = new_eq
            descs.append(
                {
                    "parent": pid,
                    "branch": branch,
                    "coordinate": None if branch == V2 else lam,
                    "level": item["level"] + 1,
                    "f": nf,
                    "g": ng,
                    "tracked": tracked,
                    "plane": None,
                }
            )
        for d in reversed(descs):
            stack.append(d)

    points = [
        InfNearPoint(
            n["pid"], n["parent"], n["branch"], n["coordinate"], n["level"], n["prox"]
        )
        for n in nodes
    ]
    conf = Configuration(points)
    mults = {n["pid"]: n["mult"] for n in nodes}
    result = BasePointCluster(
        cluster=Cluster(conf, mults),
        dicritical=frozenset(n["pid"] for n in nodes if n["dicritical"]),
        tower=tower,
        plane_coords={n["pid"]: n["plane"] for n in nodes if n["plane"] is not None},
    )
    _verify_generic_member(F1, F2, result, seed)
    return result


def _verify_generic_member(F1, F2, bp, seed):
    """Check that a generic member realizes the generic multiplicities; a
    bad draw (non-generic parameters) is redrawn up to 8 times."""
    rng = random.Random(seed)
    conf = bp.configuration
    for _ in range(8):
        alpha = rng.randint(1, 10 ** 6)
        beta = rng.randint(1, 10 ** 6)
        G = alpha * F1 + beta * F2
        ok = True
        for rid in conf.roots():
            loc = _localize_member(G, bp.plane_coords[rid], bp.tower)
            if not _check_member(loc, conf, rid, bp.multiplicities):
                ok = False
                break
        if ok:
            return
    raise RuntimeError("no generic pencil member found after 8 draws")


def _check_member(eq, conf, pid, mults):
    mu = mults[pid]
    o = eq.order()
    if o != mu:
        return False
    tower = eq.tower
    u = MultiPoly.variable("u", tower)
    v = MultiPoly.variable("v", tower)
    for cid in conf.children(pid):
        child = conf.point(cid)
        lam = child.coordinate
        lam_f = FieldElement.rational(0, tower) if lam is None else lam
        lam_c = MultiPoly.constant(lam_f)
        if child.branch == V1:
            pulled = eq.substitute({"v": u * (v + lam_c)})
            divisor = "u"
        else:
            pulled = eq.substitute({"u": v * (u + lam_c)})
            divisor = "v"
        divided = _div_power(pulled.with_vars(("u", "v")), divisor, mu)
        if divided is None or not _check_member(divided, conf, cid, mults):
            return False
    return True


def pencil_vector_field(F1, F2):
    """The 1-form whose invariant curves are the members of the pencil."""
    _check_pencil(F1, F2)
    A = F2 * F1.diff("X") - F1 * F2.diff("X")
    B = F2 * F1.diff("Y") - F1 * F2.diff("Y")
    C = F2 * F1.diff("Z") - F1 * F2.diff("Z")
    from .vfield import ProjectiveOneForm

    return ProjectiveOneForm(A, B, C).reduced()
