"""Exact linear algebra over the rationals and over extension towers.

Rational matrices go through fraction-free (Bareiss) elimination on integer
rescalings of the rows; matrices with genuine algebraic entries use ordinary
exact Gaussian elimination in the tower.  Everything returns FieldElement
results, never floats.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _igcd

from .field import FieldElement, QQ_TOWER, Tower


def _unwrap(rows):
    """Split a FieldElement matrix into (raw rows, tower)."""
    tower = QQ_TOWER
    for row in rows:
        for x in row:
            if isinstance(x, FieldElement) and x.tower.depth > tower.depth:
                tower = x.tower
    raw = []
    for row in rows:
        r = []
        for x in row:
            if isinstance(x, FieldElement):
                r.append(x.lift_to(tower).v)
            else:
                r.append(tower.lift_rational(Fraction(x)))
        raw.append(r)
    return raw, tower


def _int_rows(raw):
    """Scale each row of a Fraction matrix to coprime integers."""
    out = []
    for row in raw:
        den = 1
        for x in row:
            den = den * x.denominator // _igcd(den, x.denominator)
        ints = [int(x * den) for x in row]
        g = 0
        for v in ints:
            g = _igcd(g, abs(v))
        if g > 1:
            ints = [v // g for v in ints]
        out.append(ints)
    return out


def _bareiss_echelon(mat):
    """Fraction-free echelon form of an integer matrix.

    Returns (echelon rows as Fractions with unit pivots, pivot column list,
    sign, pivot product) so determinants can be recovered.
    """
    m = [list(r) for r in mat]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    prev = 1
    sign = 1
    pivots = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        p = None
        for i in range(r, nrows):
            if m[i][c] != 0:
                p = i
                break
        if p is None:
            continue
        if p != r:
            m[r], m[p] = m[p], m[r]
            sign = -sign
        piv = m[r][c]
        for i in range(r + 1, nrows):
            for j in range(c + 1, ncols):
                m[i][j] = (piv * m[i][j] - m[i][c] * m[r][j]) // prev
            m[i][c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    ech = []
    for i, c in enumerate(pivots):
        piv = Fraction(m[i][c])
        ech.append([Fraction(x) / piv for x in m[i]])
    return ech, pivots, sign, prev


def _tower_echelon(raw, tower):
    """Ordinary exact elimination over a tower; rows get unit pivots."""
    m = [list(r) for r in raw]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    sign = 1
    pivots = []
    pivot_product = tower.one()
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        p = None
        for i in range(r, nrows):
            if not tower.is_zero(m[i][c]):
                p = i
                break
        if p is None:
            continue
        if p != r:
            m[r], m[p] = m[p], m[r]
            sign = -sign
        piv = m[r][c]
        pivot_product = tower.mul(pivot_product, piv)
        inv = tower.inv(piv)
        m[r] = [tower.mul(inv, x) for x in m[r]]
        for i in range(r + 1, nrows):
            f = m[i][c]
            if tower.is_zero(f):
                continue
            m[i] = [tower.sub(x, tower.mul(f, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m[: len(pivots)], pivots, sign, pivot_product


def _rref(rows):
    """Reduced row echelon form.  Returns (rows as raw values, pivots, tower)."""
    raw, tower = _unwrap(rows)
    if not raw or not raw[0]:
        return [], [], tower
    if tower.depth == 0:
        ech, pivots, _, _ = _bareiss_echelon(_int_rows(raw))
    else:
        ech, pivots, _, _ = _tower_echelon(raw, tower)
    # eliminate above the pivots
    if tower.depth == 0:
        for i in range(len(pivots) - 1, -1, -1):
            c = pivots[i]
            for k in range(i):
                f = ech[k][c]
                if f:
                    ech[k] = [x - f * y for x, y in zip(ech[k], ech[i])]
    else:
        for i in range(len(pivots) - 1, -1, -1):
            c = pivots[i]
            for k in range(i):
                f = ech[k][c]
                if not tower.is_zero(f):
                    ech[k] = [
                        tower.sub(x, tower.mul(f, y))
                        for x, y in zip(ech[k], ech[i])
                    ]
    if tower.depth == 0:
        ech = [[tower.lift_rational(x) for x in row] for row in ech]
    return ech, pivots, tower


def rank(rows):
    if not rows:
        return 0
    _, pivots, _ = _rref(rows)
    return len(pivots)


def nullspace(rows):
    """Basis of the right kernel of a matrix of FieldElement entries.

    Returns a list of vectors of FieldElement, one per free column, each with
    a unit entry in its free column.
    """
    if not rows:
        return []
    ncols = len(rows[0])
    ech, pivots, tower = _rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [tower.zero()] * ncols
        vec[fc] = tower.one()
        for i, pc in enumerate(pivots):
            vec[pc] = tower.neg(ech[i][fc])
        basis.append([FieldElement(tower, x) for x in vec])
    return basis


def solve(rows, rhs):
    """One exact solution of A x = b, or None if inconsistent.

    rows: matrix entries, rhs: vector; both FieldElement/int/Fraction.
    """
    if not rows:
        return []
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    ncols = len(rows[0])
    ech, pivots, tower = _rref(aug)
    if ncols in pivots:
        return None
    x = [tower.zero()] * ncols
    for i, pc in enumerate(pivots):
        x[pc] = ech[i][-1]
    return [FieldElement(tower, v) for v in x]


def det(rows):
    """Exact determinant of a square matrix of FieldElement entries."""
    raw, tower = _unwrap(rows)
    n = len(raw)
    if n == 0:
        return FieldElement(tower, tower.one())
    if any(len(r) != n for r in raw):
        raise ValueError("matrix is not square")
    if tower.depth == 0:
        # Bareiss needs the actual matrix, not row-rescaled: clear a global
        # denominator per row and divide back out at the end.
        scale = Fraction(1)
        m = []
        for row in raw:
            den = 1
            for x in row:
                den = den * x.denominator // _igcd(den, x.denominator)
            scale /= den
            m.append([int(x * den) for x in row])
        prev = 1
        sign = 1
        for c in range(n):
            p = None
            for i in range(c, n):
                if m[i][c] != 0:
                    p = i
                    break
            if p is None:
                return FieldElement(tower, tower.zero())
            if p != c:
                m[c], m[p] = m[p], m[c]
                sign = -sign
            piv = m[c][c]
            for i in range(c + 1, n):
                for j in range(c + 1, n):
                    m[i][j] = (piv * m[i][j] - m[i][c] * m[c][j]) // prev
                m[i][c] = 0
            prev = piv
        value = sign * scale * Fraction(m[n - 1][n - 1])
        return FieldElement(tower, tower.lift_rational(value))
    ech, pivots, sign, prod = _tower_echelon(raw, tower)
    if len(pivots) < n:
        return FieldElement(tower, tower.zero())
    v = prod if sign == 1 else tower.neg(prod)
    return FieldElement(tower, v)
