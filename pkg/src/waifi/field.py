"""Exact arithmetic in towers of simple algebraic extensions of the rationals.

Elements are represented without floating point at any stage.  A tower is a
chain Q = K_0 < K_1 < ... < K_k where each level adjoins one generator with a
monic minimal polynomial over the previous level.  A raw value at depth 0 is a
Fraction; at depth j it is a tuple of depth-(j-1) values whose length equals
the degree of the j-th minimal polynomial.

Inversion of a zero divisor (possible only when a stored modulus is secretly
reducible) raises SplitRequired carrying the discovered factorisation, in the
style of dynamic evaluation.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional


class SplitRequired(Exception):
    """A modulus in the tower factored during an inversion.

    Attributes
    ----------
    level : int
        1-based level of the tower whose minimal polynomial split.
    factors : tuple
        Two monic coefficient tuples (low to high, over the previous level)
        whose product is the stored minimal polynomial.
    """

    def __init__(self, level, factors):
        super().__init__(f"modulus at level {level} factors")
        self.level = level
        self.factors = factors


class ExtensionDegreeExceeded(Exception):
    """Adjoining a root would push the tower degree over the configured cap."""


_ZERO = Fraction(0)
_ONE = Fraction(1)


class Tower:
    """A tower of simple extensions of Q.

    levels is a tuple of (name, minpoly) pairs; minpoly is a monic coefficient
    tuple (low to high) over the previous level.  The trivial tower (no levels)
    is plain Q.
    """

    __slots__ = ("levels", "max_degree", "_degree")

    def __init__(self, levels=(), max_degree=16):
        self.levels = tuple(levels)
        self.max_degree = max_degree
        d = 1
        for _, mp in self.levels:
            d *= len(mp) - 1
        self._degree = d

    # -- structure ---------------------------------------------------------

    @property
    def depth(self):
        return len(self.levels)

    def degree(self):
        """Total degree [K:Q]."""
        return self._degree

    def level_degree(self, j):
        """Degree of level j (1-based) over level j-1."""
        return len(self.levels[j - 1][1]) - 1

    def names(self):
        return tuple(name for name, _ in self.levels)

    def is_prefix_of(self, other):
        if other.depth < self.depth:
            return False
        return other.levels[: self.depth] == self.levels

    def __eq__(self, other):
        return isinstance(other, Tower) and self.levels == other.levels

    def __hash__(self):
        return hash(self.levels)

    def __repr__(self):
        if not self.levels:
            return "Tower(Q)"
        return "Tower(Q(%s))" % ",".join(self.names())

    # -- raw value constructors -------------------------------------------

    def zero(self):
        return self.lift_rational(_ZERO)

    def one(self):
        return self.lift_rational(_ONE)

    def lift_rational(self, q, depth=None):
        if depth is None:
            depth = self.depth
        v = Fraction(q)
        for j in range(1, depth + 1):
            pad = (self._zero_at(j - 1),) * (self.level_degree(j) - 1)
            v = (v,) + pad
        return v

    def _zero_at(self, depth):
        if depth == 0:
            return _ZERO
        pad = (self._zero_at(depth - 1),) * (self.level_degree(depth) - 1)
        return (self._zero_at(depth - 1),) + pad

    def generator(self, j=None):
        """Raw value of the level-j generator (default: top level)."""
        if j is None:
            j = self.depth
        if not 1 <= j <= self.depth:
            raise ValueError("no such level")
        v = self._zero_at(j - 1)
        one = self.lift_rational(_ONE, j - 1)
        coeffs = [self._zero_at(j - 1)] * self.level_degree(j)
        coeffs[1] = one
        v = tuple(coeffs)
        for i in range(j + 1, self.depth + 1):
            pad = (self._zero_at(i - 1),) * (self.level_degree(i) - 1)
            v = (v,) + pad
        return v

    def lift_value(self, v, from_tower):
        """Lift a raw value of a prefix tower into this tower."""
        if not from_tower.is_prefix_of(self):
            raise ValueError("not a prefix tower")
        for j in range(from_tower.depth + 1, self.depth + 1):
            pad = (self._zero_at(j - 1),) * (self.level_degree(j) - 1)
            v = (v,) + pad
        return v

    # -- raw arithmetic ----------------------------------------------------

    def add(self, a, b, depth=None):
        if depth is None:
            depth = self.depth
        if depth == 0:
            return a + b
        return tuple(self.add(x, y, depth - 1) for x, y in zip(a, b))

    def sub(self, a, b, depth=None):
        if depth is None:
            depth = self.depth
        if depth == 0:
            return a - b
        return tuple(self.sub(x, y, depth - 1) for x, y in zip(a, b))

    def neg(self, a, depth=None):
        if depth is None:
            depth = self.depth
        if depth == 0:
            return -a
        return tuple(self.neg(x, depth - 1) for x in a)

    def mul(self, a, b, depth=None):
        if depth is None:
            depth = self.depth
        if depth == 0:
            return a * b
        n = len(a)
        sub = depth - 1
        prod = [self._zero_at(sub) for _ in range(2 * n - 1)]
        for i, x in enumerate(a):
            if self.is_zero(x, sub):
                continue
            for j, y in enumerate(b):
                if self.is_zero(y, sub):
                    continue
                prod[i + j] = self.add(prod[i + j], self.mul(x, y, sub), sub)
        mp = self.levels[depth - 1][1]
        # reduce modulo the (monic) minimal polynomial
        for i in range(2 * n - 2, n - 1, -1):
            c = prod[i]
            if self.is_zero(c, sub):
                continue
            prod[i] = self._zero_at(sub)
            for k in range(len(mp) - 1):
                prod[i - (len(mp) - 1) + k] = self.sub(
                    prod[i - (len(mp) - 1) + k], self.mul(c, mp[k], sub), sub
                )
        return tuple(prod[:n])

    def scalar_mul(self, q, a, depth=None):
        if depth is None:
            depth = self.depth
        if depth == 0:
            return q * a
        return tuple(self.scalar_mul(q, x, depth - 1) for x in a)

    def pow(self, a, e, depth=None):
        if depth is None:
            depth = self.depth
        if e < 0:
            return self.pow(self.inv(a, depth), -e, depth)
        result = self.lift_rational(_ONE, depth)
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base, depth)
            base = self.mul(base, base, depth)
            e >>= 1
        return result

    def is_zero(self, a, depth=None):
        if depth is None:
            depth = self.depth
        if depth == 0:
            return a == 0
        return all(self.is_zero(x, depth - 1) for x in a)

    def eq(self, a, b, depth=None):
        return a == b  # representations are canonical

    def inv(self, a, depth=None):
        if depth is None:
            depth = self.depth
        if depth == 0:
            if a == 0:
                raise ZeroDivisionError("inverse of zero")
            return 1 / a
        if self.is_zero(a, depth):
            raise ZeroDivisionError("inverse of zero")
        sub = depth - 1
        mp = list(self.levels[depth - 1][1])
        # extended Euclid of a against the minimal polynomial, over level sub
        r0, r1 = mp, list(a)
        s0 = [self._zero_at(sub)]
        s1 = [self.lift_rational(_ONE, sub)]
        while True:
            r1 = self._trim(r1, sub)
            if len(r1) == 0:
                break
            q, r = self._pdivmod(r0, r1, sub)
            r0, r1 = r1, r
            s0, s1 = s1, self._psub(s0, self._pmul(q, s1, sub), sub)
        # r0 is the gcd, s0 the cofactor of a... careful: invariants give
        # s_i * a + t_i * m = r_i with the roles of r0, r1 swapped at start,
        # so here s tracks the coefficient of a.
        r0 = self._trim(r0, sub)
        if len(r0) > 1:
            g = self._monic(r0, sub)
            q, _ = self._pdivmod(mp, g, sub)
            raise SplitRequired(depth, (tuple(g), tuple(self._monic(q, sub))))
        c = self.inv(r0[0], sub)
        out = [self.mul(c, x, sub) for x in s0]
        out = out[: len(a)]
        out += [self._zero_at(sub)] * (len(a) - len(out))
        return tuple(out)

    def div(self, a, b, depth=None):
        return self.mul(a, self.inv(b, depth), depth)

    # -- helpers for dense univariate polynomials over a level -------------

    def _trim(self, p, depth):
        p = list(p)
        while p and self.is_zero(p[-1], depth):
            p.pop()
        return p

    def _psub(self, p, q, depth):
        n = max(len(p), len(q))
        z = self._zero_at(depth)
        p = list(p) + [z] * (n - len(p))
        q = list(q) + [z] * (n - len(q))
        return [self.sub(x, y, depth) for x, y in zip(p, q)]

    def _pmul(self, p, q, depth):
        if not p or not q:
            return []
        z = self._zero_at(depth)
        out = [z] * (len(p) + len(q) - 1)
        for i, x in enumerate(p):
            if self.is_zero(x, depth):
                continue
            for j, y in enumerate(q):
                out[i + j] = self.add(out[i + j], self.mul(x, y, depth), depth)
        return out

    def _pdivmod(self, p, q, depth):
        p = self._trim(p, depth)
        q = self._trim(q, depth)
        if not q:
            raise ZeroDivisionError("polynomial division by zero")
        z = self._zero_at(depth)
        inv_lc = self.inv(q[-1], depth)
        quot = [z] * max(0, len(p) - len(q) + 1)
        rem = list(p)
        while len(rem) >= len(q) and self._trim(rem, depth):
            rem = self._trim(rem, depth)
            if len(rem) < len(q):
                break
            c = self.mul(rem[-1], inv_lc, depth)
            k = len(rem) - len(q)
            quot[k] = self.add(quot[k], c, depth)
            for i, y in enumerate(q):
                rem[k + i] = self.sub(rem[k + i], self.mul(c, y, depth), depth)
            rem.pop()
        return quot, self._trim(rem, depth)

    def _monic(self, p, depth):
        p = self._trim(p, depth)
        if not p:
            return p
        c = self.inv(p[-1], depth)
        return [self.mul(c, x, depth) for x in p]

    # -- structure of values ----------------------------------------------

    def as_rational(self, a, depth=None) -> Optional[Fraction]:
        """Return a as a Fraction if it lies in Q, else None."""
        if depth is None:
            depth = self.depth
        if depth == 0:
            return a
        for x in a[1:]:
            if not self.is_zero(x, depth - 1):
                return None
        return self.as_rational(a[0], depth - 1)

    def flatten(self, a, depth=None):
        """Coordinates of a in the rational basis, as a flat tuple."""
        if depth is None:
            depth = self.depth
        if depth == 0:
            return (a,)
        out = ()
        for x in a:
            out += self.flatten(x, depth - 1)
        return out

    def sort_key(self, a):
        return self.flatten(a)

    def adjoin(self, name, minpoly):
        """Extend by one generator with the given monic minimal polynomial.

        minpoly is a coefficient tuple (low to high) of raw values of this
        tower; it must be monic of degree at least 2.
        """
        mp = tuple(minpoly)
        if len(mp) < 3:
            raise ValueError("minimal polynomial must have degree >= 2")
        if not self.is_zero(self.sub(mp[-1], self.one())):
            raise ValueError("minimal polynomial must be monic")
        if name in self.names():
            raise ValueError(f"generator name {name!r} already used")
        new_deg = self.degree() * (len(mp) - 1)
        if new_deg > self.max_degree:
            raise ExtensionDegreeExceeded(
                f"tower degree {new_deg} exceeds cap {self.max_degree}"
            )
        return Tower(self.levels + ((name, mp),), self.max_degree)

    def fresh_name(self):
        for c in "abcdefghijklmnopqrstuvw":
            if c not in self.names():
                return c
        raise ValueError("out of generator names")

    # -- printing ----------------------------------------------------------

    def fmt(self, a, depth=None):
        """Render a raw value as a readable expression in the generators."""
        if depth is None:
            depth = self.depth
        q = self.as_rational(a, depth)
        if q is not None:
            return str(q)
        name = self.levels[depth - 1][0]
        parts = []
        for i in range(len(a) - 1, -1, -1):
            c = a[i]
            if self.is_zero(c, depth - 1):
                continue
            cq = self.as_rational(c, depth - 1)
            if i == 0:
                cs = self.fmt(c, depth - 1)
                if cq is None:
                    cs = "(" + cs + ")"
                parts.append(cs)
                continue
            mono = name if i == 1 else f"{name}^{i}"
            if cq == 1:
                parts.append(mono)
            elif cq == -1:
                parts.append("-" + mono)
            elif cq is not None:
                parts.append(f"{cq}*{mono}")
            else:
                parts.append(f"({self.fmt(c, depth - 1)})*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += p if p.startswith("-") else "+" + p
        return out


#: the trivial tower Q, shared default
QQ_TOWER = Tower()


class FieldElement:
    """An element of a Tower, with operator overloading.

    Thin wrapper over a raw value; arithmetic dispatches to the tower.
    """

    __slots__ = ("tower", "v")

    def __init__(self, tower, v):
        self.tower = tower
        self.v = v

    # -- constructors ------------------------------------------------------

    @staticmethod
    def rational(q, tower=QQ_TOWER):
        return FieldElement(tower, tower.lift_rational(q))

    @staticmethod
    def generator(tower, j=None):
        return FieldElement(tower, tower.generator(j))

    def lift_to(self, tower):
        if tower == self.tower:
            return self
        return FieldElement(tower, tower.lift_value(self.v, self.tower))

    # -- coercion ----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.tower == self.tower:
                return self, other
            if self.tower.is_prefix_of(other.tower):
                return self.lift_to(other.tower), other
            if other.tower.is_prefix_of(self.tower):
                return self, other.lift_to(self.tower)
            raise ValueError("elements of incompatible towers")
        if isinstance(other, (int, Fraction)):
            return self, FieldElement(self.tower, self.tower.lift_rational(other))
        return self, NotImplemented

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        a, b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElement(a.tower, a.tower.add(a.v, b.v))

    __radd__ = __add__

    def __sub__(self, other):
        a, b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElement(a.tower, a.tower.sub(a.v, b.v))

    def __rsub__(self, other):
        a, b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElement(a.tower, a.tower.sub(b.v, a.v))

    def __mul__(self, other):
        a, b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElement(a.tower, a.tower.mul(a.v, b.v))

    __rmul__ = __mul__

    def __truediv__(self, other):
        a, b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElement(a.tower, a.tower.div(a.v, b.v))

    def __rtruediv__(self, other):
        a, b = self._coerce(other)
        if b is NotImplemented:
            return NotImplemented
        return FieldElement(a.tower, a.tower.div(b.v, a.v))

    def __neg__(self):
        return FieldElement(self.tower, self.tower.neg(self.v))

    def __pow__(self, e):
        return FieldElement(self.tower, self.tower.pow(self.v, e))

    def inverse(self):
        return FieldElement(self.tower, self.tower.inv(self.v))

    # -- predicates --------------------------------------------------------

    def is_zero(self):
        return self.tower.is_zero(self.v)

    def is_rational(self):
        return self.tower.as_rational(self.v)

    def __eq__(self, other):
        try:
            a, b = self._coerce(other)
        except ValueError:
            return False
        if b is NotImplemented:
            return NotImplemented
        return a.v == b.v

    def __hash__(self):
        return hash((self.tower, self.v))

    def sort_key(self):
        return self.tower.sort_key(self.v)

    def __repr__(self):
        return self.tower.fmt(self.v)

    __str__ = __repr__
