"""Brute-force oracle: operators acting on functions (A + B r) / r^(2M).

``A`` and ``B`` are polynomials in x_1..x_d with :class:`Scalar` coefficients.
This module does not use the rewrite engine; it applies x_i, r^k, D_i and
R_i to explicit functions, so it can check the engine independently.
"""

import random
from fractions import Fraction
from functools import lru_cache
from math import isqrt

from .coeff import GaussianRational, Scalar, _q
from .errors import DimensionError, DomainError, EngineDefect, PreconditionError


class XPoly:
    """Polynomial in x_1..x_d with Scalar coefficients."""

    __slots__ = ("dim", "terms")

    def __init__(self, dim, terms=None):
        self.dim = dim
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != dim:
                raise DimensionError(f"exponent {e} has wrong length for dim {dim}")
            if not isinstance(c, Scalar):
                c = Scalar.const(c, dim)
            if c:
                clean[e] = clean[e] + c if e in clean else c
        self.terms = {e: c for e, c in clean.items() if c}

    @classmethod
    def _raw(cls, dim, terms):
        out = cls.__new__(cls)
        out.dim = dim
        out.terms = terms
        return out

    @classmethod
    def zero(cls, dim):
        return cls._raw(dim, {})

    @classmethod
    def const(cls, value, dim):
        s = value if isinstance(value, Scalar) else Scalar.const(value, dim)
        return cls._raw(dim, {(0,) * dim: s} if s else {})

    @classmethod
    def var(cls, i, dim):
        return cls._raw(dim, {tuple(1 if k == i - 1 else 0 for k in range(dim)): Scalar.const(1, dim)})

    def _check(self, other):
        if other.dim != self.dim:
            raise DimensionError(f"polynomial dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out[e] + c if e in out else c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return XPoly._raw(self.dim, out)

    def __neg__(self):
        return XPoly._raw(self.dim, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Scalar):
            return self.scale(other)
        self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out[e] + c1 * c2 if e in out else c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return XPoly._raw(self.dim, out)

    def scale(self, c):
        if not isinstance(c, Scalar):
            c = Scalar.const(c, self.dim)
        if not c:
            return XPoly.zero(self.dim)
        return XPoly._raw(self.dim, {e: v * c for e, v in self.terms.items() if v * c})

    def shift(self, i, k=1):
        """Multiply by x_i^k."""
        return XPoly._raw(self.dim, {e[:i - 1] + (e[i - 1] + k,) + e[i:]: c for e, c in self.terms.items()})

    def reflect(self, i):
        """Apply R_i: x_i -> -x_i."""
        return XPoly._raw(self.dim, {e: (-c if e[i - 1] % 2 else c) for e, c in self.terms.items()})

    def partial(self, i):
        out = {}
        for e, c in self.terms.items():
            n = e[i - 1]
            if n:
                out[e[:i - 1] + (n - 1,) + e[i:]] = c * n
        return XPoly._raw(self.dim, out)

    def divide_by_var(self, i):
        """Exact division by x_i; any term without x_i is an engine defect."""
        out = {}
        for e, c in self.terms.items():
            n = e[i - 1]
            if n == 0:
                raise EngineDefect(f"inexact division by x{i}")
            out[e[:i - 1] + (n - 1,) + e[i:]] = c
        return XPoly._raw(self.dim, out)

    def substitute(self, bindings):
        out = {}
        for e, c in self.terms.items():
            v = c.eval(bindings)
            if v:
                out[e] = v
        return XPoly._raw(self.dim, out)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, XPoly):
            return NotImplemented
        return self.dim == other.dim and self.terms == other.terms

    def __repr__(self):
        return f"XPoly(dim={self.dim}, {len(self.terms)} terms)"


@lru_cache(maxsize=None)
def sum_squares(dim, power=1):
    """(x_1^2 + ... + x_d^2)^power."""
    if power == 0:
        return XPoly.const(1, dim)
    base = XPoly._raw(dim, {tuple(2 if k == i else 0 for k in range(dim)): Scalar.const(1, dim)
                            for i in range(dim)})
    if power == 1:
        return base
    return sum_squares(dim, power - 1) * base


def dunkl_derivative(p, i):
    """D_i p = d_i p + mu_i (p - R_i p) / x_i for a polynomial p."""
    if not 1 <= i <= p.dim:
        raise PreconditionError(f"index {i} out of range 1..{p.dim}")
    diff = p - p.reflect(i)
    return p.partial(i) + diff.divide_by_var(i).scale(Scalar.mu(i, p.dim))


class RFunction:
    """The function (even + odd * r) / r^(2 * denom) on R^d minus the origin."""

    __slots__ = ("dim", "even", "odd", "denom")

    def __init__(self, even, odd=None, denom=0):
        if odd is None:
            odd = XPoly.zero(even.dim)
        if even.dim != odd.dim:
            raise DimensionError("even and odd parts differ in dimension")
        if denom < 0:
            raise PreconditionError("denominator exponent must be >= 0")
        self.dim = even.dim
        self.even = even
        self.odd = odd
        self.denom = denom

    # -- constructors ---------------------------------------------------
    @classmethod
    def const(cls, value, dim):
        return cls(XPoly.const(value, dim))

    @classmethod
    def monomial(cls, xexp, rpow=0, coeff=1):
        """coeff * x^xexp * r^rpow."""
        dim = len(xexp)
        p = XPoly(dim, {tuple(xexp): coeff})
        return cls(p).times_r(rpow)

    # -- algebra --------------------------------------------------------
    def _lift(self, m):
        """Same function written with denominator exponent m >= self.denom."""
        k = m - self.denom
        if k == 0:
            return self.even, self.odd
        s = sum_squares(self.dim, k)
        return self.even * s, self.odd * s

    def __add__(self, other):
        if other.dim != self.dim:
            raise DimensionError("function dimension mismatch")
        m = max(self.denom, other.denom)
        a1, b1 = self._lift(m)
        a2, b2 = other._lift(m)
        return RFunction(a1 + a2, b1 + b2, m)

    def __neg__(self):
        return RFunction(-self.even, -self.odd, self.denom)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Scalar):
            return self.scale(other)
        if other.dim != self.dim:
            raise DimensionError("function dimension mismatch")
        s = sum_squares(self.dim)
        even = self.even * other.even + self.odd * other.odd * s
        odd = self.even * other.odd + self.odd * other.even
        return RFunction(even, odd, self.denom + other.denom)

    def scale(self, c):
        return RFunction(self.even.scale(c), self.odd.scale(c), self.denom)

    def times_x(self, i, k=1):
        return RFunction(self.even.shift(i, k), self.odd.shift(i, k), self.denom)

    def times_r(self, k):
        even, odd, m = self.even, self.odd, self.denom
        if k % 2:
            # r * (A + B r) = B r^2 + A r
            even, odd = odd * sum_squares(self.dim), even
            k -= 1
        half = k // 2
        if half > 0:
            s = sum_squares(self.dim, half)
            even, odd = even * s, odd * s
        elif half < 0:
            m += -half
        return RFunction(even, odd, m)

    def reflect(self, i):
        return RFunction(self.even.reflect(i), self.odd.reflect(i), self.denom)

    def dunkl(self, i):
        """D_i, using D_i(p r^k) = (D_i p) r^k + k x_i p r^(k-2)."""
        m = self.denom
        s = sum_squares(self.dim)
        even = dunkl_derivative(self.even, i) * s - self.even.shift(i).scale(Scalar.const(2 * m, self.dim))
        odd = dunkl_derivative(self.odd, i) * s + self.odd.shift(i).scale(Scalar.const(1 - 2 * m, self.dim))
        return RFunction(even, odd, m + 1)

    def substitute(self, bindings):
        return RFunction(self.even.substitute(bindings), self.odd.substitute(bindings), self.denom)

    # -- comparison -----------------------------------------------------
    def is_zero(self):
        return self.even.is_zero() and self.odd.is_zero()

    def __eq__(self, other):
        if not isinstance(other, RFunction):
            return NotImplemented
        return func_equal(self, other)

    def __repr__(self):
        return f"RFunction(dim={self.dim}, even={len(self.even.terms)}, odd={len(self.odd.terms)}, M={self.denom})"

    def to_operator(self):
        """The multiplication operator by this function (for display)."""
        from .algebra import NormalMonomial, Operator

        z = (0,) * self.dim
        out = Operator.zero(self.dim)
        for part, shift in ((self.even, 0), (self.odd, 1)):
            terms = {NormalMonomial(e, shift - 2 * self.denom, z, z): c for e, c in part.terms.items()}
            out = out + Operator(self.dim, terms)
        return out


def func_equal(f, g):
    """Exact equality by cross-multiplying denominators."""
    if f.dim != g.dim:
        raise DimensionError("function dimension mismatch")
    m = max(f.denom, g.denom)
    a1, b1 = f._lift(m)
    a2, b2 = g._lift(m)
    return (a1 - a2).is_zero() and (b1 - b2).is_zero()


def apply(op, f):
    """Image of ``f`` under the operator ``op`` (an Operator in normal form)."""
    if op.dim != f.dim:
        raise DimensionError(f"operator dim {op.dim} vs function dim {f.dim}")
    # share the D^b R^s part between terms
    groups = {}
    for m, c in op.terms.items():
        groups.setdefault((m.dexp, m.rmask), []).append((m, c))
    total = RFunction(XPoly.zero(f.dim))
    for (dexp, rmask), items in groups.items():
        g = f
        for i, s in enumerate(rmask, 1):
            if s:
                g = g.reflect(i)
        for i, b in enumerate(dexp, 1):
            for _ in range(b):
                g = g.dunkl(i)
        for m, c in items:
            h = g.times_r(m.rpow)
            for i, a in enumerate(m.xexp, 1):
                if a:
                    h = h.times_x(i, a)
            total = total + h.scale(c)
    return total


def _rational_sqrt(q):
    q = Fraction(q)
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn != n or rd * rd != d:
        return None
    return Fraction(rn, rd)


def _eval_poly(p, point, bindings):
    total = GaussianRational()
    for e, c in p.terms.items():
        v = c.eval(bindings)
        if not v.is_constant():
            raise PreconditionError(f"unbound parameters {v.free_parameters()} in function")
        mono = Fraction(1)
        for x, k in zip(point, e):
            if k:
                mono *= x ** k
        total = total + v.constant_value() * _q(mono)
    return total


def eval_at(f, point, bindings=None):
    """Exact value of ``f`` at a rational point whose norm is rational."""
    point = tuple(Fraction(p) for p in point)
    if len(point) != f.dim:
        raise DimensionError(f"point has {len(point)} coordinates, expected {f.dim}")
    r2 = sum(p * p for p in point)
    if r2 == 0:
        raise DomainError("functions are not defined at the origin")
    r = _rational_sqrt(r2)
    if r is None:
        raise PreconditionError(f"|point|^2 = {r2} is not the square of a rational")
    bindings = bindings or {}
    a = _eval_poly(f.even, point, bindings)
    b = _eval_poly(f.odd, point, bindings)
    return (a + b * _q(r)) / GaussianRational(_q(r2 ** f.denom))


def random_basis(dim, count, seed):
    """Deterministic pseudo-random test functions.

    Polynomial parts have degree <= 4 and small integer coefficients; the
    denominator exponent is at most 2.  Every fourth function (starting
    with the second) is odd in x_1, every fourth (starting with the first)
    even in x_1, the rest mixed.
    """
    if count < 1:
        raise PreconditionError("count must be >= 1")
    rng = random.Random(seed)
    out = []

    def rand_poly(parity):
        terms = {}
        for _ in range(rng.randint(1, 4)):
            e = [0] * dim
            for _ in range(rng.randint(0, 4)):
                e[rng.randrange(dim)] += 1
            if parity is not None and e[0] % 2 != parity:
                if e[0]:
                    e[0] -= 1
                else:
                    if sum(e) == 4:
                        e[next(k for k in range(1, dim) if e[k])] -= 1
                    e[0] += 1
            c = rng.choice([-3, -2, -1, 1, 2, 3])
            terms[tuple(e)] = terms.get(tuple(e), 0) + c
        return XPoly(dim, terms)

    for n in range(count):
        parity = {0: 0, 1: 1}.get(n % 4)
        even = rand_poly(parity)
        odd = rand_poly(parity) if rng.random() < 0.6 else XPoly.zero(dim)
        out.append(RFunction(even, odd, rng.randint(0, 2)))
    return out
