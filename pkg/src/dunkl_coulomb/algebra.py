"""Normal-ordered operator algebra generated by x_i, r^k, D_i and R_i.

Every operator is stored as a Scalar-linear combination of normal words

    x_1^a_1 ... x_d^a_d * r^k * D_1^b_1 ... D_d^b_d * R_1^s_1 ... R_d^s_d

Products are brought back to this order with the rewrite rules

    D_i x_i   -> x_i D_i + 1 + 2 mu_i R_i
    D_i x_j   -> x_j D_i                     (i != j)
    D_i r^k   -> r^k D_i + k x_i r^(k-2)
    R_i x_i   -> -x_i R_i,   R_i D_i -> -D_i R_i,   R_i R_i -> 1
    R_i commutes with r and with x_j, D_j for j != i

together with the radial relation x_1^2 + ... + x_d^2 = r^2, applied as
x_d^2 -> r^2 - (x_1^2 + ... + x_{d-1}^2).  The exponent of x_d in a normal
word is therefore 0 or 1, and two operators are equal exactly when their
term dictionaries agree.
"""

from collections import namedtuple
from fractions import Fraction
from functools import lru_cache
from math import comb

from .coeff import GaussianRational, Scalar, _signed_terms
from .errors import DimensionError, GeneratorIndexError


class NormalMonomial(namedtuple("NormalMonomial", "xexp rpow dexp rmask")):
    """Normal word ``x^xexp * r^rpow * D^dexp * R^rmask``."""

    __slots__ = ()

    @property
    def dim(self):
        return len(self.xexp)

    @property
    def weight(self):
        """Scaling weight |a| + k - |b| (x and r weigh +1, D weighs -1)."""
        return sum(self.xexp) + self.rpow - sum(self.dexp)

    @classmethod
    def identity(cls, dim):
        z = (0,) * dim
        return cls(z, 0, z, z)


def _unit(i, dim):
    return tuple(1 if k == i else 0 for k in range(dim))


def _check_index(i, dim, what="index"):
    if not isinstance(i, int) or not 1 <= i <= dim:
        raise GeneratorIndexError(f"{what} {i} out of range 1..{dim}")


# -- coefficient accumulation helpers --------------------------------------

def _mul_into(acc, s1, s2, sign=1):
    """acc += sign * s1 * s2 on raw term dicts (exps -> GaussianRational)."""
    for e1, c1 in s1.items():
        for e2, c2 in s2.items():
            e = tuple([a + b for a, b in zip(e1, e2)])
            c = c1 * c2
            if sign != 1:
                c = c * sign
            prev = acc.get(e)
            if prev is None:
                acc[e] = c
            else:
                s = prev + c
                if s:
                    acc[e] = s
                else:
                    del acc[e]


def _add_into(acc, s, factor=1):
    for e, c in s.items():
        if factor != 1:
            c = c * factor
        prev = acc.get(e)
        if prev is None:
            acc[e] = c
        else:
            t = prev + c
            if t:
                acc[e] = t
            else:
                del acc[e]


def _freeze(dim, acc):
    """Turn mono -> raw-term-dict accumulators into an Operator term dict."""
    return {m: Scalar._raw(dim, t) for m, t in acc.items() if t}


# -- radial reduction --------------------------------------------------------

@lru_cache(maxsize=None)
def _reduce_function(xexp, rpow):
    """Rewrite x^xexp r^rpow so that the last x exponent is 0 or 1.

    Returns a tuple of ``(xexp', rpow', integer coefficient)``.
    """
    dim = len(xexp)
    last = xexp[-1]
    if last < 2:
        return ((xexp, rpow, 1),)
    half, parity = divmod(last, 2)
    base = xexp[:-1] + (parity,)
    # (r^2 - S)^half with S = x_1^2 + ... + x_{d-1}^2
    out = {}
    for j in range(half + 1):
        sign = -1 if j % 2 else 1
        for sx, c in _sum_squares_power(dim - 1, j).items():
            key = (tuple(b + 2 * e for b, e in zip(base[:-1], sx)) + (parity,), rpow + 2 * (half - j))
            out[key] = out.get(key, 0) + sign * comb(half, j) * c
    return tuple((k[0], k[1], c) for k, c in out.items() if c)


@lru_cache(maxsize=None)
def _sum_squares_power(n, j):
    """Multinomial expansion of (y_1 + ... + y_n)^j as {exps: coefficient}."""
    if j == 0:
        return {(0,) * n: 1}
    if n == 0:
        return {}
    prev = _sum_squares_power(n, j - 1)
    out = {}
    for e, c in prev.items():
        for k in range(n):
            new = e[:k] + (e[k] + 1,) + e[k + 1:]
            out[new] = out.get(new, 0) + c
    return out


# -- the rewrite kernel ------------------------------------------------------

@lru_cache(maxsize=None)
def _mu_terms(i, dim):
    return Scalar.mu(i, dim).terms


@lru_cache(maxsize=None)
def _dpow_times_function(dexp, xexp, rpow):
    """Normal form of the word D^dexp * x^xexp * r^rpow (no radial reduction).

    Returns a tuple of ``((alpha, kappa, c, t), raw_terms)`` where the word is
    x^alpha r^kappa D^c R^t and raw_terms maps parameter exponents to
    GaussianRationals (only mu's occur).
    """
    dim = len(xexp)
    zero = (0,) * dim
    one = {(0,) * (dim + 2): GaussianRational(1)}
    idx = next((k for k, b in enumerate(dexp) if b), None)
    if idx is None:
        return (((xexp, rpow, zero, zero), one),)
    rest = dexp[:idx] + (dexp[idx] - 1,) + dexp[idx + 1:]
    inner = _dpow_times_function(rest, xexp, rpow)
    mu = _mu_terms(idx + 1, dim)
    acc = {}

    def push(key, terms, factor):
        slot = acc.setdefault(key, {})
        _add_into(slot, terms, factor)

    def push_mul(key, terms, factor):
        slot = acc.setdefault(key, {})
        _mul_into(slot, terms, mu, factor)

    for (alpha, kappa, c, t), terms in inner:
        # D_i passes through to the D-block
        c_up = c[:idx] + (c[idx] + 1,) + c[idx + 1:]
        push((alpha, kappa, c_up, t), terms, 1)
        if kappa:
            a_up = alpha[:idx] + (alpha[idx] + 1,) + alpha[idx + 1:]
            push((a_up, kappa - 2, c, t), terms, kappa)
        ai = alpha[idx]
        if ai:
            a_dn = alpha[:idx] + (ai - 1,) + alpha[idx + 1:]
            push((a_dn, kappa, c, t), terms, ai)
            if ai % 2:
                # 2 mu_i x^(a - e_i) r^kappa R_i D^c R^t, moving R_i past D^c
                sign = -2 if c[idx] % 2 else 2
                t_new = t[:idx] + (t[idx] ^ 1,) + t[idx + 1:]
                push_mul((a_dn, kappa, c, t_new), terms, sign)
    return tuple((k, v) for k, v in acc.items() if v)


@lru_cache(maxsize=None)
def _mono_mul_raw(lhs, rhs):
    a, k, b, s = lhs
    a2, k2, b2, s2 = rhs
    dim = len(a)
    # move R^s to the far right
    flips = sum(si * (x + y) for si, x, y in zip(s, a2, b2))
    sign0 = -1 if flips % 2 else 1
    u = tuple(p ^ q for p, q in zip(s, s2))
    acc = {}
    for (alpha, kappa, c, t), terms in _dpow_times_function(b, a2, k2):
        tflips = sum(ti * bi for ti, bi in zip(t, b2))
        sign = -sign0 if tflips % 2 else sign0
        dnew = tuple([p + q for p, q in zip(c, b2)])
        rnew = tuple([p ^ q for p, q in zip(t, u)])
        xsum = tuple([p + q for p, q in zip(a, alpha)])
        for xr, kr, ic in _reduce_function(xsum, k + kappa):
            mono = NormalMonomial(xr, kr, dnew, rnew)
            slot = acc.setdefault(mono, {})
            _add_into(slot, terms, sign * ic)
    return tuple((m, Scalar._raw(dim, t)) for m, t in acc.items() if t)


def mono_mul(lhs, rhs, d=None):
    """Normal-ordered product of two normal monomials, as an Operator."""
    lhs = NormalMonomial(*lhs)
    rhs = NormalMonomial(*rhs)
    dim = lhs.dim
    if rhs.dim != dim or (d is not None and d != dim):
        raise DimensionError(f"monomial arity mismatch: {lhs.dim} vs {rhs.dim}")
    return Operator(dim, dict(_mono_mul_raw(lhs, rhs)))


def clear_caches():
    """Drop memoized rewrite results (results are unaffected)."""
    for f in (_reduce_function, _sum_squares_power, _dpow_times_function, _mono_mul_raw):
        f.cache_clear()


# -- operators ---------------------------------------------------------------

class Operator:
    """Finite Scalar-linear combination of normal monomials.

    ``terms`` maps :class:`NormalMonomial` to nonzero :class:`Scalar`.
    Arithmetic returns new operators; instances should be treated as
    immutable.
    """

    __slots__ = ("dim", "terms", "_hash")

    def __init__(self, dim, terms=None):
        self.dim = dim
        self._hash = None
        clean = {}
        for m, c in (terms or {}).items():
            m = NormalMonomial(*m)
            if m.dim != dim:
                raise DimensionError(f"monomial {m} does not have arity {dim}")
            if not isinstance(c, Scalar):
                c = Scalar.const(c, dim)
            elif c.dim != dim:
                raise DimensionError("coefficient arity mismatch")
            if c:
                if m.xexp and m.xexp[-1] > 1:
                    for xr, kr, ic in _reduce_function(m.xexp, m.rpow):
                        key = NormalMonomial(xr, kr, m.dexp, m.rmask)
                        clean[key] = clean.get(key, Scalar.zero(dim)) + c * ic
                else:
                    clean[m] = clean.get(m, Scalar.zero(dim)) + c
        self.terms = {m: c for m, c in clean.items() if c}

    @classmethod
    def _raw(cls, dim, terms):
        out = cls.__new__(cls)
        out.dim = dim
        out.terms = terms
        out._hash = None
        return out

    # -- atoms ----------------------------------------------------------
    @classmethod
    def zero(cls, dim):
        return cls._raw(dim, {})

    @classmethod
    def identity(cls, dim):
        return cls.const(1, dim)

    @classmethod
    def const(cls, value, dim):
        s = value if isinstance(value, Scalar) else Scalar.const(value, dim)
        if s.dim != dim:
            raise DimensionError("scalar arity mismatch")
        if not s:
            return cls._raw(dim, {})
        return cls._raw(dim, {NormalMonomial.identity(dim): s})

    @classmethod
    def x(cls, i, dim, power=1):
        _check_index(i, dim)
        z = (0,) * dim
        xexp = tuple(power if k == i - 1 else 0 for k in range(dim))
        return cls(dim, {NormalMonomial(xexp, 0, z, z): 1})

    @classmethod
    def r(cls, k, dim):
        z = (0,) * dim
        return cls._raw(dim, {NormalMonomial(z, k, z, z): Scalar.const(1, dim)})

    @classmethod
    def D(cls, i, dim):
        _check_index(i, dim)
        z = (0,) * dim
        return cls._raw(dim, {NormalMonomial(z, 0, _unit(i - 1, dim), z): Scalar.const(1, dim)})

    @classmethod
    def R(cls, i, dim):
        _check_index(i, dim)
        z = (0,) * dim
        return cls._raw(dim, {NormalMonomial(z, 0, z, _unit(i - 1, dim)): Scalar.const(1, dim)})

    @classmethod
    def monomial(cls, mono, coeff=1):
        mono = NormalMonomial(*mono)
        return cls(mono.dim, {mono: coeff})

    # -- coercion -------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Operator):
            if other.dim != self.dim:
                raise DimensionError(f"operator dimension mismatch: {self.dim} vs {other.dim}")
            return other
        if isinstance(other, Scalar):
            if other.dim != self.dim:
                raise DimensionError("scalar arity mismatch")
            return Operator.const(other, self.dim)
        if isinstance(other, (int, Fraction, GaussianRational)):
            return Operator.const(other, self.dim)
        return NotImplemented

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            prev = out.get(m)
            if prev is None:
                out[m] = c
            else:
                s = prev + c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Operator._raw(self.dim, out)

    __radd__ = __add__

    def __neg__(self):
        return Operator._raw(self.dim, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def scale(self, c):
        """Multiply every coefficient by a scalar (commutes with everything)."""
        if not isinstance(c, Scalar):
            c = Scalar.const(c, self.dim)
        elif c.dim != self.dim:
            raise DimensionError("scalar arity mismatch")
        if not c:
            return Operator.zero(self.dim)
        out = {}
        for m, v in self.terms.items():
            p = v * c
            if p:
                out[m] = p
        return Operator._raw(self.dim, out)

    def __mul__(self, other):
        if isinstance(other, (Scalar, int, Fraction, GaussianRational)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc = {}
        dim = self.dim
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                c12 = (c1 * c2).terms
                for m, c in _mono_mul_raw(m1, m2):
                    slot = acc.get(m)
                    if slot is None:
                        slot = acc[m] = {}
                    _mul_into(slot, c12, c.terms)
        return Operator._raw(dim, _freeze(dim, acc))

    def __rmul__(self, other):
        if isinstance(other, (Scalar, int, Fraction, GaussianRational)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, Operator):
            s = other._as_scalar()
            if s is None or not s.is_constant() or not s:
                raise ValueError("can only divide by a nonzero constant")
            other = s
        if isinstance(other, Scalar):
            if not other.is_constant() or not other:
                raise ValueError("can only divide by a nonzero constant")
            other = other.constant_value()
        return self.scale(GaussianRational(1) / GaussianRational.coerce(other))

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = Operator.identity(self.dim)
        for _ in range(n):
            out = out * self
        return out

    def _as_scalar(self):
        ident = NormalMonomial.identity(self.dim)
        if not self.terms:
            return Scalar.zero(self.dim)
        if set(self.terms) == {ident}:
            return self.terms[ident]
        return None

    # -- comparison -----------------------------------------------------
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        try:
            other = self._coerce(other)
        except DimensionError:
            return False
        if other is NotImplemented:
            return other
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.dim, frozenset(self.terms.items())))
        return self._hash

    def __len__(self):
        return len(self.terms)

    # -- structure ------------------------------------------------------
    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: _mono_key(t[0]))

    def conj_coefficients(self):
        return Operator._raw(self.dim, {m: c.conj() for m, c in self.terms.items()})

    def substitute(self, bindings):
        return substitute(self, bindings)

    def adjoint(self, weighted=True):
        return adjoint(self, weighted=weighted)

    def weight_split(self):
        return scaling_weight_split(self)

    def render(self, fmt="plain"):
        return render(self, fmt)

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"Operator(dim={self.dim}, {render(self)!r})"


def _mono_key(m):
    return (-(sum(m.xexp) + sum(m.dexp)), tuple(-e for e in m.xexp), -m.rpow,
            tuple(-e for e in m.dexp), m.rmask)


# -- functional interface ------------------------------------------------------

def op_arith(lhs, rhs, kind):
    """``add``, ``sub``, ``mul`` of two operators, or ``scalar_mul`` by a Scalar."""
    if kind == "scalar_mul":
        if isinstance(lhs, Operator):
            return lhs.scale(rhs)
        return rhs.scale(lhs)
    if not isinstance(lhs, Operator) or not isinstance(rhs, Operator):
        raise TypeError("op_arith expects Operator operands")
    if lhs.dim != rhs.dim:
        raise DimensionError(f"operator dimension mismatch: {lhs.dim} vs {rhs.dim}")
    if kind == "add":
        return lhs + rhs
    if kind == "sub":
        return lhs - rhs
    if kind == "mul":
        return lhs * rhs
    raise ValueError(f"unknown kind {kind!r}")


def commutator(lhs, rhs):
    return lhs * rhs - rhs * lhs


def anticommutator(lhs, rhs):
    return lhs * rhs + rhs * lhs


def adjoint(x, weighted=True):
    """Formal adjoint.

    The unweighted adjoint is the anti-homomorphism with x_i, r, R_i
    self-adjoint, D_i anti-self-adjoint and conjugated coefficients, i.e. the
    adjoint for the measure prod |x_i|^(2 mu_i) dx.  With ``weighted=True``
    the result is further conjugated as X -> r X r^-1, which is the adjoint
    for the measure carrying an extra factor 1/r.
    """
    dim = x.dim
    out = Operator.zero(dim)
    z = (0,) * dim
    for m, c in x.terms.items():
        word = Operator.monomial(NormalMonomial(z, 0, z, m.rmask))
        word = word * Operator.monomial(NormalMonomial(z, 0, m.dexp, z))
        word = word * Operator.monomial(NormalMonomial(m.xexp, m.rpow, z, z))
        sign = -1 if sum(m.dexp) % 2 else 1
        out = out + word.scale(c.conj() * sign)
    if weighted:
        out = Operator.r(1, dim) * out * Operator.r(-1, dim)
    return out


def substitute(x, bindings):
    """Bind some parameters to rational values in every coefficient."""
    if not bindings:
        return x
    out = {}
    for m, c in x.terms.items():
        v = c.eval(bindings)
        if v:
            out[m] = v
    return Operator._raw(x.dim, out)


def scaling_weight_split(x):
    """Partition the terms of ``x`` by scaling weight |a| + k - |b|."""
    parts = {}
    for m, c in x.terms.items():
        parts.setdefault(m.weight, {})[m] = c
    return {w: Operator._raw(x.dim, t) for w, t in sorted(parts.items())}


# -- rendering ---------------------------------------------------------------

def _render_mono(m, fmt):
    parts = []
    latex = fmt == "latex"
    for i, e in enumerate(m.xexp, 1):
        if e:
            if latex:
                parts.append(f"x_{{{i}}}" + (f"^{{{e}}}" if e > 1 else ""))
            else:
                parts.append(f"x{i}" + (f"^{e}" if e > 1 else ""))
    if m.rpow:
        if latex:
            parts.append("r" + (f"^{{{m.rpow}}}" if m.rpow != 1 else ""))
        else:
            parts.append("r" + (f"^{m.rpow}" if m.rpow != 1 else ""))
    for i, e in enumerate(m.dexp, 1):
        if e:
            if latex:
                parts.append(f"D_{{{i}}}" + (f"^{{{e}}}" if e > 1 else ""))
            else:
                parts.append(f"D{i}" + (f"^{e}" if e > 1 else ""))
    for i, s in enumerate(m.rmask, 1):
        if s:
            parts.append(f"R_{{{i}}}" if latex else f"R{i}")
    return (" " if latex else "*").join(parts)


def render(x, fmt="plain"):
    """Deterministic text form; ``plain`` output is accepted by the parser."""
    if fmt not in ("plain", "latex"):
        raise ValueError(f"unknown format {fmt!r}")
    if not x.terms:
        return "0"
    latex = fmt == "latex"
    mul = " " if latex else "*"
    pieces = []
    for m, c in x.sorted_terms():
        mono = _render_mono(m, fmt)
        signed = list(_signed_terms(c, fmt))
        if len(signed) == 1:
            neg, body = signed[0]
            if not mono:
                text = body
            elif body == "1":
                text = mono
            else:
                text = f"{body}{mul}{mono}"
        else:
            neg = False
            inner = c.render(fmt)
            paren = (r"\left(", r"\right)") if latex else ("(", ")")
            text = f"{paren[0]}{inner}{paren[1]}"
            if mono:
                text = f"{text}{mul}{mono}"
        if not pieces:
            pieces.append(f"-{text}" if neg else text)
        else:
            pieces.append(f" - {text}" if neg else f" + {text}")
    return "".join(pieces)
