"""Exact coefficients: Gaussian rationals and polynomials in mu_1..mu_d, E, alpha.

A :class:`Scalar` of dimension ``d`` is a polynomial in the ``d + 2`` formal
parameters ``mu1, ..., mud, E, alpha`` whose coefficients are
:class:`GaussianRational` numbers.  Parameters stay formal unless explicitly
bound with :meth:`Scalar.eval`.
"""

from fractions import Fraction
from numbers import Rational

from .errors import DimensionError, PreconditionError


def _q(value):
    """Normalize a rational to ``int`` when integral, else ``Fraction``."""
    if type(value) is int:
        return value
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else value
    if isinstance(value, Rational):
        return _q(Fraction(value.numerator, value.denominator))
    if isinstance(value, str):
        return _q(Fraction(value))
    raise TypeError(f"not an exact rational: {value!r}")


class GaussianRational:
    """Exact complex number ``re + im*i`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = _q(re)
        self.im = _q(im)

    @classmethod
    def coerce(cls, value):
        if isinstance(value, GaussianRational):
            return value
        if isinstance(value, complex):
            raise TypeError("floating-point complex numbers are not exact")
        return cls(value, 0)

    def __add__(self, other):
        other = _as_gr(other)
        if other is NotImplemented:
            return other
        return _gr(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_gr(other)
        if other is NotImplemented:
            return other
        return _gr(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _as_gr(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = _as_gr(other)
        if other is NotImplemented:
            return other
        a, b, c, d = self.re, self.im, other.re, other.im
        if b == 0 and d == 0:
            return _gr(a * c, 0)
        return _gr(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_gr(other)
        if other is NotImplemented:
            return other
        norm = other.re * other.re + other.im * other.im
        if norm == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        num = self * other.conj()
        return GaussianRational(Fraction(num.re) / norm, Fraction(num.im) / norm)

    def __rtruediv__(self, other):
        other = _as_gr(other)
        if other is NotImplemented:
            return other
        return other / self

    def __neg__(self):
        return _gr(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return GaussianRational(1) / self ** (-n)
        out = GaussianRational(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conj(self):
        return _gr(self.re, -self.im)

    def is_real(self):
        return self.im == 0

    def __bool__(self):
        return self.re != 0 or self.im != 0

    def __eq__(self, other):
        other = _as_gr(other)
        if other is NotImplemented:
            return other
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussianRational({self.re!s}, {self.im!s})"

    def __str__(self):
        return format_gaussian(self)


def _gr(re, im):
    # fast constructor for values that are already int/Fraction
    out = GaussianRational.__new__(GaussianRational)
    out.re = re.numerator if type(re) is Fraction and re.denominator == 1 else re
    out.im = im.numerator if type(im) is Fraction and im.denominator == 1 else im
    return out


def _as_gr(value):
    if isinstance(value, GaussianRational):
        return value
    if isinstance(value, (int, Fraction)):
        return _gr(value, 0)
    if isinstance(value, Rational):
        return GaussianRational(value)
    return NotImplemented


I = GaussianRational(0, 1)


def _fmt_rational(q):
    return str(q)


def format_gaussian(c):
    """Plain-text rendering that the expression parser reads back."""
    re, im = c.re, c.im
    if im == 0:
        return _fmt_rational(re)
    if im == 1:
        imag = "i"
    elif im == -1:
        imag = "-i"
    else:
        imag = f"{_fmt_rational(im)}*i"
    if re == 0:
        return imag
    if imag.startswith("-"):
        return f"({_fmt_rational(re)} - {imag[1:]})"
    return f"({_fmt_rational(re)} + {imag})"


def param_names(dim):
    """Names of the formal parameters for dimension ``dim``, in exponent order."""
    return tuple(f"mu{i}" for i in range(1, dim + 1)) + ("E", "alpha")


class Scalar:
    """Polynomial in ``mu1..mud, E, alpha`` with Gaussian-rational coefficients.

    ``terms`` maps exponent tuples of length ``dim + 2`` to nonzero
    :class:`GaussianRational` coefficients.  Instances are immutable by
    convention; never mutate ``terms`` of a shared instance.
    """

    __slots__ = ("dim", "terms", "_hash")

    def __init__(self, dim, terms=None):
        if dim < 0:
            raise DimensionError(f"negative dimension {dim}")
        self.dim = dim
        clean = {}
        if terms:
            width = dim + 2
            for exps, c in terms.items():
                exps = tuple(int(e) for e in exps)
                if len(exps) != width or any(e < 0 for e in exps):
                    raise DimensionError(f"bad exponent vector {exps} for dim {dim}")
                c = GaussianRational.coerce(c)
                if c:
                    clean[exps] = clean.get(exps, GaussianRational()) + c
            clean = {e: c for e, c in clean.items() if c}
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, dim, terms):
        out = cls.__new__(cls)
        out.dim = dim
        out.terms = terms
        out._hash = None
        return out

    # -- constructors ---------------------------------------------------
    @classmethod
    def zero(cls, dim):
        return cls._raw(dim, {})

    @classmethod
    def const(cls, value, dim):
        c = GaussianRational.coerce(value)
        if not c:
            return cls._raw(dim, {})
        return cls._raw(dim, {(0,) * (dim + 2): c})

    @classmethod
    def param(cls, name, dim):
        names = param_names(dim)
        if name not in names:
            raise PreconditionError(f"unknown parameter {name!r} for dim {dim}")
        exps = [0] * (dim + 2)
        exps[names.index(name)] = 1
        return cls._raw(dim, {tuple(exps): GaussianRational(1)})

    @classmethod
    def mu(cls, i, dim):
        return cls.param(f"mu{i}", dim)

    @classmethod
    def E(cls, dim):
        return cls.param("E", dim)

    @classmethod
    def alpha(cls, dim):
        return cls.param("alpha", dim)

    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.dim != self.dim:
                raise DimensionError(f"scalar arity mismatch: {self.dim} vs {other.dim}")
            return other
        if isinstance(other, (int, Fraction, GaussianRational)) or isinstance(other, Rational):
            return Scalar.const(other, self.dim)
        return NotImplemented

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other.terms:
            return self
        if not self.terms:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            prev = out.get(e)
            if prev is None:
                out[e] = c
            else:
                s = prev + c
                if s:
                    out[e] = s
                else:
                    del out[e]
        return Scalar._raw(self.dim, out)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw(self.dim, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        st, ot = self.terms, other.terms
        if not st or not ot:
            return Scalar._raw(self.dim, {})
        out = {}
        for e1, c1 in st.items():
            for e2, c2 in ot.items():
                e = tuple([a + b for a, b in zip(e1, e2)])
                c = c1 * c2
                prev = out.get(e)
                if prev is None:
                    out[e] = c
                else:
                    s = prev + c
                    if s:
                        out[e] = s
                    else:
                        del out[e]
        return Scalar._raw(self.dim, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        """Division by a nonzero constant only."""
        if isinstance(other, Scalar):
            if not other.is_constant() or other.is_zero():
                raise PreconditionError("can only divide by a nonzero constant")
            other = other.constant_value()
        c = GaussianRational(1) / GaussianRational.coerce(other)
        return self * c

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        out = Scalar.const(1, self.dim)
        for _ in range(n):
            out = out * self
        return out

    # -- predicates and queries ----------------------------------------
    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_constant(self):
        zero = (0,) * (self.dim + 2)
        return all(e == zero for e in self.terms)

    def constant_value(self):
        """Value of a constant scalar as a GaussianRational."""
        if not self.is_constant():
            raise PreconditionError(f"scalar {self} is not constant")
        return self.terms.get((0,) * (self.dim + 2), GaussianRational())

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.dim, frozenset(self.terms.items())))
        return self._hash

    # -- conjugation and substitution ----------------------------------
    def conj(self):
        return Scalar._raw(self.dim, {e: c.conj() for e, c in self.terms.items()})

    def eval(self, bindings):
        """Substitute rational values for some parameters (by name)."""
        if not bindings:
            return self
        names = param_names(self.dim)
        pos = {}
        for name, value in bindings.items():
            if name not in names:
                raise PreconditionError(f"unknown parameter {name!r} for dim {self.dim}")
            pos[names.index(name)] = _q(value)
        out = {}
        for e, c in self.terms.items():
            factor = 1
            new = list(e)
            for k, v in pos.items():
                if new[k]:
                    factor = factor * v ** new[k]
                    new[k] = 0
            if factor == 0:
                continue
            key = tuple(new)
            val = out.get(key, GaussianRational()) + c * factor
            if val:
                out[key] = val
            else:
                out.pop(key, None)
        return Scalar._raw(self.dim, out)

    def free_parameters(self):
        names = param_names(self.dim)
        used = set()
        for e in self.terms:
            used.update(names[k] for k, v in enumerate(e) if v)
        return sorted(used, key=names.index)

    # -- rendering ------------------------------------------------------
    def sorted_terms(self):
        # higher total degree first, then lexicographically descending exponents
        return sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-x for x in t[0])))

    def render(self, fmt="plain"):
        return render_scalar(self, fmt)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"Scalar({self.render()!r}, dim={self.dim})"


def _monomial_plain(exps, names):
    parts = []
    for name, e in zip(names, exps):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


_LATEX_PARAMS = {"E": "E", "alpha": r"\alpha"}


def _latex_param(name):
    if name.startswith("mu"):
        return rf"\mu_{{{name[2:]}}}"
    return _LATEX_PARAMS[name]


def _monomial_latex(exps, names):
    parts = []
    for name, e in zip(names, exps):
        if e == 1:
            parts.append(_latex_param(name))
        elif e > 1:
            parts.append(f"{_latex_param(name)}^{{{e}}}")
    return " ".join(parts)


def _latex_rational(q):
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    sign = "-" if q < 0 else ""
    return rf"{sign}\frac{{{abs(q.numerator)}}}{{{q.denominator}}}"


def _latex_gaussian(c):
    if c.im == 0:
        return _latex_rational(c.re)
    imag = {1: r"\mathrm{i}", -1: r"-\mathrm{i}"}.get(c.im, rf"{_latex_rational(c.im)}\mathrm{{i}}")
    if c.re == 0:
        return imag
    sep = " " if imag.startswith("-") else " + "
    return rf"\left({_latex_rational(c.re)}{sep}{imag}\right)"


def _signed_terms(s, fmt):
    """Yield ``(negative, body)`` per term, body without the leading sign."""
    names = param_names(s.dim)
    for exps, c in s.sorted_terms():
        neg = (c.im == 0 and c.re < 0) or (c.re == 0 and c.im < 0)
        mag = -c if neg else c
        if fmt == "latex":
            mono = _monomial_latex(exps, names)
            coef = _latex_gaussian(mag)
            if not mono:
                body = coef
            elif mag == 1:
                body = mono
            else:
                body = f"{coef} {mono}"
        else:
            mono = _monomial_plain(exps, names)
            coef = format_gaussian(mag)
            if not mono:
                body = coef
            elif mag == 1:
                body = mono
            else:
                body = f"{coef}*{mono}"
        yield neg, body


def render_scalar(s, fmt="plain"):
    if not s.terms:
        return "0"
    out = []
    for k, (neg, body) in enumerate(_signed_terms(s, fmt)):
        if k == 0:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


# -- functional interface ------------------------------------------------

def scalar_arith(lhs, rhs, kind):
    """Exact ``add``, ``sub`` or ``mul`` of two scalars."""
    if not isinstance(lhs, Scalar) or not isinstance(rhs, Scalar):
        raise TypeError("scalar_arith expects Scalar operands")
    if lhs.dim != rhs.dim:
        raise DimensionError(f"scalar arity mismatch: {lhs.dim} vs {rhs.dim}")
    if kind == "add":
        return lhs + rhs
    if kind == "sub":
        return lhs - rhs
    if kind == "mul":
        return lhs * rhs
    raise ValueError(f"unknown kind {kind!r}")


def scalar_conj(s):
    return s.conj()


def scalar_eval(s, bindings):
    return s.eval(bindings)


def scalar_is_zero(s):
    return s.is_zero()
