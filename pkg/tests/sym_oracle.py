"""Independent reference implementation built on sympy.

Nothing here uses the rewrite rules of the engine: Dunkl operators are
applied straight from their definition to explicit sympy expressions, and
equality is decided exactly at rational points where r is rational.
"""

import random

import sympy as sp

PYTHAGOREAN = {
    1: [(3,), (-2,), (5,)],
    2: [(3, 4), (-5, 12), (8, -15), (7, 24)],
    3: [(1, 2, 2), (2, -3, 6), (-1, 4, 8), (2, 6, 9)],
    4: [(1, 1, 1, 1), (1, 2, 2, 4), (2, -4, 5, 2), (1, 1, 3, 5)],
}


def symbols(d):
    xs = sp.symbols(f"x1:{d + 1}", real=True)
    mus = sp.symbols(f"mu1:{d + 1}")
    return xs, mus, sp.Symbol("E"), sp.Symbol("alpha")


def radius(xs):
    return sp.sqrt(sum(x ** 2 for x in xs))


def scalar_to_sympy(s, d):
    xs, mus, E, alpha = symbols(d)
    params = list(mus) + [E, alpha]
    total = sp.Integer(0)
    for exps, c in s.terms.items():
        term = sp.Rational(str(c.re)) + sp.I * sp.Rational(str(c.im))
        for p, e in zip(params, exps):
            term *= p ** e
        total += term
    return total


def random_params(d, rng):
    """Random rational values for mu_1..mu_d, E and alpha."""
    xs, mus, E, alpha = symbols(d)
    return {p: sp.Rational(rng.randint(-7, 7), rng.randint(1, 4)) for p in list(mus) + [E, alpha]}


def dunkl(f, i, d, params=None):
    xs, mus, _, _ = symbols(d)
    x = xs[i - 1]
    mu = mus[i - 1].subs(params or {})
    return sp.diff(f, x) + mu * (f - f.subs(x, -x, simultaneous=True)) / x


def reflect(f, i, d):
    x = symbols(d)[0][i - 1]
    return f.subs(x, -x, simultaneous=True)


def act(op, f, params=None):
    """Apply an engine Operator to a sympy expression, word by word.

    ``params`` optionally binds mu_i, E and alpha to numbers up front, which
    keeps the intermediate expressions small.
    """
    d = op.dim
    xs = symbols(d)[0]
    r = radius(xs)
    total = sp.Integer(0)
    for m, c in op.terms.items():
        g = f
        for i, s in enumerate(m.rmask, 1):
            if s:
                g = reflect(g, i, d)
        for i, b in enumerate(m.dexp, 1):
            for _ in range(b):
                g = dunkl(g, i, d, params)
        mult = r ** m.rpow
        for x, a in zip(xs, m.xexp):
            mult *= x ** a
        total += scalar_to_sympy(c, d).subs(params or {}) * mult * g
    return total


def random_function(d, rng):
    """A random rational function of x and r, including odd powers of r."""
    xs = symbols(d)[0]
    r = radius(xs)
    f = sp.Integer(0)
    for _ in range(rng.randint(1, 3)):
        term = sp.Rational(rng.randint(-5, 5) or 1, rng.randint(1, 3))
        for x in xs:
            term *= x ** rng.randint(0, 2)
        term *= r ** rng.randint(-3, 2)
        f += term
    return f


def is_zero(expr, d, seed=0, n_param_draws=2):
    """Exact zero test at Pythagorean points with random rational parameters."""
    xs, mus, E, alpha = symbols(d)
    rng = random.Random(seed)
    for _ in range(n_param_draws):
        params = random_params(d, rng)
        for point in PYTHAGOREAN[d]:
            sub = dict(params)
            sub.update({x: sp.Integer(v) for x, v in zip(xs, point)})
            if sp.expand(expr.subs(sub)) != 0:
                return False
    return True
