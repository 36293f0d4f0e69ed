import random
from fractions import Fraction

import pytest
import sympy as sp

import sym_oracle
from dunkl_coulomb.algebra import Operator, adjoint, commutator, scaling_weight_split
from dunkl_coulomb.coeff import I, Scalar
from dunkl_coulomb.errors import GeneratorIndexError, PreconditionError, UsageError
from dunkl_coulomb.generators import (GENERATOR_ARITY, DunklCoulomb, GeneratorId, ModelConfig, blocks, build,
                                      build_alternate, build_L, build_metric, gid)


def _sum(d, ops):
    out = Operator.zero(d)
    for op in ops:
        out = out + op
    return out


@pytest.mark.parametrize("d", [1, 2, 3])
def test_so21_brackets(d):
    G0, Gd, T = build("Gamma0", d), build("GammaD1", d), build("T", d)
    assert commutator(G0, Gd) == T.scale(I)
    assert commutator(G0, T) == Gd.scale(-I)
    assert commutator(Gd, T) == G0.scale(-I)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_weight_consistency(d):
    pure = [gid("T"), gid("Qsq"), gid("Jsq")] + [gid("Gamma", i) for i in range(1, d + 1)]
    pure += [gid("J", 1, 2)] if d > 1 else []
    for g in pure:
        assert set(scaling_weight_split(build(g, d))) <= {0}, g
    split = [gid("Gamma0"), gid("GammaD1")] + [gid(n, 1) for n in ("A", "M")]
    for g in split:
        assert set(scaling_weight_split(build(g, d))) == {-1, 1}, g


@pytest.mark.parametrize("d", [1, 2, 3])
def test_jsq_closed_form(d):
    b = blocks(d)
    closed = -(b.x2 * b.D2) + b.xD * b.xD + b.xD * (b.c(d - 2) + b.muR * 2)
    assert build("Jsq", d) == closed


@pytest.mark.parametrize("d", [1, 2, 3])
def test_casimir(d):
    b = blocks(d)
    rhs = build("Jsq", d) + (b.c(Fraction(d - 3, 2)) + b.muR) * (b.c(Fraction(d - 1, 2)) + b.muR)
    assert build("Qsq", d) == rhs


@pytest.mark.parametrize("d", [1, 2, 3])
def test_every_L_is_hermitian_for_the_weighted_adjoint(d):
    for a in range(1, d + 4):
        for c in range(a + 1, d + 4):
            L = build_L(a, c, d)
            assert adjoint(L) == L


def test_unweighted_adjoint_of_T():
    for d in (1, 2, 3):
        b = blocks(d)
        T = build("T", d)
        expected = (b.xD + b.c(Fraction(d + 1, 2)) + b.muR).scale(-I)
        assert adjoint(T, weighted=False) == expected
        assert adjoint(T, weighted=False) != T


def test_L_identification_and_antisymmetry():
    d = 2
    assert build_L(1, 2, d) == build(gid("J", 1, 2), d)
    assert build_L(1, d + 1, d) == build(gid("A", 1), d)
    assert build_L(2, d + 2, d) == build(gid("M", 2), d)
    assert build_L(1, d + 3, d) == build(gid("Gamma", 1), d)
    assert build_L(d + 1, d + 2, d) == build("T", d)
    assert build_L(d + 1, d + 3, d) == build("GammaD1", d)
    assert build_L(d + 2, d + 3, d) == build("Gamma0", d)
    assert build_L(2, 1, d) == -build_L(1, 2, d)


def test_metric():
    d = 2
    assert build_metric(1, 1, d) == Operator.identity(d) + Operator.R(1, d).scale(2 * Scalar.mu(1, d))
    assert build_metric(d + 1, d + 1, d) == Operator.identity(d)
    assert build_metric(d + 2, d + 2, d) == -Operator.identity(d)
    assert build_metric(d + 3, d + 3, d) == -Operator.identity(d)
    assert build_metric(1, 2, d).is_zero()


def test_sturmian_operator_and_hamiltonian():
    d = 3
    b = blocks(d)
    K = build("K", d)
    combo = build("Gamma0", d).scale((1 - 2 * b.E) / 2) + build("GammaD1", d).scale((1 + 2 * b.E) / 2)
    assert K == combo
    H = build("H", d)
    assert H == b.rinv * (K - b.c(b.alpha)) + b.c(b.E)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_B_matches_displayed_forms_only_with_reflections(d):
    for i in range(1, d + 1):
        B = build(gid("B", i), d)
        assert build_alternate(gid("B", i), d, ordering=1) == B
        assert build_alternate(gid("B", i), d, ordering=2) == B
        assert build_alternate(gid("B", i), d, ordering=1, reading="D") != B
        At = build(gid("Atilde", i), d)
        assert build_alternate(gid("Atilde", i), d, ordering=1) == At
        assert build_alternate(gid("Atilde", i), d, ordering=2) == At


def test_bindings_substitute():
    cfg = ModelConfig.create(1, {"mu1": 0})
    T = build("T", cfg)
    assert T == (Operator.x(1, 1) * Operator.D(1, 1)).scale(-I)
    assert cfg.binding_dict() == {"mu1": 0}
    assert not cfg.symbolic and ModelConfig(1).symbolic


def test_index_and_name_errors():
    with pytest.raises(GeneratorIndexError):
        build(gid("J", 1, 1), 2)
    with pytest.raises(GeneratorIndexError):
        build(gid("A", 4), 3)
    with pytest.raises(GeneratorIndexError):
        build_L(1, 7, 3)
    with pytest.raises(GeneratorIndexError):
        GeneratorId("J", (1,))
    with pytest.raises(UsageError):
        GeneratorId("Nope")
    with pytest.raises(PreconditionError):
        ModelConfig(0)
    with pytest.raises(PreconditionError):
        ModelConfig.create(2, {"mu3": 1})
    with pytest.raises(UsageError):
        build_alternate(gid("A", 1), 2)
    with pytest.raises(UsageError):
        build_alternate(gid("Atilde", 1), 2, reading="D")


def test_facade():
    m = DunklCoulomb(3)
    assert m.A(1) == build(gid("A", 1), 3)
    assert m.T() == build("T", 3)
    assert m.J_any(2, 1) == -m.J(1, 2)
    assert m.J_any(2, 2).is_zero()
    with pytest.raises(AttributeError):
        m.nothing
    assert set(GENERATOR_ARITY) >= {"Gamma0", "GammaD1", "T", "J", "A", "M", "Gamma", "K", "H", "B", "Atilde"}


def test_build_is_cached():
    assert build(gid("A", 1), 3) is build(gid("A", 1), 3)


# -- generators against their definitions, evaluated with sympy -------------

def _sympy_defs(d, params):
    xs, mus, E, alpha = sym_oracle.symbols(d)
    r = sym_oracle.radius(xs)
    mu = [m.subs(params) for m in mus]

    def Dk(f, i):
        return sym_oracle.dunkl(f, i, d, params)

    def lap(f):
        return sum(Dk(Dk(f, i), i) for i in range(1, d + 1))

    def euler(f):
        return sum(x * Dk(f, i) for i, x in enumerate(xs, 1))

    def muR(f):
        return sum(m * sym_oracle.reflect(f, i, d) for i, m in enumerate(mu, 1))

    defs = {
        "T": lambda f: -sp.I * (euler(f) + sp.Rational(d - 1, 2) * f + muR(f)),
        "H": lambda f: -lap(f) / 2 - alpha.subs(params) * f / r,
        "K": lambda f: -r * lap(f) / 2 - E.subs(params) * r * f,
        "Gamma0": lambda f: r * (f - lap(f)) / 2,
        ("Gamma", 1): lambda f: -sp.I * r * Dk(f, 1),
    }
    if d > 1:
        defs[("J", 1, 2)] = lambda f: -sp.I * (xs[0] * Dk(f, 2) - xs[1] * Dk(f, 1))
    return defs


@pytest.mark.parametrize("d", [1, 2, 3])
def test_generators_act_as_defined(d):
    rng = random.Random(7 * d)
    params = sym_oracle.random_params(d, rng)
    f = sym_oracle.random_function(d, rng)
    for key, direct in _sympy_defs(d, params).items():
        g = gid(*key) if isinstance(key, tuple) else gid(key)
        diff = sym_oracle.act(build(g, d), f, params) - direct(f)
        assert sym_oracle.is_zero(diff, d, n_param_draws=1), g
