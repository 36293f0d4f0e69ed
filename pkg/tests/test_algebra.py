import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import sym_oracle
from dunkl_coulomb import algebra
from dunkl_coulomb.algebra import (NormalMonomial, Operator, adjoint, anticommutator, commutator, mono_mul,
                                   op_arith, scaling_weight_split)
from dunkl_coulomb.coeff import I, Scalar
from dunkl_coulomb.errors import DimensionError, GeneratorIndexError
from dunkl_coulomb.verify import random_monomial, random_operator


def x(i, d):
    return Operator.x(i, d)


def D(i, d):
    return Operator.D(i, d)


def R(i, d):
    return Operator.R(i, d)


def one(d):
    return Operator.identity(d)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_dunkl_commutes_with_own_coordinate_up_to_reflection(d):
    for i in range(1, d + 1):
        expected = one(d) + R(i, d).scale(2 * Scalar.mu(i, d))
        assert commutator(D(i, d), x(i, d)) == expected


@pytest.mark.parametrize("d", [2, 3])
def test_cross_relations(d):
    for i in range(1, d + 1):
        for j in range(1, d + 1):
            assert commutator(D(i, d), D(j, d)).is_zero()
            if i != j:
                assert commutator(D(i, d), x(j, d)).is_zero()
                assert commutator(R(i, d), x(j, d)).is_zero()
                assert commutator(R(i, d), D(j, d)).is_zero()
            assert commutator(R(i, d), R(j, d)).is_zero()


@pytest.mark.parametrize("d", [1, 2, 3])
def test_reflection_rules(d):
    for i in range(1, d + 1):
        assert R(i, d) * R(i, d) == one(d)
        assert anticommutator(R(i, d), x(i, d)).is_zero()
        assert anticommutator(R(i, d), D(i, d)).is_zero()
        for m in range(5):
            xm = Operator.x(i, d, m)
            assert R(i, d) * xm == (xm * R(i, d)).scale((-1) ** m)


@pytest.mark.parametrize("k", [-3, -1, 1, 2])
def test_dunkl_derivative_of_radial_power(k):
    d = 2
    for i in (1, 2):
        lhs = commutator(D(i, d), Operator.r(k, d))
        assert lhs == (x(i, d) * Operator.r(k - 2, d)).scale(k)


def test_radial_relation_is_built_in():
    d = 3
    x2 = x(1, d) * x(1, d) + x(2, d) * x(2, d) + x(3, d) * x(3, d)
    assert x2 == Operator.r(2, d)
    assert Operator.x(3, d, 2) == Operator.r(2, d) - Operator.x(1, d, 2) - Operator.x(2, d, 2)
    assert Operator.r(1, d) * Operator.r(-1, d) == one(d)


def test_render_order():
    d = 1
    assert (D(1, d) * x(1, d)).substitute({"mu1": 0}).render() == "x1*D1 + 1"
    assert commutator(D(1, d), x(1, d)).render() == "1 + 2*mu1*R1"
    op = (x(1, d) * Operator.r(-1, d) * D(1, d) * R(1, d)).scale(1 - 2 * Scalar.E(d))
    assert op.render() == "(-2*E + 1)*x1*r^-1*D1*R1"


def test_mono_mul_matches_operator_product():
    d = 2
    m1 = NormalMonomial((1, 0), -1, (0, 2), (1, 0))
    m2 = NormalMonomial((2, 1), 1, (1, 0), (0, 1))
    assert mono_mul(m1, m2) == Operator.monomial(m1) * Operator.monomial(m2)


def test_dimension_checks():
    with pytest.raises(DimensionError):
        x(1, 1) + x(1, 2)
    with pytest.raises(DimensionError):
        mono_mul(NormalMonomial.identity(1), NormalMonomial.identity(2))
    with pytest.raises(GeneratorIndexError):
        Operator.D(3, 2)
    assert x(1, 1) != x(1, 2)


def test_op_arith_kinds():
    d = 1
    a, b = x(1, d), D(1, d)
    assert op_arith(a, b, "add") == a + b
    assert op_arith(a, b, "sub") == a - b
    assert op_arith(a, b, "mul") == a * b
    assert op_arith(a, Scalar.E(d), "scalar_mul") == a.scale(Scalar.E(d))


def test_unweighted_adjoint_of_basic_words():
    d = 1
    assert adjoint(D(1, d), weighted=False) == -D(1, d)
    assert adjoint(x(1, d), weighted=False) == x(1, d)
    assert adjoint(Operator.const(I, d), weighted=False) == Operator.const(-I, d)


def test_weight_split():
    d = 1
    op = x(1, d) + D(1, d) + Operator.r(-1, d) + one(d)
    parts = scaling_weight_split(op)
    assert sorted(parts) == [-1, 0, 1]
    assert parts[1] == x(1, d)
    assert parts[-1] == D(1, d) + Operator.r(-1, d)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_products_against_sympy(d):
    rng = random.Random(100 + d)
    for _ in range(6):
        X = random_operator(rng, d, n_terms=2, max_exp=1)
        Y = random_operator(rng, d, n_terms=2, max_exp=1)
        f = sym_oracle.random_function(d, rng)
        params = sym_oracle.random_params(d, rng)
        diff = sym_oracle.act(X * Y, f, params) - sym_oracle.act(X, sym_oracle.act(Y, f, params), params)
        assert sym_oracle.is_zero(diff, d, seed=rng.randrange(1000), n_param_draws=1)


# -- properties on fuzzed input ---------------------------------------------

dims = st.integers(1, 3)
seeds = st.integers(0, 2 ** 32 - 1)


@settings(max_examples=50, deadline=None)
@given(dims, seeds)
def test_monomial_associativity(d, seed):
    rng = random.Random(seed)
    m1, m2, m3 = (Operator.monomial(random_monomial(rng, d)) for _ in range(3))
    assert (m1 * m2) * m3 == m1 * (m2 * m3)


@settings(max_examples=40, deadline=None)
@given(dims, seeds)
def test_distributivity(d, seed):
    rng = random.Random(seed)
    a, b, c = (random_operator(rng, d, n_terms=2, max_exp=1) for _ in range(3))
    assert a * (b + c) == a * b + a * c
    assert (a + b) * c == a * c + b * c


@settings(max_examples=40, deadline=None)
@given(dims, seeds)
def test_bracket_is_a_derivation(d, seed):
    rng = random.Random(seed)
    a, b, c = (random_operator(rng, d, n_terms=2, max_exp=1) for _ in range(3))
    assert commutator(a, b * c) == commutator(a, b) * c + b * commutator(a, c)


@settings(max_examples=40, deadline=None)
@given(dims, seeds, st.booleans())
def test_adjoint_properties(d, seed, weighted):
    rng = random.Random(seed)
    a, b = (random_operator(rng, d, n_terms=2, max_exp=1) for _ in range(2))
    c = Scalar.E(d) * (1 + 2 * I) + Fraction(1, 3)
    assert adjoint(a * b, weighted) == adjoint(b, weighted) * adjoint(a, weighted)
    assert adjoint(adjoint(a, weighted), weighted) == a
    assert adjoint(a.scale(c), weighted) == adjoint(a, weighted).scale(c.conj())


@settings(max_examples=60, deadline=None)
@given(dims, seeds)
def test_weight_homogeneity(d, seed):
    rng = random.Random(seed)
    m1, m2 = random_monomial(rng, d), random_monomial(rng, d)
    product = mono_mul(m1, m2)
    assert set(scaling_weight_split(product)) <= {m1.weight + m2.weight}


@settings(max_examples=60, deadline=None)
@given(dims, seeds)
def test_rewrite_step_bound(d, seed):
    # one kernel evaluation per D letter of the left factor, never more
    rng = random.Random(seed)
    m1, m2 = random_monomial(rng, d), random_monomial(rng, d)
    algebra.clear_caches()
    product = mono_mul(m1, m2)
    assert algebra._dpow_times_function.cache_info().misses <= sum(m1.dexp) + 1
    total_d = sum(m1.dexp) + sum(m2.dexp)
    assert all(sum(m.dexp) <= total_d for m in product.terms)
    assert all(m.xexp[-1] <= 1 for m in product.terms)
