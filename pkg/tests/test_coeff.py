from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dunkl_coulomb.coeff import (GaussianRational, I, Scalar, format_gaussian, param_names, render_scalar,
                                 scalar_arith, scalar_conj, scalar_eval, scalar_is_zero)
from dunkl_coulomb.errors import DimensionError, PreconditionError

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
gaussians = st.builds(GaussianRational, rationals, rationals)


@st.composite
def scalars(draw, d=2):
    terms = {}
    for _ in range(draw(st.integers(0, 3))):
        exps = tuple(draw(st.integers(0, 2)) for _ in range(d + 2))
        terms[exps] = draw(gaussians)
    return Scalar(d, terms)


def test_gaussian_basic_arithmetic():
    a = GaussianRational(1, 2)
    b = GaussianRational(Fraction(1, 2), -1)
    assert a + b == GaussianRational(Fraction(3, 2), 1)
    assert a * b == GaussianRational(Fraction(5, 2), 0)
    assert I * I == -1
    assert (a / b) * b == a
    assert a.conj() == GaussianRational(1, -2)


def test_gaussian_rejects_python_complex():
    with pytest.raises(TypeError):
        GaussianRational(1) + complex(1, 1)


def test_gaussian_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        GaussianRational(1) / GaussianRational(0)


@pytest.mark.parametrize("value, text", [
    (I, "i"),
    (-I, "-i"),
    (GaussianRational(0, Fraction(3, 2)), "3/2*i"),
    (GaussianRational(1, 1), "(1 + i)"),
    (GaussianRational(Fraction(-1, 2)), "-1/2"),
])
def test_format_gaussian(value, text):
    assert format_gaussian(value) == text


def test_param_names():
    assert param_names(3) == ("mu1", "mu2", "mu3", "E", "alpha")


def test_scalar_render_and_eval():
    d = 2
    s = Scalar.const(1, d) - Scalar.E(d) * 2
    assert render_scalar(s) == "-2*E + 1"
    assert scalar_eval(s, {"E": Fraction(1, 2)}) == Scalar.zero(d)
    mu = Scalar.mu(1, d)
    assert (mu * mu).eval({"mu1": 3}) == Scalar.const(9, d)
    assert s.free_parameters() == ["E"]


def test_scalar_latex():
    d = 1
    s = Scalar.mu(1, d) * Fraction(1, 2) + Scalar.alpha(d)
    text = render_scalar(s, "latex")
    assert "\\mu_{1}" in text and "\\alpha" in text and "\\frac{1}{2}" in text


def test_scalar_dimension_mismatch():
    with pytest.raises(DimensionError):
        scalar_arith(Scalar.mu(1, 1), Scalar.mu(1, 2), "add")


def test_scalar_division_only_by_constants():
    d = 1
    assert (Scalar.E(d) * 4) / 2 == Scalar.E(d) * 2
    with pytest.raises((PreconditionError, ZeroDivisionError, TypeError, ValueError)):
        Scalar.E(d) / Scalar.E(d)


def test_scalar_is_zero_and_conj():
    d = 1
    s = Scalar.E(d) * I
    assert scalar_conj(s) == -s
    assert scalar_is_zero(s - s)
    assert not scalar_is_zero(s)


@given(gaussians, gaussians, gaussians)
def test_gaussian_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    if a:
        assert a * (GaussianRational(1) / a) == 1


@settings(max_examples=60, deadline=None)
@given(scalars(), scalars(), scalars())
def test_scalar_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a + b == b + a
    assert (a - a).is_zero()


@settings(max_examples=60, deadline=None)
@given(scalars(), scalars(), st.dictionaries(st.sampled_from(param_names(2)), rationals))
def test_eval_is_a_ring_homomorphism(a, b, bindings):
    assert (a * b).eval(bindings) == a.eval(bindings) * b.eval(bindings)
    assert (a + b).eval(bindings) == a.eval(bindings) + b.eval(bindings)


@settings(max_examples=60, deadline=None)
@given(scalars(), scalars())
def test_conj_is_an_involution(a, b):
    assert (a * b).conj() == a.conj() * b.conj()
    assert (a + b).conj() == a.conj() + b.conj()
    assert a.conj().conj() == a
