"""Exact operator algebra of the d-dimensional Dunkl-Coulomb problem."""

__version__ = "0.1.0"

from .algebra import (NormalMonomial, Operator, adjoint, anticommutator, commutator, mono_mul,
                      op_arith, render, scaling_weight_split, substitute)
from .coeff import GaussianRational, Scalar
from .expr import evaluate, parse
from .generators import DunklCoulomb, GeneratorId, ModelConfig, build, build_alternate, build_L, build_metric

__all__ = [
    "GaussianRational", "Scalar", "NormalMonomial", "Operator", "mono_mul", "op_arith",
    "commutator", "anticommutator", "adjoint", "substitute", "scaling_weight_split", "render",
    "DunklCoulomb", "GeneratorId", "ModelConfig", "build", "build_L", "build_metric",
    "build_alternate", "parse", "evaluate",
]
