"""Named operators of the d-dimensional Dunkl-Coulomb problem.

All constructors return canonical :class:`~dunkl_coulomb.algebra.Operator`
instances with formal ``mu_i``, ``E`` and ``alpha`` unless a
:class:`ModelConfig` binds some of them.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .algebra import Operator
from .coeff import I, Scalar, _q, param_names
from .errors import GeneratorIndexError, PreconditionError, UsageError

HALF = Fraction(1, 2)

# name -> number of indices
GENERATOR_ARITY = {
    "Gamma0": 0, "GammaD1": 0, "T": 0, "K": 0, "H": 0, "Jsq": 0, "Qsq": 0,
    "J": 2, "A": 1, "M": 1, "Gamma": 1, "B": 1, "Atilde": 1, "L": 2, "g": 2,
}


@dataclass(frozen=True)
class GeneratorId:
    name: str
    idx: tuple = ()

    def __post_init__(self):
        if self.name not in GENERATOR_ARITY:
            raise UsageError(f"unknown generator {self.name!r}")
        object.__setattr__(self, "idx", tuple(self.idx))
        if len(self.idx) != GENERATOR_ARITY[self.name]:
            raise GeneratorIndexError(
                f"{self.name} takes {GENERATOR_ARITY[self.name]} indices, got {len(self.idx)}")

    def __str__(self):
        if not self.idx:
            return self.name
        return f"{self.name}({','.join(map(str, self.idx))})"


def gid(name, *idx):
    return GeneratorId(name, idx)


@dataclass(frozen=True)
class ModelConfig:
    """Dimension plus optional rational values for some parameters.

    ``bindings`` is stored as a sorted tuple of ``(name, value)`` pairs so the
    config is hashable; pass a dict to :meth:`create`.
    """

    d: int
    bindings: tuple = field(default=())

    def __post_init__(self):
        if not isinstance(self.d, int) or self.d < 1:
            raise PreconditionError(f"dimension must be an integer >= 1, got {self.d!r}")
        names = param_names(self.d)
        items = dict(self.bindings)
        for name in items:
            if name not in names:
                raise PreconditionError(f"unknown parameter {name!r} for d={self.d}")
        normalized = tuple(sorted(((n, _q(v)) for n, v in items.items()), key=lambda t: names.index(t[0])))
        object.__setattr__(self, "bindings", normalized)

    @classmethod
    def create(cls, d, bindings=None):
        return cls(d, tuple((bindings or {}).items()))

    @property
    def symbolic(self):
        return not self.bindings

    def binding_dict(self):
        return dict(self.bindings)


def _cfg(cfg):
    if isinstance(cfg, int):
        return ModelConfig(cfg)
    return cfg


# -- building blocks ---------------------------------------------------------

class _Blocks:
    """Shorthands for the recurring sub-expressions at fixed dimension."""

    def __init__(self, d):
        self.d = d
        self.one = Operator.identity(d)
        self.x = [None] + [Operator.x(i, d) for i in range(1, d + 1)]
        self.D = [None] + [Operator.D(i, d) for i in range(1, d + 1)]
        self.R = [None] + [Operator.R(i, d) for i in range(1, d + 1)]
        self.mu = [None] + [Scalar.mu(i, d) for i in range(1, d + 1)]
        self.E = Scalar.E(d)
        self.alpha = Scalar.alpha(d)
        self.r = Operator.r(1, d)
        self.rinv = Operator.r(-1, d)
        self.D2 = _sum(d, (self.D[i] * self.D[i] for i in range(1, d + 1)))
        self.xD = _sum(d, (self.x[i] * self.D[i] for i in range(1, d + 1)))
        self.x2 = _sum(d, (self.x[i] * self.x[i] for i in range(1, d + 1)))
        self.muR = _sum(d, (self.R[i].scale(self.mu[i]) for i in range(1, d + 1)))

    def c(self, value):
        return Operator.const(value, self.d)

    def metric_factor(self, i):
        """1 + 2 mu_i R_i."""
        return self.one + self.R[i].scale(2 * self.mu[i])


def _sum(d, ops):
    out = Operator.zero(d)
    for op in ops:
        out = out + op
    return out


@lru_cache(maxsize=None)
def blocks(d):
    return _Blocks(d)


def _check(i, d):
    if not isinstance(i, int) or not 1 <= i <= d:
        raise GeneratorIndexError(f"index {i} out of range 1..{d}")


# -- symbolic constructors (cached per dimension) ------------------------------

@lru_cache(maxsize=None)
def _symbolic(name, idx, d):
    b = blocks(d)
    if name == "Gamma0":
        return (b.r * (b.one - b.D2)).scale(HALF)
    if name == "GammaD1":
        return (b.r * (-b.one - b.D2)).scale(HALF)
    if name == "T":
        return (b.xD + b.c(Fraction(d - 1, 2)) + b.muR).scale(-I)
    if name == "J":
        i, j = idx
        return (b.x[i] * b.D[j] - b.x[j] * b.D[i]).scale(-I)
    if name in ("A", "M"):
        (i,) = idx
        core = b.x[i] * b.D2 * (-HALF) + b.D[i] * (b.xD + b.c(Fraction(d - 3, 2)) + b.muR)
        tail = b.x[i].scale(HALF)
        return core - tail if name == "A" else core + tail
    if name == "Gamma":
        (i,) = idx
        return (b.r * b.D[i]).scale(-I)
    if name == "K":
        return (b.r * b.D2).scale(-HALF) - b.r.scale(b.E)
    if name == "H":
        return b.D2.scale(-HALF) - b.rinv.scale(b.alpha)
    if name == "B":
        (i,) = idx
        A = _symbolic("A", idx, d)
        M = _symbolic("M", idx, d)
        return (A.scale(1 - 2 * b.E) + M.scale(1 + 2 * b.E)).scale(HALF)
    if name == "Atilde":
        (i,) = idx
        H = _symbolic("H", (), d)
        return _symbolic("B", idx, d) + b.x[i] * (H - b.c(b.E))
    if name == "Jsq":
        out = Operator.zero(d)
        for i in range(1, d + 1):
            for j in range(1, d + 1):
                if i != j:
                    Jij = _symbolic("J", (i, j), d)
                    out = out + Jij * Jij
        return out.scale(HALF)
    if name == "Qsq":
        G0 = _symbolic("Gamma0", (), d)
        Gd = _symbolic("GammaD1", (), d)
        T = _symbolic("T", (), d)
        return G0 * G0 - Gd * Gd - T * T
    if name == "L":
        return _L(idx[0], idx[1], d)
    if name == "g":
        return _metric(idx[0], idx[1], d)
    raise UsageError(f"unknown generator {name!r}")


def _validate(name, idx, d):
    if name == "J":
        i, j = idx
        _check(i, d)
        _check(j, d)
        if i == j:
            raise GeneratorIndexError(f"J({i},{j}) needs distinct indices")
    elif name in ("A", "M", "Gamma", "B", "Atilde"):
        _check(idx[0], d)
    elif name in ("L", "g"):
        a, b = idx
        for v in (a, b):
            if not isinstance(v, int) or not 1 <= v <= d + 3:
                raise GeneratorIndexError(f"index {v} out of range 1..{d + 3}")
        if name == "L" and a == b:
            raise GeneratorIndexError(f"L({a},{b}) needs distinct indices")


def _L(a, b, d):
    if a > b:
        return -_L(b, a, d)
    if b <= d:
        return _symbolic("J", (a, b), d)
    if a <= d:
        return _symbolic({d + 1: "A", d + 2: "M", d + 3: "Gamma"}[b], (a,), d)
    pair = (a - d, b - d)
    name = {(1, 2): "T", (1, 3): "GammaD1", (2, 3): "Gamma0"}[pair]
    return _symbolic(name, (), d)


def _metric(a, b, d):
    if a != b:
        return Operator.zero(d)
    bl = blocks(d)
    if a <= d:
        return bl.metric_factor(a)
    return bl.c(1 if a == d + 1 else -1)


@lru_cache(maxsize=None)
def _build_cached(gen, cfg):
    _validate(gen.name, gen.idx, cfg.d)
    op = _symbolic(gen.name, gen.idx, cfg.d)
    return op.substitute(cfg.binding_dict())


def build(gen, cfg):
    """Canonical operator for a named generator.

    ``gen`` is a :class:`GeneratorId` (or a ``(name, *indices)`` tuple);
    ``cfg`` a :class:`ModelConfig` or a bare dimension.
    """
    if not isinstance(gen, GeneratorId):
        gen = GeneratorId(gen[0], tuple(gen[1:])) if isinstance(gen, tuple) else GeneratorId(gen)
    return _build_cached(gen, _cfg(cfg))


def build_L(a, b, cfg):
    """so(d+1,2) generator L_ab under the standard identification."""
    return build(GeneratorId("L", (a, b)), cfg)


def build_metric(a, b, cfg):
    """Operator-valued metric entry g_ab."""
    return build(GeneratorId("g", (a, b)), cfg)


def build_alternate(gen, cfg, ordering=1, reading="R"):
    """Directly transcribed closed forms of B_i and the deformed LRL components.

    ``ordering=1`` keeps the Dunkl derivative D_i on the left of the bracket
    (x.D + (d-3)/2 + ...), ``ordering=2`` on the right with (d-1)/2.  For
    ``B`` the inner sum can be read as ``sum_j mu_j R_j`` (``reading="R"``)
    or literally as ``sum_j mu_j D_j`` (``reading="D"``), which is not the
    same operator.
    """
    if not isinstance(gen, GeneratorId):
        gen = GeneratorId(gen[0], tuple(gen[1:])) if isinstance(gen, tuple) else GeneratorId(gen)
    cfg = _cfg(cfg)
    if gen.name not in ("B", "Atilde"):
        raise UsageError(f"no alternate form for {gen}")
    if ordering not in (1, 2) or reading not in ("R", "D"):
        raise UsageError("ordering must be 1 or 2 and reading 'R' or 'D'")
    if reading == "D" and gen.name != "B":
        raise UsageError("the 'D' reading only applies to B")
    d = cfg.d
    (i,) = gen.idx
    _check(i, d)
    b = blocks(d)
    musum = b.muR if reading == "R" else _sum(d, (b.D[j].scale(b.mu[j]) for j in range(1, d + 1)))
    if ordering == 1:
        bracket = b.D[i] * (b.xD + b.c(Fraction(d - 3, 2)) + musum)
    else:
        bracket = (b.xD + b.c(Fraction(d - 1, 2)) + musum) * b.D[i]
    if gen.name == "B":
        op = (b.x[i] * b.D2 * (-1) + bracket * 2 + b.x[i].scale(2 * b.E)).scale(HALF)
    else:
        op = -(b.x[i] * b.D2) + bracket - (b.x[i] * b.rinv).scale(b.alpha)
    return op.substitute(cfg.binding_dict())


class DunklCoulomb:
    """Convenience facade: ``DunklCoulomb(3).A(1)`` and friends."""

    def __init__(self, d, bindings=None):
        self.cfg = ModelConfig.create(d, bindings)
        self.d = d

    def __getattr__(self, name):
        if name in GENERATOR_ARITY:
            if GENERATOR_ARITY[name] == 0:
                return lambda: build(GeneratorId(name), self.cfg)
            return lambda *idx: build(GeneratorId(name, idx), self.cfg)
        raise AttributeError(name)

    def J_any(self, i, j):
        """J_ij for any indices, with J_ii = 0 and J_ji = -J_ij."""
        if i == j:
            _check(i, self.d)
            return Operator.zero(self.d)
        if i > j:
            return -self.J(j, i)
        return self.J(i, j)

    @property
    def blocks(self):
        return blocks(self.d)

    def sub(self, op):
        return op.substitute(self.cfg.binding_dict())
