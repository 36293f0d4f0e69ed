"""Executable catalog of the Dunkl-Coulomb operator identities.

Each :class:`IdentitySpec` builds a list of ``(label, lhs, rhs)`` checks for
a given dimension.  :func:`run_identity` forms ``lhs - rhs`` in the rewrite
engine; a nonzero canonical residual is handed to the function-space oracle
before the identity is declared failed.
"""

import json
import random
import time
import zlib
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from itertools import combinations

from . import __version__
from .algebra import NormalMonomial, Operator, adjoint, anticommutator, commutator
from .coeff import I, Scalar
from .errors import PreconditionError, UsageError
from .funcspace import apply, random_basis
from .generators import DunklCoulomb, blocks

HALF = Fraction(1, 2)
DEFAULT_ORACLE_FUNCTIONS = 20
ALL_DIMS = (1, 2, 3, 4)
HEAVY_DIMS = (1, 2, 3)


@dataclass(frozen=True)
class IdentitySpec:
    id: str
    dims: tuple
    builder: object  # callable d -> list of (label, lhs, rhs)
    description: str = ""
    oracle_fallback: bool = True
    expect_zero: bool = True
    bindings: tuple = ()  # parameter values applied to every residual


@dataclass
class ReportEntry:
    id: str
    d: int
    status: str  # pass-syntactic | pass-oracle | fail
    residual_terms: int
    millis: int
    checks: int = 0
    expect: str = "zero"
    residual: str = ""

    @property
    def passed(self):
        return self.status != "fail"


@dataclass
class VerificationReport:
    suite: str
    dims: list
    seed: int
    version: str = __version__
    entries: list = field(default_factory=list)

    @property
    def all_passed(self):
        return all(e.passed for e in self.entries)

    def failures(self):
        return [e for e in self.entries if not e.passed]

    def to_dict(self, timings=True):
        entries = []
        for e in self.entries:
            row = asdict(e)
            if not timings:
                row.pop("millis")
            entries.append(row)
        return {"suite": self.suite, "dims": list(self.dims), "seed": self.seed,
                "version": self.version, "entries": entries}

    def to_json(self, indent=2):
        return json.dumps(self.to_dict(), indent=indent, sort_keys=False)


REPORT_SCHEMA = {
    "type": "object",
    "required": ["suite", "dims", "seed", "version", "entries"],
    "properties": {
        "suite": {"type": "string"},
        "dims": {"type": "array", "items": {"type": "integer", "minimum": 1}, "minItems": 1},
        "seed": {"type": "integer"},
        "version": {"type": "string"},
        "entries": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "d", "status", "residual_terms", "millis"],
                "properties": {
                    "id": {"type": "string"},
                    "d": {"type": "integer", "minimum": 1},
                    "status": {"enum": ["pass-syntactic", "pass-oracle", "fail"]},
                    "residual_terms": {"type": "integer", "minimum": 0},
                    "millis": {"type": "integer", "minimum": 0},
                    "checks": {"type": "integer", "minimum": 0},
                    "expect": {"enum": ["zero", "nonzero"]},
                    "residual": {"type": "string"},
                },
            },
        },
    },
}


# -- helpers used by the builders ---------------------------------------------

class _Ctx:
    """Generators and shorthands for one dimension (optionally with bindings)."""

    def __init__(self, d, bindings=None):
        self.d = d
        self.m = DunklCoulomb(d, bindings)
        self.b = blocks(d)
        self.bindings = bindings or {}
        self.idx = range(1, d + 1)
        sub = self.m.sub
        b = self.b
        self.E = b.E
        self.alpha = b.alpha
        self.one = b.one
        self.x, self.D, self.R = b.x, b.D, b.R
        self.r, self.rinv = b.r, b.rinv
        self.D2, self.xD = sub(b.D2), sub(b.xD)
        self.x2 = b.x2
        self.muR = sub(b.muR)
        self.G0, self.Gd, self.T = self.m.Gamma0(), self.m.GammaD1(), self.m.T()
        self.K, self.H = self.m.K(), self.m.H()
        self.Jsq = self.m.Jsq()

    def c(self, v):
        return Operator.const(v, self.d)

    def g(self, i):
        """Metric factor 1 + 2 mu_i R_i (after bindings)."""
        return self.m.sub(self.b.metric_factor(i))

    def J(self, i, j):
        return self.m.J_any(i, j)

    def A(self, i):
        return self.m.A(i)

    def M(self, i):
        return self.m.M(i)

    def G(self, i):
        return self.m.Gamma(i)

    def B(self, i):
        return self.m.B(i)

    def At(self, i):
        return self.m.Atilde(i)

    def L(self, a, b):
        if a == b:
            return Operator.zero(self.d)
        return self.m.L(a, b)

    def metric(self, a, b):
        return self.m.g(a, b)

    def s(self, shift):
        """((d - shift) / 2) + sum_i mu_i R_i."""
        return self.c(Fraction(self.d - shift, 2)) + self.muR

    def delta(self, i, j):
        return 1 if i == j else 0

    def mu_except(self, i):
        """-mu_i R_i + sum_{j != i} mu_j R_j."""
        return self.muR - self.m.sub(self.R[i].scale(2 * self.b.mu[i]))


def _ctx(d, bindings=None):
    return _Ctx(d, bindings)


def _pairs(d):
    return [(i, j) for i in range(1, d + 1) for j in range(1, d + 1)]


def _zero(d):
    return Operator.zero(d)


# -- catalog builders --------------------------------------------------------

def _dnk_dx(d):
    c = _ctx(d)
    return [(f"[D{i},x{j}]", commutator(c.D[i], c.x[j]), c.g(i) * c.delta(i, j)) for i, j in _pairs(d)]


def _dnk_rx(d):
    c = _ctx(d)
    return [(f"{{R{i},x{i}}}", anticommutator(c.R[i], c.x[i]), _zero(d)) for i in c.idx]


def _dnk_rd(d):
    c = _ctx(d)
    return [(f"{{R{i},D{i}}}", anticommutator(c.R[i], c.D[i]), _zero(d)) for i in c.idx]


def _dnk_cross(d):
    c = _ctx(d)
    out = []
    for i, j in _pairs(d):
        if i != j:
            out.append((f"[R{i},x{j}]", commutator(c.R[i], c.x[j]), _zero(d)))
            out.append((f"[R{i},D{j}]", commutator(c.R[i], c.D[j]), _zero(d)))
            out.append((f"[R{i},R{j}]", commutator(c.R[i], c.R[j]), _zero(d)))
    return out


def _so21(k):
    def build(d):
        c = _ctx(d)
        if k == 1:
            return [("[G0,Gd1]", commutator(c.G0, c.Gd), c.T * I)]
        if k == 2:
            return [("[G0,T]", commutator(c.G0, c.T), c.Gd * (-I))]
        return [("[Gd1,T]", commutator(c.Gd, c.T), c.G0 * (-I))]
    return build


def _jsq(d):
    c = _ctx(d)
    closed = -(c.x2 * c.D2) + c.xD * c.xD + c.xD * (c.c(d - 2) + c.muR * 2)
    return [("J^2", c.Jsq, closed)]


def _cas(d):
    c = _ctx(d)
    Q = c.m.Qsq()
    return [("Q^2", Q, c.Jsq + c.s(3) * c.s(1)),
            ("Q^2 def", Q, c.G0 * c.G0 - c.Gd * c.Gd - c.T * c.T)]


def _mix(k):
    def build(d):
        c = _ctx(d)
        out = []
        if k == 1:
            for i, j in combinations(c.idx, 2):
                for name, X in (("G0", c.G0), ("Gd1", c.Gd), ("T", c.T)):
                    out.append((f"[{name},J{i}{j}]", commutator(X, c.J(i, j)), _zero(d)))
            return out
        for i in c.idx:
            if k == 2:
                out += [(f"[G0,A{i}]", commutator(c.G0, c.A(i)), _zero(d)),
                        (f"[Gd1,M{i}]", commutator(c.Gd, c.M(i)), _zero(d)),
                        (f"[T,G{i}]", commutator(c.T, c.G(i)), _zero(d))]
            elif k == 3:
                out += [(f"[Gd1,A{i}]", commutator(c.Gd, c.A(i)), c.G(i) * I),
                        (f"[G0,M{i}]", commutator(c.G0, c.M(i)), c.G(i) * (-I))]
            elif k == 4:
                out += [(f"[T,A{i}]", commutator(c.T, c.A(i)), c.M(i) * I),
                        (f"[G0,G{i}]", commutator(c.G0, c.G(i)), c.M(i) * I)]
            else:
                out += [(f"[T,M{i}]", commutator(c.T, c.M(i)), c.A(i) * I),
                        (f"[Gd1,G{i}]", commutator(c.Gd, c.G(i)), c.A(i) * I)]
        return out
    return build


def _same(which):
    def build(d):
        c = _ctx(d)
        fam, sign = {"A": (c.A, 1), "M": (c.M, -1), "G": (c.G, -1)}[which]
        return [(f"[{which}{i},{which}{j}]", commutator(fam(i), fam(j)), c.J(i, j) * (I * sign))
                for i, j in _pairs(d)]
    return build


def _jj_rhs(c, i, j, k, l):
    dl = c.delta
    return (c.J(j, l) * c.g(k) * dl(i, k) + c.J(k, j) * c.g(l) * dl(i, l)
            + c.J(l, i) * c.g(k) * dl(j, k) + c.J(i, k) * c.g(l) * dl(j, l)) * I


def _def_jj(d):
    c = _ctx(d)
    out = []
    for i, j in combinations(c.idx, 2):
        for k, l in combinations(c.idx, 2):
            out.append((f"[J{i}{j},J{k}{l}]", commutator(c.J(i, j), c.J(k, l)), _jj_rhs(c, i, j, k, l)))
    return out


def _def_jv(which):
    def build(d):
        c = _ctx(d)
        fam = {"A": c.A, "M": c.M, "G": c.G}[which]
        out = []
        for i, j in combinations(c.idx, 2):
            for k in c.idx:
                rhs = (fam(j) * c.delta(i, k) - fam(i) * c.delta(j, k)) * c.g(k) * I
                out.append((f"[J{i}{j},{which}{k}]", commutator(c.J(i, j), fam(k)), rhs))
        return out
    return build


def _def_vv(pair):
    def build(d):
        c = _ctx(d)
        lhs_f, rhs_f = {"AM": ((c.A, c.M), c.T), "AG": ((c.A, c.G), c.Gd), "MG": ((c.M, c.G), c.G0)}[pair]
        out = []
        for i, j in _pairs(d):
            rhs = rhs_f * c.g(i) * (I * c.delta(i, j))
            out.append((f"[{pair[0]}{i},{pair[1]}{j}]", commutator(lhs_f[0](i), lhs_f[1](j)), rhs))
        return out
    return build


def _refl(k):
    def build(d):
        c = _ctx(d)
        out = []
        for i in c.idx:
            R = c.R[i]
            if k == 1:
                for name, X in (("G0", c.G0), ("Gd1", c.Gd), ("T", c.T)):
                    out.append((f"[R{i},{name}]", commutator(R, X), _zero(d)))
            elif k in (2, 3):
                for j, l in combinations(c.idx, 2):
                    inside = i in (j, l)
                    if k == 2 and not inside:
                        out.append((f"[R{i},J{j}{l}]", commutator(R, c.J(j, l)), _zero(d)))
                    if k == 3 and inside:
                        out.append((f"{{R{i},J{j}{l}}}", anticommutator(R, c.J(j, l)), _zero(d)))
            else:
                for j in c.idx:
                    if (k == 4) == (i != j):
                        br = commutator if k == 4 else anticommutator
                        for name, fam in (("A", c.A), ("M", c.M), ("G", c.G)):
                            out.append((f"R{i},{name}{j}", br(R, fam(j)), _zero(d)))
        return out
    return build


def _sodp2_brackets(d):
    c = _ctx(d)
    n = d + 3
    idx = list(combinations(range(1, n + 1), 2))
    out = []
    for a, b in idx:
        for cc, dd in idx:
            rhs = (c.L(b, dd) * c.metric(a, cc) + c.L(cc, b) * c.metric(a, dd)
                   + c.L(dd, a) * c.metric(b, cc) + c.L(a, cc) * c.metric(b, dd)) * I
            out.append((f"[L{a}{b},L{cc}{dd}]", commutator(c.L(a, b), c.L(cc, dd)), rhs))
    return out


def _sodp2_refl(d):
    c = _ctx(d)
    out = []
    for i in c.idx:
        for a, b in combinations(range(1, d + 4), 2):
            if i in (a, b):
                out.append((f"{{R{i},L{a}{b}}}", anticommutator(c.R[i], c.L(a, b)), _zero(d)))
            else:
                out.append((f"[R{i},L{a}{b}]", commutator(c.R[i], c.L(a, b)), _zero(d)))
    return out


def _adj_l(d):
    c = _ctx(d)
    return [(f"L{a}{b}^+", adjoint(c.L(a, b)), c.L(a, b)) for a, b in combinations(range(1, d + 4), 2)]


def _adj_t0(d):
    c = _ctx(d)
    return [("T^+ unweighted", adjoint(c.T, weighted=False), (c.xD + c.s(-1)) * (-I))]


def _adj_unweighted(d):
    c = _ctx(d)
    return [("T^+ unweighted vs T", adjoint(c.T, weighted=False), c.T)]


def _sturm_k(d):
    c = _ctx(d)
    combo = c.G0.scale((1 - 2 * c.E) * HALF) + c.Gd.scale((1 + 2 * c.E) * HALF)
    direct = (c.r * c.D2).scale(-HALF) - c.r.scale(c.E)
    return [("K combo", c.K, combo), ("K direct", c.K, direct)]


def _sturm_iom(d):
    c = _ctx(d)
    out = [(f"[J{i}{j},K]", commutator(c.J(i, j), c.K), _zero(d)) for i, j in combinations(c.idx, 2)]
    out += [(f"[B{i},K]", commutator(c.B(i), c.K), _zero(d)) for i in c.idx]
    return out


def _sturm_b(ordering, reading="R"):
    def build(d):
        from .generators import build_alternate, gid
        c = _ctx(d)
        return [(f"B{i} form {ordering}{reading}", c.B(i), build_alternate(gid("B", i), c.m.cfg, ordering, reading))
                for i in c.idx]
    return build


def _sturm_btypo(d):
    from .generators import build_alternate, gid
    c = _ctx(d)
    out = []
    for ordering in (1, 2):
        for i in c.idx:
            out.append((f"B{i} form {ordering} with mu_j D_j", c.B(i),
                        build_alternate(gid("B", i), c.m.cfg, ordering, "D")))
    return out


def _comb_jj(d):
    return _def_jj(d)


def _comb_jb(d):
    c = _ctx(d)
    out = []
    for i, j in combinations(c.idx, 2):
        for k in c.idx:
            rhs = (c.B(j) * c.delta(i, k) - c.B(i) * c.delta(j, k)) * c.g(k) * I
            out.append((f"[J{i}{j},B{k}]", commutator(c.J(i, j), c.B(k)), rhs))
    return out


def _comb_bb(d):
    c = _ctx(d)
    return [(f"[B{i},B{j}]", commutator(c.B(i), c.B(j)), c.J(i, j).scale(-2 * I * c.E)) for i, j in _pairs(d)]


def _refl_vec(fam_name):
    def build(d):
        c = _ctx(d)
        fam = {"B": c.B, "At": c.At}[fam_name]
        out = []
        for i in c.idx:
            for j, l in combinations(c.idx, 2):
                if i in (j, l):
                    out.append((f"{{R{i},J{j}{l}}}", anticommutator(c.R[i], c.J(j, l)), _zero(d)))
                else:
                    out.append((f"[R{i},J{j}{l}]", commutator(c.R[i], c.J(j, l)), _zero(d)))
            for j in c.idx:
                br = anticommutator if i == j else commutator
                out.append((f"R{i},{fam_name}{j}", br(c.R[i], fam(j)), _zero(d)))
        return out
    return build


def _cyc(fam_name):
    def build(d):
        c = _ctx(d)
        fam = {"B": c.B, "At": c.At}[fam_name]
        out = []
        for i, j, k in combinations(c.idx, 3):
            lhs = c.J(i, j) * fam(k) + c.J(j, k) * fam(i) + c.J(k, i) * fam(j)
            out.append((f"J{i}{j}{fam_name}{k}+cyc", lhs, _zero(d)))
        return out
    return build


def _bsq(d):
    c = _ctx(d)
    Bsq = _sum(d, (c.B(i) * c.B(i) for i in c.idx))
    return [("B^2", Bsq, c.K * c.K + (c.Jsq + c.s(1) * c.s(1)).scale(2 * c.E))]


def _bsq_component(d):
    c = _ctx(d)
    E = c.E
    D2, xD = c.D2, c.xD
    s1 = xD + c.c(Fraction(d - 1, 2))
    out = []
    for i in c.idx:
        x, Di = c.x[i], c.D[i]
        rhs = (x * x * D2 * D2).scale(Fraction(1, 4))
        rhs -= (x * (xD + c.c(Fraction(d + 1, 2))) * Di + s1.scale(HALF) + (x * x).scale(E)) * D2
        rhs -= x * Di * D2 * c.mu_except(i)
        rhs -= s1 * D2 * c.R[i].scale(c.b.mu[i])
        rhs -= (D2 * c.muR * c.g(i)).scale(HALF)
        rhs += s1 * (xD + c.c(Fraction(d + 1, 2))) * Di * Di
        rhs += (xD * 2 + c.c(d)) * Di * Di * c.muR
        rhs += Di * Di * c.muR * c.muR
        rhs += (x * s1 * Di).scale(2 * E)
        rhs += (x * Di * c.mu_except(i)).scale(2 * E)
        rhs += ((s1 + c.muR) * c.g(i)).scale(E)
        rhs += (x * x).scale(E * E)
        out.append((f"B{i}^2", c.B(i) * c.B(i), rhs))
    return out


def _bsq_sum(d):
    c = _ctx(d)
    E = c.E
    D2, xD, x2, muR = c.D2, c.xD, c.x2, c.muR
    Bsq = _sum(d, (c.B(i) * c.B(i) for i in c.idx))
    inner = (x2 * D2 * D2
             + (xD * 2 + c.c(d - 1) - x2.scale(4 * E)) * D2
             + (D2 * muR) * 2
             + (xD * xD * 2 + xD * (2 * d - 3) + c.c(Fraction(d * (d - 1), 2))).scale(4 * E)
             + ((xD * 4 + c.c(2 * d - 1)) * muR).scale(4 * E)
             + (muR * muR).scale(8 * E)
             + x2.scale(4 * E * E))
    return [("B^2 summed", Bsq, inner.scale(Fraction(1, 4)))]


def _bsq_k2(d):
    c = _ctx(d)
    E = c.E
    D2, x2 = c.D2, c.x2
    s1 = c.xD + c.s(1)
    inner = (x2 * D2 * D2 + (s1 + x2.scale(2 * E)) * D2 * 2 + s1.scale(4 * E) + x2.scale(4 * E * E))
    return [("K^2", c.K * c.K, inner.scale(Fraction(1, 4)))]


def _sch_hk(d):
    c = _ctx(d)
    return [("H via K", c.H, c.rinv * (c.K - c.c(c.alpha)) + c.c(c.E))]


def _sch_iom(d):
    c = _ctx(d)
    out = [(f"[J{i}{j},H]", commutator(c.J(i, j), c.H), _zero(d)) for i, j in combinations(c.idx, 2)]
    out += [(f"[At{i},H]", commutator(c.At(i), c.H), _zero(d)) for i in c.idx]
    return out


def _sch_bh(d):
    c = _ctx(d)
    HmE = c.H - c.c(c.E)
    out = []
    for i in c.idx:
        br = commutator(c.B(i), c.rinv)
        out.append((f"[B{i},H] K-form", commutator(c.B(i), c.H), br * (c.K - c.c(c.alpha))))
        out.append((f"[B{i},H] H-form", commutator(c.B(i), c.H), br * c.r * HmE))
    return out


def _sch_xh(d):
    c = _ctx(d)
    return [(f"[x{i},H]", commutator(c.x[i], c.H), c.D[i]) for i in c.idx]


def _sch_bhbis(d):
    c = _ctx(d)
    return [(f"[B{i},1/r]r", commutator(c.B(i), c.rinv) * c.r, -c.D[i]) for i in c.idx]


def _sch_eq(d):
    c = _ctx(d)
    HmE = c.H - c.c(c.E)
    return [(f"B{i} vs H", commutator(c.B(i), c.H) + commutator(c.x[i], c.H) * HmE, _zero(d)) for i in c.idx]


def _sch_br(d):
    c = _ctx(d)
    out = []
    for i in c.idx:
        core = (c.x[i] * c.D2).scale(-HALF) + c.D[i] * (c.xD + c.s(3))
        out.append((f"[B{i},1/r] reduced", commutator(c.B(i), c.rinv), commutator(core, c.rinv)))
    return out


def _sch_at(ordering):
    def build(d):
        from .generators import build_alternate, gid
        c = _ctx(d)
        return [(f"At{i} form {ordering}", c.At(i), build_alternate(gid("Atilde", i), c.m.cfg, ordering))
                for i in c.idx]
    return build


def _hlp(k):
    def build(d):
        c = _ctx(d)
        r3 = Operator.r(-3, d)
        if k == 1:
            return [(f"[D{i},1/r]", commutator(c.D[i], c.rinv), -(c.x[i] * r3)) for i in c.idx]
        if k == 2:
            return [("[D^2,1/r]", commutator(c.D2, c.rinv), (r3 * (c.xD + c.s(3))) * (-2))]
        return [("[x.D,1/r]", commutator(c.xD, c.rinv), -c.rinv)]
    return build


def _coma_ja(d):
    c = _ctx(d)
    out = []
    for i, j in combinations(c.idx, 2):
        for k in c.idx:
            rhs = (c.At(j) * c.delta(i, k) - c.At(i) * c.delta(j, k)) * c.g(k) * I
            out.append((f"[J{i}{j},At{k}]", commutator(c.J(i, j), c.At(k)), rhs))
    return out


def _coma_aa(d):
    c = _ctx(d)
    return [(f"[At{i},At{j}]", commutator(c.At(i), c.At(j)), (c.H * c.J(i, j)) * (-2 * I)) for i, j in _pairs(d)]


def _coma_xx(d):
    c = _ctx(d)
    HmE = c.H - c.c(c.E)
    return [(f"[x{i}(H-E),x{j}(H-E)]", commutator(c.x[i] * HmE, c.x[j] * HmE), (c.J(i, j) * HmE) * (-I))
            for i, j in _pairs(d)]


def _coma_mix(d):
    c = _ctx(d)
    HmE = c.H - c.c(c.E)
    out = []
    for i, j in _pairs(d):
        lhs = commutator(c.B(i), c.x[j] * HmE) + commutator(c.x[i] * HmE, c.B(j))
        out.append((f"B{i}x{j} mixed", lhs, (c.J(i, j) * HmE) * (-I)))
    return out


def _coma_bx(d):
    c = _ctx(d)
    return [(f"[B{i},x{j}]", commutator(c.B(i), c.x[j]), (c.T * c.g(i)) * (I * c.delta(i, j)) - c.J(i, j) * I)
            for i, j in _pairs(d)]


def _coma_bxam(d):
    c = _ctx(d)
    E = c.E
    out = []
    for i, j in _pairs(d):
        combo = (c.A(i).scale(1 - 2 * E) + c.M(i).scale(1 + 2 * E)).scale(HALF)
        out.append((f"[B{i},x{j}] via A,M", commutator(c.B(i), c.x[j]), commutator(combo, c.M(j) - c.A(j))))
    return out


def _asq(d):
    c = _ctx(d)
    Asq = _sum(d, (c.At(i) * c.At(i) for i in c.idx))
    rhs = (c.H * (c.Jsq + c.s(1) * c.s(1))) * 2 + c.c(c.alpha * c.alpha)
    return [("At^2", Asq, rhs)]


def _asq_xx(d):
    c = _ctx(d)
    E, al = c.E, c.alpha
    HmE = c.H - c.c(E)
    x2, D2, xD = c.x2, c.D2, c.xD
    lhs = _sum(d, (c.x[i] * HmE * c.x[i] * HmE for i in c.idx))
    rhs = ((x2 * D2 * D2).scale(Fraction(1, 4)) + (xD * D2).scale(HALF)
           + (x2 * D2 + xD * 2 + c.s(1)) * c.rinv.scale(al)
           + c.c(al * al)
           + (x2 * D2 + xD + c.r.scale(2 * al)).scale(E)
           + x2.scale(E * E))
    return [("x(H-E).x(H-E)", lhs, rhs)]


def _asq_bx(d):
    c = _ctx(d)
    E, al = c.E, c.alpha
    HmE = c.H - c.c(E)
    x2, D2, xD = c.x2, c.D2, c.xD
    lhs = _sum(d, (c.B(i) * c.x[i] * HmE + c.x[i] * HmE * c.B(i) for i in c.idx))
    w = (xD * 2 + c.c(Fraction(d, 2)) + c.muR) * c.s(1)
    rhs = ((x2 * D2 * D2).scale(HALF)
           - (xD * xD + w) * D2
           + (x2 * D2 - xD * xD * 2 - w * 2) * c.rinv.scale(al)
           + (xD * xD * (-2) - w * 2 - c.r.scale(2 * al)).scale(E)
           - x2.scale(2 * E * E))
    return [("B.x(H-E) + x(H-E).B", lhs, rhs)]


def _asq_sum(d):
    c = _ctx(d)
    al = c.alpha
    Asq = _sum(d, (c.At(i) * c.At(i) for i in c.idx))
    bracket = -(c.x2 * c.D2) + c.xD * c.xD + c.xD * (c.c(d - 2) + c.muR * 2) + c.s(1) * c.s(1)
    rhs = bracket * (-c.D2 - c.rinv.scale(2 * al)) + c.c(al * al)
    return [("At^2 summed", Asq, rhs)]


RED_BINDINGS = {"mu1": 0, "mu2": 0, "mu3": 0}
RED_ITEMS = tuple(RED_BINDINGS.items())


def _red_coma(d):
    c = _ctx(d, RED_BINDINGS)
    out = []
    for i, j in _pairs(d):
        out.append((f"[At{i},At{j}] mu=0", commutator(c.At(i), c.At(j)), (c.H * c.J(i, j)) * (-2 * I)))
    for i, j in combinations(c.idx, 2):
        for k in c.idx:
            rhs = (c.At(j) * c.delta(i, k) - c.At(i) * c.delta(j, k)) * I
            out.append((f"[J{i}{j},At{k}] mu=0", commutator(c.J(i, j), c.At(k)), rhs))
    return out


def _red_cyc(d):
    c = _ctx(d, RED_BINDINGS)
    lhs = c.J(1, 2) * c.At(3) + c.J(2, 3) * c.At(1) + c.J(3, 1) * c.At(2)
    return [("J.At cyclic mu=0", lhs, _zero(d))]


def _red_asq(d):
    c = _ctx(d, RED_BINDINGS)
    Asq = _sum(d, (c.At(i) * c.At(i) for i in c.idx))
    return [("At^2 mu=0", Asq, (c.H * (c.Jsq + c.one)) * 2 + c.c(c.alpha * c.alpha)),
            ("metric mu=0", _sum(d, (c.g(i) for i in c.idx)), c.c(d))]


def _red_lrl(d):
    c = _ctx(d, RED_BINDINGS)
    p = [None] + [c.D[i] * (-I) for i in c.idx]
    xp = _sum(d, (c.x[i] * p[i] for i in c.idx))
    p2 = _sum(d, (p[i] * p[i] for i in c.idx))
    # angular momentum vector J = x cross p
    Jv = [None,
          c.x[2] * p[3] - c.x[3] * p[2],
          c.x[3] * p[1] - c.x[1] * p[3],
          c.x[1] * p[2] - c.x[2] * p[1]]

    def cross(u, v, i):
        j, k = (i % 3) + 1, ((i + 1) % 3) + 1
        return u[j] * v[k] - u[k] * v[j]

    out = []
    for i in c.idx:
        coulomb = (c.x[i] * c.rinv).scale(c.alpha)
        deriv = -(c.x[i] * c.D2) + (c.xD + c.one) * c.D[i] - coulomb
        momentum = c.x[i] * p2 - p[i] * xp - coulomb
        vector = (cross(p, Jv, i) - cross(Jv, p, i)).scale(HALF) - coulomb
        out.append((f"At{i} derivative form", c.At(i), deriv))
        out.append((f"At{i} momentum form", c.At(i), momentum))
        out.append((f"At{i} p x J form", c.At(i), vector))
    return out


def _sum(d, ops):
    out = Operator.zero(d)
    for op in ops:
        out = out + op
    return out


def _spec(id_, dims, builder, description="", **kw):
    return IdentitySpec(id_, tuple(dims), builder, description, **kw)


CATALOG = [
    _spec("DNK.DX", ALL_DIMS, _dnk_dx, "[D_i, x_j] = delta_ij (1 + 2 mu_i R_i)"),
    _spec("DNK.RX", ALL_DIMS, _dnk_rx, "{R_i, x_i} = 0"),
    _spec("DNK.RD", ALL_DIMS, _dnk_rd, "{R_i, D_i} = 0"),
    _spec("DNK.CROSS", ALL_DIMS, _dnk_cross, "[R_i, x_j] = [R_i, D_j] = [R_i, R_j] = 0, i != j"),
    _spec("SO21.1", ALL_DIMS, _so21(1), "[Gamma0, GammaD1] = i T"),
    _spec("SO21.2", ALL_DIMS, _so21(2), "[Gamma0, T] = -i GammaD1"),
    _spec("SO21.3", ALL_DIMS, _so21(3), "[GammaD1, T] = -i Gamma0"),
    _spec("JSQ", ALL_DIMS, _jsq, "J^2 closed form"),
    _spec("CAS", ALL_DIMS, _cas, "Q^2 = J^2 + ((d-3)/2 + sum mu R)((d-1)/2 + sum mu R)"),
    _spec("MIX.1", ALL_DIMS, _mix(1), "[Gamma0, J] = [GammaD1, J] = [T, J] = 0"),
    _spec("MIX.2", ALL_DIMS, _mix(2), "[Gamma0, A_i] = [GammaD1, M_i] = [T, Gamma_i] = 0"),
    _spec("MIX.3", ALL_DIMS, _mix(3), "[GammaD1, A_i] = -[Gamma0, M_i] = i Gamma_i"),
    _spec("MIX.4", ALL_DIMS, _mix(4), "[T, A_i] = [Gamma0, Gamma_i] = i M_i"),
    _spec("MIX.5", ALL_DIMS, _mix(5), "[T, M_i] = [GammaD1, Gamma_i] = i A_i"),
    _spec("SAME.A", ALL_DIMS, _same("A"), "[A_i, A_j] = i J_ij"),
    _spec("SAME.M", ALL_DIMS, _same("M"), "[M_i, M_j] = -i J_ij"),
    _spec("SAME.G", ALL_DIMS, _same("G"), "[Gamma_i, Gamma_j] = -i J_ij"),
    _spec("DEF.JJ", ALL_DIMS, _def_jj, "[J_ij, J_kl] with reflection factors"),
    _spec("DEF.JA", ALL_DIMS, _def_jv("A"), "[J_ij, A_k] = i (d_ik A_j - d_jk A_i)(1 + 2 mu_k R_k)"),
    _spec("DEF.JM", ALL_DIMS, _def_jv("M"), "[J_ij, M_k] = i (d_ik M_j - d_jk M_i)(1 + 2 mu_k R_k)"),
    _spec("DEF.JG", ALL_DIMS, _def_jv("G"), "[J_ij, Gamma_k] = i (d_ik Gamma_j - d_jk Gamma_i)(1 + 2 mu_k R_k)"),
    _spec("DEF.AM", ALL_DIMS, _def_vv("AM"), "[A_i, M_j] = i d_ij T (1 + 2 mu_i R_i)"),
    _spec("DEF.AG", ALL_DIMS, _def_vv("AG"), "[A_i, Gamma_j] = i d_ij GammaD1 (1 + 2 mu_i R_i)"),
    _spec("DEF.MG", ALL_DIMS, _def_vv("MG"), "[M_i, Gamma_j] = i d_ij Gamma0 (1 + 2 mu_i R_i)"),
    _spec("REFL.1", ALL_DIMS, _refl(1), "[R_i, Gamma0] = [R_i, GammaD1] = [R_i, T] = 0"),
    _spec("REFL.2", ALL_DIMS, _refl(2), "[R_i, J_jk] = 0 for i not in {j, k}"),
    _spec("REFL.3", ALL_DIMS, _refl(3), "{R_i, J_jk} = 0 for i in {j, k}"),
    _spec("REFL.4", ALL_DIMS, _refl(4), "[R_i, A_j] = [R_i, M_j] = [R_i, Gamma_j] = 0, i != j"),
    _spec("REFL.5", ALL_DIMS, _refl(5), "{R_i, A_i} = {R_i, M_i} = {R_i, Gamma_i} = 0"),
    _spec("SODP2.BR", HEAVY_DIMS, _sodp2_brackets, "[L_ab, L_cd] with operator metric on the right"),
    _spec("SODP2.R", HEAVY_DIMS, _sodp2_refl, "[R_i, L_ab] = 0 / {R_i, L_ab} = 0"),
    _spec("ADJ.L", HEAVY_DIMS, _adj_l, "L_ab^+ = L_ab for the 1/r-weighted adjoint"),
    _spec("ADJ.T0", HEAVY_DIMS, _adj_t0, "unweighted T^+ = -i(x.D + (d+1)/2 + sum mu R)"),
    _spec("ADJ.UNW", HEAVY_DIMS, _adj_unweighted, "unweighted T^+ differs from T", expect_zero=False),
    _spec("STURM.K", ALL_DIMS, _sturm_k, "K = (1-2E)/2 Gamma0 + (1+2E)/2 GammaD1 = -(r/2) D^2 - E r"),
    _spec("STURM.IOM", ALL_DIMS, _sturm_iom, "[J_ij, K] = [B_i, K] = 0"),
    _spec("STURM.B1", ALL_DIMS, _sturm_b(1), "B_i as A/M combination = displayed form, D_i on the left"),
    _spec("STURM.B2", ALL_DIMS, _sturm_b(2), "B_i as A/M combination = displayed form, D_i on the right"),
    _spec("STURM.BTYPO", ALL_DIMS, _sturm_btypo, "displayed B_i read with sum mu_j D_j is a different operator",
          expect_zero=False),
    _spec("COMB.JJ", ALL_DIMS, _comb_jj, "[J_ij, J_kl] among Sturm integrals"),
    _spec("COMB.JB", ALL_DIMS, _comb_jb, "[J_ij, B_k] = i (d_ik B_j - d_jk B_i)(1 + 2 mu_k R_k)"),
    _spec("COMB.BB", ALL_DIMS, _comb_bb, "[B_i, B_j] = -2 i E J_ij"),
    _spec("COMB.REFL", ALL_DIMS, _refl_vec("B"), "reflection relations for J_ij and B_i"),
    _spec("CYC.B", (3, 4), _cyc("B"), "J_ij B_k + J_jk B_i + J_ki B_j = 0"),
    _spec("BSQ", ALL_DIMS, _bsq, "B^2 = K^2 + 2E [J^2 + ((d-1)/2 + sum mu R)^2]"),
    _spec("BSQ.B1", ALL_DIMS, _bsq_component, "expansion of the square of one component B_i"),
    _spec("BSQ.SUM", ALL_DIMS, _bsq_sum, "summed expansion of B^2"),
    _spec("BSQ.K2", ALL_DIMS, _bsq_k2, "expansion of K^2"),
    _spec("SCH.HK", ALL_DIMS, _sch_hk, "H = (K - alpha)/r + E"),
    _spec("SCH.IOM", ALL_DIMS, _sch_iom, "[J_ij, H] = [At_i, H] = 0"),
    _spec("SCH.BH", ALL_DIMS, _sch_bh, "[B_i, H] = [B_i, 1/r](K - alpha) = [B_i, 1/r] r (H - E)"),
    _spec("SCH.XH", ALL_DIMS, _sch_xh, "[x_i, H] = D_i"),
    _spec("SCH.BHBIS", ALL_DIMS, _sch_bhbis, "[B_i, 1/r] r = -D_i"),
    _spec("SCH.EQ", ALL_DIMS, _sch_eq, "[B_i, H] + [x_i, H](H - E) = 0"),
    _spec("SCH.BR", ALL_DIMS, _sch_br, "[B_i, 1/r] = [-x_i D^2/2 + D_i(x.D + (d-3)/2 + sum mu R), 1/r]"),
    _spec("SCH.AT1", ALL_DIMS, _sch_at(1), "explicit LRL component, D_i on the left"),
    _spec("SCH.AT2", ALL_DIMS, _sch_at(2), "explicit LRL component, D_i on the right"),
    _spec("HLP.1", ALL_DIMS, _hlp(1), "[D_i, 1/r] = -x_i / r^3"),
    _spec("HLP.2", ALL_DIMS, _hlp(2), "[D^2, 1/r] = -(2/r^3)(x.D + (d-3)/2 + sum mu R)"),
    _spec("HLP.3", ALL_DIMS, _hlp(3), "[x.D, 1/r] = -1/r"),
    _spec("COMA.JA", ALL_DIMS, _coma_ja, "[J_ij, At_k] = i (d_ik At_j - d_jk At_i)(1 + 2 mu_k R_k)"),
    _spec("COMA.AA", ALL_DIMS, _coma_aa, "[At_i, At_j] = -2 i H J_ij"),
    _spec("COMA.XX", ALL_DIMS, _coma_xx, "[x_i(H-E), x_j(H-E)] = -i J_ij (H-E)"),
    _spec("COMA.MIX", ALL_DIMS, _coma_mix, "[B_i, x_j(H-E)] + [x_i(H-E), B_j] = -i J_ij (H-E)"),
    _spec("COMA.BX", ALL_DIMS, _coma_bx, "[B_i, x_j] = i d_ij T (1 + 2 mu_i R_i) - i J_ij"),
    _spec("COMA.BXAM", ALL_DIMS, _coma_bxam, "[B_i, x_j] = [((1-2E) A_i + (1+2E) M_i)/2, M_j - A_j]"),
    _spec("REFA", ALL_DIMS, _refl_vec("At"), "reflection relations for J_ij and At_i"),
    _spec("CYC.A", (3, 4), _cyc("At"), "J_ij At_k + J_jk At_i + J_ki At_j = 0"),
    _spec("ASQ", HEAVY_DIMS, _asq, "At^2 = 2H [J^2 + ((d-1)/2 + sum mu R)^2] + alpha^2"),
    _spec("ASQ.XX", HEAVY_DIMS, _asq_xx, "expansion of x(H-E).x(H-E)"),
    _spec("ASQ.BX", HEAVY_DIMS, _asq_bx, "expansion of B.x(H-E) + x(H-E).B"),
    _spec("ASQ.SUM", HEAVY_DIMS, _asq_sum, "summed form of At^2"),
    _spec("RED.COMA", (3,), _red_coma, "mu = 0: [At_i, At_j] = -2i H J_ij, [J, At] undeformed", bindings=RED_ITEMS),
    _spec("RED.CYC", (3,), _red_cyc, "mu = 0: cyclic J.At identity", bindings=RED_ITEMS),
    _spec("RED.ASQ", (3,), _red_asq, "mu = 0: At^2 = 2H(J^2 + 1) + alpha^2", bindings=RED_ITEMS),
    _spec("RED.LRL", (3,), _red_lrl, "mu = 0: At_i is the usual LRL vector", bindings=RED_ITEMS),
]


def catalog():
    return list(CATALOG)


def lookup(identity_id):
    for spec in CATALOG:
        if spec.id == identity_id:
            return spec
    raise UsageError(f"unknown identity {identity_id!r}")


# -- running -----------------------------------------------------------------

def _oracle_seed(seed, identity_id, d):
    return (seed * 1_000_003 + zlib.crc32(f"{identity_id}/{d}".encode())) & 0x7FFFFFFF


def oracle_check(x, dims, n=DEFAULT_ORACLE_FUNCTIONS, seed=0):
    """True iff ``x`` annihilates ``n`` seeded random test functions."""
    if n < 1:
        raise PreconditionError("n must be >= 1")
    if x.dim != dims:
        raise PreconditionError(f"operator has dimension {x.dim}, expected {dims}")
    if x.is_zero():
        return True
    return all(apply(x, f).is_zero() for f in random_basis(dims, n, seed))


def run_identity(spec, d, seed=0, n_oracle=DEFAULT_ORACLE_FUNCTIONS):
    """Check one catalog entry at dimension ``d`` and return a ReportEntry."""
    if d not in spec.dims:
        raise PreconditionError(f"{spec.id} is not defined for d={d} (dims {spec.dims})")
    start = time.perf_counter()
    checks = spec.builder(d)
    bind = dict(spec.bindings)
    residuals = [(label, (lhs - rhs).substitute(bind)) for label, lhs, rhs in checks]
    nonzero = [(label, res) for label, res in residuals if not res.is_zero()]
    n_terms = sum(len(res) for _, res in nonzero)
    text = ""
    if spec.expect_zero:
        if not nonzero:
            status = "pass-syntactic"
        else:
            oseed = _oracle_seed(seed, spec.id, d)
            bad = nonzero
            if spec.oracle_fallback:
                bad = [(lab, res) for lab, res in nonzero if not oracle_check(res, d, n_oracle, oseed)]
            if bad:
                status = "fail"
                text = "; ".join(f"{lab}: {res.render()}" for lab, res in bad)
            else:
                status = "pass-oracle"
                n_terms = 0
    else:
        zero_labels = [label for label, res in residuals if res.is_zero()]
        status = "fail" if zero_labels or not residuals else "pass-syntactic"
        text = "; ".join(f"{lab}: {res.render()}" for lab, res in nonzero)
        if zero_labels:
            text = "unexpectedly zero: " + ", ".join(zero_labels)
    millis = int(round((time.perf_counter() - start) * 1000))
    return ReportEntry(spec.id, d, status, n_terms, millis, len(checks),
                       "zero" if spec.expect_zero else "nonzero", text)


def _select(filter_prefix):
    specs = CATALOG
    if filter_prefix:
        specs = [s for s in CATALOG if s.id.startswith(filter_prefix)]
        if not specs:
            raise UsageError(f"no identity matches filter {filter_prefix!r}")
    return specs


def run_suite(dims, seed=0, filter=None, n_oracle=DEFAULT_ORACLE_FUNCTIONS, progress=None):
    """Run every matching catalog entry for each requested dimension."""
    dims = sorted(set(dims))
    if not dims:
        raise UsageError("dims must be non-empty")
    if any(not isinstance(d, int) or d < 1 for d in dims):
        raise UsageError(f"invalid dimensions {dims}")
    specs = _select(filter)
    report = VerificationReport("dunkl-coulomb" + (f":{filter}" if filter else ""), dims, seed)
    for spec in specs:
        for d in dims:
            if d in spec.dims:
                entry = run_identity(spec, d, seed, n_oracle)
                report.entries.append(entry)
                if progress:
                    progress(entry)
    report.entries.sort(key=lambda e: (e.id, e.d))
    return report


# -- engine self-checks ------------------------------------------------------

def random_monomial(rng, d, max_exp=2, rpow_range=(-3, 3)):
    return NormalMonomial(tuple(rng.randint(0, max_exp) for _ in range(d)),
                          rng.randint(*rpow_range),
                          tuple(rng.randint(0, max_exp) for _ in range(d)),
                          tuple(rng.randint(0, 1) for _ in range(d)))


def random_scalar(rng, d, max_terms=2):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        exps = tuple(rng.randint(0, 1) for _ in range(d + 2))
        terms[exps] = Fraction(rng.randint(-4, 4), rng.randint(1, 3)) + (I * rng.randint(-1, 1))
    return Scalar(d, terms)


def random_operator(rng, d, n_terms=3, max_exp=2):
    terms = {}
    for _ in range(n_terms):
        terms[random_monomial(rng, d, max_exp)] = random_scalar(rng, d)
    return Operator(d, terms)


def associativity_fuzz(d, trials, seed=0):
    """(M1 M2) M3 == M1 (M2 M3) on random monomial triples."""
    if trials < 1:
        raise PreconditionError("trials must be >= 1")
    rng = random.Random(seed)
    start = time.perf_counter()
    bad = []
    for _ in range(trials):
        m1, m2, m3 = (Operator.monomial(random_monomial(rng, d)) for _ in range(3))
        if (m1 * m2) * m3 != m1 * (m2 * m3):
            bad.append((m1, m2, m3))
    millis = int(round((time.perf_counter() - start) * 1000))
    text = "; ".join(f"({a}) ({b}) ({c})" for a, b, c in bad[:3])
    return ReportEntry("ENGINE.ASSOC", d, "fail" if bad else "pass-syntactic", len(bad), millis,
                       trials, "zero", text)


def oracle_product_fuzz(d, cases, seed=0, n_functions=2):
    """apply(X*Y, f) == apply(X, apply(Y, f)) on random operators and functions."""
    rng = random.Random(seed)
    start = time.perf_counter()
    bad = 0
    for k in range(cases):
        X = random_operator(rng, d, n_terms=2, max_exp=1)
        Y = random_operator(rng, d, n_terms=2, max_exp=1)
        XY = X * Y
        for f in random_basis(d, n_functions, rng.randrange(1 << 30)):
            if not (apply(XY, f) - apply(X, apply(Y, f))).is_zero():
                bad += 1
    millis = int(round((time.perf_counter() - start) * 1000))
    return ReportEntry("ENGINE.ORACLE", d, "fail" if bad else "pass-syntactic", bad, millis,
                       cases * n_functions, "zero", "")


def reduction_check(d=3, seed=0):
    """The mu = 0 classical reduction at d = 3, as one combined entry."""
    if d != 3:
        raise PreconditionError("the classical reduction is checked at d = 3")
    entries = [run_identity(lookup(i), 3, seed) for i in ("RED.COMA", "RED.CYC", "RED.ASQ", "RED.LRL")]
    failed = [e for e in entries if not e.passed]
    status = "fail" if failed else max((e.status for e in entries), key=["pass-syntactic", "pass-oracle"].index)
    return ReportEntry("RED", 3, status, sum(e.residual_terms for e in entries),
                       sum(e.millis for e in entries), sum(e.checks for e in entries), "zero",
                       "; ".join(e.residual for e in failed))
