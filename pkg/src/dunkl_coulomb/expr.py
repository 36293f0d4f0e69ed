"""Plain-text operator expressions.

Grammar::

    expr   := ["+" | "-"] term (("+" | "-") term)*
    term   := factor (("*" | "/") factor)*
    factor := atom ("^" ["-"] int)?
    atom   := number | symbol | call | "(" expr ")"

Symbols are ``i``, ``E``, ``alpha``, ``mu<k>``, ``x<k>``, ``D<k>``, ``R<k>``,
``r`` and the generator names ``Gamma0``, ``GammaD1``, ``T``, ``K``, ``H``,
``Jsq``, ``Qsq``.  Calls are ``J(i,j)``, ``A(i)``, ``M(i)``, ``G(i)``,
``B(i)``, ``At(i)``, ``L(a,b)``, ``g(a,b)``, ``comm(e,e)``, ``acomm(e,e)``
and ``adj(e)``.  Division is only by nonzero constants; negative exponents
are only allowed on ``r``.  Indices are 1-based.
"""

import re
from dataclasses import dataclass
from fractions import Fraction

from .algebra import Operator, adjoint, anticommutator, commutator
from .coeff import I, Scalar
from .errors import DunklError, ParseError
from .funcspace import RFunction, XPoly
from .generators import GeneratorId, ModelConfig, build

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*/^(),]))")

_GENERATOR_CALLS = {"J": ("J", 2), "A": ("A", 1), "M": ("M", 1), "G": ("Gamma", 1), "B": ("B", 1),
                    "At": ("Atilde", 1), "L": ("L", 2), "g": ("g", 2)}
_OPERATOR_CALLS = {"comm": 2, "acomm": 2, "adj": 1}
_GENERATOR_SYMBOLS = {"Gamma0", "GammaD1", "T", "K", "H", "Jsq", "Qsq"}
_INDEXED = re.compile(r"^(x|D|R|mu)(\d+)$")


@dataclass(frozen=True)
class Node:
    kind: str  # num, sym, gen, call, add, sub, mul, div, neg, pow
    value: object = None
    args: tuple = ()
    pos: tuple = (1, 1)


@dataclass
class _Tok:
    kind: str
    text: str
    line: int
    col: int


def _tokenize(text):
    toks = []
    i = 0
    line, line_start = 1, 0
    while i < len(text):
        m = _TOKEN.match(text, i)
        if not m or m.end() == i:
            # skip trailing whitespace; anything else is an error
            rest = text[i:]
            if rest.strip() == "":
                break
            j = i + len(rest) - len(rest.lstrip())
            line += text.count("\n", i, j)
            if "\n" in text[i:j]:
                line_start = text.rindex("\n", i, j) + 1
            raise ParseError(f"unexpected character {text[j]!r}", line, j - line_start + 1)
        ws_end = m.start(m.lastgroup)
        nl = text.count("\n", i, ws_end)
        if nl:
            line += nl
            line_start = text.rindex("\n", i, ws_end) + 1
        col = ws_end - line_start + 1
        toks.append(_Tok(m.lastgroup, m.group(m.lastgroup), line, col))
        i = m.end()
    end_col = len(text) - line_start + 1
    toks.append(_Tok("eof", "", line, end_col))
    return toks


class _Parser:
    def __init__(self, text, d):
        self.toks = _tokenize(text)
        self.k = 0
        self.d = d

    @property
    def tok(self):
        return self.toks[self.k]

    def error(self, message, tok=None):
        tok = tok or self.tok
        raise ParseError(message, tok.line, tok.col)

    def take(self, text=None, kind=None):
        tok = self.tok
        if text is not None and tok.text != text:
            what = repr(tok.text) if tok.kind != "eof" else "end of input"
            self.error(f"expected {text!r}, found {what}")
        if kind is not None and tok.kind != kind:
            what = repr(tok.text) if tok.kind != "eof" else "end of input"
            self.error(f"expected {kind}, found {what}")
        self.k += 1
        return tok

    def at(self, *texts):
        return self.tok.kind == "op" and self.tok.text in texts

    def parse(self):
        node = self.expr()
        if self.tok.kind != "eof":
            self.error(f"unexpected {self.tok.text!r}")
        return node

    def expr(self):
        tok = self.tok
        if self.at("+", "-"):
            sign = self.take().text
            node = self.term()
            if sign == "-":
                node = Node("neg", args=(node,), pos=(tok.line, tok.col))
        else:
            node = self.term()
        while self.at("+", "-"):
            op = self.take()
            rhs = self.term()
            node = Node("add" if op.text == "+" else "sub", args=(node, rhs), pos=(op.line, op.col))
        return node

    def term(self):
        node = self.factor()
        while self.at("*", "/"):
            op = self.take()
            rhs = self.factor()
            node = Node("mul" if op.text == "*" else "div", args=(node, rhs), pos=(op.line, op.col))
        return node

    def factor(self):
        base = self.atom()
        if self.at("^"):
            op = self.take()
            neg = False
            if self.at("-"):
                self.take()
                neg = True
            n = int(self.take(kind="num").text)
            if neg:
                n = -n
                if not (base.kind == "sym" and base.value == "r"):
                    self.error("negative exponents are only allowed on r", op)
            return Node("pow", value=n, args=(base,), pos=(op.line, op.col))
        return base

    def index(self):
        tok = self.take(kind="num")
        return int(tok.text), tok

    def atom(self):
        tok = self.tok
        pos = (tok.line, tok.col)
        if tok.kind == "num":
            self.take()
            return Node("num", value=int(tok.text), pos=pos)
        if self.at("("):
            self.take()
            node = self.expr()
            self.take(")")
            return node
        if tok.kind != "name":
            what = repr(tok.text) if tok.kind != "eof" else "end of input"
            self.error(f"unexpected {what}")
        self.take()
        name = tok.text
        if self.at("(") and (name in _GENERATOR_CALLS or name in _OPERATOR_CALLS):
            self.take()
            if name in _OPERATOR_CALLS:
                args = [self.expr()]
                while self.at(","):
                    self.take()
                    args.append(self.expr())
                self.take(")")
                if len(args) != _OPERATOR_CALLS[name]:
                    self.error(f"{name} takes {_OPERATOR_CALLS[name]} argument(s)", tok)
                return Node("call", value=name, args=tuple(args), pos=pos)
            gen, arity = _GENERATOR_CALLS[name]
            idx = []
            toks = []
            for n in range(arity):
                if n:
                    self.take(",")
                v, itok = self.index()
                idx.append(v)
                toks.append(itok)
            self.take(")")
            self._check_generator(gen, idx, toks)
            return Node("gen", value=GeneratorId(gen, tuple(idx)), pos=pos)
        if name in _GENERATOR_SYMBOLS:
            return Node("gen", value=GeneratorId(name), pos=pos)
        if name in ("i", "E", "alpha", "r"):
            return Node("sym", value=name, pos=pos)
        m = _INDEXED.match(name)
        if m:
            k = int(m.group(2))
            if not 1 <= k <= self.d:
                raise ParseError(f"index {k} of {name} out of range 1..{self.d}", tok.line, tok.col)
            return Node("sym", value=(m.group(1), k), pos=pos)
        raise ParseError(f"unknown symbol {name!r}", tok.line, tok.col)

    def _check_generator(self, gen, idx, toks):
        d = self.d
        hi = d + 3 if gen in ("L", "g") else d
        for v, t in zip(idx, toks):
            if not 1 <= v <= hi:
                raise ParseError(f"index {v} out of range 1..{hi}", t.line, t.col)
        if gen in ("J", "L") and idx[0] == idx[1]:
            raise ParseError(f"{gen} needs distinct indices", toks[1].line, toks[1].col)


def parse(text, d):
    """Parse ``text`` into an expression tree, checking indices against ``d``."""
    if not isinstance(d, int) or d < 1:
        raise ParseError(f"dimension must be >= 1, got {d!r}")
    return _Parser(text, d).parse()


def _cfg(cfg):
    return ModelConfig(cfg) if isinstance(cfg, int) else cfg


def evaluate(node, cfg):
    """Evaluate a parsed expression to a canonical Operator."""
    cfg = _cfg(cfg)
    if isinstance(node, str):
        node = parse(node, cfg.d)
    op = _eval(node, cfg)
    return op.substitute(cfg.binding_dict())


def _eval(node, cfg):
    d = cfg.d
    k = node.kind
    if k == "num":
        return Operator.const(node.value, d)
    if k == "sym":
        v = node.value
        if v == "i":
            return Operator.const(I, d)
        if v == "E":
            return Operator.const(Scalar.E(d), d)
        if v == "alpha":
            return Operator.const(Scalar.alpha(d), d)
        if v == "r":
            return Operator.r(1, d)
        kind, idx = v
        if kind == "mu":
            return Operator.const(Scalar.mu(idx, d), d)
        return {"x": Operator.x, "D": Operator.D, "R": Operator.R}[kind](idx, d)
    if k == "gen":
        try:
            return build(node.value, ModelConfig(d))
        except DunklError as exc:
            raise ParseError(str(exc), *node.pos) from None
    if k == "neg":
        return -_eval(node.args[0], cfg)
    if k in ("add", "sub", "mul"):
        a = _eval(node.args[0], cfg)
        b = _eval(node.args[1], cfg)
        return a + b if k == "add" else a - b if k == "sub" else a * b
    if k == "div":
        a = _eval(node.args[0], cfg)
        b = _eval(node.args[1], cfg)
        s = b._as_scalar()
        if s is None or not s.is_constant() or not s:
            raise ParseError("division is only allowed by a nonzero constant", *node.pos)
        return a / s
    if k == "pow":
        base = node.args[0]
        n = node.value
        if base.kind == "sym" and base.value == "r":
            return Operator.r(n, d)
        return _eval(base, cfg) ** n
    if k == "call":
        args = [_eval(a, cfg) for a in node.args]
        if node.value == "comm":
            return commutator(*args)
        if node.value == "acomm":
            return anticommutator(*args)
        return adjoint(args[0])
    raise ParseError(f"cannot evaluate node {k!r}", *node.pos)


def evaluate_function(node, cfg):
    """Evaluate an expression built from x_k, r, numbers and parameters to an RFunction."""
    cfg = _cfg(cfg)
    if isinstance(node, str):
        node = parse(node, cfg.d)
    op = evaluate(node, cfg)
    d = cfg.d
    total = RFunction(XPoly.zero(d))
    for m, c in op.terms.items():
        if any(m.dexp) or any(m.rmask):
            raise ParseError("a test function may only contain x<k>, r, numbers and parameters", *node.pos)
        total = total + RFunction.monomial(m.xexp, m.rpow, c)
    return total


def parse_rational(text):
    """Parse ``"3"``, ``"-1/2"`` and the like into a Fraction."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational number: {text!r}") from None
