"""Command-line front end.

Examples::

    dunkl-coulomb nf "D1*x1" --dim 1 --mu 0
    dunkl-coulomb comm "A(1)" "G(1)" --dim 2
    dunkl-coulomb apply "D1" "x1^2*r^-1" --dim 2
    dunkl-coulomb verify --dim 1,2,3 --format json

Exit status is 0 on success, 1 when any identity fails and 2 on usage or
parse errors.
"""

import argparse
import json
import sys

from . import __version__
from .algebra import commutator
from .errors import DunklError, ParseError
from .expr import evaluate, evaluate_function, parse, parse_rational
from .funcspace import apply
from .generators import ModelConfig
from .verify import DEFAULT_ORACLE_FUNCTIONS, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class _ArgumentParser(argparse.ArgumentParser):
    """argparse that raises instead of exiting, so main() owns the exit code."""

    def error(self, message):
        raise _Usage(f"{self.prog}: {message}")


class _Usage(Exception):
    pass


def _dims(text):
    try:
        dims = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid dimension list {text!r}") from None
    if not dims or any(d < 1 for d in dims):
        raise argparse.ArgumentTypeError(f"dimensions must be integers >= 1, got {text!r}")
    return dims


def build_parser():
    common = _ArgumentParser(add_help=False)
    common.add_argument("--dim", type=_dims, required=True,
                        help="dimension d (verify also accepts a list such as 1,2,3)")
    common.add_argument("--mu", default="sym", help="'sym', one value for every mu_i, or v1,...,vd")
    common.add_argument("--E", default="sym", help="'sym' or a rational value")
    common.add_argument("--alpha", default="sym", help="'sym' or a rational value")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("text", "json", "latex"), default="text")

    parser = _ArgumentParser(prog="dunkl-coulomb", description="Dunkl-Coulomb operator algebra")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    p = sub.add_parser("nf", parents=[common], help="normal form of an expression")
    p.add_argument("expr")
    p = sub.add_parser("comm", parents=[common], help="commutator [e1, e2] in normal form")
    p.add_argument("e1")
    p.add_argument("e2")
    p = sub.add_parser("apply", parents=[common], help="apply an operator to a test function")
    p.add_argument("expr")
    p.add_argument("func")
    p = sub.add_parser("verify", parents=[common], help="run the identity catalog")
    p.add_argument("--filter", default=None, help="only identities whose id starts with PREFIX")
    p.add_argument("--oracle-functions", type=int, default=DEFAULT_ORACLE_FUNCTIONS,
                   help="random test functions used when a residual is not syntactically zero")
    return parser


def bindings_from_args(args, d):
    """Parameter bindings from --mu, --E and --alpha."""
    out = {}
    if args.mu != "sym":
        values = [parse_rational(v) for v in args.mu.split(",")]
        if len(values) == 1:
            values = values * d
        if len(values) != d:
            raise _Usage(f"--mu needs 1 or {d} values, got {len(values)}")
        out.update({f"mu{i + 1}": v for i, v in enumerate(values)})
    if args.E != "sym":
        out["E"] = parse_rational(args.E)
    if args.alpha != "sym":
        out["alpha"] = parse_rational(args.alpha)
    return out


def _single_dim(args):
    if len(args.dim) != 1:
        raise _Usage(f"{args.command} needs a single --dim value")
    return args.dim[0]


def _emit_operator(op, args, query, out):
    if args.format == "json":
        payload = {"command": args.command, "dim": op.dim, "input": query,
                   "result": op.render("plain"), "latex": op.render("latex"), "terms": len(op)}
        out.write(json.dumps(payload, indent=2) + "\n")
    else:
        out.write(op.render("latex" if args.format == "latex" else "plain") + "\n")


def _run_verify(args, out):
    report = run_suite(args.dim, seed=args.seed, filter=args.filter, n_oracle=args.oracle_functions)
    if args.format == "json":
        out.write(report.to_json() + "\n")
    else:
        for e in report.entries:
            line = f"{e.status:15s} {e.id} d={e.d} ({e.checks} checks, {e.millis} ms)"
            if not e.passed and e.residual:
                line += f"  residual: {e.residual}"
            out.write(line + "\n")
        failed = len(report.failures())
        out.write(f"{len(report.entries) - failed} passed, {failed} failed\n")
    return EXIT_OK if report.all_passed else EXIT_FAIL


def main(argv=None, out=None, err=None):
    """Run the CLI and return the exit code."""
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "verify":
            if args.mu != "sym" or args.E != "sym" or args.alpha != "sym":
                raise _Usage("verify always runs with symbolic parameters")
            return _run_verify(args, out)
        d = _single_dim(args)
        cfg = ModelConfig.create(d, bindings_from_args(args, d))
        if args.command == "nf":
            _emit_operator(evaluate(parse(args.expr, d), cfg), args, args.expr, out)
        elif args.command == "comm":
            a = evaluate(parse(args.e1, d), cfg)
            b = evaluate(parse(args.e2, d), cfg)
            result = commutator(a, b).substitute(cfg.binding_dict())
            _emit_operator(result, args, [args.e1, args.e2], out)
        else:
            op = evaluate(parse(args.expr, d), cfg)
            f = evaluate_function(parse(args.func, d), cfg)
            g = apply(op, f).substitute(cfg.binding_dict())
            _emit_operator(g.to_operator(), args, [args.expr, args.func], out)
        return EXIT_OK
    except _Usage as exc:
        err.write(f"{exc}\n")
        return EXIT_USAGE
    except ParseError as exc:
        err.write(f"parse error: {exc}\n")
        return EXIT_USAGE
    except DunklError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help / --version
        return exc.code if isinstance(exc.code, int) else EXIT_OK


def console():
    sys.exit(main())


if __name__ == "__main__":
    console()

