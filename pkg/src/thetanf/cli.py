"""Command line entry point: ``thetanf <command> ...``.

Exit codes: 0 success, 1 usage or input error, 2 violated invariant.
"""

from __future__ import annotations

import argparse
import logging
import sys
from fractions import Fraction

from . import modular, numfield, qform
from .errors import InvariantViolation, ThetaNFError
from .pipeline import RunConfig, emit_reports, load_corpus, render_text, run


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _config(args, **overrides) -> RunConfig:
    kw = dict(
        precision=args.precision,
        delta=Fraction(args.delta),
        require_fundamental=args.require_fundamental,
        require_coprime=args.require_coprime,
        galois=args.galois,
        min_group_size=args.min_group_size,
        workers=args.workers,
    )
    kw.update(overrides)
    return RunConfig(**kw)


def cmd_analyze(args):
    config = _config(args, output_format=args.format, display_precision=args.display_precision)
    out = run(load_corpus(args.input, config), config)
    result = emit_reports(out, config, args.out)
    if args.out is None:
        sys.stdout.write(result)
    else:
        print(f"wrote {result}")


def cmd_independence(args):
    config = _config(args)
    out = run(load_corpus(args.input, config), config)
    for g in out.groups:
        ind = g.independence
        status = ind.verdict if ind.independent else f"undetermined(rank {ind.rank})"
        print(f"disc {g.disc} (n={g.degree}, {len(g.labels)} fields): {status} at B={ind.precision}")


def cmd_collisions(args):
    config = _config(args)
    out = run(load_corpus(args.input, config), config)
    for g in out.groups:
        for c in g.collisions:
            print(f"disc {g.disc}: shared {c.kind} {c.value}: {c.fields[0]} / {c.fields[1]}")


def cmd_dimbound(args):
    b = modular.dim_lower_bound(args.disc, args.mode)
    print(f"d = {b.d}, N = {b.N}, mode = {b.mode}{' (heuristic)' if b.heuristic else ''}")
    print(f"main term       = {b.main_term}")
    print(f"lambda product  = {b.lambda_product}")
    print(f"x^2+1 solutions = {b.sol_count}")
    print(f"lower bound     = {b.lower_bound}")


def cmd_theta(args):
    f = numfield.Polynomial.parse(args.poly)
    lattice = numfield.field_lattice(numfield.FieldRecord(f))
    F = qform.QuadraticForm(lattice.gram)
    T = qform.theta_series(F, args.precision)
    print(f"{f}  disc {lattice.order.disc}")
    print(T.format())


def build_parser():
    p = _Parser(prog="thetanf", description="Theta series of trace-zero forms of totally real fields.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def corpus_opts(sp, precision_required=False):
        sp.add_argument("--in", dest="input", required=True, help="JSON Lines corpus")
        sp.add_argument("--precision", type=int, default=200, required=precision_required)
        sp.add_argument("--delta", default="3/4", help="LLL parameter")
        sp.add_argument("--require-fundamental", action="store_true",
                        help="skip fields whose discriminant is not fundamental")
        sp.add_argument("--require-coprime", action="store_true",
                        help="skip fields with gcd(n, d) > 1")
        sp.add_argument("--galois", help="keep only records tagged with this Galois group")
        sp.add_argument("--min-group-size", type=int, default=1)
        sp.add_argument("--workers", type=int, default=1)

    a = sub.add_parser("analyze", help="full per-field and per-group report")
    corpus_opts(a)
    a.add_argument("--out", help="directory for report.json / report.txt")
    a.add_argument("--format", choices=("json", "text"), default="json")
    a.add_argument("--display-precision", type=int,
                   help="text output: show theta terms below q^N only")
    a.set_defaults(func=cmd_analyze)

    i = sub.add_parser("independence", help="independence verdict per discriminant")
    corpus_opts(i, precision_required=True)
    i.set_defaults(func=cmd_independence)

    c = sub.add_parser("collisions", help="shared smallest primes and minima per discriminant")
    corpus_opts(c)
    c.set_defaults(func=cmd_collisions)

    d = sub.add_parser("dimbound", help="weight 3/2 dimension lower bound at level 8d")
    d.add_argument("--disc", type=int, required=True)
    d.add_argument("--mode", choices=("paper", "exact"), default="paper")
    d.set_defaults(func=cmd_dimbound)

    t = sub.add_parser("theta", help="theta series of a single polynomial")
    t.add_argument("--poly", required=True, help='coefficients, constant first, e.g. "16,5,-9,-2,1"')
    t.add_argument("--precision", type=int, default=200)
    t.set_defaults(func=cmd_theta)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        args.func(args)
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 2
    except (ThetaNFError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
