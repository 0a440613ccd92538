"""Command-line entry point: ``gravanom verify | pair | winding | integrate``."""

from __future__ import annotations

import argparse
import os
import sys
from typing import List, Optional

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
MAX_WINDING = 64


class UsageError(Exception):
    pass


def _default_samples() -> int:
    try:
        return int(os.environ.get("GRAVANOM_SAMPLES", "256"))
    except ValueError:
        return 256


def _parser() -> argparse.ArgumentParser:
    from .report import SUITES

    p = argparse.ArgumentParser(prog="gravanom", description="Exact checks of the equivariant p1 cocycle "
                                "and its pairing with the inversion-group cycle.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=SUITES + ("all",))
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--json", metavar="PATH", help="write the machine-readable report here ('-' for stdout)")
    v.add_argument("--timings", action="store_true", help="include wall times (ms) in the JSON report")
    v.add_argument("--quiet", action="store_true", help="print only failures and the summary")

    q = sub.add_parser("pair", help="pair -Omega^2 with the cycle c built from g1, g2")
    q.add_argument("--n1", type=int, required=True)
    q.add_argument("--n2", type=int, required=True)
    mode = q.add_mutually_exclusive_group()
    mode.add_argument("--exact", dest="mode", action="store_const", const="exact")
    mode.add_argument("--numeric", dest="mode", action="store_const", const="numeric")
    q.set_defaults(mode="exact")
    q.add_argument("--samples", type=int, default=_default_samples())
    q.add_argument("--metric", choices=("flat", "fubini-study"), default="flat")

    w = sub.add_parser("winding", help="winding number of a sampled loop (one 're, im' pair per line)")
    w.add_argument("--file", required=True)

    i = sub.add_parser("integrate", help="integrate an s-expression form over a chain preset")
    i.add_argument("--chain", choices=("cylinder", "torus"), required=True)
    i.add_argument("--form", required=True, help="(form holo-jet (den ...) (term (dt dz) (poly ...)) ...)")
    i.add_argument("--numeric", action="store_true")
    i.add_argument("--samples", type=int, default=_default_samples())
    return p


def _cmd_verify(args) -> int:
    from .report import run_suite

    def progress(c):
        if not args.quiet or c.status != "pass":
            print(f"{c.status.upper():4}  {c.id:48}  {c.anchor}")
            if c.residual:
                print(f"      residual: {c.residual}")

    report = run_suite(args.suite, args.seed, progress)
    if args.json:
        text = report.dumps(args.timings)
        if args.json == "-":
            print(text)
        else:
            with open(args.json, "w") as fh:
                fh.write(text + "\n")
    print(report.summary())
    return EXIT_OK if report.passed else EXIT_FAIL


def _cmd_pair(args) -> int:
    from .report import exact_pairing, numeric_pairing
    from .scalars import PiScalar

    for name in ("n1", "n2"):
        if abs(getattr(args, name)) > MAX_WINDING:
            raise UsageError(f"|{name}| must be at most {MAX_WINDING}")
    if args.samples < 4:
        raise UsageError("--samples must be at least 4")
    n1, n2 = args.n1, args.n2
    if args.mode == "exact":
        v = exact_pairing(n1, n2, args.metric)
        print(f"<p1, c> = {v}")
        print(f"        ~ {v.approx().real:.15g}")
        if n1 != n2:
            unit = PiScalar({2: 8 * (n1 - n2)})
            if v == unit or v == -unit:
                sign = "+" if v == unit else "-"
                print(f"        = {sign}8*pi^2*({n1 - n2})  [orientation (t, x, y)]")
            else:
                print(f"        (not of the form +-8*pi^2*({n1 - n2}) for the {args.metric} metric)")
    else:
        r = numeric_pairing(n1, n2, args.samples, args.metric)
        print(f"<p1, c> ~ {r.value.real:.12f} {r.value.imag:+.3e}i  (error estimate {r.error:.2e}, "
              f"{args.samples}^2 samples)")
    return EXIT_OK


def _cmd_winding(args) -> int:
    from .homology import WindingError, read_samples, winding_number

    try:
        samples = read_samples(args.file)
        print(winding_number(samples))
    except OSError as exc:
        raise UsageError(str(exc)) from None
    except WindingError as exc:
        raise UsageError(str(exc)) from None
    return EXIT_OK


def _cmd_integrate(args) -> int:
    from .homology import chain_preset, integrate, integrate_numeric
    from .jets import holo_jet
    from .sexpr import loads_form

    form = loads_form(args.form, holo_jet().chart)
    ch = chain_preset(args.chain)
    if args.numeric:
        r = integrate_numeric(form, ch, args.samples)
        print(f"{r.value.real:.12g} {r.value.imag:+.12g}i  (error estimate {r.error:.2e})")
    else:
        v = integrate(form, ch)
        print(f"{v}  ~ {v.approx():.12g}")
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    args = _parser().parse_args(argv)
    handler = {"verify": _cmd_verify, "pair": _cmd_pair, "winding": _cmd_winding,
               "integrate": _cmd_integrate}[args.command]
    try:
        return handler(args)
    except UsageError as exc:
        print(f"gravanom: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:  # parse and domain errors from the library
        print(f"gravanom: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
