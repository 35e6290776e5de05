"""``ghseq`` command line.

Exit status: 0 on success, 1 for usage or input errors, 2 when a
mathematical invariant (period theorem, 6m bound) is found violated.

Every flag may also be given in a ``--config`` file of ``key = value``
lines (key = flag name without the leading dashes); flags on the command
line win.  ``GHSEQ_OUT`` sets the default output directory.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from dataclasses import replace
from pathlib import Path

from ghseq.correlation import peak_ccf, randomness_measure
from ghseq.errors import GhseqError, InvariantViolation
from ghseq.gh_core import (
    GHParams,
    PeriodReport,
    b_sequence,
    composite_bound_sweep,
    gh_period,
    is_prime,
    theorem_sweep,
    verify_period_theorem,
)
from ghseq.harness import (
    PAPER_POLY,
    SECOND_POLY,
    ExperimentConfig,
    compare_with_paper,
    run_ccf_experiment,
    run_table1,
    write_series_csv,
)
from ghseq.lfsr import BinaryPolynomial, default_seed, pn_fragment
from ghseq.svg import emit_svg_plot

EXIT_USAGE = 1
EXIT_INVARIANT = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _pair(text: str) -> tuple[int, int]:
    vals = _int_list(text)
    if len(vals) != 2:
        raise argparse.ArgumentTypeError(f"expected two comma-separated integers, got {text!r}")
    return vals[0], vals[1]


def _default_out() -> str:
    return os.environ.get("GHSEQ_OUT", ".")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ghseq", description="GH residue sequences, PN sequences and their cross-correlation.")
    parser.add_argument("--config", help="key = value file supplying defaults for any flag")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("period", help="period of a GH residue sequence")
    p.add_argument("--modulus", type=int)
    p.add_argument("--seed-a", type=int, default=1)
    p.add_argument("--seed-b", type=int, default=1)
    p.add_argument("--header", action="store_true", help="print the CSV header line first")

    p = sub.add_parser("sweep", help="check N(m) <= 6m and the prime period rules up to --max")
    p.add_argument("--max", type=int, dest="max")

    p = sub.add_parser("bn", help="print B(n) as comma-separated +1/-1")
    p.add_argument("--count", type=int)

    p = sub.add_parser("pn", help="print a bipolar PN fragment (bit 0 -> +1, bit 1 -> -1)")
    p.add_argument("--poly", default=PAPER_POLY, help="descending exponents, e.g. 45,4,3,1,0")
    p.add_argument("--seed", help="register contents, stage 0 first (default: all ones)")
    p.add_argument("--offset", type=int, default=0)
    p.add_argument("--length", type=int)

    for name, help_ in (("ccf", "CCF series of two fragments"), ("table1", "peak CCF comparison table")):
        p = sub.add_parser(name, help=help_)
        if name == "ccf":
            p.add_argument("--kind", choices=["gh", "pn-same", "pn-diff"])
            p.add_argument("--length", type=int)
            p.add_argument("--offsets", type=_pair, help="window offsets A,B (default 0,L)")
        else:
            p.add_argument("--lengths", type=_int_list, default=[25, 50, 100, 150, 200])
            p.add_argument("--gh-offsets", type=_pair)
            p.add_argument("--pn-same-offsets", type=_pair)
            p.add_argument("--pn-diff-offsets", type=_pair)
        p.add_argument("--poly", default=PAPER_POLY, help="PN generator polynomial")
        p.add_argument("--poly2", default=SECOND_POLY, help="second polynomial for the different-generator case")
        p.add_argument("--seed", help="seed for --poly, stage 0 first (default: 1 then zeros)")
        p.add_argument("--seed2", help="seed for --poly2 (default: 1 then zeros)")
        p.add_argument("--out", default=None, help="output directory (default $GHSEQ_OUT or .)")
        p.add_argument("--svg", action="store_true", help="also write an SVG plot")
    return parser


def _read_config(path: str) -> dict[str, str]:
    values = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise GhseqError(f"{path}:{lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        values[key.lstrip("-").replace("-", "_")] = value
    return values


def _apply_config(parser: argparse.ArgumentParser, values: dict[str, str]) -> None:
    subparsers = [a for a in parser._actions if isinstance(a, argparse._SubParsersAction)]
    for sp in subparsers[0].choices.values():
        updates = {}
        for action in sp._actions:
            if action.dest in values:
                raw = values[action.dest]
                if isinstance(action, argparse._StoreTrueAction):
                    updates[action.dest] = raw.lower() in ("1", "true", "yes", "on")
                else:
                    updates[action.dest] = action.type(raw) if action.type else raw
        sp.set_defaults(**updates)


def _require(parser, args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        flags = ", ".join("--" + n.replace("_", "-") for n in missing)
        parser.error(f"{args.command}: missing required {flags}")


def _experiment_config(args, lengths) -> ExperimentConfig:
    return ExperimentConfig(
        lengths=tuple(lengths),
        gh_offsets=getattr(args, "gh_offsets", None),
        pn_same_poly=args.poly,
        pn_same_offsets=getattr(args, "pn_same_offsets", None),
        pn_diff_polys=(args.poly, args.poly2),
        pn_diff_offsets=getattr(args, "pn_diff_offsets", None),
        seeds=(args.seed, args.seed2),
    )


def _cmd_period(args) -> None:
    m = args.modulus
    params = GHParams(args.seed_a, args.seed_b, m)
    if m != 2 and is_prime(m):
        report = verify_period_theorem(m, (args.seed_a, args.seed_b))
    else:
        n = gh_period(params)
        report = PeriodReport(m, n, None, n == 6 * m)
    if args.header:
        print(PeriodReport.CSV_HEADER)
    print(report.csv_row())


def _cmd_sweep(args) -> None:
    reports = composite_bound_sweep(args.max)
    primes = theorem_sweep(args.max)
    print(PeriodReport.CSV_HEADER)
    for r in reports:
        print(r.csv_row())
    tight = [r.modulus for r in reports if r.bound_tight]
    print(
        f"checked N(m) <= 6m for 2..{args.max}; tight at {tight}; "
        f"period rule holds for {len(primes)} odd primes",
        file=sys.stderr,
    )


def _cmd_pn(args) -> None:
    poly = BinaryPolynomial.parse(args.poly)
    seed = args.seed or default_seed(poly.degree)
    print(",".join(str(v) for v in pn_fragment(poly, seed, args.offset, args.length)))


def _cmd_ccf(args) -> None:
    kind = args.kind.replace("-", "_")
    base = _experiment_config(args, [args.length])
    if args.offsets is not None:
        base = replace(base, **{f"{kind}_offsets": args.offsets})
    series = run_ccf_experiment(kind, args.length, base)
    out = Path(args.out or _default_out())
    out.mkdir(parents=True, exist_ok=True)
    offs = base.offsets(kind, args.length)
    comments = [f"offsets={offs[0]},{offs[1]}", f"kind={kind} length={args.length}"]
    if kind != "gh":
        comments += base.provenance()[1:]
    path = write_series_csv(series, out / f"ccf_{kind}_{args.length}.csv", comments)
    print(f"wrote {path}")
    if args.svg:
        title = f"CCF of {'binary GH' if kind == 'gh' else 'PN'} sequences, length {args.length}"
        print(f"wrote {emit_svg_plot(series, title, path.with_suffix('.svg'))}")
    print(f"peak_ccf={peak_ccf(series):.6f} randomness={randomness_measure(series):.6f}")


def _cmd_table1(args) -> None:
    out = Path(args.out or _default_out())
    config = _experiment_config(args, args.lengths)
    config = replace(config, output_dir=out)
    rows = run_table1(config)
    print(f"wrote {out / 'table1.csv'}")
    if args.svg:
        print(f"wrote {emit_svg_plot(rows, 'Peak CCF of GH and PN sequences', out / 'table1.svg')}")
    for dev in compare_with_paper(rows):
        flag = "  [gh_peak outside 0.1-0.4]" if dev.gh_out_of_band else ""
        print(
            "length {}: |delta| vs published gh={:.4f} pn_same={:.4f} pn_diff={:.4f}{}".format(
                dev.length, *dev.deltas, flag
            )
        )


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    try:
        if known.config:
            _apply_config(parser, _read_config(known.config))
        args = parser.parse_args(argv)
    except (OSError, GhseqError, argparse.ArgumentTypeError) as exc:
        print(f"ghseq: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")

    commands = {
        "period": (_cmd_period, ("modulus",)),
        "sweep": (_cmd_sweep, ("max",)),
        "bn": (lambda a: print(",".join(str(v) for v in b_sequence(a.count))), ("count",)),
        "pn": (_cmd_pn, ("length",)),
        "ccf": (_cmd_ccf, ("kind", "length")),
        "table1": (_cmd_table1, ()),
    }
    if args.command is None:
        parser.print_help(sys.stderr)
        return EXIT_USAGE
    func, required = commands[args.command]
    _require(parser, args, *required)
    try:
        func(args)
    except InvariantViolation as exc:
        print(f"ghseq: invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (GhseqError, OSError) as exc:
        print(f"ghseq: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return 0


if __name__ == "__main__":
    sys.exit(main())
