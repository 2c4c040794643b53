"""Command-line interface.

Subcommands: ``run`` (execute an experiment config), ``sdmc-check`` (run an
algorithm with scope instrumentation and print the coverage verdict),
``stability`` (eigenvalue analytics and distribution CSVs), ``compare``
(two record directories), ``plot`` (record CSVs to SVG).

Exit codes: 0 success, 1 configuration error, 2 runtime error, and 3 when
``sdmc-check`` reports a coverage failure so scripts can branch on it.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .. import scope, stability
from ..core import ConfigError, RngStream, SdmcError
from . import compare as compare_mod
from . import export
from .config import ExperimentConfig, InstrumentConfig, load_config
from .runner import run_trials

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_RUNTIME = 2
EXIT_SDMC_FAILS = 3


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage errors with exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        raise _UsageError(message)


class _UsageError(ConfigError):
    pass


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sdmc", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p_run = sub.add_parser("run", help="execute an experiment config file")
    p_run.add_argument("config", help="JSON experiment config")

    p_check = sub.add_parser("sdmc-check",
                             help="run an algorithm and print the coverage verdict")
    p_check.add_argument("--algo", required=True)
    p_check.add_argument("--func", required=True)
    p_check.add_argument("--dim", type=int, required=True)
    p_check.add_argument("--budget", type=int, required=True)
    p_check.add_argument("--window-max", type=int, default=20)
    p_check.add_argument("--samples", type=int, default=scope.DEFAULT_SAMPLES)
    p_check.add_argument("--tol", type=float, default=scope.DEFAULT_TOL)
    p_check.add_argument("--seed", type=int, default=0)

    p_stab = sub.add_parser("stability", help="particle eigenvalue analytics")
    p_stab.add_argument("--omega", type=float, required=True)
    p_stab.add_argument("--c1", type=float, default=2.0)
    p_stab.add_argument("--c2", type=float, default=2.0)
    p_stab.add_argument("--mode", choices=("plug-in", "monte-carlo"), default="plug-in")
    p_stab.add_argument("--samples", type=int, default=1_000_000)
    p_stab.add_argument("--seed", type=int, default=0)
    p_stab.add_argument("--z-pdf", nargs=2, type=float, metavar=("D1", "D2"),
                        help="emit (z, pdf) CSV of the summed-attraction density")
    p_stab.add_argument("--diff-pdf", nargs=2, type=float, metavar=("A", "B"),
                        help="emit (z, pdf) CSV of the difference-of-uniforms density")
    p_stab.add_argument("--grid", type=int, default=200)
    p_stab.add_argument("--out", help="CSV output path for --z-pdf/--diff-pdf")

    p_cmp = sub.add_parser("compare", help="rank-sum comparison of two record dirs")
    p_cmp.add_argument("baseline")
    p_cmp.add_argument("candidate")
    p_cmp.add_argument("--alpha", type=float, default=0.05)
    p_cmp.add_argument("--out", help="optional CSV output path")

    p_plot = sub.add_parser("plot", help="render record CSVs as standalone SVG")
    p_plot.add_argument("--kind", choices=("std", "curve", "scatter"), required=True)
    p_plot.add_argument("inputs", nargs="+")
    p_plot.add_argument("--out", required=True)
    p_plot.add_argument("--title", default="")
    return parser


def _cmd_run(args) -> int:
    config = load_config(args.config)
    records = run_trials(config)
    finals = np.array([r.final_best_fitness for r in records])
    print(f"runs {len(records)} final_best mean {finals.mean():.6E} "
          f"std {finals.std(ddof=1) if len(records) > 1 else 0.0:.6E}")
    if config.output:
        print(f"records written to {config.output}")
    return EXIT_OK


def _cmd_sdmc_check(args) -> int:
    config = ExperimentConfig(
        algorithm_id=args.algo,
        function_id=args.func,
        dim=args.dim,
        budget=args.budget,
        seed=args.seed,
        runs=1,
        instrument=InstrumentConfig(scope_trace=True),
    )
    config.validate()
    record = run_trials(config)[0]
    rng = RngStream(args.seed, 10_000).generator()
    verdict = scope.sdmc_check(record.scope_trace, n_max=args.window_max,
                               samples=args.samples, tol=args.tol, rng=rng)
    if verdict.covers:
        print(f"COVERS N={verdict.covering_window}")
        return EXIT_OK
    print(f"FAILS t={verdict.witness_generation}")
    print("witness " + " ".join(repr(v) for v in verdict.witness_point))
    return EXIT_SDMC_FAILS


def _cmd_stability(args) -> int:
    if args.z_pdf or args.diff_pdf:
        if not args.out:
            raise ConfigError("--z-pdf/--diff-pdf need --out")
        if args.z_pdf:
            d1, d2 = args.z_pdf
            zs = np.linspace(0.0, d1 + d2, args.grid)
            pdf = stability.z_pdf_ldiw(d1, d2, zs)
        else:
            a, b = args.diff_pdf
            dist = stability.diff_uniform_dist(a, b)
            zs = np.linspace(-dist.width, dist.width, args.grid)
            pdf = dist.pdf(zs)
        with open(args.out, "w") as fh:
            fh.write("z,pdf\n")
            for z, p in zip(zs, pdf):
                fh.write(f"{z!r},{p!r}\n")
        print(f"wrote {args.out}")
        return EXIT_OK

    params = stability.SecondOrderParams(args.omega, (args.c1 + args.c2) / 2.0,
                                         args.c1, args.c2)
    l1, l2 = stability.particle_eigenvalues(params)
    rng = RngStream(args.seed, 20_000).generator()
    est = stability.expected_max_modulus(args.omega, args.c1, args.c2,
                                         mode=args.mode, samples=args.samples,
                                         rng=rng)
    print(f"lambda1 {l1.real:.6f}{l1.imag:+.6f}j")
    print(f"lambda2 {l2.real:.6f}{l2.imag:+.6f}j")
    print(f"moduli {abs(l1):.6f} {abs(l2):.6f}")
    line = f"expected_max_modulus {est.value:.6f}"
    if est.std_error is not None:
        line += f" std_error {est.std_error:.2E} samples {est.samples}"
    print(line)
    return EXIT_OK


def _cmd_compare(args) -> int:
    base = export.load_final_fitness(args.baseline)
    cand = export.load_final_fitness(args.candidate)
    function_id = ""
    try:
        with open(f"{args.candidate}/config.json") as fh:
            function_id = json.load(fh).get("function", "")
    except OSError:
        pass
    row = compare_mod.compare(base, cand, alpha=args.alpha, function_id=function_id)
    print(compare_mod.COMPARISON_HEADER)
    print(compare_mod.comparison_csv_row(row))
    if args.out:
        compare_mod.write_comparison_csv([row], args.out)
    return EXIT_OK


def _cmd_plot(args) -> int:
    if args.kind == "std":
        traces = [export.read_std_csv(p) for p in args.inputs]
        export.std_traces_svg(traces, args.inputs, args.out, title=args.title)
    elif args.kind == "curve":
        curves = [export.read_run_csv(p) for p in args.inputs]
        export.curves_svg(curves, args.inputs, args.out, title=args.title)
    else:
        snapshots = export.read_snapshots_csv(args.inputs[0])
        export.snapshots_svg(snapshots, args.out, title=args.title)
    print(f"wrote {args.out}")
    return EXIT_OK


_COMMANDS = {
    "run": _cmd_run,
    "sdmc-check": _cmd_sdmc_check,
    "stability": _cmd_stability,
    "compare": _cmd_compare,
    "plot": _cmd_plot,
}


def cli(argv=None) -> int:
    """Entry point returning the exit code (0 ok, 1 config, 2 runtime, 3
    coverage failure)."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except SdmcError as exc:
        print(f"runtime error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


def main() -> None:
    sys.exit(cli())
