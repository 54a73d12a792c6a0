"""
Command-line front end.

    fishswarm run --function sphere --dim 30 --algo cwafa --mw 0.96 --out results
    fishswarm sweep --function sphere --dim 30 --grid 0.90:1.00:0.01 --out results
    fishswarm compare --functions sphere,ackley --dims 10,30 --out results

Every subcommand accepts ``--config FILE``: one ``key = value`` per line,
``#`` starts a comment, keys are flag names without the leading dashes.
Flags given on the command line win over the file.

Exit status is 0 on success, 1 for a configuration error and 2 for an I/O
error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from .harness import (ALGORITHMS, CompareRow, ConfigError, ExperimentConfig, compare,
                      mw_sweep, run_experiment)
from .output import (OutputError, mean_trace, render_convergence_svg, write_summary_csv,
                     write_sweep_csv, write_trace_csv)

EXIT_OK, EXIT_CONFIG, EXIT_IO = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; that code is reserved for I/O here
    def error(self, message):
        raise ConfigError(message)


def _common(p, out_default="results"):
    p.add_argument("--config", help="key = value file with default flag values")
    p.add_argument("--iters", type=int, default=1000)
    p.add_argument("--runs", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", default=out_default)


def build_parser():
    parser = _Parser(prog="fishswarm", description="Artificial fish swarm experiments.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("run", help="repeated runs of one algorithm")
    p.add_argument("--function", required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--algo", default="cwafa", choices=ALGORITHMS)
    p.add_argument("--mw", type=float)
    p.add_argument("--mw-min", type=float)
    p.add_argument("--mw-max", type=float)
    p.add_argument("--pop", type=int, default=30)
    p.add_argument("--trace", action="store_true", help="write the per-iteration trace CSV")
    p.add_argument("--svg", action="store_true", help="write a convergence plot")
    _common(p)

    p = sub.add_parser("sweep", help="constant movement-weight grid sweep")
    p.add_argument("--function", required=True)
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--grid", default="0.72:1.02:0.01", help="start:stop:step, inclusive")
    p.add_argument("--pop", type=int, default=30)
    _common(p)

    p = sub.add_parser("compare", help="all six algorithms over functions x dimensions")
    p.add_argument("--functions", default="sphere,rosenbrock,ackley,griewank")
    p.add_argument("--dims", default="10,20,30")
    p.add_argument("--pop", type=int, default=30)
    _common(p)
    return parser


_FLAGS = {"trace", "svg"}


def read_config(path):
    """Turn a ``key = value`` file into argv tokens."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise OutputError(f"cannot read config {path}: {exc.strerror or exc}") from exc
    argv = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value'")
        if key == "config":
            raise ConfigError(f"{path}:{lineno}: nested config files are not supported")
        if key in _FLAGS:
            if value.lower() in ("1", "true", "yes", "on"):
                argv.append(f"--{key}")
            elif value.lower() not in ("0", "false", "no", "off"):
                raise ConfigError(f"{path}:{lineno}: {key} expects true or false")
        else:
            argv += [f"--{key}", value]
    return argv


def parse_args(argv):
    argv = list(argv)
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if known.config and argv and not argv[0].startswith("-"):
        # file values go first so explicit flags override them
        argv = argv[:1] + read_config(known.config) + argv[1:]
    return build_parser().parse_args(argv)


def parse_grid(text):
    try:
        start, stop, step = (float(v) for v in text.split(":"))
    except ValueError:
        raise ConfigError(f"grid must be start:stop:step, got {text!r}") from None
    if step <= 0 or stop < start:
        raise ConfigError(f"empty grid {text!r}")
    n = int(np.floor((stop - start) / step + 1e-9)) + 1
    return [round(start + k * step, 10) for k in range(n)]


def _int_list(text, what):
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise ConfigError(f"bad {what} list {text!r}") from None


def _cmd_run(args):
    cfg = ExperimentConfig(function=args.function, dimension=args.dim, algorithm=args.algo,
                           mw=args.mw, mw_min=args.mw_min, mw_max=args.mw_max,
                           iterations=args.iters, population=args.pop, runs=args.runs,
                           master_seed=args.seed, output_dir=args.out)
    if args.mw is not None and (args.mw_min is not None or args.mw_max is not None):
        raise ConfigError("give either --mw or --mw-min/--mw-max, not both")
    records, summary = run_experiment(cfg)
    out = Path(args.out)
    stem = f"{cfg.objective().name}_{cfg.dimension}_{cfg.algorithm}"
    write_summary_csv([CompareRow(cfg.objective().name, cfg.dimension, cfg.algorithm,
                                  cfg.runs, summary)], out / f"{stem}_summary.csv")
    if args.trace:
        write_trace_csv(records, out / f"{stem}_trace.csv")
    if args.svg:
        render_convergence_svg(records, out / f"{stem}.svg", log_scale=True, title=stem)
    print(f"{stem}: best={summary.best:.6g} mean={summary.mean:.6g} "
          f"std={summary.std_dev:.6g} solved={summary.solved_fraction:.2f}")


def _cmd_sweep(args):
    cfg = ExperimentConfig(function=args.function, dimension=args.dim, algorithm="cwafa",
                           iterations=args.iters, population=args.pop, runs=args.runs,
                           master_seed=args.seed, output_dir=args.out)
    result = mw_sweep(cfg, parse_grid(args.grid))
    name = cfg.objective().name
    write_sweep_csv(result, Path(args.out) / f"{name}_{cfg.dimension}_sweep.csv")
    for mw, s in result.rows:
        print(f"mw={mw:.2f} mean={s.mean:.6g} solved={s.solved_fraction:.2f}")
    print(f"best mw: {result.best_mw:.2f}")


def _cmd_compare(args):
    functions = [f.strip() for f in args.functions.split(",") if f.strip()]
    dims = _int_list(args.dims, "dimension")
    if not functions or not dims:
        raise ConfigError("need at least one function and one dimension")
    rows, records = compare(functions, dims, iterations=args.iters, runs=args.runs,
                            seed=args.seed, population=args.pop, keep_records=True)
    out = Path(args.out)
    write_summary_csv(rows, out / "compare_summary.csv")
    for f in dict.fromkeys(r.function for r in rows):
        for d in dims:
            series = {a: mean_trace(records[(f, d, a)]) for a in ALGORITHMS}
            render_convergence_svg(series, out / f"{f}_{d}_compare.svg",
                                   title=f"{f} {d}-D, mean of {args.runs} runs")
    for r in rows:
        print(f"{r.function:<11}{r.dimension:>4} {r.algorithm:<9} mean={r.summary.mean:.6g}")


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = parse_args(argv)
        {"run": _cmd_run, "sweep": _cmd_sweep, "compare": _cmd_compare}[args.command](args)
    except ConfigError as exc:
        print(f"fishswarm: configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"fishswarm: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
