"""Command-line interface: fit a dataset or run a simulation study.

``lomaxbayes fit DATA`` writes three artifacts into the output directory:
``summary.json`` (posterior summaries and diagnostics), ``trace.csv``
(columns chain,draw_index,alpha,beta) and ``outliers.csv`` (columns
index,x,lambda_mean,flagged).  ``lomaxbayes simulate`` writes
``simulation.csv`` and prints the aggregated table.

Exit codes: 0 success, 1 usage error, 2 data error, 3 numerical or
propriety error.  Runs are reproducible: the same flags and seed yield
byte-identical artifacts.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from .diagnostics import acceptance_rate, gelman_rubin, outlier_scores, summarize
from .distribution import Dataset, LomaxParams
from .priors import ImproperPosteriorError, PriorKind
from .sampler import ChainSet, DegenerateDataError, McmcConfig, run_chains
from .simulation import StudyConfig, run_study

__all__ = ["DataFormatError", "parse_dataset", "cmd_fit", "cmd_simulate", "main"]

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NUMERIC = 3

OUTDIR_ENV = "LOMAXBAYES_OUTDIR"

PRIOR_CHOICES = tuple(k.value for k in PriorKind)


class DataFormatError(ValueError):
    """Input file violates the one-value-per-line dataset format."""


def parse_dataset(path) -> Dataset:
    """Read a dataset: one nonnegative real per line.

    Blank lines and lines starting with ``#`` are ignored; a
    single-column CSV with one optional header row is accepted too.
    """
    values: list[float] = []
    saw_candidate = False
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            fields = [f.strip() for f in line.split(",") if f.strip()]
            if len(fields) != 1:
                raise DataFormatError(
                    f"{path}: line {lineno}: expected one value, got {len(fields)}"
                )
            first_candidate = not saw_candidate
            saw_candidate = True
            try:
                value = float(fields[0])
            except ValueError:
                if first_candidate:
                    continue  # header row
                raise DataFormatError(
                    f"{path}: line {lineno}: unparsable value {fields[0]!r}"
                ) from None
            if not math.isfinite(value):
                raise DataFormatError(f"{path}: line {lineno}: non-finite value")
            if value < 0.0:
                raise DataFormatError(f"{path}: line {lineno}: negative value {value}")
            values.append(value)
    if not values:
        raise DataFormatError(f"{path}: empty dataset")
    return Dataset(np.array(values))


def _sig6(value: float):
    """Float reduced to 6 significant digits for the summary JSON."""
    if value is None or not math.isfinite(value):
        return None
    return float(f"{value:.6g}")


def _summary_payload(kind: PriorKind, d: Dataset, chains: ChainSet, seed: int) -> dict:
    multi = len(chains) >= 2
    payload = {
        "prior": kind.value,
        "n": d.n,
        "seed": seed,
        "acceptance_rate": _sig6(float(np.mean([acceptance_rate(c) for c in chains]))),
        "psrf": {
            "alpha": _sig6(gelman_rubin(chains, "alpha")) if multi else None,
            "beta": _sig6(gelman_rubin(chains, "beta")) if multi else None,
        },
    }
    for param in ("beta", "alpha"):
        stats = summarize(chains.pooled(param))
        payload[param] = {
            "mean": _sig6(stats.mean),
            "sd": _sig6(stats.sd),
            "ci_low": _sig6(stats.ci_low),
            "ci_high": _sig6(stats.ci_high),
        }
    return payload


def _write_trace_csv(path: Path, chains: ChainSet) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("chain,draw_index,alpha,beta\n")
        for c in chains:
            for i, (a, b) in enumerate(zip(c.alpha.tolist(), c.beta.tolist())):
                fh.write(f"{c.chain_index},{i},{a!r},{b!r}\n")


def _write_outlier_csv(path: Path, d: Dataset, chains: ChainSet) -> None:
    result = outlier_scores(chains, d)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("index,x,lambda_mean,flagged\n")
        rows = zip(d.x.tolist(), result.scores.tolist(), result.flagged.tolist())
        for i, (x, score, flag) in enumerate(rows):
            fh.write(f"{i},{x!r},{score!r},{'true' if flag else 'false'}\n")


def _mcmc_config(args) -> McmcConfig:
    return McmcConfig(
        iterations=args.iters,
        burn_in=args.burnin,
        thin=args.thin,
        chains=args.chains,
        tuning=args.tuning,
        seed=args.seed,
    )


def cmd_fit(args) -> int:
    d = parse_dataset(args.data)
    kind = PriorKind(args.prior)
    cfg = _mcmc_config(args)
    chains = run_chains(d, kind, cfg)

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    summary = _summary_payload(kind, d, chains, cfg.seed)
    with open(out / "summary.json", "w", encoding="utf-8") as fh:
        json.dump(summary, fh, indent=2)
        fh.write("\n")
    _write_trace_csv(out / "trace.csv", chains)
    _write_outlier_csv(out / "outliers.csv", d, chains)

    print(f"prior={kind.value} n={d.n} seed={cfg.seed}")
    for param in ("beta", "alpha"):
        s = summary[param]
        print(
            f"  {param}: mean={s['mean']} sd={s['sd']} "
            f"95% CI=[{s['ci_low']}, {s['ci_high']}]"
        )
    print(f"  acceptance rate={summary['acceptance_rate']} psrf={summary['psrf']}")
    print(f"artifacts written to {out}")
    return EXIT_OK


def cmd_simulate(args) -> int:
    kinds = (
        (PriorKind(args.prior),)
        if args.prior
        else (PriorKind.JEFFREYS_DEPENDENT, PriorKind.REFERENCE)
    )
    study = StudyConfig(
        true_params=LomaxParams(beta=args.beta, alpha=args.alpha),
        sample_sizes=tuple(args.sizes),
        replications=args.replications,
        priors=kinds,
        mcmc=_mcmc_config(args),
        seed=args.seed,
    )
    report = run_study(study, n_jobs=args.jobs, progress=not args.quiet)

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    report.to_csv(out / "simulation.csv")
    print(report.table())
    print(f"artifacts written to {out}")
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    # usage errors must exit 1, not argparse's default 2
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_mcmc_flags(p, *, iters, burnin, thin):
    p.add_argument("--iters", type=int, default=iters, help="total iterations per chain")
    p.add_argument("--burnin", type=int, default=burnin, help="discarded initial iterations")
    p.add_argument("--thin", type=int, default=thin, help="keep every thin-th draw")
    p.add_argument("--chains", type=int, default=2, help="number of parallel chains")
    p.add_argument("--tuning", type=float, default=1.0, help="shape proposal SD")
    p.add_argument("--seed", type=int, default=0, help="master seed")
    p.add_argument(
        "--out",
        default=os.environ.get(OUTDIR_ENV, "."),
        help=f"output directory (default from ${OUTDIR_ENV}, else '.')",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="lomaxbayes",
        description="Objective Bayesian inference for the Lomax distribution.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    fit = sub.add_parser("fit", parents=[], help="fit a dataset from a file")
    fit.add_argument("data", help="dataset file: one value per line (or 1-column CSV)")
    fit.add_argument("--prior", choices=PRIOR_CHOICES, default="reference")
    _add_mcmc_flags(fit, iters=80000, burnin=20000, thin=20)
    fit.set_defaults(func=cmd_fit)

    sim = sub.add_parser("simulate", help="run a Monte Carlo bias/rmse study")
    sim.add_argument(
        "--prior",
        choices=PRIOR_CHOICES,
        default=None,
        help="restrict to one prior (default: jeffreys and reference)",
    )
    sim.add_argument("--replications", type=int, default=500, help="datasets per cell")
    sim.add_argument(
        "--sizes", type=int, nargs="+", default=[50, 100, 150, 200, 300, 500],
        help="sample sizes",
    )
    sim.add_argument("--beta", type=float, default=2.0, help="true scale")
    sim.add_argument("--alpha", type=float, default=1.5, help="true shape")
    sim.add_argument("--jobs", type=int, default=1, help="worker processes")
    sim.add_argument("--quiet", action="store_true", help="suppress progress lines")
    _add_mcmc_flags(sim, iters=11000, burnin=1000, thin=10)
    sim.set_defaults(func=cmd_simulate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (DataFormatError, OSError) as exc:
        print(f"lomaxbayes: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (ImproperPosteriorError, DegenerateDataError, FloatingPointError) as exc:
        print(f"lomaxbayes: numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"lomaxbayes: invalid configuration: {exc}", file=sys.stderr)
        return EXIT_USAGE


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
