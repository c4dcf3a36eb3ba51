"""Command-line interface.

Subcommands:
    simulate  draw a synthetic light curve (TimeSeries CSV)
    fit       fit a trigonometric polynomial to a light curve at a known period
    estimate  scan a frequency band with the CLSP or LS criterion
    theory    information / asymptotic-variance report plus per-n SDs
    mc        run a Monte-Carlo experiment from a JSON config

Exit codes: 0 success, 2 configuration error, 3 data error, 4 numerical
failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import asymptotics, harness
from .errors import ConfigurationError, DataError, NumericalError, SingularGramError
from .estimator import FrequencyGrid, estimate_clsp, estimate_ls
from .periodogram import clsp_grid, dump_periodogram, ls_criterion
from .sampling import (
    RenewalScheme,
    observe,
    read_time_series,
    sample_instants,
    snr_to_sigma,
    write_time_series,
)
from .signal import PeriodicSignal, fit_trig_poly


def _add_scheme_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--law", choices=["exponential", "gamma", "uniform"],
                   default="exponential", help="inter-arrival law")
    p.add_argument("--rate", type=float, help="rate for exponential/gamma")
    p.add_argument("--shape", type=float, help="shape for gamma")
    p.add_argument("--low", type=float, help="lower endpoint for uniform")
    p.add_argument("--high", type=float, help="upper endpoint for uniform")


def _scheme_from_args(args) -> RenewalScheme:
    if args.law == "exponential":
        if args.rate is None:
            raise ConfigurationError("exponential law needs --rate")
        return RenewalScheme.exponential(args.rate)
    if args.law == "gamma":
        if args.rate is None or args.shape is None:
            raise ConfigurationError("gamma law needs --shape and --rate")
        return RenewalScheme.gamma(args.shape, args.rate)
    if args.low is None or args.high is None:
        raise ConfigurationError("uniform law needs --low and --high")
    return RenewalScheme.uniform(args.low, args.high)


def _add_noise_args(p: argparse.ArgumentParser) -> None:
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--sigma", type=float, help="noise standard deviation")
    g.add_argument("--snr-db", type=float, help="signal-to-noise ratio in dB")


def _resolve_sigma(args, signal: PeriodicSignal) -> float:
    if args.sigma is not None:
        if args.sigma < 0:
            raise ConfigurationError("--sigma must be >= 0")
        return args.sigma
    return snr_to_sigma(signal, args.snr_db)


def _load_signal(path: str) -> PeriodicSignal:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise DataError(f"cannot read signal file {path}: {exc}") from exc
    return PeriodicSignal.from_json(text)


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _cmd_simulate(args) -> int:
    signal = _load_signal(args.signal)
    scheme = _scheme_from_args(args)
    sigma = _resolve_sigma(args, signal)
    instants = sample_instants(scheme, args.n, harness.mix_seed(args.seed, 0))
    ts = observe(signal, instants, sigma, harness.mix_seed(args.seed, 1))
    if args.output:
        write_time_series(ts, args.output)
    else:
        sys.stdout.write("t,y\n")
        for t, y in zip(ts.times, ts.values):
            sys.stdout.write(f"{t:.17g},{y:.17g}\n")
    return 0


def _cmd_fit(args) -> int:
    lc = read_time_series(args.input)
    sig = fit_trig_poly(lc.times, lc.values, 1.0 / args.period, args.degree)
    _emit(sig.to_json(), args.output)
    return 0


def _cmd_estimate(args) -> int:
    data = read_time_series(args.input)
    grid = FrequencyGrid(args.fmin, args.fmax, args.mesh)
    if args.method == "clsp":
        result = estimate_clsp(data, grid, args.K, refine=args.refine)
    else:
        result = estimate_ls(data, grid, args.K, refine=args.refine)
    if args.dump_periodogram:
        freqs = grid.points
        if args.method == "clsp":
            values = clsp_grid(data, freqs, args.K)
        else:
            values = np.empty(freqs.size)
            for i, f in enumerate(freqs):
                try:
                    values[i] = ls_criterion(data, float(f), args.K)
                except SingularGramError:
                    values[i] = np.nan  # same skip policy as the scan itself
        dump_periodogram(freqs, values, args.dump_periodogram)
    sys.stdout.write(result.to_json() + "\n")
    return 0


def _cmd_theory(args) -> int:
    signal = _load_signal(args.signal)
    scheme = _scheme_from_args(args)
    sigma = _resolve_sigma(args, signal)
    report = asymptotics.clsp_variance(signal, scheme, sigma)
    payload = report.to_json_dict()
    payload["per_n"] = [
        {
            "n": n,
            "optimal_sd": asymptotics.optimal_sd(report, n),
            "predicted_clsp_sd": asymptotics.predicted_clsp_sd(report, n, args.ell),
        }
        for n in args.n
    ]
    sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    return 0


def _cmd_mc(args) -> int:
    try:
        obj = json.loads(Path(args.config).read_text())
    except OSError as exc:
        raise DataError(f"cannot read config {args.config}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigurationError(f"invalid config JSON: {exc}") from exc
    cfg = harness.ExperimentConfig.from_json_dict(obj, base_dir=Path(args.config).parent)
    stats, report = harness.run_experiment(cfg, workers=args.workers)
    _f0, ell = cfg.target_frequency()
    label = f"sigma={cfg.resolved_sigma():.6g}"
    sys.stdout.write(harness.report_table(stats, report, cfg.n, ell, label))
    if args.output_csv:
        Path(args.output_csv).write_text(harness.stats_to_csv(stats))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="clsp",
        description="Frequency estimation for periodic signals under "
        "irregular renewal sampling.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="emit a synthetic light curve as CSV")
    p.add_argument("--signal", required=True, help="signal JSON file")
    _add_scheme_args(p)
    p.add_argument("--n", type=int, required=True, help="number of observations")
    _add_noise_args(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", help="output CSV (default: stdout)")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("fit", help="fit a trig polynomial at a known period")
    p.add_argument("--input", required=True, help="light curve CSV")
    p.add_argument("--period", type=float, required=True)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--output", help="output signal JSON (default: stdout)")
    p.set_defaults(func=_cmd_fit)

    p = sub.add_parser("estimate", help="scan a frequency band")
    p.add_argument("--input", required=True, help="light curve CSV")
    p.add_argument("--method", choices=["clsp", "ls"], required=True)
    p.add_argument("--fmin", type=float, required=True)
    p.add_argument("--fmax", type=float, required=True)
    p.add_argument("--mesh", type=float, required=True)
    p.add_argument("--K", type=int, required=True, help="harmonic count")
    p.add_argument("--refine", action="store_true",
                   help="parabolic interpolation around the winning grid point")
    p.add_argument("--dump-periodogram", metavar="PATH",
                   help="also write the criterion scan as 'f,lambda' CSV")
    p.set_defaults(func=_cmd_estimate)

    p = sub.add_parser("theory", help="asymptotic-variance report")
    p.add_argument("--signal", required=True, help="signal JSON file")
    _add_scheme_args(p)
    _add_noise_args(p)
    p.add_argument("--n", type=int, nargs="+", required=True,
                   help="sample counts to tabulate")
    p.add_argument("--ell", type=int, default=1, help="sub-multiple index")
    p.set_defaults(func=_cmd_theory)

    p = sub.add_parser("mc", help="run a Monte-Carlo experiment")
    p.add_argument("--config", required=True, help="experiment config JSON")
    p.add_argument("--output-csv", help="write per-method stats CSV here")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=_cmd_mc)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigurationError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 3
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
