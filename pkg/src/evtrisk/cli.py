"""Command-line entry points and bit-stable file I/O.

Subcommands::

    evtrisk estimate  --input data.csv --alpha 0.01      # JSON report
    evtrisk benchmark --config bench.cfg --out out.csv   # error-summary CSV
    evtrisk oracle    --dist pareto2 --alpha 0.01 --samples 4000000 --seed 1
    evtrisk plot-data --in out.csv --dist pareto2        # filter one series

The benchmark config file is line-oriented ``key = value`` text; see
:func:`load_config`.  Setting the environment variable ``EVTRISK_SEED``
overrides the master seed from the config file and the oracle's default
seed (an explicit ``--seed`` flag still wins).
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from dataclasses import dataclass

import numpy as np

from .benchmark import ExperimentConfig, SeriesSummary, run_experiment
from .distributions import get_distribution
from .estimators import evt_estimate, monte_carlo_semideviation
from .fitting import FitError
from .rng import RandomStream

SEED_ENV_VAR = "EVTRISK_SEED"
CSV_HEADER = ("dist,m,trials,evt_valid_fraction,mean_err_typical,"
              "q25_typ,q75_typ,mean_err_evt,q25_evt,q75_evt")


@dataclass(frozen=True)
class InputDataset:
    """Numeric column loaded from a CSV file."""

    values: np.ndarray
    source_path: str
    parse_warnings: tuple[str, ...] = ()


def _parse_number(token: str) -> float | None:
    try:
        value = float(token)
    except ValueError:
        return None
    return value


def load_csv(path: str) -> InputDataset:
    """Read one numeric value per row from the first CSV column.

    A single leading header row is skipped automatically when its first
    token is not numeric.  Parsing uses the C locale's decimal point
    regardless of platform settings.  Any non-numeric row after the header
    raises a descriptive error naming the row.
    """
    with open(path, "r", encoding="utf-8") as handle:
        lines = handle.read().splitlines()

    values: list[float] = []
    warnings: list[str] = []
    for row_number, line in enumerate(lines, start=1):
        token = line.split(",")[0].strip()
        if not token:
            warnings.append(f"row {row_number}: blank line skipped")
            continue
        number = _parse_number(token)
        if number is None:
            if row_number == 1 and not values:
                warnings.append(f"row 1: header {token!r} skipped")
                continue
            raise ValueError(f"{path}: row {row_number}: not a number: {token!r}")
        if not np.isfinite(number):
            raise ValueError(f"{path}: row {row_number}: non-finite value {token!r}")
        values.append(number)
    if not values:
        raise ValueError(f"{path}: no numeric values found")
    return InputDataset(values=np.array(values), source_path=path,
                        parse_warnings=tuple(warnings))


def _parse_m_values(text: str) -> tuple[int, ...]:
    """Parse '20..99' ranges and '20,30,40' lists (mixable)."""
    out: list[int] = []
    for token in text.split(","):
        token = token.strip()
        if ".." in token:
            lo_text, hi_text = token.split("..", 1)
            lo, hi = int(lo_text), int(hi_text)
            if hi < lo:
                raise ValueError(f"empty range {token!r}")
            out.extend(range(lo, hi + 1))
        elif token:
            out.append(int(token))
    if not out:
        raise ValueError(f"no sample sizes in {text!r}")
    return tuple(out)


def load_config(path: str) -> ExperimentConfig:
    """Parse a benchmark config file of ``key = value`` lines.

    Recognized keys (matching :class:`ExperimentConfig` fields):
    ``distributions`` (comma-separated names), ``m_values`` (``20..99``
    ranges and/or comma lists), ``trials``, ``alpha``, ``master_seed``,
    ``ground_truth_mode``.  Lines starting with ``#`` and blank lines are
    ignored.  Unknown keys are an error.
    """
    fields: dict[str, object] = {}
    with open(path, "r", encoding="utf-8") as handle:
        for row_number, raw in enumerate(handle, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise ValueError(f"{path}: line {row_number}: expected 'key = value'")
            key, _, value = line.partition("=")
            key, value = key.strip(), value.strip()
            if key == "distributions":
                fields[key] = tuple(v.strip() for v in value.split(",") if v.strip())
            elif key == "m_values":
                fields[key] = _parse_m_values(value)
            elif key == "trials":
                fields[key] = int(value)
            elif key == "alpha":
                fields[key] = float(value)
            elif key == "master_seed":
                fields[key] = int(value)
            elif key == "ground_truth_mode":
                fields[key] = value
            else:
                raise ValueError(f"{path}: line {row_number}: unknown config key {key!r}")
    if "distributions" not in fields:
        raise ValueError(f"{path}: missing required key 'distributions'")
    return ExperimentConfig(**fields)


def format_float(x: float) -> str:
    """Render a float with 9 significant digits (CSV number format)."""
    return f"{x:.9g}"


def summary_row(s: SeriesSummary) -> str:
    return ",".join([
        s.dist,
        str(s.m),
        str(s.trials_completed),
        format_float(s.evt_valid_fraction),
        format_float(s.mean_err_typical),
        format_float(s.q25_typical),
        format_float(s.q75_typical),
        format_float(s.mean_err_evt),
        format_float(s.q25_evt),
        format_float(s.q75_evt),
    ])


def write_summaries_csv(summaries, path: str) -> None:
    lines = [CSV_HEADER] + [summary_row(s) for s in summaries]
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write("\n".join(lines) + "\n")


def _report_to_json(report, warnings_extra=()) -> dict:
    p = report.params
    return {
        "alpha": report.alpha,
        "m": p.m,
        "k": p.k,
        "s": p.threshold,
        "gamma": p.gamma,
        "g_s": p.scale,
        "mu_m": report.sample_mean,
        "var_theta": report.var_tail,
        "cvar_theta": report.cvar_tail,
        "rho_evt": report.rho_evt,
        "rho_typical": report.rho_typical,
        "assumptions": {
            "alpha_lt_k_over_m": report.assumptions.alpha_lt_k_over_m,
            "var_ge_mean": report.assumptions.var_ge_mean,
            "gamma_lt_1": report.assumptions.gamma_lt_1,
        },
        "warnings": list(report.warnings) + list(warnings_extra),
    }


def _env_seed() -> int | None:
    raw = os.environ.get(SEED_ENV_VAR)
    if raw is None or raw == "":
        return None
    return int(raw)


def _cmd_estimate(args) -> int:
    dataset = load_csv(args.input)
    report = evt_estimate(dataset.values, alpha=args.alpha)
    payload = _report_to_json(report, warnings_extra=dataset.parse_warnings)
    print(json.dumps(payload, indent=2))
    return 0


def _cmd_benchmark(args) -> int:
    config = load_config(args.config)
    env_seed = _env_seed()
    if env_seed is not None:
        config = dataclasses.replace(config, master_seed=env_seed)
    summaries = run_experiment(config, workers=args.workers)
    write_summaries_csv(summaries, args.out)
    return 0


def _cmd_oracle(args) -> int:
    dist = get_distribution(args.dist)
    seed = args.seed
    if seed is None:
        seed = _env_seed()
    if seed is None:
        seed = 1
    stream = RandomStream(seed)
    estimate, std_error = monte_carlo_semideviation(dist, args.alpha,
                                                    args.samples, stream)
    payload = {
        "dist": dist.name,
        "alpha": args.alpha,
        "samples": args.samples,
        "seed": seed,
        "estimate": estimate,
        "std_error": std_error,
        "analytic": dist.extremal_semideviation(args.alpha),
    }
    print(json.dumps(payload, indent=2))
    return 0


def _cmd_plot_data(args) -> int:
    with open(args.input, "r", encoding="utf-8") as handle:
        lines = handle.read().splitlines()
    if not lines or lines[0] != CSV_HEADER:
        raise ValueError(f"{args.input}: not a benchmark summary CSV")
    get_distribution(args.dist)  # validates the name
    kept = [row for row in lines[1:] if row.split(",", 1)[0] == args.dist]
    output = "\n".join([CSV_HEADER] + kept) + "\n"
    if args.out == "-":
        sys.stdout.write(output)
    else:
        with open(args.out, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="evtrisk",
        description="Small-sample extremal upper-semideviation estimation "
                    "and benchmarking.",
        epilog=f"Environment: {SEED_ENV_VAR} overrides the benchmark master "
               "seed and the oracle's default seed.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    est = sub.add_parser("estimate", help="estimate risk from a CSV data set")
    est.add_argument("--input", required=True, help="CSV with one value per row")
    est.add_argument("--alpha", type=float, default=0.01,
                     help="worst-case fraction (default 0.01)")
    est.set_defaults(func=_cmd_estimate)

    ben = sub.add_parser("benchmark", help="run the estimator benchmark grid")
    ben.add_argument("--config", required=True, help="key = value config file")
    ben.add_argument("--out", required=True, help="output CSV path")
    ben.add_argument("--workers", type=int, default=1,
                     help="worker processes (output is identical for any count)")
    ben.set_defaults(func=_cmd_benchmark)

    orc = sub.add_parser("oracle", help="Monte Carlo ground truth for one law")
    orc.add_argument("--dist", required=True, help="benchmark distribution name")
    orc.add_argument("--alpha", type=float, default=0.01)
    orc.add_argument("--samples", type=int, default=4_000_000)
    orc.add_argument("--seed", type=int, default=None)
    orc.set_defaults(func=_cmd_oracle)

    plo = sub.add_parser("plot-data", help="filter one distribution's series "
                                           "from a benchmark CSV")
    plo.add_argument("--in", dest="input", required=True)
    plo.add_argument("--dist", required=True)
    plo.add_argument("--out", default="-", help="output path or '-' for stdout")
    plo.set_defaults(func=_cmd_plot_data)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FitError as exc:
        print(f"evtrisk: fit error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, OSError) as exc:
        print(f"evtrisk: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
