import argparse
import json
import os
import sys

import numpy as np
import pandas as pd
from dotenv import load_dotenv

from src.data import (
    BlockSpec,
    extract_block_maxima,
    missingness_report,
    parse_series,
    read_block_maxima,
    write_block_maxima,
    write_csv,
    write_json,
)
from src.diagnostics import build_diagnostics
from src.estimators import get_estimator
from src.gev import GevParams
from src.inference import EstimatorTag, FitOptions
from src.inference.profile import delta_return_level, profile_return_level
from src.influence import influence_curves
from src.simulation import FULL_SCALE_REPS, REPLICATE_COLUMNS, SimulationConfig, rl_histogram_data, run_study
from src.utils import ConfigError, InsufficientDataError, load_settings, set_quiet, status
from src.utils.logger import ActionType, log_experiment
from src.workflow import TABLE_COLUMNS, CaseStudyOptions, CaseStudyPipeline

FIT_ESTIMATORS = [tag.value for tag in EstimatorTag if tag is not EstimatorTag.FULL]


class JsonArgumentParser(argparse.ArgumentParser):
    """Usage errors become a JSON line on stderr and exit status 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(json.dumps({"error": "UsageError", "message": message, "command": self.prog}), file=sys.stderr)
        sys.exit(2)


def parse_periods(text: str) -> list[float]:
    try:
        periods = [float(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid period list: {text!r}")
    if not periods or any(p <= 1 for p in periods):
        raise argparse.ArgumentTypeError("return periods must all exceed 1")
    return periods


def parse_params(text: str) -> GevParams:
    try:
        mu, sigma, xi = (float(v) for v in text.split(","))
        return GevParams(mu, sigma, xi)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected MU,SIGMA,XI with SIGMA > 0: {e}")


def parse_grid(text: str) -> np.ndarray:
    try:
        low, high, count = text.split(":")
        grid = np.linspace(float(low), float(high), int(count))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LOW:HIGH:COUNT, got {text!r}")
    if grid.size < 1 or (grid.size > 1 and not float(high) > float(low)):
        raise argparse.ArgumentTypeError("grid needs COUNT >= 1 and HIGH > LOW")
    return grid


def probability(text: str) -> float:
    value = float(text)
    if not 0.0 < value < 1.0:
        raise argparse.ArgumentTypeError("must lie in (0, 1)")
    return value


def threshold(text: str) -> float:
    value = float(text)
    if not 0.0 <= value < 1.0:
        raise argparse.ArgumentTypeError("must lie in [0, 1)")
    return value


def block_spec_from(args) -> BlockSpec:
    return BlockSpec(scheme=args.scheme, length=args.length, min_obs=args.min_obs)


def fit_options_from(args) -> FitOptions:
    return FitOptions(discard_threshold=getattr(args, "discard_threshold", 0.10))


def output_target(path):
    return path if path else sys.stdout


# --- COMMANDES ---

def cmd_blockmax(args) -> dict:
    spec = block_spec_from(args)
    series = parse_series(args.input)
    blocks = extract_block_maxima(series, spec)
    report = missingness_report(series, spec, blocks)
    write_block_maxima(blocks, output_target(args.out))
    report_path = args.report or (os.path.splitext(args.out)[0] + "_missingness.json" if args.out else None)
    if report_path:
        write_json(report.to_dict(), report_path)
    if report.dropped_block_ids:
        status(f"{len(report.dropped_block_ids)} block(s) dropped (fewer than {spec.min_obs} observations)", "warn")
    status(f"{blocks.n_blocks} block(s), {report.total_missing_fraction:.2%} of values missing", "ok")
    return {"n_blocks": blocks.n_blocks, "dropped": len(report.dropped_block_ids)}


def cmd_fit(args) -> dict:
    blocks = read_block_maxima(args.blocks)
    result = get_estimator(args.estimator, fit_options_from(args)).fit(blocks)
    write_json(result.to_dict(), output_target(args.out))
    status(f"{args.estimator}: converged={result.converged}", "ok" if result.converged else "warn")
    return {"converged": result.converged}


def cmd_rl(args) -> dict:
    blocks = read_block_maxima(args.blocks)
    options = fit_options_from(args)
    estimator = get_estimator(args.estimator, options)
    result = estimator.fit(blocks)
    if not result.converged:
        raise ArithmeticError(f"fit did not converge: {result.message}")
    rows = []
    for r in args.periods:
        if args.method == "delta":
            estimate = delta_return_level(result, r, args.level)
        else:
            estimate = profile_return_level(blocks, estimator, r, args.level, options, fit_result=result)
            if estimate.upper_open or estimate.lower_open:
                status(f"r={r:g}: {estimate.notes}", "warn")
        rows.append([estimate.period_r, estimate.point, estimate.lo, estimate.hi, estimate.method])
    write_csv(pd.DataFrame(rows, columns=["period", "point", "lo", "hi", "method"]), output_target(args.out))
    return {"periods": args.periods, "method": args.method}


def cmd_diagnose(args) -> dict:
    blocks = read_block_maxima(args.blocks)
    options = fit_options_from(args)
    result = get_estimator(args.estimator, options).fit(blocks)
    if not result.converged:
        raise ArithmeticError(f"fit did not converge: {result.message}")
    bundle = build_diagnostics(blocks, result, n_bins=args.bins, level=args.level, options=options)
    os.makedirs(args.out_dir, exist_ok=True)

    pp = bundle.pp
    write_csv(
        pd.DataFrame({"expected": pp.expected, "observed": pp.observed, "lo": pp.lo, "hi": pp.hi}),
        os.path.join(args.out_dir, "pp.csv"),
    )
    qq = bundle.qq
    write_csv(
        pd.DataFrame({"model_q": qq.model_quantile, "adjusted_max": qq.adjusted_maximum, "lo": qq.lo, "hi": qq.hi}),
        os.path.join(args.out_dir, "qq.csv"),
    )
    rl = bundle.return_levels
    curve = pd.DataFrame({"r": rl.r, "x_axis": rl.x_axis, "z": rl.z, "lo": rl.lo, "hi": rl.hi, "kind": "curve"})
    empirical = pd.DataFrame(
        {"r": rl.empirical_r, "x_axis": rl.empirical_x, "z": rl.empirical_z, "lo": np.nan, "hi": np.nan, "kind": "empirical"}
    )
    write_csv(pd.concat([curve, empirical], ignore_index=True), os.path.join(args.out_dir, "rl_plot.csv"))
    write_csv(pd.DataFrame(rl.ticks, columns=["r", "x_axis"]), os.path.join(args.out_dir, "rl_ticks.csv"))
    density = bundle.density
    bars = pd.DataFrame(
        {"bin_left": density.bin_edges[:-1], "bin_right": density.bin_edges[1:], "height": density.heights}
    )
    pdf = pd.DataFrame({"grid_z": density.grid_z, "pdf": density.pdf})
    write_csv(
        pd.concat([bars, pdf], ignore_index=True)[["bin_left", "bin_right", "height", "grid_z", "pdf"]],
        os.path.join(args.out_dir, "density.csv"),
    )
    if bundle.clamped.any():
        status(f"{int(bundle.clamped.sum())} model probabilit(y/ies) clamped", "warn")
    return {"out_dir": args.out_dir, "rl_interval_failures": int(rl.interval_failed.sum())}


def cmd_influence(args) -> dict:
    curve = influence_curves(args.params, args.periods, args.grid)
    columns = {"z_normal": curve.grid_z}
    for target in curve.targets:
        columns[f"inf_{target}"] = curve.values[target]
    write_csv(pd.DataFrame(columns), output_target(args.out))
    log_experiment(
        component="Influence",
        estimator="N/A",
        action=ActionType.INFLUENCE,
        details={
            "input_summary": f"params={args.params}, periods={args.periods}",
            "output_summary": f"{curve.grid_z.size} grid point(s), targets {list(curve.targets)}",
        },
        status="SUCCESS",
    )
    return {"targets": list(curve.targets)}


def cmd_simulate(args) -> dict:
    settings = load_settings()
    with open(args.config, "r", encoding="utf-8") as f:
        try:
            raw = json.load(f)
        except json.JSONDecodeError as e:
            raise ConfigError(f"invalid JSON in {args.config}: {e}")
    if not isinstance(raw, dict):
        raise ConfigError("simulation config must be a JSON object")
    if args.full_scale:
        raw["reps"] = FULL_SCALE_REPS
    if args.reps is not None:
        raw["reps"] = args.reps
    raw.setdefault("seed", settings.seed)
    if args.seed is not None:
        raw["seed"] = args.seed
    config = SimulationConfig.from_dict(raw)
    threads = args.threads or settings.threads

    status(f"Simulation: {config.reps} replicate(s), {threads} worker(s)")
    study = run_study(config, threads=threads)
    os.makedirs(args.out_dir, exist_ok=True)
    write_json(study.summary.to_dict(), os.path.join(args.out_dir, "summary.json"))
    write_csv(
        pd.DataFrame([rec.to_row() for rec in study.records], columns=list(REPLICATE_COLUMNS)),
        os.path.join(args.out_dir, "replicates.csv"),
    )

    true_rl = study.summary.reference["true_rl"]
    histograms = []
    for tag in study.summary.estimators:
        try:
            hist = rl_histogram_data(study.records, tag, true_rl)
        except InsufficientDataError:
            continue
        histograms.append(
            pd.DataFrame(
                {
                    "estimator": tag,
                    "bin_left": hist.bin_edges[:-1],
                    "bin_right": hist.bin_edges[1:],
                    "mass": hist.mass,
                    "mean": hist.mean,
                    "median": hist.median,
                    "true_rl": hist.true_rl,
                }
            )
        )
    if histograms:
        write_csv(pd.concat(histograms, ignore_index=True), os.path.join(args.out_dir, "rl_histograms.csv"))
    failures = {tag: s.failure_count for tag, s in study.summary.estimators.items()}
    status(f"Simulation done; failures per estimator: {failures}", "ok")
    return {"reps": config.reps, "failures": failures}


def cmd_casestudy(args) -> dict:
    options = CaseStudyOptions(
        block_spec=block_spec_from(args),
        remove_threshold=args.remove_threshold,
        periods=tuple(args.periods),
        level=args.level,
    )
    state = CaseStudyPipeline().run(args.input, options)
    if state["table"] is None or state["table"].empty:
        raise RuntimeError("; ".join(state["errors"]) or f"pipeline stopped in phase {state['current_phase']}")
    write_csv(state["table"][TABLE_COLUMNS], args.out)
    for error in state["errors"]:
        status(error, "warn")
    return {"phase": state["current_phase"], "rows": len(state["table"]), "errors": state["errors"]}


# --- PARSER ---

def build_parser() -> argparse.ArgumentParser:
    parser = JsonArgumentParser(
        prog="gevmiss",
        description="Missingness-adjusted GEV modelling of block maxima",
    )
    parser.add_argument("--quiet", action="store_true", help="Suppress status lines on stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=JsonArgumentParser)

    def add_blocking(p):
        p.add_argument("--scheme", choices=["calendar_year", "fixed_length"], default="calendar_year")
        p.add_argument("--length", type=int, default=None, help="Block length for fixed_length blocks")
        p.add_argument("--min-obs", type=int, default=1, help="Drop blocks with fewer non-missing values")

    def add_estimator(p):
        p.add_argument("--blocks", required=True, help="Block-maxima CSV (block_id,maximum,n_obs,n_full)")
        p.add_argument("--estimator", required=True, choices=FIT_ESTIMATORS)
        p.add_argument("--discard-threshold", type=threshold, default=0.10)

    p = sub.add_parser("blockmax", help="Extract block maxima from a raw series")
    p.add_argument("--input", required=True, help="Raw series CSV (date,value)")
    add_blocking(p)
    p.add_argument("--out", help="Block-maxima CSV (stdout when omitted)")
    p.add_argument("--report", help="Missingness report JSON (default: next to --out)")
    p.set_defaults(handler=cmd_blockmax, action_type=ActionType.INGEST)

    p = sub.add_parser("fit", help="Fit one estimator")
    add_estimator(p)
    p.add_argument("--out", help="FitResult JSON (stdout when omitted)")
    p.set_defaults(handler=cmd_fit, action_type=ActionType.FIT)

    p = sub.add_parser("rl", help="Return levels with confidence intervals")
    add_estimator(p)
    p.add_argument("--periods", type=parse_periods, default=[25.0, 50.0, 100.0])
    p.add_argument("--level", type=probability, default=0.95)
    p.add_argument("--method", choices=["profile", "delta"], default="profile")
    p.add_argument("--out", help="CSV (stdout when omitted)")
    p.set_defaults(handler=cmd_rl, action_type=ActionType.INFERENCE)

    p = sub.add_parser("diagnose", help="PP/QQ/return-level/density plot data")
    add_estimator(p)
    p.add_argument("--out-dir", required=True)
    p.add_argument("--bins", type=int, default=20)
    p.add_argument("--level", type=probability, default=0.95)
    p.set_defaults(handler=cmd_diagnose, action_type=ActionType.DIAGNOSTICS)

    p = sub.add_parser("influence", help="Influence curves on the normal scale")
    p.add_argument("--params", type=parse_params, required=True, help="MU,SIGMA,XI (use --params=... if MU < 0)")
    p.add_argument("--periods", type=parse_periods, default=[25.0, 50.0, 100.0])
    p.add_argument("--grid", type=parse_grid, default=parse_grid("-4:4:201"), help="LOW:HIGH:COUNT (use --grid=...)")
    p.add_argument("--out", help="CSV (stdout when omitted)")
    p.set_defaults(handler=cmd_influence, action_type=ActionType.INFLUENCE)

    p = sub.add_parser("simulate", help="Monte Carlo estimator comparison")
    p.add_argument("--config", required=True, help="Simulation config JSON")
    p.add_argument("--reps", type=int, default=None)
    p.add_argument("--full-scale", action="store_true", help=f"Use {FULL_SCALE_REPS} replicates")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--out-dir", required=True)
    p.set_defaults(handler=cmd_simulate, action_type=ActionType.SIMULATION)

    p = sub.add_parser("casestudy", help="Adjusted vs unadjusted, all vs reduced blocks")
    p.add_argument("--input", required=True, help="Raw series CSV (date,value)")
    add_blocking(p)
    p.add_argument("--remove-threshold", type=threshold, default=0.50)
    p.add_argument("--periods", type=parse_periods, default=[25.0, 50.0, 100.0])
    p.add_argument("--level", type=probability, default=0.95)
    p.add_argument("--out", required=True)
    p.set_defaults(handler=cmd_casestudy, action_type=ActionType.INFERENCE)

    return parser


def main(argv=None) -> int:
    load_dotenv()
    parser = build_parser()
    args = parser.parse_args(argv)
    set_quiet(args.quiet)

    if args.command == "simulate" and args.threads is not None and args.threads < 1:
        parser.error("--threads must be >= 1")

    log_experiment(
        component="CLI",
        estimator=getattr(args, "estimator", "N/A"),
        action=args.action_type,
        details={
            "input_summary": f"Startup: {args.command} {vars(args).get('input') or vars(args).get('blocks') or ''}".strip(),
            "output_summary": "Command started",
        },
        status="SUCCESS",
    )

    try:
        outcome = args.handler(args)
    except Exception as e:
        log_experiment(
            component="CLI",
            estimator=getattr(args, "estimator", "N/A"),
            action=ActionType.DEBUG,
            details={
                "input_summary": f"Fatal error during {args.command}",
                "output_summary": f"{type(e).__name__}: {e}",
            },
            status="FAILURE",
        )
        status(f"ERREUR: {e}", "error")
        print(json.dumps({"error": type(e).__name__, "message": str(e), "command": args.command}), file=sys.stderr)
        return 1

    log_experiment(
        component="CLI",
        estimator=getattr(args, "estimator", "N/A"),
        action=args.action_type,
        details={
            "input_summary": f"Command {args.command}",
            "output_summary": outcome,
        },
        status="PARTIAL" if outcome.get("errors") else "SUCCESS",
    )
    return 0


if __name__ == "__main__":
    sys.exit(main())
