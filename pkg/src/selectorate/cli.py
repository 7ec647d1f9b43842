"""Command-line front end: ``solve``, ``sweep``, ``oracle`` and ``report``.

Exit codes: 0 success, 1 oracle disagreement, 2 config error,
3 solver or infeasibility error, 4 sweep finished with failed rows.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from pathlib import Path

from .config import (
    PARAM_ALIASES,
    ConfigError,
    OutputSpec,
    RunConfig,
    SweepBlock,
    check,
    load_config,
    parse_regimes,
)
from .model import ModelDomainError, revenue
from .report import reconcile
from .solver import ORACLE_RTOL, SolverError, oracle_for_regime, relative_deviation, solve
from .statics import SweepSpec, SweepSpecError, detect_gap_decay, InsufficientRowsError, sweep
from .svgplot import line_chart

EXIT_OK, EXIT_DISAGREE, EXIT_CONFIG, EXIT_SOLVER, EXIT_PARTIAL = 0, 1, 2, 3, 4

SWEEP_COLUMNS = (
    "param_value", "regime", "g_star", "z_star", "discretionary",
    "foc_residual", "constraint_residual", "converged",
)
SOLVE_COLUMNS = (
    "regime", "rho", "g_star", "z_star", "discretionary", "g_hat", "z_hat",
    "offer_value", "foc_residual", "constraint_residual", "converged", "iterations",
)


class CommandError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def fixed(x, precision: int) -> str:
    """Fixed-point text for CSV cells; never emits ``-0.00``."""
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    s = f"{float(x):.{precision}f}"
    if float(s) == 0.0:
        s = f"{0.0:.{precision}f}"
    return s


def rounded(obj, precision: int):
    """Round every float in a JSON-able structure to ``precision`` places."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        if not math.isfinite(obj):
            return None
        r = round(obj, precision)
        return 0.0 if r == 0.0 else r
    if isinstance(obj, dict):
        return {k: rounded(v, precision) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [rounded(v, precision) for v in obj]
    return rounded(float(obj), precision)


def _sci(obj):
    if isinstance(obj, dict):
        return {k: _sci(v) for k, v in obj.items()}
    return float(f"{obj:.6e}")


def to_json(doc: dict, precision: int, keep=()) -> str:
    """Round floats to ``precision`` places; keys in ``keep`` get 7 significant digits."""
    out = {k: (_sci(v) if k in keep else rounded(v, precision)) for k, v in doc.items()}
    return json.dumps(out, indent=2) + "\n"


def to_csv(columns, rows, precision: int) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([fixed(row.get(c), precision) if not isinstance(row.get(c), str) else row[c] for c in columns])
    return buf.getvalue()


def _params_doc(cfg: RunConfig) -> dict:
    p, f = cfg.params, cfg.fns
    return {
        "params": {
            "n_residents": p.n_residents, "selectorate": p.selectorate, "coalition": p.coalition,
            "base_revenue": p.base_revenue, "tax_rate": p.tax_rate,
            "public_price": p.public_price, "discount": p.discount,
        },
        "functions": {"v_exponent": f.v_exponent, "u_exponent": f.u_exponent, "phi_exponent": f.phi_exponent},
    }


def solution_doc(sol) -> dict:
    return {
        "regime": sol.regime,
        "rho": sol.rho,
        "g_star": sol.g,
        "z_star": sol.z,
        "discretionary": sol.discretionary_resources,
        "benchmark": {
            "g_hat": sol.benchmark.g_hat,
            "z_hat": sol.benchmark.z_hat,
            "offer_value": sol.benchmark.offer_value,
        },
        "residuals": {
            "foc_residual": sol.residuals.foc_residual,
            "constraint_residual": sol.residuals.constraint_residual,
        },
        "diagnostics": {
            "iterations": sol.diagnostics.iterations,
            "bracket": list(sol.diagnostics.bracket),
            "converged": sol.diagnostics.converged,
        },
    }


def _solve_or_fail(cfg: RunConfig):
    try:
        return solve(cfg.params, cfg.fns, cfg.regime, cfg.rho)
    except (SolverError, ModelDomainError) as exc:
        raise CommandError(EXIT_SOLVER, f"solver failed: {type(exc).__name__}: {exc}") from exc


def run_solve(cfg: RunConfig):
    """Returns ``(exit_code, document_text, svg_files)``."""
    sol = _solve_or_fail(cfg)
    prec = cfg.output.precision
    if cfg.output.format == "csv":
        d = solution_doc(sol)
        row = {
            **{k: d[k] for k in ("regime", "rho", "g_star", "z_star", "discretionary")},
            **d["benchmark"], **d["residuals"],
            "converged": sol.converged, "iterations": sol.diagnostics.iterations,
        }
        text = to_csv(SOLVE_COLUMNS, [row], prec)
    else:
        text = to_json({"command": "solve", **_params_doc(cfg), "solution": solution_doc(sol)}, prec)
    return (EXIT_OK if sol.converged else EXIT_SOLVER), text, {}


def _sweep_spec(cfg: RunConfig) -> SweepSpec:
    block = cfg.sweep
    if block is None:
        raise CommandError(EXIT_CONFIG, "sweep needs a sweep block (sweep.parameter, sweep.from, ...)")
    to_value = block.to_value
    if to_value is None:
        if block.parameter != "coalition":
            raise CommandError(EXIT_CONFIG, "sweep.to is required unless sweeping coalition")
        to_value = 0.9 * cfg.params.selectorate
    try:
        return SweepSpec(
            block.parameter, block.from_value, to_value, block.steps,
            cfg.params, cfg.fns, block.regimes, cfg.rho,
        )
    except SweepSpecError as exc:
        raise CommandError(EXIT_CONFIG, f"invalid sweep: {exc}") from exc


def sweep_rows(result) -> list[dict]:
    rows = []
    for row in result.rows:
        for regime in result.spec.regimes:
            sol = row.solutions[regime]
            if row.ok(regime):
                rows.append({
                    "param_value": row.param_value, "regime": regime,
                    "g_star": sol.g, "z_star": sol.z, "discretionary": sol.discretionary_resources,
                    "foc_residual": sol.residuals.foc_residual,
                    "constraint_residual": sol.residuals.constraint_residual,
                    "converged": True,
                })
            else:
                rows.append({"param_value": row.param_value, "regime": regime, "converged": False})
    return rows


def svg_paths(base: str) -> dict[str, Path]:
    p = Path(base)
    stem = p.with_suffix("") if p.suffix == ".svg" else p
    return {
        "public": stem.parent / f"{stem.name}_public_goods.svg",
        "private": stem.parent / f"{stem.name}_private_goods.svg",
    }


def sweep_svgs(result, base: str) -> dict[Path, str]:
    xs = [row.param_value for row in result.rows]
    name = result.spec.varied_parameter
    paths = svg_paths(base)
    public = {r: (xs, result.column(r, "g")) for r in result.spec.regimes}
    private = {r: (xs, result.column(r, "z")) for r in result.spec.regimes}
    return {
        paths["public"]: line_chart(public, name, "public goods g*", f"Optimal public goods vs {name}"),
        paths["private"]: line_chart(private, name, "private goods z* per member", f"Optimal private goods vs {name}"),
    }


def run_sweep(cfg: RunConfig):
    spec = _sweep_spec(cfg)
    result = sweep(spec)
    prec = cfg.output.precision
    rows = sweep_rows(result)
    if cfg.output.format == "csv":
        text = to_csv(SWEEP_COLUMNS, rows, prec)
    else:
        try:
            decay = {k: vars(v) for k, v in detect_gap_decay(result).items()}
        except InsufficientRowsError:
            decay = None
        gaps = vars(result.gap_metrics)
        text = to_json({
            "command": "sweep", **_params_doc(cfg),
            "varied_parameter": spec.varied_parameter,
            "regimes": list(spec.regimes),
            "rows": rows,
            "gaps": {k: list(v) for k, v in gaps.items()},
            "decay": decay,
            "failures": result.failures,
        }, prec)
    svgs = sweep_svgs(result, cfg.output.svg) if cfg.output.svg else {}
    return (EXIT_PARTIAL if result.failures else EXIT_OK), text, svgs


def run_oracle(cfg: RunConfig):
    sol = _solve_or_fail(cfg)
    try:
        og, oz, od = oracle_for_regime(cfg.params, cfg.fns, cfg.regime, cfg.rho, cfg.oracle_resolution)
    except (SolverError, ModelDomainError) as exc:
        raise CommandError(EXIT_SOLVER, f"oracle failed: {type(exc).__name__}: {exc}") from exc
    # discretionary is compared on the scale of total revenue; it is ~0 in the equal regime
    scale = revenue(cfg.params, cfg.fns, sol.g)
    deviations = {
        "g": relative_deviation(sol.g, og),
        "z": relative_deviation(sol.z, oz),
        "discretionary": abs(sol.discretionary_resources - od) / scale,
    }
    worst = max(deviations.values())
    doc = {
        "command": "oracle", **_params_doc(cfg),
        "regime": cfg.regime, "rho": cfg.rho, "resolution": cfg.oracle_resolution,
        "solver": {"g": sol.g, "z": sol.z, "discretionary": sol.discretionary_resources},
        "oracle": {"g": og, "z": oz, "discretionary": od},
        "deviation": deviations,
        "max_relative_deviation": worst,
        "tolerance": ORACLE_RTOL,
        "agree": worst <= ORACLE_RTOL,
    }
    prec = cfg.output.precision
    if cfg.output.format == "csv":
        rows = [
            {"source": "solver", **doc["solver"]},
            {"source": "oracle", **doc["oracle"]},
        ]
        text = to_csv(("source", "g", "z", "discretionary"), rows, prec)
        text += f"# max_relative_deviation={fixed(worst, 12)}\n"
    else:
        text = to_json(doc, prec, keep=("deviation", "max_relative_deviation"))
    return (EXIT_OK if worst <= ORACLE_RTOL else EXIT_DISAGREE), text, {}


def run_report(cfg: RunConfig):
    try:
        body = reconcile(cfg.params, cfg.fns, cfg.oracle_resolution)
    except (SolverError, ModelDomainError) as exc:
        raise CommandError(EXIT_SOLVER, f"solver failed: {type(exc).__name__}: {exc}") from exc
    doc = {"command": "report", **_params_doc(cfg), **body}
    prec = cfg.output.precision
    if cfg.output.format == "csv":
        rows = []
        for regime, entry in body["regimes"].items():
            for source in ("published", "solver", "oracle"):
                if source == "published":
                    if "published" not in entry:
                        continue
                    t = entry["published"]["triple"]
                else:
                    t = entry[source]
                rows.append({"regime": regime, "source": source, **t})
        text = to_csv(("regime", "source", "g", "z", "discretionary"), rows, prec)
    else:
        text = to_json(doc, prec)
    return EXIT_OK, text, {}


COMMANDS = {"solve": run_solve, "sweep": run_sweep, "oracle": run_oracle, "report": run_report}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="selectorate", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", help="key = value or JSON config; defaults to the baseline polity")
        p.add_argument("--out", help="output file (default: stdout)")
        p.add_argument("--format", choices=("json", "csv"))
        p.add_argument("--regime", choices=("asymmetric", "equal", "general"))
        p.add_argument("--rho", type=float, help="incumbent retention probability for --regime general")
        p.add_argument("--precision", type=int, help="decimal places in output (2-15, default 6)")
        p.add_argument("--resolution", type=int, help="oracle grid resolution per axis (default 4000)")
        if name == "sweep":
            p.add_argument("--svg", help="SVG path stem; writes <stem>_public_goods.svg and <stem>_private_goods.svg")
            p.add_argument("--param", help="parameter to sweep (field name or symbol, or rho)")
            p.add_argument("--from", dest="from_value", type=float)
            p.add_argument("--to", dest="to_value", type=float)
            p.add_argument("--steps", type=int)
            p.add_argument("--regimes", help="comma-separated regimes to solve")
    return parser


def apply_flags(cfg: RunConfig, args) -> RunConfig:
    out: OutputSpec = cfg.output
    if args.out is not None:
        out.path = args.out
    if args.format is not None:
        out.format = args.format
    if args.precision is not None:
        out.precision = args.precision
    if args.regime is not None:
        cfg.regime = args.regime
    if args.rho is not None:
        cfg.rho = args.rho
    if args.resolution is not None:
        cfg.oracle_resolution = args.resolution
    if args.command == "sweep":
        if args.svg is not None:
            out.svg = args.svg
        if cfg.sweep is None:
            cfg.sweep = SweepBlock()
        if args.param is not None:
            cfg.sweep.parameter = PARAM_ALIASES.get(args.param, args.param)
        if args.from_value is not None:
            cfg.sweep.from_value = args.from_value
        if args.to_value is not None:
            cfg.sweep.to_value = args.to_value
        if args.steps is not None:
            cfg.sweep.steps = args.steps
        if args.regimes is not None:
            cfg.sweep.regimes = parse_regimes(args.regimes)
    return check(cfg)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = apply_flags(load_config(args.config), args)
        code, text, extra = COMMANDS[args.command](cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except CommandError as exc:
        print(str(exc), file=sys.stderr)
        return exc.code
    # single writer, after all computation
    if cfg.output.path:
        Path(cfg.output.path).write_text(text)
    else:
        sys.stdout.write(text)
    for path, content in extra.items():
        Path(path).write_text(content)
    return code


if __name__ == "__main__":
    sys.exit(main())
