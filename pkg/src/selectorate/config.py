"""Run configuration: flat ``key = value`` files or JSON.

A flat file looks like::

    # polity
    N = 10000
    S = 10000
    W = 300
    R = 1000
    r = 0.5
    p = 200
    delta = 0.55
    regime = asymmetric
    sweep.parameter = coalition
    sweep.from = 300
    sweep.to = 9000
    sweep.steps = 30

JSON may be flat with the same keys or nested by section
(``{"params": {...}, "sweep": {...}}``).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .model import BASELINE_PARAMS, FunctionFamily, ModelDomainError, PolityParams
from .solver import REGIMES

PARAM_ALIASES = {
    "N": "n_residents",
    "S": "selectorate",
    "W": "coalition",
    "R": "base_revenue",
    "r": "tax_rate",
    "p": "public_price",
    "delta": "discount",
}
SYMBOL = {v: k for k, v in PARAM_ALIASES.items()}
FUNCTION_KEYS = ("v_exponent", "u_exponent", "phi_exponent")
SWEEP_KEYS = ("parameter", "from", "to", "steps", "regimes")
OUTPUT_KEYS = ("format", "path", "precision", "svg")
TOP_KEYS = ("regime", "rho", "oracle.resolution")

DEFAULT_PRECISION = 6
DEFAULT_RESOLUTION = 4000


class ConfigError(ValueError):
    pass


@dataclass
class SweepBlock:
    parameter: str = "coalition"
    from_value: float = 300.0
    to_value: float | None = None
    steps: int = 30
    regimes: tuple[str, ...] = ("asymmetric", "equal")


@dataclass
class OutputSpec:
    format: str = "json"
    path: str | None = None
    precision: int = DEFAULT_PRECISION
    svg: str | None = None


@dataclass
class RunConfig:
    params: PolityParams = BASELINE_PARAMS
    fns: FunctionFamily = field(default_factory=FunctionFamily)
    regime: str = "asymmetric"
    rho: float | None = None
    sweep: SweepBlock | None = None
    oracle_resolution: int = DEFAULT_RESOLUTION
    output: OutputSpec = field(default_factory=OutputSpec)


def parse_flat(text: str) -> dict[str, str]:
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise ConfigError(f"line {lineno}: empty key")
        if key in out:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        out[key] = value
    return out


def _flatten_json(obj, prefix="") -> dict:
    out = {}
    for key, value in obj.items():
        if isinstance(value, dict):
            section = "" if key in ("params", "functions") else f"{prefix}{key}."
            out.update(_flatten_json(value, section))
        else:
            out[f"{prefix}{key}"] = value
    return out


def read_config(path: str | Path) -> dict:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if path.suffix == ".json" or text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{path}: invalid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError(f"{path}: top level must be an object")
        return _flatten_json(data)
    return parse_flat(text)


def _number(key, value, kind=float):
    try:
        x = kind(value)
    except (TypeError, ValueError):
        what = "an integer" if kind is int else "a number"
        raise ConfigError(f"{key}: expected {what}, got {value!r}") from None
    if kind is int and isinstance(value, float) and value != int(value):
        raise ConfigError(f"{key}: expected an integer, got {value!r}")
    return x


def parse_regimes(value) -> tuple[str, ...]:
    items = value if isinstance(value, list) else str(value).split(",")
    regimes = tuple(str(x).strip() for x in items if str(x).strip())
    for r in regimes:
        if r not in REGIMES:
            raise ConfigError(f"sweep.regimes: unknown regime {r!r}")
    return regimes


def build_config(raw: dict) -> RunConfig:
    """Validate a flat key dictionary into a :class:`RunConfig`."""
    known = set(PARAM_ALIASES) | set(PARAM_ALIASES.values()) | set(FUNCTION_KEYS) | set(TOP_KEYS)
    known |= {f"sweep.{k}" for k in SWEEP_KEYS} | {f"output.{k}" for k in OUTPUT_KEYS}
    unknown = sorted(set(raw) - known)
    if unknown:
        raise ConfigError(f"unknown config key(s): {', '.join(unknown)}")

    values = {}
    for key, value in raw.items():
        name = PARAM_ALIASES.get(key, key)
        if name in SYMBOL:
            if name in values:
                raise ConfigError(f"parameter {name!r} given twice")
            values[name] = _number(key, value)
    missing = [name for name in SYMBOL if name not in values]
    if missing:
        named = ", ".join(f"{m!r} ({SYMBOL[m]})" for m in missing)
        raise ConfigError(f"missing required parameter(s): {named}")
    try:
        params = PolityParams(**values)
        fns = FunctionFamily(**{k: _number(k, raw[k]) for k in FUNCTION_KEYS if k in raw})
    except ModelDomainError as exc:
        raise ConfigError(str(exc)) from exc

    cfg = RunConfig(params=params, fns=fns)
    if "regime" in raw:
        cfg.regime = str(raw["regime"]).strip()
    if "rho" in raw:
        cfg.rho = _number("rho", raw["rho"])
    if "oracle.resolution" in raw:
        cfg.oracle_resolution = _number("oracle.resolution", raw["oracle.resolution"], int)

    if any(k.startswith("sweep.") for k in raw):
        block = SweepBlock()
        if "sweep.parameter" in raw:
            block.parameter = PARAM_ALIASES.get(str(raw["sweep.parameter"]).strip(), str(raw["sweep.parameter"]).strip())
        if "sweep.from" in raw:
            block.from_value = _number("sweep.from", raw["sweep.from"])
        if "sweep.to" in raw:
            block.to_value = _number("sweep.to", raw["sweep.to"])
        if "sweep.steps" in raw:
            block.steps = _number("sweep.steps", raw["sweep.steps"], int)
        if "sweep.regimes" in raw:
            block.regimes = parse_regimes(raw["sweep.regimes"])
        cfg.sweep = block

    out = cfg.output
    if "output.format" in raw:
        out.format = str(raw["output.format"]).strip()
    if "output.path" in raw:
        out.path = str(raw["output.path"]).strip()
    if "output.precision" in raw:
        out.precision = _number("output.precision", raw["output.precision"], int)
    if "output.svg" in raw:
        out.svg = str(raw["output.svg"]).strip()
    check(cfg)
    return cfg


def check(cfg: RunConfig) -> RunConfig:
    if cfg.regime not in REGIMES:
        raise ConfigError(f"regime must be one of {REGIMES}, got {cfg.regime!r}")
    if cfg.regime == "general" and cfg.rho is None:
        raise ConfigError("regime 'general' needs rho")
    if cfg.rho is not None and not cfg.params.coalition_share <= cfg.rho <= 1.0:
        raise ConfigError(f"rho must lie in [W/S={cfg.params.coalition_share}, 1], got {cfg.rho}")
    if cfg.output.format not in ("json", "csv"):
        raise ConfigError(f"output format must be json or csv, got {cfg.output.format!r}")
    if not 2 <= cfg.output.precision <= 15:
        raise ConfigError(f"precision must lie in [2, 15], got {cfg.output.precision}")
    if cfg.oracle_resolution < 100:
        raise ConfigError(f"oracle resolution must be at least 100, got {cfg.oracle_resolution}")
    return cfg


def load_config(path: str | Path | None) -> RunConfig:
    if path is None:
        return RunConfig()
    return build_config(read_config(path))
