import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from selectorate.config import ConfigError, build_config, load_config, parse_flat
from selectorate.model import BASELINE_PARAMS

BASE_TEXT = """\
# baseline polity
N = 10000
S = 10000
W = 300
R = 1000
r = 0.5
p = 200
delta = 0.55
"""


def write(tmp_path, text, name="run.cfg"):
    path = tmp_path / name
    path.write_text(text)
    return path


def test_flat_baseline(tmp_path):
    cfg = load_config(write(tmp_path, BASE_TEXT))
    assert cfg.params == BASELINE_PARAMS
    assert cfg.fns.is_sqrt
    assert cfg.regime == "asymmetric" and cfg.sweep is None
    assert cfg.output.precision == 6


def test_no_path_is_baseline():
    assert load_config(None).params == BASELINE_PARAMS


def test_long_names_and_sections(tmp_path):
    text = BASE_TEXT.replace("W = 300", "coalition = 450") + (
        "v_exponent = 0.4\nregime = general\nrho = 0.5\n"
        "sweep.parameter = W\nsweep.from = 300\nsweep.to = 900\nsweep.steps = 4\n"
        "sweep.regimes = equal, general\noutput.format = csv\noutput.precision = 8\n"
    )
    cfg = load_config(write(tmp_path, text))
    assert cfg.params.coalition == 450.0
    assert cfg.fns.v_exponent == 0.4
    assert (cfg.regime, cfg.rho) == ("general", 0.5)
    assert cfg.sweep.parameter == "coalition"
    assert (cfg.sweep.from_value, cfg.sweep.to_value, cfg.sweep.steps) == (300.0, 900.0, 4)
    assert cfg.sweep.regimes == ("equal", "general")
    assert (cfg.output.format, cfg.output.precision) == ("csv", 8)


def test_nested_json(tmp_path):
    doc = {
        "params": {"N": 10000, "S": 10000, "W": 300, "R": 1000, "r": 0.5, "p": 200, "delta": 0.55},
        "functions": {"u_exponent": 0.6},
        "sweep": {"parameter": "coalition", "steps": 5, "regimes": ["asymmetric"]},
        "output": {"precision": 4},
    }
    cfg = load_config(write(tmp_path, json.dumps(doc), "run.json"))
    assert cfg.params == BASELINE_PARAMS
    assert cfg.fns.u_exponent == 0.6
    assert cfg.sweep.regimes == ("asymmetric",)
    assert cfg.output.precision == 4


@pytest.mark.parametrize(
    "extra, message",
    [
        ("colour = red\n", "unknown config key"),
        ("regime = mixed\n", "regime must be one of"),
        ("regime = general\n", "needs rho"),
        ("rho = 0.01\n", "rho must lie in"),
        ("output.precision = 1\n", "precision"),
        ("output.format = xml\n", "output format"),
        ("oracle.resolution = 10\n", "resolution"),
        ("sweep.steps = 2.5\n", "integer"),
        ("sweep.regimes = equal, mixed\n", "unknown regime"),
        ("delta = 0.4\n", "duplicate key"),
        ("delta 0.4\n", "expected 'key = value'"),
        ("v_exponent = 1.5\n", "v_exponent"),
        ("phi_exponent = abc\n", "expected a number"),
    ],
)
def test_errors(tmp_path, extra, message):
    with pytest.raises(ConfigError, match=message):
        load_config(write(tmp_path, BASE_TEXT + extra))


def test_missing_parameter_is_named(tmp_path):
    text = "\n".join(line for line in BASE_TEXT.splitlines() if not line.startswith("p "))
    with pytest.raises(ConfigError, match=r"'public_price' \(p\)"):
        load_config(write(tmp_path, text))


def test_alias_and_name_together():
    raw = parse_flat(BASE_TEXT)
    raw["coalition"] = "300"
    with pytest.raises(ConfigError, match="given twice"):
        build_config(raw)


def test_invalid_polity(tmp_path):
    with pytest.raises(ConfigError, match="N >= S >= W"):
        load_config(write(tmp_path, BASE_TEXT.replace("W = 300", "W = 20000")))


def test_unreadable(tmp_path):
    with pytest.raises(ConfigError, match="cannot read"):
        load_config(tmp_path / "absent.cfg")


def test_bad_json(tmp_path):
    with pytest.raises(ConfigError, match="invalid JSON"):
        load_config(write(tmp_path, "{nope", "run.json"))


@given(st.dictionaries(st.from_regex(r"[a-z][a-z_.]{0,8}", fullmatch=True), st.from_regex(r"[a-z0-9.]{1,6}", fullmatch=True), max_size=6))
def test_flat_parser_round_trip(d):
    text = "\n".join(f"{k} = {v}  # note" for k, v in d.items())
    assert parse_flat(text) == d
