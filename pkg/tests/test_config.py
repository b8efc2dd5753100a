"""Run configuration: defaults, key=value files, environment lookup, and
override precedence."""

import dataclasses

import pytest

from ncsphere.config import (
    RunConfig,
    load_config_file,
    parse_config_text,
    resolve_config,
    with_overrides,
)
from ncsphere.errors import ConfigurationError


def test_defaults_valid():
    cfg = RunConfig()
    assert cfg.output_format == "json"
    assert cfg.u_nodes >= 16 and cfg.m_nodes >= 16
    assert 0 < cfg.eps <= 1e-6


@pytest.mark.parametrize("field,bad", [
    ("eps", 0.0), ("eps", 2e-6), ("eps", -1e-9),
    ("u_nodes", 8), ("m_nodes", 15), ("quadrature_nodes", 0],),
])
def test_invalid_values_rejected(field, bad):
    with pytest.raises(ConfigurationError):
        RunConfig(**{field: bad})


def test_invalid_format_rejected():
    with pytest.raises(ConfigurationError):
        RunConfig(output_format="yaml")


def test_parse_config_text():
    cfg = parse_config_text(
        "# comment\n"
        "seed = 99\n"
        "eps = 1e-10  # trailing note\n"
        "output_format = csv\n",
        "inline")
    assert cfg.seed == 99
    assert cfg.eps == 1e-10
    assert cfg.output_format == "csv"


def test_parse_rejects_unknown_key():
    with pytest.raises(ConfigurationError, match="unknown key"):
        parse_config_text("wat = 1\n", "inline")


def test_parse_rejects_malformed_line():
    with pytest.raises(ConfigurationError, match="key=value"):
        parse_config_text("just words\n", "inline")


def test_load_config_file(tmp_path):
    p = tmp_path / "run.cfg"
    p.write_text("m_nodes = 32\n")
    assert load_config_file(p).m_nodes == 32


def test_missing_file_raises(tmp_path):
    with pytest.raises(ConfigurationError):
        load_config_file(tmp_path / "absent.cfg")


def test_env_config_used(tmp_path, monkeypatch):
    p = tmp_path / "env.cfg"
    p.write_text("seed = 321\n")
    monkeypatch.setenv("NCS_CONFIG", str(p))
    assert resolve_config().seed == 321


def test_explicit_path_beats_env(tmp_path, monkeypatch):
    env_file = tmp_path / "env.cfg"
    env_file.write_text("seed = 1\n")
    local = tmp_path / "local.cfg"
    local.write_text("seed = 2\n")
    monkeypatch.setenv("NCS_CONFIG", str(env_file))
    assert resolve_config(path=local).seed == 2


def test_flag_overrides_beat_file(tmp_path, monkeypatch):
    p = tmp_path / "env.cfg"
    p.write_text("seed = 1\nu_nodes = 64\n")
    monkeypatch.setenv("NCS_CONFIG", str(p))
    cfg = resolve_config(seed=5)
    assert cfg.seed == 5
    assert cfg.u_nodes == 64


def test_none_overrides_ignored(monkeypatch):
    monkeypatch.delenv("NCS_CONFIG", raising=False)
    assert resolve_config(seed=None) == RunConfig()


def test_unknown_override_rejected():
    with pytest.raises(ConfigurationError):
        resolve_config(bogus=1)


def test_with_overrides_is_functional():
    cfg = RunConfig()
    cfg2 = with_overrides(cfg, seed=11)
    assert cfg2.seed == 11 and cfg.seed != 11
    assert dataclasses.is_dataclass(cfg2)
