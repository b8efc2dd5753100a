"""Run configuration: defaults, key=value config files, CLI overrides.

Precedence, lowest to highest: built-in defaults, the file named by the
NCS_CONFIG environment variable, an explicitly passed file, keyword
overrides (the CLI flags).
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace

from .errors import ConfigurationError

_FORMATS = ("json", "csv")


@dataclass(frozen=True)
class RunConfig:
    """Validated run parameters shared by every subcommand.

    eps is the series-truncation tolerance handed to the modular layer;
    the node counts size the torus trace grid (u_nodes), m-grids
    (m_nodes), and the period quadrature (quadrature_nodes).
    """

    eps: float = 1e-12
    u_nodes: int = 256
    m_nodes: int = 64
    quadrature_nodes: int = 512
    seed: int = 2026
    output_format: str = "json"

    def __post_init__(self):
        if not (0 < self.eps <= 1e-6):
            raise ConfigurationError(
                f"eps must lie in (0, 1e-6], got {self.eps!r}")
        for name in ("u_nodes", "m_nodes", "quadrature_nodes"):
            v = getattr(self, name)
            if not isinstance(v, int) or v < 16:
                raise ConfigurationError(f"{name} must be an integer >= 16, "
                                         f"got {v!r}")
        if not isinstance(self.seed, int):
            raise ConfigurationError(f"seed must be an integer, "
                                     f"got {self.seed!r}")
        if self.output_format not in _FORMATS:
            raise ConfigurationError(
                f"output_format must be one of {_FORMATS}, "
                f"got {self.output_format!r}")


_FIELD_TYPES = {f.name: f.type for f in fields(RunConfig)}


def _coerce(key: str, raw: str):
    if key == "eps":
        try:
            return float(raw)
        except ValueError:
            raise ConfigurationError(f"eps wants a float, got {raw!r}") from None
    if key == "output_format":
        return raw
    try:
        return int(raw)
    except ValueError:
        raise ConfigurationError(f"{key} wants an integer, got {raw!r}") from None


def parse_config_text(text: str, source: str = "<config>") -> dict:
    """Parse key=value lines; blank lines and # comments are skipped."""
    out = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            raise ConfigurationError(
                f"{source}:{lineno}: expected key=value, got {line!r}")
        key, _, raw = body.partition("=")
        key, raw = key.strip(), raw.strip()
        if key not in _FIELD_TYPES:
            raise ConfigurationError(f"{source}:{lineno}: unknown key {key!r}")
        out[key] = _coerce(key, raw)
    return out


def load_config_file(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigurationError(f"cannot read config file {path}: {exc}")
    return parse_config_text(text, source=path)


def resolve_config(path: str | None = None, **overrides) -> RunConfig:
    """Build the effective RunConfig from defaults, NCS_CONFIG, an explicit
    file, and keyword overrides, in that order. None overrides are ignored."""
    values = {}
    env_path = os.environ.get("NCS_CONFIG")
    if env_path:
        values.update(load_config_file(env_path))
    if path:
        values.update(load_config_file(path))
    for key, val in overrides.items():
        if val is None:
            continue
        if key not in _FIELD_TYPES:
            raise ConfigurationError(f"unknown config override {key!r}")
        values[key] = val
    return RunConfig(**values)


def with_overrides(cfg: RunConfig, **overrides) -> RunConfig:
    """Copy cfg with the non-None overrides applied (revalidates)."""
    clean = {k: v for k, v in overrides.items() if v is not None}
    return replace(cfg, **clean) if clean else cfg


__all__ = [
    "RunConfig",
    "parse_config_text",
    "load_config_file",
    "resolve_config",
    "with_overrides",
]
