"""Flat key = value run configuration files.

One ``key = value`` pair per line, ``#`` starts a comment, unknown keys
are rejected. ``render_config`` and ``parse_config`` round-trip every
valid ProtocolConfig.
"""

from __future__ import annotations

from dataclasses import fields

from .protocols import ProtocolConfig

_INT_KEYS = frozenset(
    {"two_l", "n_lowering_steps", "iterations", "bath_dim", "sample_stride"}
)
_STR_KEYS = frozenset({"kind"})
_ALL_KEYS = tuple(f.name for f in fields(ProtocolConfig))


class ConfigError(ValueError):
    """A config document failed to parse or validate."""

    def __init__(self, message: str, line: int | None = None, key: str | None = None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if key is not None:
            where.append(f"key {key!r}")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)
        self.line = line
        self.key = key


def _convert(key: str, raw: str, line: int):
    if key in _STR_KEYS:
        return raw
    try:
        if key in _INT_KEYS:
            return int(raw)
        return float(raw)
    except ValueError:
        want = "an integer" if key in _INT_KEYS else "a number"
        raise ConfigError(f"expected {want}, got {raw!r}", line=line, key=key) from None


def parse_config(text: str) -> ProtocolConfig:
    """Parse a config document into a validated ProtocolConfig."""
    values: dict[str, object] = {}
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError("expected 'key = value'", line=lineno)
        key, _, raw = line.partition("=")
        key, raw = key.strip(), raw.strip()
        if key not in _ALL_KEYS:
            raise ConfigError("unknown key", line=lineno, key=key)
        if key in values:
            raise ConfigError("duplicate key", line=lineno, key=key)
        if not raw:
            raise ConfigError("missing value", line=lineno, key=key)
        values[key] = _convert(key, raw, lineno)
    for required in ("kind", "two_l", "beta"):
        if required not in values:
            raise ConfigError("missing required key", key=required)
    cfg = ProtocolConfig(**values)
    try:
        cfg.validate()
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    return cfg


def render_config(cfg: ProtocolConfig) -> str:
    """Serialize a config; parse_config(render_config(c)) == c."""
    lines = []
    for f in fields(ProtocolConfig):
        value = getattr(cfg, f.name)
        if value is None:
            continue
        lines.append(f"{f.name} = {value!r}" if isinstance(value, float)
                     else f"{f.name} = {value}")
    return "\n".join(lines) + "\n"


def load_config(path) -> ProtocolConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())
