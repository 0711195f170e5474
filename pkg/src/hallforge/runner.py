from __future__ import annotations

from pathlib import Path
from typing import Any, Dict, Mapping, Optional

from hallforge.config import RunConfig, build_config, read_config_document
from hallforge.errors import ConfigError
from hallforge.pipeline.driver import Driver

DEFAULT_CONFIG = Path("configs/default.yml")


def create_driver(
    config_path: Path = DEFAULT_CONFIG,
    overrides: Optional[Mapping[str, Any]] = None,
    cap_overrides: Optional[Mapping[str, Optional[int]]] = None,
    env: Optional[Mapping[str, str]] = None,
) -> Driver:
    return Driver(config=load_run_config(config_path, overrides, cap_overrides, env))


def load_run_config(
    config_path: Path = DEFAULT_CONFIG,
    overrides: Optional[Mapping[str, Any]] = None,
    cap_overrides: Optional[Mapping[str, Optional[int]]] = None,
    env: Optional[Mapping[str, str]] = None,
) -> RunConfig:
    """Defaults, then the config file, then HALLFORGE_CAPS, then command-line values."""
    resolved = _resolve_path(config_path)
    if resolved.exists():
        raw: Dict[str, Any] = read_config_document(resolved)
        base = resolved.parent
    elif config_path == DEFAULT_CONFIG:
        raw, base = {}, Path.cwd()
    else:
        raise ConfigError(f"Configuration file not found: {config_path}")

    overrides = {k: v for k, v in (overrides or {}).items() if v is not None}
    out_override = overrides.pop("out", None)
    format_override = overrides.pop("format", None)
    raw.update(overrides)

    config = build_config(raw, base_dir=base, env=env)
    _normalize_paths(config, base)
    if out_override is not None:
        config.output.path = _resolve_relative(Path(out_override), Path.cwd())
    if format_override is not None:
        config.output.format = format_override
    caps = {k: v for k, v in (cap_overrides or {}).items() if v is not None}
    if caps:
        config.caps = config.caps.merged(caps)
    config.validate()
    return config


def _resolve_path(path: Path) -> Path:
    if path.is_absolute():
        return path
    root = Path(__file__).resolve().parents[2]
    candidate = (root / path).resolve()
    if candidate.exists():
        return candidate
    return (Path.cwd() / path).resolve()


def _resolve_relative(path: Path, base: Path) -> Path:
    if path.is_absolute():
        return path
    return (base / path).resolve()


def _normalize_paths(config: RunConfig, base: Path) -> None:
    if config.output.path is not None:
        config.output.path = _resolve_relative(config.output.path, base)
    if config.monitoring.log_path is not None:
        config.monitoring.log_path = _resolve_relative(config.monitoring.log_path, base)
