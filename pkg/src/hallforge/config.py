from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Any, Dict, Iterable, List, Mapping, Optional

import yaml

from hallforge.errors import ConfigError
from hallforge.fqlinalg import is_prime

_ENV_PATTERN = re.compile(r"\{\{\s*env:([A-Z0-9_]+)\s*\}\}")

CAPS_ENV_VAR = "HALLFORGE_CAPS"

CHECK_NAMES = (
    "euler",
    "rp",
    "pairing",
    "triangularity",
    "assoc",
    "oracle",
    "d3",
    "hopf",
    "green",
    "counit",
    "uv",
    "serre",
    "heisenberg",
)

OUTPUT_FORMATS = ("json", "csv")


@dataclass
class CapsConfig:
    hom_scan: int = 200_000
    subspace_scan: int = 200_000
    complex_scan: int = 200_000

    def __post_init__(self) -> None:
        for f in fields(self):
            value = getattr(self, f.name)
            if not isinstance(value, int) or value <= 0:
                raise ConfigError(f"Cap '{f.name}' must be a positive integer, got {value!r}")

    def merged(self, overrides: Mapping[str, Any]) -> "CapsConfig":
        known = {f.name for f in fields(self)}
        unknown = set(overrides) - known
        if unknown:
            raise ConfigError(f"Unknown caps: {sorted(unknown)}")
        try:
            values = {k: int(v) for k, v in overrides.items() if v is not None}
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"Cap values must be integers: {exc}") from exc
        return replace(self, **values)


@dataclass
class OutputConfig:
    path: Optional[Path] = None
    format: str = "json"


@dataclass
class SampleConfig:
    assoc: int = 200
    oracle: int = 12
    centrality: int = 20


@dataclass
class MonitoringConfig:
    log_path: Optional[Path] = None


@dataclass
class RunConfig:
    quiver: Any = "a1"
    # None defers to the quiver document, or 2 for presets
    q: Optional[int] = None
    dim_bound: int = 2
    caps: CapsConfig = field(default_factory=CapsConfig)
    checks: List[str] = field(default_factory=lambda: list(CHECK_NAMES))
    seed: int = 0
    output: OutputConfig = field(default_factory=OutputConfig)
    samples: SampleConfig = field(default_factory=SampleConfig)
    monitoring: MonitoringConfig = field(default_factory=MonitoringConfig)
    base_dir: Path = field(default_factory=Path.cwd)

    def __post_init__(self) -> None:
        self.validate()

    def validate(self) -> None:
        if not isinstance(self.dim_bound, int) or self.dim_bound < 1:
            raise ConfigError(f"dim_bound must be an integer >= 1, got {self.dim_bound!r}")
        if self.q is not None and (not isinstance(self.q, int) or not is_prime(self.q)):
            raise ConfigError(f"q must be prime, got {self.q!r}")
        unknown = [name for name in self.checks if name not in CHECK_NAMES]
        if unknown:
            raise ConfigError(f"Unknown checks: {unknown}; expected a subset of {list(CHECK_NAMES)}")
        if self.output.format not in OUTPUT_FORMATS:
            raise ConfigError(f"Unknown output format {self.output.format!r}")

    def header(self) -> Dict[str, Any]:
        quiver = self.quiver if isinstance(self.quiver, str) else dict(self.quiver)
        return {
            "quiver": quiver,
            "q": self.q,
            "dim_bound": self.dim_bound,
            "caps": {f.name: getattr(self.caps, f.name) for f in fields(self.caps)},
            "checks": list(self.checks),
            "seed": self.seed,
            "samples": {f.name: getattr(self.samples, f.name) for f in fields(self.samples)},
        }


def resolve_env_placeholders(data: Any) -> Any:
    """Replace ``{{env:NAME}}`` in every string of a parsed document."""
    if isinstance(data, dict):
        return {key: resolve_env_placeholders(value) for key, value in data.items()}
    if isinstance(data, list):
        return [resolve_env_placeholders(item) for item in data]
    if isinstance(data, str):

        def _replace_env(match: re.Match[str]) -> str:
            env_var = match.group(1)
            if env_var not in os.environ:
                raise ConfigError(f"Environment variable '{env_var}' is not set but is required by the configuration")
            return os.environ[env_var]

        resolved = _ENV_PATTERN.sub(_replace_env, data)
        if resolved != data and re.fullmatch(r"-?\d+", resolved):
            return int(resolved)
        return resolved
    return data


def parse_caps_env(value: str) -> Dict[str, int]:
    """Parse HALLFORGE_CAPS: a JSON object or ``name=value`` pairs separated by commas."""
    value = value.strip()
    if not value:
        return {}
    if value.startswith("{"):
        try:
            raw = json.loads(value)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"{CAPS_ENV_VAR} is not valid JSON: {exc}") from exc
        if not isinstance(raw, dict):
            raise ConfigError(f"{CAPS_ENV_VAR} must be a JSON object")
        items: Iterable = raw.items()
    else:
        items = []
        for chunk in value.split(","):
            if "=" not in chunk:
                raise ConfigError(f"{CAPS_ENV_VAR} entry {chunk!r} is not name=value")
            name, _, number = chunk.partition("=")
            items.append((name.strip(), number.strip()))
    try:
        return {str(name): int(number) for name, number in items}
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"{CAPS_ENV_VAR} values must be integers: {exc}") from exc


def build_config(raw: Mapping[str, Any], base_dir: Optional[Path] = None, env: Optional[Mapping[str, str]] = None) -> RunConfig:
    raw = resolve_env_placeholders(dict(raw or {}))
    env = os.environ if env is None else env

    try:
        caps = CapsConfig(**(raw.get("caps") or {}))
    except TypeError as exc:
        raise ConfigError(f"Invalid caps section: {exc}") from exc
    if env.get(CAPS_ENV_VAR):
        caps = caps.merged(parse_caps_env(env[CAPS_ENV_VAR]))

    out_raw = raw.get("output") or {}
    output = OutputConfig(
        path=Path(out_raw["path"]) if out_raw.get("path") else None,
        format=str(out_raw.get("format", "json")),
    )
    try:
        samples = SampleConfig(**(raw.get("samples") or {}))
    except TypeError as exc:
        raise ConfigError(f"Invalid samples section: {exc}") from exc
    mon_raw = raw.get("monitoring") or {}
    monitoring = MonitoringConfig(log_path=Path(mon_raw["log_path"]) if mon_raw.get("log_path") else None)

    checks = raw.get("checks", list(CHECK_NAMES))
    if isinstance(checks, str):
        checks = [c.strip() for c in checks.split(",") if c.strip()]

    return RunConfig(
        quiver=raw.get("quiver", "a1"),
        q=raw.get("q"),
        dim_bound=raw.get("dim_bound", 2),
        caps=caps,
        checks=list(checks),
        seed=int(raw.get("seed", 0)),
        output=output,
        samples=samples,
        monitoring=monitoring,
        base_dir=base_dir or Path.cwd(),
    )


def read_config_document(path: Path) -> Dict[str, Any]:
    try:
        with path.open("r", encoding="utf-8") as f:
            raw = yaml.safe_load(f) or {}
    except OSError as exc:
        raise ConfigError(f"Cannot read configuration {path}: {exc}") from exc
    except yaml.YAMLError as exc:
        raise ConfigError(f"Configuration {path} is not valid YAML/JSON: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError(f"Configuration {path} must be a mapping")
    return raw


def load_config(path: Path, env: Optional[Mapping[str, str]] = None) -> RunConfig:
    return build_config(read_config_document(path), base_dir=path.resolve().parent, env=env)
