from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Mapping, Optional, Sequence, Union

import yaml

from hallforge.config import CapsConfig
from hallforge.errors import ConfigError
from hallforge.heredcat.base import CategoryProvider
from hallforge.heredcat.bruteforce import QuiverProvider
from hallforge.heredcat.jordan import JordanProvider
from hallforge.heredcat.quiver import QuiverSpec
from hallforge.logging import get_logger

logger = get_logger(__name__)

PRESETS = {
    "a1": {"vertices": 1, "arrows": [], "nilpotent": False},
    "a2": {"vertices": 2, "arrows": [[0, 1]], "nilpotent": False},
    "jordan": {"vertices": 1, "arrows": [[0, 0]], "nilpotent": True},
}


def preset(name: str, q: int = 2) -> QuiverSpec:
    if name not in PRESETS:
        raise ConfigError(f"Unknown quiver preset '{name}'; choose one of {sorted(PRESETS)} or a JSON file")
    return QuiverSpec.from_json({**PRESETS[name], "q": q}, name=name)


def load_quiver(
    source: Union[str, Path, Mapping[str, Any]],
    q: Optional[int] = None,
    search_dirs: Sequence[Path] = (),
) -> QuiverSpec:
    """Resolve a preset name, a quiver document or a path to one; ``q`` overrides the document."""
    if isinstance(source, Mapping):
        spec = QuiverSpec.from_json(source)
    elif str(source) in PRESETS:
        return preset(str(source), q if q is not None else 2)
    else:
        path = _find(Path(source), search_dirs)
        try:
            with path.open("r", encoding="utf-8") as handle:
                doc = yaml.safe_load(handle)
        except (OSError, yaml.YAMLError) as exc:
            raise ConfigError(f"Cannot read quiver document {path}: {exc}") from exc
        if not isinstance(doc, Mapping):
            raise ConfigError(f"Quiver document {path} must be a JSON object")
        spec = QuiverSpec.from_json(doc, name=path.stem)
    return spec if q is None else spec.with_q(q)


def _find(path: Path, search_dirs: Sequence[Path]) -> Path:
    if path.is_absolute():
        if path.exists():
            return path
        raise ConfigError(f"Quiver file not found: {path}")
    for base in list(search_dirs) + [Path.cwd()]:
        candidate = (base / path).resolve()
        if candidate.exists():
            return candidate
    raise ConfigError(f"'{path}' is neither a quiver preset nor an existing file")


def is_jordan(quiver: QuiverSpec) -> bool:
    return quiver.n == 1 and quiver.arrows == ((0, 0),) and quiver.nilpotent


def make_provider(quiver: QuiverSpec, caps: Optional[CapsConfig] = None) -> CategoryProvider:
    provider: CategoryProvider
    if is_jordan(quiver):
        provider = JordanProvider(quiver, caps)
    else:
        provider = QuiverProvider(quiver, caps)
    logger.debug("Selected provider", provider=provider.provider_name, quiver=json.dumps(quiver.to_json()))
    return provider
