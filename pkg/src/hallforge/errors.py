"""Exception hierarchy shared by the engine, the checks and the CLI."""

from __future__ import annotations

from hallforge.logging import get_logger

logger = get_logger(__name__)


class HallforgeError(Exception):
    """Base class for all hallforge errors."""


class ConfigError(HallforgeError):
    """Invalid run configuration, quiver document or literal."""


class ResourceCapError(HallforgeError):
    """An enumeration would exceed a configured cap."""

    def __init__(self, cap: str, requested: int, limit: int):
        self.cap = cap
        self.requested = requested
        self.limit = limit
        super().__init__(f"{cap} cap exceeded: {requested} > {limit}")


class ConsistencyError(HallforgeError):
    """An internal invariant failed; signals a provider or engine bug."""


class PreconditionError(HallforgeError):
    """An operation was called outside its domain."""


def ensure_within_cap(cap: str, requested: int, limit: int) -> None:
    if requested > limit:
        logger.error("Enumeration cap exceeded", cap=cap, requested=requested, limit=limit)
        raise ResourceCapError(cap, requested, limit)
