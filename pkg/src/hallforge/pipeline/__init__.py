"""Verification run orchestration."""

from hallforge.pipeline.driver import Driver
from hallforge.pipeline.executor import Executor
from hallforge.pipeline.monitoring import Monitor

__all__ = ["Driver", "Executor", "Monitor"]
