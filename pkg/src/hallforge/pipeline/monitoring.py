from __future__ import annotations

import json
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional, TextIO

from rich.console import Console
from rich.progress import Progress, SpinnerColumn, TextColumn, TimeElapsedColumn

from hallforge.logging import get_logger

logger = get_logger(__name__)


@dataclass
class Monitor:
    """JSONL report writer; every record is mirrored as a structlog event."""

    report_path: Optional[Path] = None
    log_path: Optional[Path] = None
    service_name: str = "hallforge"
    stream: Optional[TextIO] = None
    _metrics: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for path in (self.report_path, self.log_path):
            if path is not None:
                path.parent.mkdir(parents=True, exist_ok=True)

    def start_report(self, header: Dict[str, Any]) -> None:
        """Truncate the report and write the header line."""
        if self.report_path is not None:
            self.report_path.write_text("", encoding="utf-8")
        self._emit({"header": header})

    def write_record(self, record: Dict[str, Any]) -> None:
        self._emit(record)
        logger.debug("Check record", service=self.service_name, **record)

    def _emit(self, payload: Dict[str, Any]) -> None:
        line = json.dumps(payload, sort_keys=True) + "\n"
        if self.report_path is not None:
            with self.report_path.open("a", encoding="utf-8") as fh:
                fh.write(line)
        else:
            (self.stream or sys.stdout).write(line)

    def log(self, message: str, **kwargs: Any) -> None:
        logger.info(message, service=self.service_name, **kwargs)
        if self.log_path is None:
            return
        with self.log_path.open("a", encoding="utf-8") as fh:
            fh.write(json.dumps({"message": message, "service": self.service_name, **kwargs}, sort_keys=True) + "\n")

    def record_metric(self, key: str, value: Any) -> None:
        self._metrics[key] = value
        logger.info("metric_recorded", metric_key=key, metric_value=value, service=self.service_name)

    @property
    def metrics(self) -> Dict[str, Any]:
        return dict(self._metrics)

    def progress(self) -> Progress:
        # stdout carries the report
        return Progress(
            SpinnerColumn(),
            TextColumn("[progress.description]{task.description}"),
            TimeElapsedColumn(),
            console=Console(stderr=True),
            transient=True,
        )
