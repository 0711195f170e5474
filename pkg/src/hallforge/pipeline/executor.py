from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, Iterable

from hallforge.checks.results import CheckResult
from hallforge.errors import HallforgeError
from hallforge.logging import get_logger
from hallforge.pipeline.monitoring import Monitor

logger = get_logger(__name__)


@dataclass
class Executor:
    monitor: Monitor

    def run(self, checks: Iterable[str], task_map: Dict[str, Callable[[], CheckResult]]) -> Dict[str, CheckResult]:
        results: Dict[str, CheckResult] = {}
        with self.monitor.progress() as progress:
            overall = progress.add_task("Verifying", total=None)
            for name in checks:
                progress.log(f"Starting check: {name}")
                check_task = progress.add_task(name, total=None)
                task = task_map.get(name)
                try:
                    if task is None:
                        raise KeyError(f"No task registered for check '{name}'")
                    self.monitor.log("Check started", check=name)
                    result = task()
                    for record in result.records:
                        self.monitor.write_record(record.to_json())
                    results[name] = result
                    self.monitor.record_metric(name, {"instances": len(result), "failures": result.failures})
                    self.monitor.log("Check finished", check=name, instances=len(result), failures=result.failures)
                except HallforgeError as exc:
                    self.monitor.log(f"Check {name} aborted: {exc}", check=name, error=type(exc).__name__)
                    raise
                finally:
                    progress.remove_task(check_task)
            progress.remove_task(overall)
        return results
