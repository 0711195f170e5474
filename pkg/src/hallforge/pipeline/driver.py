from __future__ import annotations

from functools import partial
from typing import Any, Callable, Dict, List, Optional, Sequence

import pandas as pd

from hallforge import literals
from hallforge.checks import SUITES, CheckContext, CheckResult
from hallforge.config import CHECK_NAMES, RunConfig
from hallforge.errors import ConfigError
from hallforge.heredcat import load_quiver, make_provider
from hallforge.pipeline.executor import Executor
from hallforge.pipeline.monitoring import Monitor

ALGEBRAS = ("mrh", "he", "reduced", "oracle")


class Driver:
    def __init__(self, config: RunConfig, monitor: Optional[Monitor] = None):
        self.config = config
        self.monitor = monitor or Monitor(
            report_path=config.output.path,
            log_path=config.monitoring.log_path,
        )
        quiver = load_quiver(config.quiver, q=config.q, search_dirs=(config.base_dir,))
        config.q = quiver.q
        self.provider = make_provider(quiver, config.caps)
        self.provider.build(config.dim_bound)
        self.context = CheckContext.build(self.provider, config.dim_bound, config.seed, config.samples)
        self.executor = Executor(monitor=self.monitor)

    def run(self, selected: Optional[Sequence[str]] = None) -> Dict[str, CheckResult]:
        checks = self.execution_order(selected)
        task_map = self._task_map()
        self.monitor.start_report(self.config.header())
        return self.executor.run(checks, {name: task_map[name] for name in checks})

    def plan(self, selected: Optional[Sequence[str]] = None) -> List[str]:
        return self.execution_order(selected)

    def execution_order(self, selected: Optional[Sequence[str]]) -> List[str]:
        wanted = list(selected) if selected else list(self.config.checks)
        unknown = [name for name in wanted if name not in CHECK_NAMES]
        if unknown:
            raise ConfigError(f"Unknown checks {unknown}")
        return [name for name in CHECK_NAMES if name in wanted]

    def run_check(self, name: str) -> CheckResult:
        task = self._task_map().get(name)
        if task is None:
            raise ConfigError(f"No task registered for check '{name}'")
        return task()

    def _task_map(self) -> Dict[str, Callable[[], CheckResult]]:
        return {name: partial(suite, self.context) for name, suite in SUITES.items()}

    # -- tables ------------------------------------------------------------------

    def classes_frame(self) -> pd.DataFrame:
        provider = self.provider
        rows = [
            {
                "id": c.id,
                "label": c.label,
                "dim": list(c.dim),
                "aut": provider.aut_order(c),
                "end": provider.q ** provider.end_dim(c),
            }
            for c in provider.enumerate_iso_classes(self.config.dim_bound)
        ]
        return pd.DataFrame(rows, columns=["id", "label", "dim", "aut", "end"])

    def product(self, lhs: str, rhs: str, algebra: str = "mrh") -> Dict[str, Any]:
        """Multiply two literals; returns the readable expansion and its records."""
        ctx = self.context
        if algebra == "mrh":
            value = ctx.mrh.mul(literals.parse_mrh(lhs, ctx.mrh), literals.parse_mrh(rhs, ctx.mrh))
            return {"text": ctx.mrh.describe(value), "records": value.to_records()}
        if algebra == "reduced":
            x = ctx.mrh.to_reduced(literals.parse_mrh(lhs, ctx.mrh))
            y = ctx.mrh.to_reduced(literals.parse_mrh(rhs, ctx.mrh))
            value = ctx.mrh.reduced_mul(x, y)
            return {"text": repr(value), "records": value.to_records()}
        if algebra == "he":
            value = ctx.he.he_mul(literals.parse_he(lhs, ctx.he), literals.parse_he(rhs, ctx.he))
            return {"text": self._describe_he(value), "records": value.to_records()}
        if algebra == "oracle":
            base = self.config.base_dir
            m = literals.parse_complex(lhs, ctx.complexes, base)
            n = literals.parse_complex(rhs, ctx.complexes, base)
            value = ctx.mrh.oracle_mul(m, n)
            return {"text": ctx.mrh.describe(value), "records": value.to_records()}
        raise ConfigError(f"Unknown algebra {algebra!r}; choose one of {list(ALGEBRAS)}")

    def product_frame(self, lhs: str, rhs: str, algebra: str = "mrh") -> pd.DataFrame:
        records = self.product(lhs, rhs, algebra)["records"]
        rows = []
        for record in records:
            coeff = record.pop("coeff")
            rows.append({**{k: v if not isinstance(v, list) else str(v) for k, v in record.items()}, **coeff})
        return pd.DataFrame(rows)

    def _describe_he(self, value) -> str:
        if value.is_zero():
            return "0"
        parts = []
        for key, coeff in value.items():
            factors = []
            if key.a != self.provider.zero.id:
                factors.append(f"[{self.provider.class_by_id(key.a).label}]")
            if any(key.alpha):
                factors.append(f"k_({','.join(str(x) for x in key.alpha)})")
            parts.append(f"({coeff})*{'*'.join(factors) or '1'}")
        return " + ".join(parts)
