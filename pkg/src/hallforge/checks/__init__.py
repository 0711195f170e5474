"""Verification suites, keyed by the check names accepted in configuration."""

from __future__ import annotations

from typing import Callable, Dict

from hallforge.checks.algebra import check_assoc, check_heisenberg, check_oracle, check_triangularity
from hallforge.checks.bialgebra import check_counit, check_d3, check_green, check_hopf, check_serre, check_uv
from hallforge.checks.category import check_euler, check_rp
from hallforge.checks.complexes import check_pairing
from hallforge.checks.context import CheckContext, guarded
from hallforge.checks.results import CheckRecord, CheckResult
from hallforge.config import CHECK_NAMES

Suite = Callable[[CheckContext], CheckResult]

SUITES: Dict[str, Suite] = {
    "euler": check_euler,
    "rp": check_rp,
    "pairing": check_pairing,
    "triangularity": check_triangularity,
    "assoc": check_assoc,
    "oracle": check_oracle,
    "d3": check_d3,
    "hopf": check_hopf,
    "green": check_green,
    "counit": check_counit,
    "uv": check_uv,
    "serre": check_serre,
    "heisenberg": check_heisenberg,
}

assert tuple(SUITES) == CHECK_NAMES

__all__ = ["CheckContext", "CheckRecord", "CheckResult", "SUITES", "Suite", "guarded"]
