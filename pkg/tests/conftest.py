from __future__ import annotations

from typing import Dict, Tuple

import pytest

from hallforge.checks.context import CheckContext
from hallforge.config import SampleConfig
from hallforge.heredcat import make_provider, preset

_CONTEXTS: Dict[Tuple[str, int], CheckContext] = {}


def context_for(name: str, q: int, bound: int = 2) -> CheckContext:
    """Shared provider and engines per (quiver, q); built once for the whole session."""
    key = (name, q)
    if key not in _CONTEXTS:
        provider = make_provider(preset(name, q))
        provider.build(bound)
        _CONTEXTS[key] = CheckContext.build(
            provider, bound, seed=0, samples=SampleConfig(assoc=10, oracle=4, centrality=5)
        )
    return _CONTEXTS[key]


@pytest.fixture(scope="session")
def a1_q2() -> CheckContext:
    return context_for("a1", 2)


@pytest.fixture(scope="session")
def a1_q3() -> CheckContext:
    return context_for("a1", 3)


@pytest.fixture(scope="session")
def a2_q2() -> CheckContext:
    return context_for("a2", 2)


@pytest.fixture(scope="session")
def jordan_q2() -> CheckContext:
    return context_for("jordan", 2)
