from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Iterator, List, Sequence, Tuple

import numpy as np

from hallforge.checks.results import CheckResult
from hallforge.config import SampleConfig
from hallforge.double import ExtendedHallAlgebra
from hallforge.errors import ConsistencyError
from hallforge.heredcat import quiver as qv
from hallforge.heredcat.base import CategoryProvider, IsoClass
from hallforge.heredcat.quiver import K0Class
from hallforge.mrh import ModifiedHallAlgebra, NFBasisElt
from hallforge.ztwo import ComplexCategory, ZTwoComplex


@dataclass
class CheckContext:
    provider: CategoryProvider
    complexes: ComplexCategory
    mrh: ModifiedHallAlgebra
    he: ExtendedHallAlgebra
    dim_bound: int
    seed: int
    samples: SampleConfig

    @classmethod
    def build(cls, provider: CategoryProvider, dim_bound: int, seed: int = 0, samples: SampleConfig | None = None):
        complexes = ComplexCategory(provider)
        mrh = ModifiedHallAlgebra(provider, complexes)
        he = ExtendedHallAlgebra(provider, mrh)
        return cls(
            provider=provider,
            complexes=complexes,
            mrh=mrh,
            he=he,
            dim_bound=dim_bound,
            seed=seed,
            samples=samples or SampleConfig(),
        )

    @property
    def q(self) -> int:
        return self.provider.q

    @property
    def n(self) -> int:
        return self.provider.n

    def rng(self, salt: int = 0) -> np.random.Generator:
        return np.random.default_rng([self.seed, salt])

    def classes(self, bound: int | None = None) -> List[IsoClass]:
        return self.provider.enumerate_iso_classes(self.dim_bound if bound is None else bound)

    def class_pairs(self, total: int | None = None) -> Iterator[Tuple[IsoClass, IsoClass]]:
        """Ordered pairs with total dimension at most ``total`` (default: the window)."""
        limit = self.dim_bound if total is None else total
        window = self.classes(limit)
        for a in window:
            for b in window:
                if a.total_dim + b.total_dim <= limit:
                    yield a, b

    def small_torus(self) -> List[K0Class]:
        """0 and the signed unit vectors."""
        out = [qv.k0_zero(self.n)]
        for i in range(self.n):
            unit = qv.unit_vector(self.n, i)
            out.extend([unit, qv.k0_neg(unit)])
        return out

    def random_torus(self, rng: np.random.Generator, low: int = -2, high: int = 2) -> K0Class:
        return tuple(int(x) for x in rng.integers(low, high + 1, size=self.n))

    def random_monomial(self, rng: np.random.Generator, window: Sequence[IsoClass]) -> NFBasisElt:
        a = window[int(rng.integers(len(window)))]
        b = window[int(rng.integers(len(window)))]
        return NFBasisElt(a.id, b.id, self.random_torus(rng), self.random_torus(rng))

    def complexes_in_window(self, bound: int) -> List[ZTwoComplex]:
        """All complexes on class representatives with each component of total dimension at most ``bound``."""
        out: List[ZTwoComplex] = []
        window = self.classes(bound)
        for a in window:
            for b in window:
                out.extend(self.he.differential_pairs(a, b))
        return out


def guarded(result: CheckResult, fn: Callable[[], Any], **payload: Any) -> None:
    """Run one instance; an internal consistency failure marks it failed instead of aborting the suite.

    ``fn`` returns a verdict, or a verdict and a dict of computed values for the record.
    """
    try:
        outcome = fn()
    except ConsistencyError as exc:
        result.add(False, error=str(exc), **payload)
        return
    if isinstance(outcome, tuple):
        passed, extra = outcome
        payload = {**payload, **extra}
    else:
        passed = outcome
    result.add(passed, **payload)
