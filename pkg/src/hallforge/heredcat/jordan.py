from __future__ import annotations

from collections import Counter
from typing import Dict, Iterator, Optional, Tuple

import numpy as np

from hallforge import fqlinalg as fq
from hallforge.errors import ConfigError
from hallforge.heredcat.base import CategoryProvider, IsoClass
from hallforge.heredcat.quiver import K0Class, QuiverSpec, Rep

Partition = Tuple[int, ...]


def partitions(n: int, max_part: Optional[int] = None) -> Iterator[Partition]:
    """Partitions of ``n`` as non-increasing tuples, in reverse lexicographic order."""
    if n == 0:
        yield ()
        return
    top = n if max_part is None else min(n, max_part)
    for first in range(top, 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def conjugate(parts: Partition) -> Partition:
    if not parts:
        return ()
    return tuple(sum(1 for part in parts if part > i) for i in range(parts[0]))


def jordan_matrix(parts: Partition) -> np.ndarray:
    size = sum(parts)
    m = fq.zeros(size, size)
    start = 0
    for part in parts:
        for i in range(start, start + part - 1):
            m[i, i + 1] = 1
        start += part
    return m


class JordanProvider(CategoryProvider):
    """Nilpotent representations of the one-loop quiver, labelled by partitions.

    Identification reads the partition off the ranks of powers of the loop;
    Hom dimensions and automorphism orders come from closed formulas.
    """

    def __init__(self, quiver: QuiverSpec, caps=None):
        if quiver.n != 1 or quiver.arrows != ((0, 0),) or not quiver.nilpotent:
            raise ConfigError("JordanProvider needs the nilpotent one-vertex quiver with a single loop")
        super().__init__(quiver, caps)
        self._by_partition: Dict[Partition, IsoClass] = {}
        self._partitions: Dict[int, Partition] = {}

    @property
    def provider_name(self) -> str:
        return "jordan"

    def _populate(self, dim: K0Class) -> None:
        for parts in partitions(dim[0]):
            rep = Rep(dim=dim, maps=(jordan_matrix(parts),))
            label = "(" + ",".join(str(p) for p in parts) + ")" if parts else "()"
            self._by_partition[parts] = self._register(rep, label=label)

    def partition_of_rep(self, rep: Rep) -> Partition:
        size = rep.dim[0]
        loop = rep.maps[0] % self.p
        ranks = [size]
        power = fq.identity(size)
        for _ in range(size):
            power = fq.matmul(power, loop, self.p)
            ranks.append(fq.rank(power, self.p))
        # blocks of size >= k
        at_least = [ranks[k - 1] - ranks[k] for k in range(1, size + 1)] + [0]
        parts = []
        for k in range(size, 0, -1):
            parts.extend([k] * (at_least[k - 1] - at_least[k]))
        return tuple(parts)

    def partition(self, cls: IsoClass) -> Partition:
        if cls.id not in self._partitions:
            self._partitions[cls.id] = self.partition_of_rep(cls.representative)
        return self._partitions[cls.id]

    def class_of_partition(self, parts: Partition) -> IsoClass:
        parts = tuple(sorted(parts, reverse=True))
        self.classes_of_dim((sum(parts),))
        return self._by_partition[parts]

    def _match(self, rep: Rep) -> Optional[IsoClass]:
        return self._by_partition.get(self.partition_of_rep(rep))

    def hom_dim(self, a: IsoClass, b: IsoClass) -> int:
        return sum(min(x, y) for x in self.partition(a) for y in self.partition(b))

    def aut_order(self, a: IsoClass) -> int:
        parts = self.partition(a)
        q = self.q
        multiplicities = Counter(parts)
        exponent = sum(c * c for c in conjugate(parts))
        exponent -= sum(m * (m + 1) // 2 for m in multiplicities.values())
        value = q ** exponent
        for m in multiplicities.values():
            for k in range(1, m + 1):
                value *= q ** k - 1
        return value
