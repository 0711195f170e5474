from __future__ import annotations

from typing import Dict, Optional, Tuple

from hallforge.heredcat import quiver as qv
from hallforge.heredcat.base import CategoryProvider, IsoClass
from hallforge.heredcat.quiver import K0Class, Rep
from hallforge.logging import get_logger

logger = get_logger(__name__)


class QuiverProvider(CategoryProvider):
    """Nilpotent representations of an arbitrary quiver, classified by brute force.

    Every nonzero representation of dimension ``d`` is an extension of some
    simple ``S_v`` by a representation of dimension ``d - e_v``, so sweeping
    the extension classes of the smaller classes reaches every class.
    Candidates are filtered by a fingerprint and certified by an explicit
    invertible intertwiner.  On rank-determined quivers the fingerprint holds
    the ranks of every path composite and decides isomorphism by itself.
    """

    def __init__(self, quiver, caps=None):
        super().__init__(quiver, caps)
        self._fingerprints: Dict[int, Tuple] = {}
        self._complete_fingerprint = quiver.rank_determined

    @property
    def provider_name(self) -> str:
        return "quiver"

    def fingerprint(self, rep: Rep) -> Tuple:
        if self._complete_fingerprint:
            return (rep.dim, qv.arrow_word_ranks(rep, self.arrows, self.p, max_words=None))
        return (
            rep.dim,
            qv.hom_dim(rep, rep, self.arrows, self.p),
            qv.arrow_word_ranks(rep, self.arrows, self.p),
        )

    def _class_fingerprint(self, cls: IsoClass) -> Tuple:
        if cls.id not in self._fingerprints:
            self._fingerprints[cls.id] = self.fingerprint(cls.representative)
        return self._fingerprints[cls.id]

    def _match(self, rep: Rep) -> Optional[IsoClass]:
        candidates = self._by_dim.get(rep.dim, [])
        if not candidates:
            return None
        fp = self.fingerprint(rep)
        for cls in candidates:
            if self._class_fingerprint(cls) != fp:
                continue
            if self._complete_fingerprint:
                return cls
            if qv.find_isomorphism(rep, cls.representative, self.arrows, self.p, self.caps.hom_scan) is not None:
                return cls
        return None

    def _populate(self, dim: K0Class) -> None:
        if sum(dim) == 0:
            self._register(Rep.zero(self.n, self.arrows), label="0")
            return
        discovered = 0
        for vertex in range(self.n):
            if dim[vertex] == 0:
                continue
            smaller = qv.k0_sub(dim, qv.unit_vector(self.n, vertex))
            top = Rep.simple(self.n, self.arrows, vertex)
            for base in self.classes_of_dim(smaller):
                space = qv.extension_space(base.representative, top, self.arrows, self.p)
                for candidate, _ in space.classes(self.caps.hom_scan, "hom_scan"):
                    if self.quiver.nilpotent and not qv.is_nilpotent(candidate, self.arrows, self.p):
                        continue
                    if self._identified.get(candidate.key) is not None:
                        continue
                    found = self._match(candidate)
                    if found is None:
                        self._register(candidate, label=f"S{vertex}" if sum(dim) == 1 else None)
                        discovered += 1
                    else:
                        self._identified[candidate.key] = found
        logger.debug("Classified dimension vector", dim=list(dim), classes=discovered)
