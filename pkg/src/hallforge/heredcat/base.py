from __future__ import annotations

from abc import ABC, abstractmethod
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from threading import RLock
from typing import Dict, List, Optional, Sequence, Tuple

from hallforge import fqlinalg as fq
from hallforge.config import CapsConfig
from hallforge.errors import ConsistencyError, ensure_within_cap
from hallforge.heredcat import quiver as qv
from hallforge.heredcat.quiver import K0Class, Morphism, QuiverSpec, Rep
from hallforge.logging import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True, eq=False)
class IsoClass:
    """Handle for an isomorphism class; equality is by id within one provider."""

    id: int
    representative: Rep
    label: str

    @property
    def dim(self) -> K0Class:
        return self.representative.dim

    @property
    def total_dim(self) -> int:
        return self.representative.total_dim

    def __eq__(self, other: object) -> bool:
        return isinstance(other, IsoClass) and self.id == other.id

    def __hash__(self) -> int:
        return hash(self.id)

    def __lt__(self, other: "IsoClass") -> bool:
        return self.id < other.id

    def __repr__(self) -> str:
        return f"IsoClass({self.id}, {self.label})"


@dataclass(frozen=True)
class CrossTerm:
    """Morphisms ``g: X -> Y`` sharing (ker g, dim im g, coker g), with their number."""

    kernel: IsoClass
    image_dim: K0Class
    cokernel: IsoClass
    count: int


class CategoryProvider(ABC):
    """Finitary hereditary category of (nilpotent) quiver representations over F_q.

    Subclasses decide how the classes of one dimension vector are discovered
    and how a representation is matched to a known class; everything else
    (Hom spaces, Euler form, Hall numbers) is shared.
    """

    def __init__(self, quiver: QuiverSpec, caps: Optional[CapsConfig] = None):
        self.quiver = quiver
        self.caps = caps or CapsConfig()
        self._lock = RLock()
        self._classes: List[IsoClass] = []
        self._by_dim: Dict[K0Class, List[IsoClass]] = {}
        self._identified: Dict[Tuple, IsoClass] = {}
        self._hom_dims: Dict[Tuple[int, int], int] = {}
        self._aut_orders: Dict[int, int] = {}
        self._subobjects: Dict[int, Counter] = {}
        self._hall_products: Dict[Tuple[int, int], Dict[IsoClass, Fraction]] = {}
        self._cross_tables: Dict[Tuple[int, int], List[CrossTerm]] = {}
        self._built_window = -1

    @property
    @abstractmethod
    def provider_name(self) -> str:
        """Short identifier used in reports."""

    @abstractmethod
    def _populate(self, dim: K0Class) -> None:
        """Register every class of dimension vector ``dim`` via ``_register``."""

    @abstractmethod
    def _match(self, rep: Rep) -> Optional[IsoClass]:
        """Return the registered class isomorphic to ``rep``, if any."""

    # -- basic data ------------------------------------------------------

    @property
    def q(self) -> int:
        return self.quiver.q

    @property
    def p(self) -> int:
        return self.quiver.q

    @property
    def n(self) -> int:
        return self.quiver.n

    @property
    def arrows(self) -> Tuple[Tuple[int, int], ...]:
        return self.quiver.arrows

    @property
    def zero(self) -> IsoClass:
        return self.classes_of_dim(qv.k0_zero(self.n))[0]

    def simple(self, vertex: int) -> IsoClass:
        return self.identify(Rep.simple(self.n, self.arrows, vertex))

    def euler_exponent(self, alpha: Sequence[int], beta: Sequence[int]) -> int:
        return self.quiver.euler_exponent(alpha, beta)

    def sym_exponent(self, alpha: Sequence[int], beta: Sequence[int]) -> int:
        return self.quiver.sym_exponent(alpha, beta)

    def class_by_id(self, class_id: int) -> IsoClass:
        with self._lock:
            if not 0 <= class_id < len(self._classes):
                raise KeyError(f"Unknown class id {class_id}")
            return self._classes[class_id]

    def known_classes(self) -> List[IsoClass]:
        with self._lock:
            return list(self._classes)

    # -- classification --------------------------------------------------

    def _register(self, rep: Rep, label: Optional[str] = None) -> IsoClass:
        cls = IsoClass(id=len(self._classes), representative=rep, label=label or f"d{list(rep.dim)}#{len(self._by_dim[rep.dim])}")
        self._classes.append(cls)
        self._by_dim[rep.dim].append(cls)
        self._identified[rep.key] = cls
        return cls

    def classes_of_dim(self, dim: Sequence[int]) -> List[IsoClass]:
        dim = tuple(int(d) for d in dim)
        if any(d < 0 for d in dim):
            return []
        with self._lock:
            if dim not in self._by_dim:
                self._by_dim[dim] = []
                self._populate(dim)
                if sum(dim) > self._built_window >= 0:
                    logger.warning("Extended class window", provider=self.provider_name, dim=list(dim))
            return list(self._by_dim[dim])

    def build(self, window: int) -> List[IsoClass]:
        classes = self.enumerate_iso_classes(window)
        self._built_window = max(self._built_window, window)
        logger.info(
            "Provider built",
            provider=self.provider_name,
            quiver=self.quiver.name,
            q=self.q,
            window=window,
            classes=len(classes),
        )
        return classes

    def enumerate_iso_classes(self, total_dim_bound: int) -> List[IsoClass]:
        out: List[IsoClass] = []
        for dim in qv.dims_below((total_dim_bound,) * self.n):
            if sum(dim) <= total_dim_bound:
                out.extend(self.classes_of_dim(dim))
        return out

    def identify(self, rep: Rep) -> IsoClass:
        with self._lock:
            found = self._identified.get(rep.key)
            if found is not None:
                return found
            self.classes_of_dim(rep.dim)
            found = self._match(rep)
            if found is None:
                raise ConsistencyError(f"No class of dimension {list(rep.dim)} matches the given representation")
            self._identified[rep.key] = found
            return found

    # -- Hom, Ext, Aut ------------------------------------------------------

    def hom_basis(self, x: Rep, y: Rep) -> List[Morphism]:
        return qv.hom_basis(x, y, self.arrows, self.p)

    def rep_hom_dim(self, x: Rep, y: Rep) -> int:
        return qv.hom_dim(x, y, self.arrows, self.p)

    def hom_dim(self, a: IsoClass, b: IsoClass) -> int:
        key = (a.id, b.id)
        with self._lock:
            if key not in self._hom_dims:
                self._hom_dims[key] = self.rep_hom_dim(a.representative, b.representative)
            return self._hom_dims[key]

    def enumerate_hom(self, x: Rep, y: Rep):
        return qv.enumerate_hom(x, y, self.arrows, self.p, self.caps.hom_scan)

    def ext1_dim(self, a: IsoClass, b: IsoClass) -> int:
        value = self.hom_dim(a, b) - self.euler_exponent(a.dim, b.dim)
        if value < 0:
            raise ConsistencyError(f"Negative Ext^1 dimension between {a} and {b}")
        return value

    def ext1_dim_oracle(self, a: IsoClass, b: IsoClass) -> int:
        """log_q of |Hom(a,b)| * sum_M hall(a,b,M), each Hall number by subobject counting."""
        total = Fraction(0)
        for m in self.classes_of_dim(qv.k0_add(a.dim, b.dim)):
            total += self.hall_coeff(a, b, m)
        size = total * self.q ** self.hom_dim(a, b)
        exponent = 0
        while size > 1 and size.denominator == 1 and size.numerator % self.q == 0:
            size /= self.q
            exponent += 1
        if size != 1:
            raise ConsistencyError(f"|Ext^1({a}, {b})| is not a power of q")
        return exponent

    def count_automorphisms(self, rep: Rep) -> int:
        return qv.count_automorphisms(rep, self.arrows, self.p, self.caps.hom_scan)

    def aut_order(self, a: IsoClass) -> int:
        with self._lock:
            if a.id not in self._aut_orders:
                self._aut_orders[a.id] = self.count_automorphisms(a.representative)
            return self._aut_orders[a.id]

    def end_dim(self, a: IsoClass) -> int:
        return self.hom_dim(a, a)

    # -- kernels, images, cokernels --------------------------------------

    def kernel_obj(self, x: Rep, f: Morphism) -> Rep:
        return qv.kernel_obj(x, f, self.arrows, self.p)

    def image_obj(self, y: Rep, f: Morphism) -> Rep:
        return qv.image_obj(y, f, self.arrows, self.p)

    def cokernel_obj(self, y: Rep, f: Morphism) -> Rep:
        return qv.cokernel_obj(y, f, self.arrows, self.p)

    def direct_sum(self, x: Rep, y: Rep) -> Rep:
        return qv.direct_sum(x, y, self.arrows)

    def cross_table(self, x: IsoClass, y: IsoClass) -> List[CrossTerm]:
        """Element sum over Hom(x, y), grouped by kernel class, image dimension and cokernel class."""
        key = (x.id, y.id)
        with self._lock:
            cached = self._cross_tables.get(key)
        if cached is not None:
            return cached
        counts: Counter = Counter()
        xr, yr = x.representative, y.representative
        for g in self.enumerate_hom(xr, yr):
            ker = self.identify(self.kernel_obj(xr, g))
            image_bases = qv.image_bases(g, self.p)
            image_dim = tuple(b.shape[1] for b in image_bases)
            coker = self.identify(qv.split_subrep(yr, image_bases, self.arrows, self.p)[1])
            counts[(ker.id, image_dim, coker.id)] += 1
        table = [
            CrossTerm(self.class_by_id(k), image_dim, self.class_by_id(c), n)
            for (k, image_dim, c), n in sorted(counts.items())
        ]
        with self._lock:
            self._cross_tables[key] = table
        return table

    # -- Hall numbers ----------------------------------------------------

    def subobject_table(self, m: IsoClass) -> Counter:
        """Counter over (quotient class id, sub class id) of all subrepresentations of ``m``."""
        with self._lock:
            cached = self._subobjects.get(m.id)
        if cached is not None:
            return cached
        rep = m.representative
        total = 1
        for d in rep.dim:
            total *= sum(fq.gaussian_binomial(d, k, self.p) for k in range(d + 1))
        ensure_within_cap("subspace_scan", total, self.caps.subspace_scan)
        table: Counter = Counter()
        for sub_dim in qv.dims_below(rep.dim):
            for bases in qv.enumerate_subreps(rep, sub_dim, self.arrows, self.p, self.caps.subspace_scan):
                sub, quotient = qv.split_subrep(rep, bases, self.arrows, self.p)
                table[(self.identify(quotient).id, self.identify(sub).id)] += 1
        with self._lock:
            self._subobjects[m.id] = table
        return table

    def hall_coeff(self, a: IsoClass, b: IsoClass, m: IsoClass) -> Fraction:
        """|Ext^1(a, b)_m| / |Hom(a, b)| from the number of subobjects of ``m`` isomorphic to ``b`` with quotient ``a``."""
        if qv.k0_add(a.dim, b.dim) != m.dim:
            return Fraction(0)
        g = self.subobject_table(m).get((a.id, b.id), 0)
        if g == 0:
            return Fraction(0)
        return Fraction(g * self.aut_order(a) * self.aut_order(b), self.aut_order(m))

    def ses_count(self, a: IsoClass, b: IsoClass, m: IsoClass) -> int:
        """Pairs (i: b -> m injective, s: m -> a surjective) with s . i = 0, by direct enumeration."""
        if qv.k0_add(a.dim, b.dim) != m.dim:
            return 0
        return qv.count_ses(b.representative, m.representative, a.representative, self.arrows, self.p, self.caps.hom_scan)

    def hall_product(self, a: IsoClass, b: IsoClass) -> Dict[IsoClass, Fraction]:
        """All nonzero hall(a, b, M), from the extension structures of ``a`` by ``b``."""
        key = (a.id, b.id)
        with self._lock:
            cached = self._hall_products.get(key)
        if cached is not None:
            return cached
        space = qv.extension_space(b.representative, a.representative, self.arrows, self.p)
        counts: Counter = Counter()
        for x, weight in space.classes(self.caps.hom_scan, "hom_scan"):
            counts[self.identify(x)] += weight
        scale = Fraction(1, self.q ** space.overlap)
        product = {m: scale * n for m, n in sorted(counts.items())}
        with self._lock:
            self._hall_products[key] = product
        return product
