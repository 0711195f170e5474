"""Z/2-graded complexes over a provider category.

A complex ``M0 <-> M1`` is handled as a representation of the doubled quiver:
vertex ``(v, i)`` has index ``v + i*n``, every arrow is copied into both
degrees, and each vertex gets the two differential arrows.  The relations
``d1 d0 = 0 = d0 d1`` and "differentials commute with arrows" restrict the
extension structures, so Hom, Ext and short exact sequences of complexes all
reuse the representation machinery in ``heredcat.quiver``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Any, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from hallforge import fqlinalg as fq
from hallforge.errors import ConsistencyError, PreconditionError
from hallforge.heredcat import quiver as qv
from hallforge.heredcat.base import CategoryProvider, IsoClass
from hallforge.heredcat.quiver import Arrow, K0Class, Morphism, Relation, Rep
from hallforge.logging import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True, eq=False)
class ZTwoComplex:
    """``m0 --d0--> m1 --d1--> m0``; ``d0[v]`` and ``d1[v]`` are the vertexwise blocks."""

    m0: Rep
    m1: Rep
    d0: Morphism
    d1: Morphism

    @cached_property
    def key(self) -> Tuple[Any, ...]:
        return (
            self.m0.key,
            self.m1.key,
            tuple((b.shape, b.tobytes()) for b in self.d0),
            tuple((b.shape, b.tobytes()) for b in self.d1),
        )

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ZTwoComplex) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    @property
    def total_dim(self) -> int:
        return self.m0.total_dim + self.m1.total_dim

    @classmethod
    def from_json(cls, doc: Mapping[str, Any], arrows: Sequence[Arrow], p: int) -> "ZTwoComplex":
        m0 = Rep.from_json(doc["M0"], arrows, p)
        m1 = Rep.from_json(doc["M1"], arrows, p)
        n = len(m0.dim)

        def blocks(raw, rows_of, cols_of):
            raw = raw or []
            return tuple(
                fq.as_matrix(raw[v] if v < len(raw) else [], p, shape=(rows_of[v], cols_of[v])) for v in range(n)
            )

        return cls(m0=m0, m1=m1, d0=blocks(doc.get("d0"), m1.dim, m0.dim), d1=blocks(doc.get("d1"), m0.dim, m1.dim))

    def to_json(self) -> Dict[str, Any]:
        return {
            "M0": self.m0.to_json(),
            "M1": self.m1.to_json(),
            "d0": [b.tolist() for b in self.d0],
            "d1": [b.tolist() for b in self.d1],
        }


class GeneratorKind(str, Enum):
    K = "K"
    KSTAR = "K*"
    C = "C"
    CSTAR = "C*"

    @property
    def acyclic(self) -> bool:
        return self in (GeneratorKind.K, GeneratorKind.KSTAR)


# pairs whose Euler pairing vanishes; every other pair with an acyclic side gives e(left, right)
_VANISHING_PAIRS = {
    (GeneratorKind.CSTAR, GeneratorKind.K),
    (GeneratorKind.K, GeneratorKind.C),
    (GeneratorKind.C, GeneratorKind.KSTAR),
    (GeneratorKind.KSTAR, GeneratorKind.CSTAR),
}


@dataclass(frozen=True)
class NormalFormData:
    exp: int
    alpha: K0Class
    beta: K0Class
    h0: IsoClass
    h1: IsoClass


class ComplexCategory:
    """Z/2-graded complexes of representations from ``provider``."""

    def __init__(self, provider: CategoryProvider):
        self.provider = provider
        self.n = provider.n
        self.p = provider.p
        self.q = provider.q
        self.arrows: Tuple[Arrow, ...] = provider.arrows
        self.doubled_arrows, self.relations = self._doubled_quiver()
        self._aut_orders: Dict[Tuple, int] = {}

    @property
    def caps(self):
        return self.provider.caps

    def _doubled_quiver(self) -> Tuple[Tuple[Arrow, ...], Tuple[Relation, ...]]:
        n, m = self.n, len(self.arrows)
        arrows: List[Arrow] = [(s, t) for s, t in self.arrows]
        arrows += [(n + s, n + t) for s, t in self.arrows]
        arrows += [(v, n + v) for v in range(n)]
        arrows += [(n + v, v) for v in range(n)]
        d0 = [2 * m + v for v in range(n)]
        d1 = [2 * m + n + v for v in range(n)]
        relations: List[Relation] = []
        for v in range(n):
            relations.append(((d0[v], d1[v]), None))
            relations.append(((d1[v], d0[v]), None))
        for a, (s, t) in enumerate(self.arrows):
            relations.append(((a, d0[t]), (d0[s], m + a)))
            relations.append(((m + a, d1[t]), (d1[s], a)))
        return tuple(arrows), tuple(relations)

    # -- flattening --------------------------------------------------------

    def flatten(self, c: ZTwoComplex) -> Rep:
        maps = tuple(c.m0.maps) + tuple(c.m1.maps) + tuple(c.d0) + tuple(c.d1)
        return Rep(dim=tuple(c.m0.dim) + tuple(c.m1.dim), maps=maps)

    def unflatten(self, rep: Rep) -> ZTwoComplex:
        n, m = self.n, len(self.arrows)
        return ZTwoComplex(
            m0=Rep(dim=rep.dim[:n], maps=rep.maps[:m]),
            m1=Rep(dim=rep.dim[n:], maps=rep.maps[m:2 * m]),
            d0=tuple(rep.maps[2 * m:2 * m + n]),
            d1=tuple(rep.maps[2 * m + n:]),
        )

    def validate(self, c: ZTwoComplex) -> ZTwoComplex:
        qv.validate_rep(self.flatten(c), self.doubled_arrows, self.p)
        if not qv.is_intertwiner(c.d0, c.m0, c.m1, self.arrows, self.p):
            raise ConsistencyError("d0 does not commute with the arrows")
        if not qv.is_intertwiner(c.d1, c.m1, c.m0, self.arrows, self.p):
            raise ConsistencyError("d1 does not commute with the arrows")
        if not qv.is_zero_morphism(qv.compose(c.d1, c.d0, self.p)) or not qv.is_zero_morphism(
            qv.compose(c.d0, c.d1, self.p)
        ):
            raise ConsistencyError("Differentials do not compose to zero")
        return c

    def from_json(self, doc: Mapping[str, Any]) -> ZTwoComplex:
        return self.validate(ZTwoComplex.from_json(doc, self.arrows, self.p))

    # -- constructors --------------------------------------------------------

    def _zero_rep(self) -> Rep:
        return Rep.zero(self.n, self.arrows)

    def _blocks(self, rows: Sequence[int], cols: Sequence[int], identity: bool) -> Morphism:
        if identity:
            return tuple(fq.identity(r) for r in rows)
        return tuple(fq.zeros(r, c) for r, c in zip(rows, cols))

    def make_K(self, x: Rep) -> ZTwoComplex:
        return ZTwoComplex(x, x, self._blocks(x.dim, x.dim, True), self._blocks(x.dim, x.dim, False))

    def make_Kstar(self, x: Rep) -> ZTwoComplex:
        return ZTwoComplex(x, x, self._blocks(x.dim, x.dim, False), self._blocks(x.dim, x.dim, True))

    def make_C(self, x: Rep) -> ZTwoComplex:
        z = self._zero_rep()
        return ZTwoComplex(z, x, self._blocks(x.dim, z.dim, False), self._blocks(z.dim, x.dim, False))

    def make_Cstar(self, x: Rep) -> ZTwoComplex:
        z = self._zero_rep()
        return ZTwoComplex(x, z, self._blocks(z.dim, x.dim, False), self._blocks(x.dim, z.dim, False))

    def generator(self, kind: GeneratorKind, x: Rep) -> ZTwoComplex:
        return {
            GeneratorKind.K: self.make_K,
            GeneratorKind.KSTAR: self.make_Kstar,
            GeneratorKind.C: self.make_C,
            GeneratorKind.CSTAR: self.make_Cstar,
        }[kind](x)

    def shift(self, c: ZTwoComplex) -> ZTwoComplex:
        return ZTwoComplex(
            m0=c.m1,
            m1=c.m0,
            d0=tuple((-b) % self.p for b in c.d1),
            d1=tuple((-b) % self.p for b in c.d0),
        )

    def direct_sum(self, x: ZTwoComplex, y: ZTwoComplex) -> ZTwoComplex:
        return self.unflatten(qv.direct_sum(self.flatten(x), self.flatten(y), self.doubled_arrows))

    # -- homology and images ---------------------------------------------------

    def homology_reps(self, c: ZTwoComplex) -> Tuple[Rep, Rep]:
        h0 = qv.subquotient(c.m0, qv.kernel_bases(c.d0, self.p), qv.image_bases(c.d1, self.p), self.arrows, self.p)
        h1 = qv.subquotient(c.m1, qv.kernel_bases(c.d1, self.p), qv.image_bases(c.d0, self.p), self.arrows, self.p)
        return h0, h1

    def homology(self, c: ZTwoComplex) -> Tuple[IsoClass, IsoClass]:
        h0, h1 = self.homology_reps(c)
        return self.provider.identify(h0), self.provider.identify(h1)

    def image_classes(self, c: ZTwoComplex) -> Tuple[K0Class, K0Class]:
        alpha = tuple(fq.rank(b, self.p) for b in c.d0)
        beta = tuple(fq.rank(b, self.p) for b in c.d1)
        return alpha, beta

    def is_acyclic(self, c: ZTwoComplex) -> bool:
        h0, h1 = self.homology_reps(c)
        return h0.total_dim == 0 and h1.total_dim == 0

    def normal_form_data(self, c: ZTwoComplex) -> NormalFormData:
        alpha, beta = self.image_classes(c)
        h0, h1 = self.homology(c)
        e = self.provider.euler_exponent
        exp = e(alpha, beta) + e(alpha, h0.dim) + e(beta, h1.dim)
        return NormalFormData(exp=exp, alpha=alpha, beta=beta, h0=h0, h1=h1)

    # -- Hom, Aut, Ext -----------------------------------------------------------

    def complex_hom_dim(self, x: ZTwoComplex, y: ZTwoComplex) -> int:
        return qv.hom_dim(self.flatten(x), self.flatten(y), self.doubled_arrows, self.p)

    def enumerate_hom(self, x: ZTwoComplex, y: ZTwoComplex) -> Iterator[Morphism]:
        return qv.enumerate_hom(
            self.flatten(x), self.flatten(y), self.doubled_arrows, self.p, self.caps.complex_scan, "complex_scan"
        )

    def find_isomorphism(self, x: ZTwoComplex, y: ZTwoComplex) -> Optional[Morphism]:
        return qv.find_isomorphism(
            self.flatten(x), self.flatten(y), self.doubled_arrows, self.p, self.caps.complex_scan, "complex_scan"
        )

    def is_isomorphic(self, x: ZTwoComplex, y: ZTwoComplex) -> bool:
        return self.find_isomorphism(x, y) is not None

    def aut_order(self, c: ZTwoComplex) -> int:
        if c.key not in self._aut_orders:
            self._aut_orders[c.key] = qv.count_automorphisms(
                self.flatten(c), self.doubled_arrows, self.p, self.caps.complex_scan, "complex_scan"
            )
        return self._aut_orders[c.key]

    def extension_space(self, sub: ZTwoComplex, quotient: ZTwoComplex) -> qv.ExtensionSpace:
        """Structures of extensions ``0 -> sub -> X -> quotient -> 0`` of complexes."""
        return qv.extension_space(
            self.flatten(sub), self.flatten(quotient), self.doubled_arrows, self.p, self.relations
        )

    def extensions(self, sub: ZTwoComplex, quotient: ZTwoComplex) -> Iterator[ZTwoComplex]:
        space = self.extension_space(sub, quotient)
        for rep in space.structures(self.caps.complex_scan, "complex_scan"):
            yield self.unflatten(rep)

    def complex_ext1_dim(self, m: ZTwoComplex, n: ZTwoComplex) -> int:
        """dim Ext^1(m, n) as cocycles modulo coboundaries."""
        space = self.extension_space(n, m)
        value = self.complex_hom_dim(m, n) + space.dimension - space.overlap
        if value < 0:
            raise ConsistencyError("Negative Ext^1 dimension between complexes")
        return value

    def ses_count(self, m: ZTwoComplex, n: ZTwoComplex, x: ZTwoComplex) -> int:
        """Short exact sequences ``0 -> n -> x -> m -> 0`` as explicit pairs of complex morphisms."""
        return qv.count_ses(
            self.flatten(n),
            self.flatten(x),
            self.flatten(m),
            self.doubled_arrows,
            self.p,
            self.caps.complex_scan,
            "complex_scan",
        )

    def complex_ext1_coeff(self, m: ZTwoComplex, n: ZTwoComplex, x: ZTwoComplex) -> Fraction:
        """|Ext^1(m, n)_x| / |Hom(m, n)| = #ses / |Aut x|."""
        count = self.ses_count(m, n, x)
        if count == 0:
            return Fraction(0)
        return Fraction(count, self.aut_order(x))

    def middle_terms(self, m: ZTwoComplex, n: ZTwoComplex) -> List[Tuple[ZTwoComplex, int]]:
        """Iso classes of middle terms of extensions of ``m`` by ``n``, with the number of structures in each."""
        groups: List[List[Any]] = []
        for x in self.extensions(n, m):
            for group in groups:
                if self.is_isomorphic(x, group[0]):
                    group[1] += 1
                    break
            else:
                groups.append([x, 1])
        return [(x, count) for x, count in groups]

    # -- checks on exact sequences -------------------------------------------------

    def is_exact(self, sub: ZTwoComplex, mid: ZTwoComplex, quotient: ZTwoComplex, i: Morphism, s: Morphism) -> bool:
        fs, fm, fq_ = self.flatten(sub), self.flatten(mid), self.flatten(quotient)
        return (
            qv.k0_add(fs.dim, fq_.dim) == fm.dim
            and qv.is_intertwiner(i, fs, fm, self.doubled_arrows, self.p)
            and qv.is_intertwiner(s, fm, fq_, self.doubled_arrows, self.p)
            and qv.is_injective(i, self.p)
            and qv.is_surjective(s, self.p)
            and qv.is_zero_morphism(qv.compose(s, i, self.p))
        )

    def ses_image_additivity_check(
        self, sub: ZTwoComplex, mid: ZTwoComplex, quotient: ZTwoComplex, i: Morphism, s: Morphism
    ) -> bool:
        """Image classes add along a short exact sequence with an acyclic end."""
        if not self.is_exact(sub, mid, quotient, i, s):
            raise PreconditionError("The given maps do not form a short exact sequence of complexes")
        if not (self.is_acyclic(sub) or self.is_acyclic(quotient)):
            raise PreconditionError("Image additivity needs an acyclic sub or quotient complex")
        a_sub, b_sub = self.image_classes(sub)
        a_mid, b_mid = self.image_classes(mid)
        a_quot, b_quot = self.image_classes(quotient)
        return a_mid == qv.k0_add(a_sub, a_quot) and b_mid == qv.k0_add(b_sub, b_quot)

    def split_sequence(self, x: ZTwoComplex, y: ZTwoComplex) -> Tuple[ZTwoComplex, Morphism, Morphism]:
        """``x -> x (+) y -> y`` with the canonical maps."""
        mid = self.direct_sum(x, y)
        fx, fy = self.flatten(x), self.flatten(y)
        inc = tuple(np.concatenate([fq.identity(a), fq.zeros(b, a)], axis=0) for a, b in zip(fx.dim, fy.dim))
        proj = tuple(np.concatenate([fq.zeros(b, a), fq.identity(b)], axis=1) for a, b in zip(fx.dim, fy.dim))
        return mid, inc, proj

    # -- Euler pairing of generators -------------------------------------------------

    def pairing_exponent(self, left: GeneratorKind, alpha: K0Class, right: GeneratorKind, beta: K0Class) -> int:
        """Exponent e with q^e = <left_alpha, right_beta> for generator complexes, one side acyclic."""
        if not (left.acyclic or right.acyclic):
            raise PreconditionError(f"Pairing of {left.value} and {right.value} needs an acyclic side")
        if (left, right) in _VANISHING_PAIRS:
            return 0
        return self.provider.euler_exponent(alpha, beta)

    def measured_pairing_exponent(self, x: ZTwoComplex, y: ZTwoComplex) -> int:
        """dim Hom(x, y) - dim Ext^1(x, y) in the complex category."""
        return self.complex_hom_dim(x, y) - self.complex_ext1_dim(x, y)

    def componentwise_exponent(self, x: ZTwoComplex, y: ZTwoComplex) -> int:
        e = self.provider.euler_exponent
        return e(x.m0.dim, y.m0.dim) + e(x.m1.dim, y.m1.dim)
