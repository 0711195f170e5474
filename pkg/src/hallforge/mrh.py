"""Twisted modified Ringel-Hall algebra of Z/2-graded complexes.

Elements are combinations of normal-order monomials
``[C_A] * [C*_B] * K_alpha * K*_beta`` keyed by ``(A.id, B.id, alpha, beta)``.
Products are computed by rewriting: the torus of the left factor passes to
the right, the middle ``[C*_B1] * [C_A2]`` is swapped through the morphisms
``B1 -> A2``, direct-sum symbols are expanded triangularly, and the two
stalk copies multiply by twisted Hall products.
"""

from __future__ import annotations

from threading import RLock
from typing import Any, Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from hallforge.combination import Combination
from hallforge.exactnum import Scalar, v_pow
from hallforge.heredcat import quiver as qv
from hallforge.heredcat.base import CategoryProvider, IsoClass
from hallforge.heredcat.quiver import K0Class
from hallforge.logging import get_logger
from hallforge.ztwo import ComplexCategory, ZTwoComplex

logger = get_logger(__name__)


class TorusExp(NamedTuple):
    alpha: K0Class
    beta: K0Class


class NFBasisElt(NamedTuple):
    """Class ids of the two stalk factors and the torus exponents."""

    a: int
    b: int
    alpha: K0Class
    beta: K0Class

    @property
    def torus(self) -> TorusExp:
        return TorusExp(self.alpha, self.beta)


class ReducedKey(NamedTuple):
    a: int
    b: int
    gamma: K0Class


class MRHElt(Combination[NFBasisElt]):
    def to_records(self) -> List[Dict[str, Any]]:
        return [
            {
                "A": key.a,
                "B": key.b,
                "alpha": list(key.alpha),
                "beta": list(key.beta),
                "coeff": coeff.to_json(),
            }
            for key, coeff in self.items()
        ]

    def total_stalk_dims(self, provider: CategoryProvider) -> List[int]:
        return [
            provider.class_by_id(key.a).total_dim + provider.class_by_id(key.b).total_dim for key in self.keys()
        ]


class ReducedElt(Combination[ReducedKey]):
    def to_records(self) -> List[Dict[str, Any]]:
        return [
            {"A": key.a, "B": key.b, "gamma": list(key.gamma), "coeff": coeff.to_json()}
            for key, coeff in self.items()
        ]


class ModifiedHallAlgebra:
    def __init__(self, provider: CategoryProvider, complexes: Optional[ComplexCategory] = None):
        self.provider = provider
        self.complexes = complexes or ComplexCategory(provider)
        self.q = provider.q
        self.n = provider.n
        self._lock = RLock()
        self._products: Dict[Tuple[NFBasisElt, NFBasisElt], MRHElt] = {}
        self._pairs: Dict[Tuple[int, int], MRHElt] = {}
        self._twisted: Dict[Tuple[int, int], Dict[int, Scalar]] = {}

    # -- constructors --------------------------------------------------------

    def _k0(self, value: Optional[Sequence[int]]) -> K0Class:
        if value is None:
            return qv.k0_zero(self.n)
        value = tuple(int(x) for x in value)
        if len(value) != self.n:
            raise ValueError(f"Expected a class of length {self.n}, got {list(value)}")
        return value

    def zero(self) -> MRHElt:
        return MRHElt(self.q)

    def monomial(
        self,
        a: Optional[IsoClass] = None,
        b: Optional[IsoClass] = None,
        alpha: Optional[Sequence[int]] = None,
        beta: Optional[Sequence[int]] = None,
        coeff: Any = 1,
    ) -> MRHElt:
        zero = self.provider.zero
        key = NFBasisElt((a or zero).id, (b or zero).id, self._k0(alpha), self._k0(beta))
        return MRHElt.single(self.q, key, coeff)

    def unit(self) -> MRHElt:
        return self.monomial()

    def iplus(self, a: IsoClass) -> MRHElt:
        return self.monomial(a=a)

    def iminus(self, b: IsoClass) -> MRHElt:
        return self.monomial(b=b)

    def torus(self, alpha: Optional[Sequence[int]] = None, beta: Optional[Sequence[int]] = None) -> MRHElt:
        return self.monomial(alpha=alpha, beta=beta)

    # -- products --------------------------------------------------------------

    def v(self, k: int) -> Scalar:
        return v_pow(k, self.q)

    def mul(self, x: MRHElt, y: MRHElt) -> MRHElt:
        return x.bilinear(y, self.mul_monomials)

    def product(self, factors: Iterable[MRHElt]) -> MRHElt:
        result = self.unit()
        for factor in factors:
            result = self.mul(result, factor)
        return result

    def passage_exponent(self, torus: TorusExp, a_dim: K0Class, b_dim: K0Class) -> int:
        """v-exponent for moving ``K_alpha K*_beta`` right across ``[C_A][C*_B]``."""
        return self.provider.sym_exponent(qv.k0_sub(torus.alpha, torus.beta), qv.k0_sub(a_dim, b_dim))

    def hall_twisted(self, a: IsoClass, b: IsoClass) -> Dict[int, Scalar]:
        """Twisted Hall product of one stalk copy: class id of M to v^{<A,B>} hall(A, B, M)."""
        key = (a.id, b.id)
        with self._lock:
            cached = self._twisted.get(key)
        if cached is not None:
            return cached
        twist = self.v(self.provider.euler_exponent(a.dim, b.dim))
        table = {m.id: twist * Scalar.of(c, self.q) for m, c in self.provider.hall_product(a, b).items()}
        with self._lock:
            self._twisted[key] = table
        return table

    def mul_monomials(self, left: NFBasisElt, right: NFBasisElt) -> MRHElt:
        key = (left, right)
        with self._lock:
            cached = self._products.get(key)
        if cached is not None:
            return cached
        result = self._mul_monomials(left, right)
        with self._lock:
            self._products[key] = result
        return result

    def _mul_monomials(self, left: NFBasisElt, right: NFBasisElt) -> MRHElt:
        provider = self.provider
        zero_id = provider.zero.id
        a1, b1 = provider.class_by_id(left.a), provider.class_by_id(left.b)
        a2, b2 = provider.class_by_id(right.a), provider.class_by_id(right.b)
        alpha = qv.k0_add(left.alpha, right.alpha)
        beta = qv.k0_add(left.beta, right.beta)
        prefactor = self.passage_exponent(left.torus, a2.dim, b2.dim)

        if left.a == zero_id and left.b == zero_id:
            return MRHElt.single(self.q, NFBasisElt(right.a, right.b, alpha, beta), self.v(prefactor))
        if right.a == zero_id and right.b == zero_id:
            return MRHElt.single(self.q, NFBasisElt(left.a, left.b, alpha, beta))

        e = provider.euler_exponent
        sym = provider.sym_exponent
        out = MRHElt(self.q)
        for term in provider.cross_table(b1, a2):
            image = term.image_dim
            swap = e(term.cokernel.dim, image) - e(term.kernel.dim, image)
            pair = self.expand_pair(term.cokernel, term.kernel)
            for pkey, pcoeff in pair.items():
                a_mid, b_mid = provider.class_by_id(pkey.a), provider.class_by_id(pkey.b)
                gamma = pkey.beta
                exponent = prefactor + swap + sym(b2.dim, gamma) - sym(image, b2.dim)
                base = pcoeff * term.count * self.v(exponent)
                lefts = self.hall_twisted(a1, a_mid)
                rights = self.hall_twisted(b_mid, b2)
                torus_alpha = qv.k0_add(alpha, image)
                torus_beta = qv.k0_add(beta, gamma)
                for m_id, cm in lefts.items():
                    for n_id, cn in rights.items():
                        out.add_term(NFBasisElt(m_id, n_id, torus_alpha, torus_beta), base * cm * cn)
        return out

    def expand_pair(self, x: IsoClass, y: IsoClass) -> MRHElt:
        """Normal-order expansion of the direct-sum class [C_x (+) C*_y]."""
        key = (x.id, y.id)
        with self._lock:
            cached = self._pairs.get(key)
        if cached is not None:
            return cached
        provider = self.provider
        e = provider.euler_exponent
        result = self.monomial(a=x, b=y)
        for term in provider.cross_table(x, y):
            image = term.image_dim
            if not any(image):
                continue
            coeff = self.v(e(term.cokernel.dim, image) - e(term.kernel.dim, image)) * term.count
            inner = self.expand_pair(term.kernel, term.cokernel)
            shifted = inner.map_keys(lambda k: NFBasisElt(k.a, k.b, k.alpha, qv.k0_add(k.beta, image)))
            result = result - shifted.scale(coeff)
        with self._lock:
            self._pairs[key] = result
        return result

    # -- complexes -------------------------------------------------------------

    def reduce_complex(self, c: ZTwoComplex) -> MRHElt:
        """Image of the class of ``c`` in the normal-order basis."""
        alpha, beta = self.complexes.image_classes(c)
        h0, h1 = self.complexes.homology(c)
        e = self.provider.euler_exponent
        sym = self.provider.sym_exponent
        base = e(alpha, h0.dim) - e(beta, h0.dim) - e(alpha, h1.dim) + e(beta, h1.dim)
        moving = qv.k0_sub(alpha, beta)
        out = MRHElt(self.q)
        for key, coeff in self.expand_pair(h1, h0).items():
            a_dim = self.provider.class_by_id(key.a).dim
            b_dim = self.provider.class_by_id(key.b).dim
            exponent = base + sym(moving, qv.k0_sub(a_dim, b_dim))
            out.add_term(NFBasisElt(key.a, key.b, alpha, qv.k0_add(beta, key.beta)), coeff * self.v(exponent))
        return out

    def oracle_mul(self, m: ZTwoComplex, n: ZTwoComplex) -> MRHElt:
        """Twisted Hall product of two complexes, reduced term by term."""
        space = self.complexes.extension_space(n, m)
        twist = self.complexes.componentwise_exponent(m, n) - 2 * space.overlap
        parts = (
            self.reduce_complex(self.complexes.unflatten(rep))
            for rep in space.structures(self.caps.complex_scan, "complex_scan")
        )
        return MRHElt.sum(self.q, parts).scale(self.v(twist))

    def oracle_mul_grouped(self, m: ZTwoComplex, n: ZTwoComplex) -> MRHElt:
        """Same product, grouping middle terms by isomorphism and weighting by ``complex_ext1_coeff``."""
        twist = self.v(self.complexes.componentwise_exponent(m, n))
        out = MRHElt(self.q)
        for x, _ in self.complexes.middle_terms(m, n):
            coeff = self.complexes.complex_ext1_coeff(m, n, x)
            out = out + self.reduce_complex(x).scale(twist * Scalar.of(coeff, self.q))
        return out

    @property
    def caps(self):
        return self.provider.caps

    # -- reduced quotient ------------------------------------------------------

    def to_reduced(self, x: MRHElt) -> ReducedElt:
        out = ReducedElt(self.q)
        for key, coeff in x.items():
            out.add_term(ReducedKey(key.a, key.b, qv.k0_sub(key.alpha, key.beta)), coeff)
        return out

    def lift(self, x: ReducedElt) -> MRHElt:
        out = MRHElt(self.q)
        for key, coeff in x.items():
            alpha = tuple(max(g, 0) for g in key.gamma)
            beta = tuple(max(-g, 0) for g in key.gamma)
            out.add_term(NFBasisElt(key.a, key.b, alpha, beta), coeff)
        return out

    def reduced_mul(self, x: ReducedElt, y: ReducedElt) -> ReducedElt:
        return self.to_reduced(self.mul(self.lift(x), self.lift(y)))

    # -- display -----------------------------------------------------------------

    def describe_key(self, key: NFBasisElt) -> str:
        provider = self.provider
        zero_id = provider.zero.id
        parts = []
        if key.a != zero_id:
            parts.append(f"[C_{provider.class_by_id(key.a).label}]")
        if key.b != zero_id:
            parts.append(f"[C*_{provider.class_by_id(key.b).label}]")
        if any(key.alpha):
            parts.append(f"K_({','.join(str(x) for x in key.alpha)})")
        if any(key.beta):
            parts.append(f"K*_({','.join(str(x) for x in key.beta)})")
        return "*".join(parts) or "1"

    def describe(self, x: MRHElt) -> str:
        if x.is_zero():
            return "0"
        return " + ".join(f"({coeff})*{self.describe_key(key)}" for key, coeff in x.items())

