"""Finite-support linear combinations with exact coefficients.

Keys are hashable, totally ordered tuples; coefficients are ``Scalar`` over a
fixed ``q``.  Zero coefficients never appear in the support.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Dict, Generic, Hashable, Iterable, Iterator, Mapping, Tuple, TypeVar, Union

from hallforge.exactnum import Scalar

K = TypeVar("K", bound=Hashable)
Coefficient = Union[int, Fraction, Scalar]


class Combination(Generic[K]):
    __slots__ = ("q", "_terms")

    def __init__(self, q: int, terms: Union[Mapping[K, Coefficient], Iterable[Tuple[K, Coefficient]], None] = None):
        self.q = q
        self._terms: Dict[K, Scalar] = {}
        if terms is None:
            return
        items = terms.items() if isinstance(terms, Mapping) else terms
        for key, coeff in items:
            self.add_term(key, Scalar.of(coeff, q))

    def add_term(self, key: K, coeff: Scalar) -> None:
        if coeff.is_zero():
            return
        total = self._terms.get(key)
        total = coeff if total is None else total + coeff
        if total.is_zero():
            self._terms.pop(key, None)
        else:
            self._terms[key] = total

    @classmethod
    def single(cls, q: int, key: K, coeff: Coefficient = 1) -> "Combination[K]":
        return cls(q, [(key, coeff)])

    # -- container protocol ------------------------------------------------

    def __iter__(self) -> Iterator[Tuple[K, Scalar]]:
        return iter(self.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __contains__(self, key: object) -> bool:
        return key in self._terms

    def coefficient(self, key: K) -> Scalar:
        return self._terms.get(key, Scalar.zero(self.q))

    def keys(self):
        return sorted(self._terms)

    def items(self):
        return sorted(self._terms.items(), key=lambda kv: kv[0])

    def is_zero(self) -> bool:
        return not self._terms

    # -- vector space ------------------------------------------------------

    def _check(self, other: "Combination") -> None:
        if self.q != other.q:
            raise ValueError(f"Cannot combine elements over q={self.q} and q={other.q}")

    def __add__(self, other: "Combination[K]") -> "Combination[K]":
        self._check(other)
        out = self.copy()
        for key, coeff in other._terms.items():
            out.add_term(key, coeff)
        return out

    def __neg__(self) -> "Combination[K]":
        return self.scale(-1)

    def __sub__(self, other: "Combination[K]") -> "Combination[K]":
        return self + (-other)

    def scale(self, factor: Coefficient) -> "Combination[K]":
        factor = Scalar.of(factor, self.q)
        out = self.__class__(self.q)
        if factor.is_zero():
            return out
        for key, coeff in self._terms.items():
            out._terms[key] = coeff * factor
        return out

    def __rmul__(self, factor: Coefficient) -> "Combination[K]":
        if isinstance(factor, (int, Fraction, Scalar)):
            return self.scale(factor)
        return NotImplemented

    def copy(self) -> "Combination[K]":
        out = self.__class__(self.q)
        out._terms = dict(self._terms)
        return out

    def map_keys(self, fn: Callable[[K], K]) -> "Combination[K]":
        out = self.__class__(self.q)
        for key, coeff in self._terms.items():
            out.add_term(fn(key), coeff)
        return out

    @classmethod
    def sum(cls, q: int, parts: Iterable["Combination[K]"]) -> "Combination[K]":
        out = cls(q)
        for part in parts:
            out._check(part)
            for key, coeff in part._terms.items():
                out.add_term(key, coeff)
        return out

    def bilinear(
        self,
        other: "Combination",
        product: Callable[[K, K], "Combination[K]"],
    ) -> "Combination[K]":
        """Extend a product of basis keys bilinearly."""
        self._check(other)
        out = self.__class__(self.q)
        for k1, c1 in self.items():
            for k2, c2 in other.items():
                coeff = c1 * c2
                for key, c in product(k1, k2)._terms.items():
                    out.add_term(key, c * coeff)
        return out

    # -- comparison ----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Combination):
            return NotImplemented
        return self.q == other.q and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.q, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        if not self._terms:
            return f"{self.__class__.__name__}(0)"
        body = " + ".join(f"({coeff})*{key}" for key, coeff in self.items())
        return f"{self.__class__.__name__}({body})"
