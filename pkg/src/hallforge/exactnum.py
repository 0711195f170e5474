"""Exact arithmetic in Q(sqrt(q)).

Every twist in the engine is an integer power of ``v = sqrt(q)``, so the
coefficient field only ever needs elements ``a + b*sqrt(q)`` with rational
``a`` and ``b``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import isqrt
from typing import Dict, Union

Rational = Union[int, Fraction]


def _fraction_str(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class Scalar:
    """The value ``a + b*sqrt(q)``; perfect-square ``q`` is folded so ``b == 0``."""

    a: Fraction
    b: Fraction
    q: int

    def __post_init__(self) -> None:
        if self.q < 1:
            raise ValueError(f"q must be positive, got {self.q}")
        a = Fraction(self.a)
        b = Fraction(self.b)
        root = isqrt(self.q)
        if b and root * root == self.q:
            a += b * root
            b = Fraction(0)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @classmethod
    def of(cls, value: Union[Rational, "Scalar"], q: int) -> "Scalar":
        if isinstance(value, Scalar):
            if value.q != q:
                raise ValueError(f"Scalar over q={value.q} used where q={q} expected")
            return value
        return cls(Fraction(value), Fraction(0), q)

    @classmethod
    def zero(cls, q: int) -> "Scalar":
        return cls(Fraction(0), Fraction(0), q)

    @classmethod
    def one(cls, q: int) -> "Scalar":
        return cls(Fraction(1), Fraction(0), q)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def is_rational(self) -> bool:
        return self.b == 0

    def _coerce(self, other: object) -> "Scalar":
        if isinstance(other, Scalar):
            if other.q != self.q:
                raise ValueError(f"Cannot combine scalars over q={self.q} and q={other.q}")
            return other
        if isinstance(other, (int, Fraction)):
            return Scalar(Fraction(other), Fraction(0), self.q)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: object) -> "Scalar":
        rhs = self._coerce(other)
        if rhs is NotImplemented:
            return NotImplemented
        return Scalar(self.a + rhs.a, self.b + rhs.b, self.q)

    __radd__ = __add__

    def __neg__(self) -> "Scalar":
        return Scalar(-self.a, -self.b, self.q)

    def __sub__(self, other: object) -> "Scalar":
        rhs = self._coerce(other)
        if rhs is NotImplemented:
            return NotImplemented
        return Scalar(self.a - rhs.a, self.b - rhs.b, self.q)

    def __rsub__(self, other: object) -> "Scalar":
        lhs = self._coerce(other)
        if lhs is NotImplemented:
            return NotImplemented
        return lhs - self

    def __mul__(self, other: object) -> "Scalar":
        rhs = self._coerce(other)
        if rhs is NotImplemented:
            return NotImplemented
        return Scalar(
            self.a * rhs.a + self.q * self.b * rhs.b,
            self.a * rhs.b + self.b * rhs.a,
            self.q,
        )

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        norm = self.a * self.a - self.q * self.b * self.b
        if norm == 0:
            raise ZeroDivisionError("Scalar inverse of zero")
        return Scalar(self.a / norm, -self.b / norm, self.q)

    def __truediv__(self, other: object) -> "Scalar":
        rhs = self._coerce(other)
        if rhs is NotImplemented:
            return NotImplemented
        return self * rhs.inverse()

    def __rtruediv__(self, other: object) -> "Scalar":
        lhs = self._coerce(other)
        if lhs is NotImplemented:
            return NotImplemented
        return lhs * self.inverse()

    def __pow__(self, exponent: int) -> "Scalar":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = Scalar.one(self.q)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Scalar):
            return (self.a, self.b, self.q) == (other.a, other.b, other.q)
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.q))

    def to_json(self) -> Dict[str, str]:
        return {"a": _fraction_str(self.a), "b": _fraction_str(self.b)}

    @classmethod
    def from_json(cls, payload: Dict[str, str], q: int) -> "Scalar":
        return cls(Fraction(payload["a"]), Fraction(payload["b"]), q)

    def __str__(self) -> str:
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}*v"
        return f"{self.a} + {self.b}*v"


@lru_cache(maxsize=4096)
def v_pow(k: int, q: int) -> Scalar:
    """Return ``q**(k/2)`` exactly."""
    if k % 2 == 0:
        return Scalar(Fraction(q) ** (k // 2), Fraction(0), q)
    return Scalar(Fraction(0), Fraction(q) ** ((k - 1) // 2), q)
