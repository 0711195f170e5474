"""Element literals accepted on the command line.

Factors are joined by ``*``; an optional leading integer or fraction scales
the product.  Modified Hall algebra factors are ``[C_x]``, ``[C*_x]``,
``K_(a,b)`` and ``K*_(a,b)``; extended Hall algebra factors are ``[x]`` and
``k_(a,b)``.  A class reference ``x`` is an id, ``S<i>`` for the simple at
vertex ``i``, ``S`` on one-vertex quivers, or a class label.  Complexes are
given as JSON objects with keys ``M0``, ``M1``, ``d0`` and ``d1``.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Tuple

from hallforge.double import ExtendedHallAlgebra, HeElt
from hallforge.errors import ConfigError, PreconditionError
from hallforge.heredcat.base import CategoryProvider, IsoClass
from hallforge.mrh import ModifiedHallAlgebra, MRHElt
from hallforge.ztwo import ComplexCategory, ZTwoComplex

_FACTOR = re.compile(
    r"""
    \s*(?:
        (?P<coeff>-?\d+(?:/\d+)?)(?![_\d])
      | \[(?P<stalk>C\*?)_(?P<ref>[^\]]+)\]
      | \[(?P<plain>[^\]]+)\]
      | (?P<torus>K\*|K|k)_(?:\((?P<vec>[^)]*)\)|(?P<bare>-?\d+))
    )\s*
    """,
    re.VERBOSE,
)
_SEPARATOR = re.compile(r"\s*\*\s*")
_SIMPLE = re.compile(r"S(\d*)")

Factor = Tuple[str, object]


def tokenize(text: str) -> List[Factor]:
    text = text.strip()
    if not text:
        raise ConfigError("Empty element literal")
    factors: List[Factor] = []
    pos = 0
    while pos < len(text):
        match = _FACTOR.match(text, pos)
        if match is None or match.end() == pos:
            raise ConfigError(f"Cannot parse literal {text!r} at position {pos}")
        if match.group("coeff") is not None:
            if factors:
                raise ConfigError(f"Coefficient must lead the literal {text!r}")
            factors.append(("coeff", Fraction(match.group("coeff"))))
        elif match.group("stalk") is not None:
            factors.append((match.group("stalk"), match.group("ref").strip()))
        elif match.group("plain") is not None:
            factors.append(("H", match.group("plain").strip()))
        else:
            raw = match.group("vec") if match.group("vec") is not None else match.group("bare")
            try:
                vector = tuple(int(x) for x in raw.split(",") if x.strip())
            except ValueError as exc:
                raise ConfigError(f"Bad torus exponent {raw!r} in {text!r}") from exc
            factors.append((match.group("torus"), vector))
        pos = match.end()
        sep = _SEPARATOR.match(text, pos)
        if sep is not None and sep.end() > pos:
            pos = sep.end()
        elif pos < len(text):
            raise ConfigError(f"Expected '*' at position {pos} of {text!r}")
    return factors


def resolve_class(provider: CategoryProvider, ref: str) -> IsoClass:
    if ref.isdigit():
        try:
            return provider.class_by_id(int(ref))
        except KeyError as exc:
            raise PreconditionError(f"Unknown class id {ref}") from exc
    simple = _SIMPLE.fullmatch(ref)
    if simple is not None:
        if not simple.group(1):
            if provider.n != 1:
                raise PreconditionError("Bare 'S' is only allowed on one-vertex quivers; use S<i>")
            return provider.simple(0)
        vertex = int(simple.group(1))
        if vertex >= provider.n:
            raise PreconditionError(f"No vertex {vertex} in a quiver with {provider.n} vertices")
        return provider.simple(vertex)
    for cls in provider.known_classes():
        if cls.label == ref:
            return cls
    raise PreconditionError(f"Unknown class reference {ref!r}")


def _torus(provider: CategoryProvider, vector: Tuple[int, ...]) -> Tuple[int, ...]:
    if len(vector) != provider.n:
        raise ConfigError(f"Torus exponent {list(vector)} needs {provider.n} entries")
    return vector


def parse_mrh(text: str, mrh: ModifiedHallAlgebra) -> MRHElt:
    provider = mrh.provider
    coeff = Fraction(1)
    factors: List[MRHElt] = []
    for kind, value in tokenize(text):
        if kind == "coeff":
            coeff = value
        elif kind == "C":
            factors.append(mrh.iplus(resolve_class(provider, value)))
        elif kind == "C*":
            factors.append(mrh.iminus(resolve_class(provider, value)))
        elif kind == "K":
            factors.append(mrh.torus(alpha=_torus(provider, value)))
        elif kind == "K*":
            factors.append(mrh.torus(beta=_torus(provider, value)))
        else:
            raise ConfigError(f"Factor '{kind}' does not belong to the modified Hall algebra")
    return mrh.product(factors).scale(coeff)


def parse_he(text: str, he: ExtendedHallAlgebra) -> HeElt:
    provider = he.provider
    coeff = Fraction(1)
    factors: List[HeElt] = []
    for kind, value in tokenize(text):
        if kind == "coeff":
            coeff = value
        elif kind == "H":
            factors.append(he.basis(resolve_class(provider, value)))
        elif kind == "k":
            factors.append(he.k(_torus(provider, value)))
        else:
            raise ConfigError(f"Factor '{kind}' does not belong to the extended Hall algebra")
    return he.product(factors).scale(coeff)


def parse_complex(text: str, complexes: ComplexCategory, base_dir: Optional[Path] = None) -> ZTwoComplex:
    """A complex from inline JSON or from a JSON file."""
    raw = text.strip()
    if not raw.startswith("{"):
        path = Path(raw)
        if not path.is_absolute() and base_dir is not None:
            path = base_dir / path
        try:
            raw = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"Cannot read complex {text!r}: {exc}") from exc
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"Complex literal is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ConfigError("Complex literal must be a JSON object")
    return complexes.from_json(doc)
