from __future__ import annotations

from fractions import Fraction

import pytest

from hallforge import literals
from hallforge.errors import ConfigError, PreconditionError


def test_tokenize():
    assert literals.tokenize("2/3 * [C_S0]*K*_(1,0) * k_2") == [
        ("coeff", Fraction(2, 3)),
        ("C", "S0"),
        ("K*", (1, 0)),
        ("k", (2,)),
    ]


@pytest.mark.parametrize("text", ["", "[C_S0] [C_S1]", "[C_S0]*3", "K_(a)", "??"])
def test_tokenize_rejects(text):
    with pytest.raises(ConfigError):
        literals.tokenize(text)


def test_resolve_class(a2_q2, a1_q2):
    provider = a2_q2.provider
    assert literals.resolve_class(provider, "S1") == provider.simple(1)
    assert literals.resolve_class(provider, str(provider.zero.id)) == provider.zero
    projective = [c for c in provider.classes_of_dim((1, 1))][0]
    assert literals.resolve_class(provider, projective.label) == projective
    assert literals.resolve_class(a1_q2.provider, "S") == a1_q2.provider.simple(0)
    with pytest.raises(PreconditionError):
        literals.resolve_class(provider, "S")
    with pytest.raises(PreconditionError):
        literals.resolve_class(provider, "S7")
    with pytest.raises(PreconditionError):
        literals.resolve_class(provider, "nowhere")


def test_parse_mrh(a1_q2):
    mrh, s = a1_q2.mrh, a1_q2.provider.simple(0)
    assert literals.parse_mrh("[C_S]*[C*_S]", mrh) == mrh.monomial(a=s, b=s)
    assert literals.parse_mrh("-1*K_(1)", mrh) == mrh.torus(alpha=(1,)).scale(-1)
    with pytest.raises(ConfigError):
        literals.parse_mrh("[S]", mrh)
    with pytest.raises(ConfigError):
        literals.parse_mrh("K_(1,0)", mrh)


def test_parse_he(a1_q2):
    he, s = a1_q2.he, a1_q2.provider.simple(0)
    assert literals.parse_he("[S]*k_(1)", he) == he.basis(s, alpha=(1,))
    with pytest.raises(ConfigError):
        literals.parse_he("[C_S]", he)


def test_parse_complex_inline_and_file(a1_q2, tmp_path):
    text = '{"M0": {"dim": [1]}, "M1": {"dim": [0]}}'
    inline = literals.parse_complex(text, a1_q2.complexes)
    path = tmp_path / "stalk.json"
    path.write_text(text, encoding="utf-8")
    from_file = literals.parse_complex("stalk.json", a1_q2.complexes, tmp_path)
    assert inline == from_file
    assert a1_q2.complexes.is_isomorphic(inline, a1_q2.complexes.make_Cstar(a1_q2.provider.simple(0).representative))
    with pytest.raises(ConfigError):
        literals.parse_complex("{not json", a1_q2.complexes)
