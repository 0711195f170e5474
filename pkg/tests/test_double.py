from __future__ import annotations

from fractions import Fraction

import pytest

from hallforge.double import He2Key, HeKey
from hallforge.errors import PreconditionError
from hallforge.exactnum import Scalar, v_pow


def test_product_of_simples_a1(a1_q3):
    he, provider = a1_q3.he, a1_q3.provider
    s = provider.simple(0)
    (k2,) = provider.classes_of_dim((2,))
    value = he.he_mul(he.basis(s), he.basis(s))
    assert value == he.basis(k2, coeff=v_pow(1, 3) * Scalar.of(Fraction(1, 3), 3))


def test_torus_commutes_through_with_twist(a2_q2):
    he, provider = a2_q2.he, a2_q2.provider
    s1 = provider.simple(1)
    value = he.he_mul(he.k((1, 0)), he.basis(s1))
    assert value == he.basis(s1, alpha=(1, 0), coeff=v_pow(-1, 2))


def test_coproduct_of_simple(a1_q2):
    he = a1_q2.he
    s, zero = a1_q2.provider.simple(0), a1_q2.provider.zero
    expected = he.tensor(he.basis(s), he.unit()) + he.tensor(he.k((1,)), he.basis(s))
    assert he.coproduct(he.basis(s)) == expected
    assert He2Key(HeKey(s.id, (0,)), HeKey(zero.id, (0,))) in he.coproduct(he.basis(s))


def test_counit(a1_q2):
    he, s = a1_q2.he, a1_q2.provider.simple(0)
    assert he.counit(he.unit()) == 1
    assert he.counit(he.k((3,))) == 1
    assert he.counit(he.basis(s)) == 0
    x = he.basis(s) + he.k((1,)).scale(2)
    assert he.counit_left(he.coproduct(x)) == x
    assert he.counit_right(he.coproduct(x)) == x


def test_pairing_values(a1_q3):
    he, provider = a1_q3.he, a1_q3.provider
    s = provider.simple(0)
    (k2,) = provider.classes_of_dim((2,))
    assert he.pairing(he.basis(s), he.basis(s)) == 2
    assert he.pairing(he.basis(s), he.basis(k2)) == 0
    assert he.pairing(he.k((1,)), he.k((1,))) == v_pow(2, 3)
    assert he.pairing(he.k((1,)), he.k((-1,))) == v_pow(-2, 3)


@pytest.mark.parametrize("fixture", ["a1_q2", "a1_q3", "jordan_q2"])
def test_hopf_pairing_on_simples(fixture, request):
    ctx = request.getfixturevalue(fixture)
    he, provider = ctx.he, ctx.provider
    s = provider.simple(0)
    for m in provider.classes_of_dim((2,)):
        assert he.verify_hopf_pairing(he.basis(s), he.basis(s), he.basis(m))
    assert he.verify_hopf_pairing(he.k((1,)), he.basis(s), he.basis(s, alpha=(-1,)))


@pytest.mark.parametrize("fixture", ["a1_q2", "a2_q2", "jordan_q2"])
def test_green_compatibility(fixture, request):
    ctx = request.getfixturevalue(fixture)
    he = ctx.he
    window = ctx.classes(1)
    for a in window:
        for b in window:
            assert he.verify_green(he.basis(a, alpha=a.dim), he.basis(b))


def test_embeddings_are_multiplicative(a1_q2):
    he, mrh, s = a1_q2.he, a1_q2.mrh, a1_q2.provider.simple(0)
    x, y = he.basis(s), he.basis(s, alpha=(1,))
    assert he.embed_plus(he.he_mul(x, y)) == mrh.mul(he.embed_plus(x), he.embed_plus(y))
    assert he.embed_minus(he.he_mul(x, y)) == mrh.mul(he.embed_minus(x), he.embed_minus(y))


def test_double_relation_on_simples(a1_q2):
    he, s = a1_q2.he, a1_q2.provider.simple(0)
    key = HeKey(s.id, (0,))
    report = he.verify_d3(key, key)
    assert report.equal
    assert len(report.lhs) == 2
    assert report.to_json()["equal"] is True


@pytest.mark.parametrize("fixture", ["a2_q2", "jordan_q2"])
def test_double_relation_on_window(fixture, request):
    ctx = request.getfixturevalue(fixture)
    he = ctx.he
    window = ctx.classes(1)
    for a in window:
        for b in window:
            assert he.verify_d3(HeKey(a.id, a.dim), HeKey(b.id, ctx.small_torus()[-1])).equal


def test_differential_census_of_simples(jordan_q2):
    he, s = jordan_q2.he, jordan_q2.provider.simple(0)
    census = he.differential_census(s, s)
    assert sum(census.values()) == 3


def test_uv_counts_jordan(jordan_q2):
    he, provider = jordan_q2.he, jordan_q2.provider
    s, zero = provider.simple(0), provider.zero
    assert he.count_U(s, s, zero, zero, (1,)) == 1
    assert he.count_V(s, s, zero, zero, (0,)) == 1
    assert he.count_U_formula(s, s, zero, zero, (1,)) == 1
    assert he.verify_uv_identity(s, s, zero, zero, (1,), (0,))
    report = he.uv_report(s, s, s, s, (0,), (0,))
    assert report.passed
    assert report.u_count == 1


def test_uv_rejects_inconsistent_dimensions(jordan_q2):
    he, provider = jordan_q2.he, jordan_q2.provider
    s, zero = provider.simple(0), provider.zero
    with pytest.raises(PreconditionError):
        he.uv_report(s, s, zero, zero, (1,), (1,))
