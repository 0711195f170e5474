from __future__ import annotations

from itertools import product

import pytest

from hallforge.exactnum import v_pow
from hallforge.mrh import NFBasisElt, ReducedKey

STALK = {"M0": {"dim": [2], "maps": []}, "M1": {"dim": [1], "maps": []}, "d0": [[[1, 0]]], "d1": [[[0], [0]]]}


@pytest.fixture(params=["a1_q2", "a1_q3", "jordan_q2"])
def one_vertex(request):
    return request.getfixturevalue(request.param)


def test_normal_order_product_is_a_single_monomial(one_vertex):
    mrh, s = one_vertex.mrh, one_vertex.provider.simple(0)
    assert mrh.mul(mrh.iplus(s), mrh.iminus(s)) == mrh.monomial(a=s, b=s)


def test_commutator_of_stalk_generators(one_vertex):
    mrh, s, q = one_vertex.mrh, one_vertex.provider.simple(0), one_vertex.q
    value = mrh.mul(mrh.iminus(s), mrh.iplus(s))
    expected = mrh.monomial(a=s, b=s) + mrh.torus(alpha=(1,)).scale(q - 1) - mrh.torus(beta=(1,)).scale(q - 1)
    assert value == expected
    assert len(value) == 3


def test_expand_pair(one_vertex):
    mrh, provider, q = one_vertex.mrh, one_vertex.provider, one_vertex.q
    s = provider.simple(0)
    assert mrh.expand_pair(s, s) == mrh.monomial(a=s, b=s) - mrh.torus(beta=(1,)).scale(q - 1)
    assert mrh.expand_pair(s, provider.zero) == mrh.iplus(s)
    assert mrh.expand_pair(provider.zero, s) == mrh.iminus(s)


def test_unit_and_torus_multiplication(a2_q2):
    mrh = a2_q2.mrh
    x = mrh.mul(mrh.iplus(a2_q2.provider.simple(0)), mrh.iminus(a2_q2.provider.simple(1)))
    assert mrh.mul(mrh.unit(), x) == x
    assert mrh.mul(x, mrh.unit()) == x
    k = mrh.torus(alpha=(1, 0))
    k_inv = mrh.torus(alpha=(-1, 0))
    assert mrh.mul(k, k_inv) == mrh.unit()


def test_torus_passes_with_symmetric_form(a2_q2):
    mrh, provider = a2_q2.mrh, a2_q2.provider
    s1 = provider.simple(1)
    moved = mrh.mul(mrh.torus(alpha=(1, 0)), mrh.iplus(s1))
    expected_exponent = provider.sym_exponent((1, 0), (0, 1))
    assert moved == mrh.monomial(a=s1, alpha=(1, 0), coeff=v_pow(expected_exponent, 2))


def test_reduce_acyclic_generators(a2_q2):
    mrh, cx = a2_q2.mrh, a2_q2.complexes
    for cls in a2_q2.classes(2):
        assert mrh.reduce_complex(cx.make_K(cls.representative)) == mrh.torus(alpha=cls.dim)
        assert mrh.reduce_complex(cx.make_Kstar(cls.representative)) == mrh.torus(beta=cls.dim)


def test_reduce_direct_sum_of_stalks(a1_q2):
    mrh, cx = a1_q2.mrh, a1_q2.complexes
    window = a1_q2.classes(1)
    for x, y in product(window, repeat=2):
        c = cx.direct_sum(cx.make_Cstar(x.representative), cx.make_C(y.representative))
        assert mrh.reduce_complex(c) == mrh.expand_pair(y, x)


def test_reduce_complex_with_differential(a1_q2):
    mrh, cx = a1_q2.mrh, a1_q2.complexes
    k = a1_q2.provider.simple(0)
    value = mrh.reduce_complex(cx.from_json(STALK))
    assert value == mrh.monomial(b=k, alpha=(1,), coeff=v_pow(-1, 2))


@pytest.mark.parametrize("fixture", ["a1_q2", "a1_q3"])
def test_hall_product_of_complexes_matches_rewriting(fixture, request):
    ctx = request.getfixturevalue(fixture)
    mrh, cx = ctx.mrh, ctx.complexes
    s = ctx.provider.simple(0)
    c, cstar = cx.make_C(s.representative), cx.make_Cstar(s.representative)
    assert mrh.oracle_mul(c, cstar) == mrh.mul(mrh.iplus(s), mrh.iminus(s))
    assert mrh.oracle_mul(cstar, c) == mrh.mul(mrh.iminus(s), mrh.iplus(s))
    assert mrh.oracle_mul_grouped(cstar, c) == mrh.oracle_mul(cstar, c)


def test_oracle_on_quiver_with_arrow(a2_q2):
    mrh, cx = a2_q2.mrh, a2_q2.complexes
    window = a2_q2.classes(1)
    for x, y in product(window, repeat=2):
        m, n = cx.make_Cstar(x.representative), cx.make_C(y.representative)
        expected = mrh.mul(mrh.reduce_complex(m), mrh.reduce_complex(n))
        assert mrh.oracle_mul(m, n) == expected, (x, y)


def test_associativity_on_generators(a2_q2):
    mrh, provider = a2_q2.mrh, a2_q2.provider
    s0, s1 = provider.simple(0), provider.simple(1)
    gens = [mrh.iplus(s0), mrh.iminus(s1), mrh.iminus(s0), mrh.iplus(s1), mrh.torus(alpha=(0, 1), beta=(1, 0))]
    for x, y, z in product(gens, repeat=3):
        assert mrh.mul(mrh.mul(x, y), z) == mrh.mul(x, mrh.mul(y, z))


def test_triangularity_of_reverse_product(a2_q2):
    mrh, provider = a2_q2.mrh, a2_q2.provider
    for a in a2_q2.classes(1):
        for b in a2_q2.classes(1):
            value = mrh.mul(mrh.iminus(b), mrh.iplus(a))
            lead = NFBasisElt(a.id, b.id, (0, 0), (0, 0))
            assert value.coefficient(lead) == 1
            top = a.total_dim + b.total_dim
            for key in value.keys():
                if key != lead:
                    assert provider.class_by_id(key.a).total_dim + provider.class_by_id(key.b).total_dim < top


def test_reduced_quotient_identifies_balanced_torus(a1_q2):
    mrh = a1_q2.mrh
    reduced = mrh.to_reduced(mrh.torus(alpha=(2,), beta=(2,)))
    zero = a1_q2.provider.zero.id
    assert reduced.keys() == [ReducedKey(zero, zero, (0,))]
    assert reduced.coefficient(ReducedKey(zero, zero, (0,))) == 1


def test_reduced_product_kills_heisenberg_term(a1_q2):
    mrh, s = a1_q2.mrh, a1_q2.provider.simple(0)
    lhs = mrh.to_reduced(mrh.iminus(s))
    rhs = mrh.to_reduced(mrh.iplus(s))
    left = mrh.reduced_mul(lhs, rhs)
    right = mrh.reduced_mul(rhs, lhs)
    assert len(left - right) == 2


def test_describe(a1_q2):
    mrh, s = a1_q2.mrh, a1_q2.provider.simple(0)
    assert mrh.describe(mrh.zero()) == "0"
    assert mrh.describe_key(NFBasisElt(s.id, s.id, (1,), (0,))) == "[C_S0]*[C*_S0]*K_(1)"
