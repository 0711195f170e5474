from __future__ import annotations

from collections import Counter
from fractions import Fraction
from functools import lru_cache
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hallforge import fqlinalg as fq
from hallforge.config import CapsConfig
from hallforge.errors import ConfigError, ResourceCapError
from hallforge.heredcat import QuiverProvider, QuiverSpec, Rep, load_quiver, make_provider, preset
from hallforge.heredcat import quiver as qv


def provider_for(name: str, q: int, bound: int = 2):
    provider = make_provider(preset(name, q))
    provider.build(bound)
    return provider


@lru_cache(maxsize=None)
def shared_provider(name: str, q: int):
    return provider_for(name, q)


@pytest.mark.parametrize(
    "name,bound,expected",
    [("a1", 2, 3), ("a1", 3, 4), ("jordan", 2, 4), ("jordan", 3, 7), ("a2", 2, 7)],
)
def test_class_counts(name, bound, expected):
    assert len(provider_for(name, 2, bound).enumerate_iso_classes(bound)) == expected


def test_a2_splits_middle_dimension_into_sum_and_projective():
    provider = provider_for("a2", 2)
    middle = provider.classes_of_dim((1, 1))
    assert len(middle) == 2
    maps = sorted(int(c.representative.maps[0].sum()) for c in middle)
    assert maps == [0, 1]


def test_zero_and_simples(a2_q2):
    provider = a2_q2.provider
    assert provider.zero.dim == (0, 0)
    assert provider.simple(0).dim == (1, 0)
    assert provider.simple(1).label == "S1"


def test_identify_recognises_isomorphic_representations():
    provider = provider_for("a2", 3)
    rep = Rep(dim=(1, 1), maps=(fq.as_matrix([[2]], 3),))
    projective = provider.identify(rep)
    assert projective.total_dim == 2
    assert provider.hom_dim(projective, projective) == 1
    split = provider.identify(provider.direct_sum(provider.simple(0).representative, provider.simple(1).representative))
    assert split != projective


def test_a2_euler_form(a2_q2):
    provider = a2_q2.provider
    s0, s1 = provider.simple(0), provider.simple(1)
    assert provider.euler_exponent(s0.dim, s1.dim) == -1
    assert provider.euler_exponent(s1.dim, s0.dim) == 0
    assert provider.sym_exponent(s0.dim, s1.dim) == -1
    assert provider.hom_dim(s0, s1) == 0
    assert provider.ext1_dim(s0, s1) == 1
    assert provider.ext1_dim(s1, s0) == 0


def test_a1_symmetric_form(a1_q2):
    assert a1_q2.provider.sym_exponent((1,), (1,)) == 2


def test_jordan_hom_ext_and_aut(jordan_q2):
    provider = jordan_q2.provider
    s = provider.simple(0)
    j2 = provider.class_of_partition((2,))
    ss = provider.class_of_partition((1, 1))
    assert provider.aut_order(ss) == 6
    assert provider.aut_order(j2) == 2
    assert provider.aut_order(s) == 1
    assert provider.hom_dim(j2, s) == 1
    assert provider.ext1_dim(s, s) == 1
    assert provider.euler_exponent(s.dim, s.dim) == 0


@pytest.mark.parametrize("name,q", [("a1", 2), ("a1", 3), ("a2", 2), ("jordan", 2)])
def test_ext_dimension_matches_counting(name, q):
    provider = provider_for(name, q)
    window = provider.enumerate_iso_classes(1)
    for a in window:
        for b in window:
            assert provider.ext1_dim_oracle(a, b) == provider.ext1_dim(a, b)


def test_hall_numbers_jordan(jordan_q2):
    provider = jordan_q2.provider
    s = provider.simple(0)
    assert provider.hall_coeff(s, s, provider.class_of_partition((1, 1))) == Fraction(1, 2)
    assert provider.hall_coeff(s, s, provider.class_of_partition((2,))) == Fraction(1, 2)


def test_hall_numbers_a1(a1_q3):
    provider = a1_q3.provider
    k = provider.simple(0)
    (k2,) = provider.classes_of_dim((2,))
    assert provider.hall_coeff(k, k, k2) == Fraction(1, 3)
    assert provider.hall_coeff(k, k, k) == 0


@pytest.mark.parametrize("name,q", [("a2", 2), ("jordan", 2), ("a1", 3)])
def test_hall_product_agrees_with_subobject_counts(name, q):
    provider = provider_for(name, q)
    window = provider.enumerate_iso_classes(1)
    for a in window:
        for b in window:
            product = provider.hall_product(a, b)
            for m in provider.classes_of_dim(qv.k0_add(a.dim, b.dim)):
                assert product.get(m, Fraction(0)) == provider.hall_coeff(a, b, m)


def test_riedtmann_count(jordan_q2):
    provider = jordan_q2.provider
    s = provider.simple(0)
    for m in provider.classes_of_dim((2,)):
        assert provider.ses_count(s, s, m) == provider.hall_coeff(s, s, m) * provider.aut_order(m)


def test_cross_table_sums_to_hom_space(a2_q2):
    provider = a2_q2.provider
    window = provider.enumerate_iso_classes(2)
    for x in window:
        for y in window:
            table = provider.cross_table(x, y)
            assert sum(term.count for term in table) == provider.q ** provider.hom_dim(x, y)
            zero_terms = [t for t in table if t.kernel == x and t.cokernel == y]
            assert zero_terms and zero_terms[0].count == 1


def test_cross_table_isomorphism_term(jordan_q2):
    provider = jordan_q2.provider
    j2 = provider.class_of_partition((2,))
    table = {(t.kernel.label, t.image_dim, t.cokernel.label): t.count for t in provider.cross_table(j2, j2)}
    assert table[("()", (2,), "()")] == provider.aut_order(j2)


@pytest.mark.parametrize("q", [2, 3])
def test_bruteforce_agrees_with_partition_formulas(q):
    scan = 100_000
    brute = QuiverProvider(preset("jordan", q), CapsConfig(hom_scan=scan))
    brute.build(4)
    jordan = provider_for("jordan", q, 4)
    pairs = []
    for size in range(5):
        brute_classes = brute.classes_of_dim((size,))
        assert len(brute_classes) == len(jordan.classes_of_dim((size,)))
        pairs.extend((b, jordan.identify(b.representative)) for b in brute_classes)
    assert len({f.id for _, f in pairs}) == len(pairs)
    for (b1, f1), (b2, f2) in product(pairs, repeat=2):
        assert brute.hom_dim(b1, b2) == jordan.hom_dim(f1, f2)
    for b, f in pairs:
        # GL_4(F_3) is the one group here too large to count element by element
        if q ** brute.end_dim(b) <= scan:
            assert brute.aut_order(b) == jordan.aut_order(f)


@given(data=st.data())
@settings(max_examples=25, deadline=None)
@pytest.mark.parametrize("name", ["a2", "jordan"])
def test_identify_direct_sum_is_symmetric(name, data):
    provider = shared_provider(name, 2)
    window = provider.enumerate_iso_classes(2)
    a = data.draw(st.sampled_from(window))
    b = data.draw(st.sampled_from(window))
    ab = provider.identify(provider.direct_sum(a.representative, b.representative))
    ba = provider.identify(provider.direct_sum(b.representative, a.representative))
    assert ab == ba
    assert ab.dim == qv.k0_add(a.dim, b.dim)


def test_rank_determined_quivers():
    assert all(preset(name).rank_determined for name in ("a1", "a2", "jordan"))
    assert QuiverSpec(n=3, arrows=((0, 1), (1, 2))).rank_determined
    assert not QuiverSpec(n=2, arrows=((0, 1), (0, 1))).rank_determined
    assert not QuiverSpec(n=3, arrows=((0, 1), (2, 1))).rank_determined


def test_a2_identifies_large_representations_within_a_small_hom_cap():
    provider = make_provider(preset("a2", 2), CapsConfig(hom_scan=256, subspace_scan=10, complex_scan=10))
    s0 = provider.simple(0).representative
    (projective,) = [c for c in provider.classes_of_dim((1, 1)) if c.representative.maps[0].any()]
    big = s0
    for _ in range(3):
        big = provider.direct_sum(big, projective.representative)
    big = provider.direct_sum(big, s0)
    assert big.dim == (5, 3)
    g0 = np.triu(np.ones((5, 5), dtype=np.int64))
    g1 = np.triu(np.ones((3, 3), dtype=np.int64))
    moved = Rep(dim=big.dim, maps=(fq.matmul(fq.matmul(g1, big.maps[0], 2), fq.inverse(g0, 2), 2),))
    cls = provider.identify(big)
    assert provider.identify(moved) == cls
    assert cls.dim == (5, 3)
    assert len(provider.classes_of_dim((5, 3))) == 4


@pytest.mark.parametrize("name", ["a2", "jordan"])
def test_extension_classes_reproduce_structure_counts(name):
    provider = shared_provider(name, 2)
    window = provider.enumerate_iso_classes(2)
    for a in window:
        for b in window:
            space = qv.extension_space(b.representative, a.representative, provider.arrows, provider.p)
            by_structure = Counter(provider.identify(x) for x in space.structures(4096, "hom_scan"))
            by_class: Counter = Counter()
            for x, weight in space.classes(4096, "hom_scan"):
                by_class[provider.identify(x)] += weight
            assert by_class == by_structure
            assert sum(by_class.values()) == space.size


def test_find_isomorphism_on_the_kronecker_quiver():
    arrows = ((0, 1), (0, 1))
    x = Rep(dim=(1, 1), maps=(fq.as_matrix([[1]], 3), fq.as_matrix([[0]], 3)))
    y = Rep(dim=(1, 1), maps=(fq.as_matrix([[2]], 3), fq.as_matrix([[0]], 3)))
    z = Rep(dim=(1, 1), maps=(fq.as_matrix([[0]], 3), fq.as_matrix([[1]], 3)))
    found = qv.find_isomorphism(x, y, arrows, 3, cap=1)
    assert found is not None
    assert qv.is_isomorphism(found, 3) and qv.is_intertwiner(found, x, y, arrows, 3)
    assert qv.find_isomorphism(x, z, arrows, 3, cap=1) is None


def test_kronecker_classes_by_certified_search():
    provider = QuiverProvider(QuiverSpec(n=2, arrows=((0, 1), (0, 1)), q=2, name="kronecker"))
    assert not provider.quiver.rank_determined
    assert len(provider.build(2)) == 9
    assert len(provider.classes_of_dim((1, 1))) == 4


def test_hom_cap_is_enforced():
    provider = make_provider(preset("a1", 2), CapsConfig(hom_scan=4, subspace_scan=10, complex_scan=10))
    (k3,) = provider.classes_of_dim((3,))
    with pytest.raises(ResourceCapError):
        provider.aut_order(k3)


def test_quiver_validation():
    with pytest.raises(ConfigError):
        QuiverSpec(n=1, arrows=((0, 0),), nilpotent=False)
    with pytest.raises(ConfigError):
        QuiverSpec(n=2, arrows=((0, 1),), q=4)
    with pytest.raises(ConfigError):
        preset("d4")


def test_load_quiver_from_document(tmp_path):
    path = tmp_path / "kronecker.json"
    path.write_text('{"vertices": 2, "arrows": [[0, 1], [0, 1]], "q": 2}', encoding="utf-8")
    spec = load_quiver(str(path), q=3)
    assert spec.n == 2
    assert spec.q == 3
    assert spec.name == "kronecker"
    assert spec.euler_exponent((1, 0), (0, 1)) == -2
