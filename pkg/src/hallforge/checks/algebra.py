"""Suites on the modified Hall algebra: normal form, associativity, the complex oracle and the Heisenberg relations."""

from __future__ import annotations

from hallforge.checks.context import CheckContext, guarded
from hallforge.checks.results import CheckResult
from hallforge.exactnum import Scalar
from hallforge.heredcat import quiver as qv
from hallforge.mrh import MRHElt, NFBasisElt, ReducedKey

SAMPLE_BOUND = 2
ORACLE_BOUND = 2


def check_triangularity(ctx: CheckContext) -> CheckResult:
    """[C_X (+) C*_Y] has leading term [C_X][C*_Y] and all other terms of smaller stalk dimension."""
    result = CheckResult("triangularity")
    mrh = ctx.mrh
    provider = ctx.provider
    zero = qv.k0_zero(ctx.n)
    for x, y in ctx.class_pairs():

        def instance(x=x, y=y):
            expansion = mrh.expand_pair(x, y)
            leading = NFBasisElt(x.id, y.id, zero, zero)
            top = x.total_dim + y.total_dim
            lower = all(
                provider.class_by_id(key.a).total_dim + provider.class_by_id(key.b).total_dim < top
                for key in expansion.keys()
                if key != leading
            )
            passed = expansion.coefficient(leading) == Scalar.one(ctx.q) and lower
            return passed, {"terms": len(expansion)}

        guarded(result, instance, X=x.id, Y=y.id)
    return result


def check_assoc(ctx: CheckContext) -> CheckResult:
    """(xy)z equals x(yz) on sampled normal-order monomials."""
    result = CheckResult("assoc")
    mrh = ctx.mrh
    rng = ctx.rng(1)
    window = ctx.classes(min(ctx.dim_bound, SAMPLE_BOUND))
    for _ in range(ctx.samples.assoc):
        keys = [ctx.random_monomial(rng, window) for _ in range(3)]
        x, y, z = (MRHElt.single(ctx.q, key) for key in keys)

        def instance(x=x, y=y, z=z):
            return mrh.mul(mrh.mul(x, y), z) == mrh.mul(x, mrh.mul(y, z))

        guarded(result, instance, **dict(zip("xyz", (mrh.describe_key(key) for key in keys))))
    return result


def check_oracle(ctx: CheckContext) -> CheckResult:
    """The twisted Hall product of two complexes reduces to the product of their reductions.

    One-vertex quivers sweep every ordered pair of complexes on window classes
    whose combined total dimension stays within twice the bound; larger quivers
    check the stalk generators and a seeded sample of pairs.
    """
    result = CheckResult("oracle")
    mrh = ctx.mrh
    complexes = ctx.complexes
    bound = min(ctx.dim_bound, ORACLE_BOUND)
    pool = ctx.complexes_in_window(bound)
    pairs = []
    if ctx.n == 1:
        pairs.extend(
            (m, n) for m in pool for n in pool if m.total_dim + n.total_dim <= 2 * bound
        )
    else:
        for c in ctx.classes(bound):
            generators = [complexes.make_C(c.representative), complexes.make_Cstar(c.representative)]
            pairs.extend((m, n) for m in generators for n in generators)
        rng = ctx.rng(2)
        for _ in range(ctx.samples.oracle):
            i, j = (int(k) for k in rng.integers(len(pool), size=2))
            pairs.append((pool[i], pool[j]))
    for m, n in pairs:

        def instance(m=m, n=n):
            expected = mrh.mul(mrh.reduce_complex(m), mrh.reduce_complex(n))
            swept = mrh.oracle_mul(m, n)
            grouped = mrh.oracle_mul_grouped(m, n)
            return swept == expected and grouped == expected, {"terms": len(expected)}

        guarded(result, instance, M=m.to_json(), N=n.to_json())
    return result


def check_heisenberg(ctx: CheckContext) -> CheckResult:
    """Stalk commutators at each vertex, torus passage and the reduced quotient."""
    result = CheckResult("heisenberg")
    mrh = ctx.mrh
    provider = ctx.provider
    q = ctx.q
    zero_id = provider.zero.id
    for i in range(ctx.n):
        simple = provider.simple(i)
        unit = qv.unit_vector(ctx.n, i)

        def commutator(simple=simple, unit=unit):
            lhs = mrh.mul(mrh.iminus(simple), mrh.iplus(simple)) - mrh.mul(mrh.iplus(simple), mrh.iminus(simple))
            rhs = (mrh.torus(alpha=unit) - mrh.torus(beta=unit)).scale(q - 1)
            reduced = mrh.to_reduced(lhs)
            image = (
                reduced.coefficient(ReducedKey(zero_id, zero_id, unit)) == Scalar.of(q - 1, q)
                and reduced.coefficient(ReducedKey(zero_id, zero_id, qv.k0_neg(unit))) == Scalar.of(1 - q, q)
                and len(reduced) == 2
            )
            return lhs == rhs and image

        guarded(result, commutator, kind="commutator", vertex=i)

    rng = ctx.rng(3)
    window = ctx.classes(min(ctx.dim_bound, SAMPLE_BOUND))
    central = all(
        provider.sym_exponent(qv.unit_vector(ctx.n, i), qv.unit_vector(ctx.n, j)) == 0
        for i in range(ctx.n)
        for j in range(ctx.n)
    )
    for _ in range(ctx.samples.centrality):
        key = ctx.random_monomial(rng, window)
        alpha, beta = ctx.random_torus(rng), ctx.random_torus(rng)
        m = MRHElt.single(q, key)
        t = mrh.torus(alpha, beta)
        balanced = mrh.torus(alpha, alpha)

        def passage(key=key, m=m, t=t, balanced=balanced, alpha=alpha, beta=beta):
            a, b = provider.class_by_id(key.a), provider.class_by_id(key.b)
            shift = mrh.v(mrh.passage_exponent(t.keys()[0].torus, a.dim, b.dim))
            passed = mrh.mul(t, m) == mrh.mul(m, t).scale(shift)
            passed = passed and mrh.mul(balanced, m) == mrh.mul(m, balanced)
            if central:
                passed = passed and mrh.mul(t, m) == mrh.mul(m, t)
            return passed

        guarded(result, passage, kind="torus", x=mrh.describe_key(key), alpha=list(alpha), beta=list(beta))
    return result
