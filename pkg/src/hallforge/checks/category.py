"""Suites on the hereditary category itself: Euler form and Hall numbers."""

from __future__ import annotations

from fractions import Fraction

from hallforge.checks.context import CheckContext, guarded
from hallforge.checks.results import CheckResult
from hallforge.heredcat import quiver as qv


def check_euler(ctx: CheckContext) -> CheckResult:
    """dim Hom - dim Ext^1 equals the Euler exponent, with Ext^1 counted through Hall numbers."""
    result = CheckResult("euler")
    provider = ctx.provider
    for a, b in ctx.class_pairs():

        def instance(a=a, b=b):
            hom = provider.hom_dim(a, b)
            oracle = provider.ext1_dim_oracle(a, b)
            euler = provider.euler_exponent(a.dim, b.dim)
            passed = hom - oracle == euler and provider.ext1_dim(a, b) == oracle
            return passed, {"hom": hom, "ext1": oracle, "euler": euler}

        guarded(result, instance, A=a.id, B=b.id)
    return result


def check_rp(ctx: CheckContext) -> CheckResult:
    """Subobject counts, short exact sequence counts and extension structures give the same Hall numbers."""
    result = CheckResult("rp")
    provider = ctx.provider
    for a, b in ctx.class_pairs():
        product = provider.hall_product(a, b)
        for m in provider.classes_of_dim(qv.k0_add(a.dim, b.dim)):

            def instance(a=a, b=b, m=m):
                by_subobjects = provider.hall_coeff(a, b, m)
                by_sequences = Fraction(provider.ses_count(a, b, m), provider.aut_order(m))
                by_structures = product.get(m, Fraction(0))
                passed = by_subobjects == by_sequences == by_structures
                return passed, {"hall": f"{by_subobjects.numerator}/{by_subobjects.denominator}"}

            guarded(result, instance, A=a.id, B=b.id, M=m.id)
    return result
