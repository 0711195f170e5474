"""Suites on Z/2-graded complexes: the Euler pairing of generators and image additivity."""

from __future__ import annotations

import itertools

from hallforge.checks.context import CheckContext, guarded
from hallforge.checks.results import CheckResult
from hallforge.ztwo import GeneratorKind

PAIRING_BOUND = 2
CROSSCHECK_BOUND = 1


def check_pairing(ctx: CheckContext) -> CheckResult:
    """q^table equals |Hom| / |Ext^1| for generator complexes with an acyclic side."""
    result = CheckResult("pairing")
    complexes = ctx.complexes
    window = ctx.classes(min(ctx.dim_bound, PAIRING_BOUND))
    kinds = list(GeneratorKind)
    for a, b in itertools.product(window, window):
        for left, right in itertools.product(kinds, kinds):
            if not (left.acyclic or right.acyclic):
                continue
            x = complexes.generator(left, a.representative)
            y = complexes.generator(right, b.representative)

            def instance(left=left, right=right, a=a, b=b, x=x, y=y):
                table = complexes.pairing_exponent(left, a.dim, right, b.dim)
                measured = complexes.measured_pairing_exponent(x, y)
                return table == measured, {"table": table, "measured": measured}

            guarded(result, instance, left=left.value, right=right.value, A=a.id, B=b.id)
            if a.total_dim <= CROSSCHECK_BOUND and b.total_dim <= CROSSCHECK_BOUND:
                guarded(
                    result,
                    lambda x=x, y=y: _ext_by_sequences(ctx, x, y),
                    kind="ext_crosscheck",
                    left=left.value,
                    right=right.value,
                    A=a.id,
                    B=b.id,
                )
    _additivity_sweep(ctx, result)
    return result


def _ext_by_sequences(ctx: CheckContext, x, y):
    """Sum over middle terms of #ses / |Aut| times |Hom| is q^{dim Ext^1}."""
    complexes = ctx.complexes
    total = sum(complexes.complex_ext1_coeff(x, y, mid) for mid, _ in complexes.middle_terms(x, y))
    ext = complexes.complex_ext1_dim(x, y)
    size = total * ctx.q ** complexes.complex_hom_dim(x, y)
    return size == ctx.q ** ext, {"ext1": ext}


def _additivity_sweep(ctx: CheckContext, result: CheckResult) -> None:
    complexes = ctx.complexes
    window = ctx.classes(min(ctx.dim_bound, CROSSCHECK_BOUND))
    stalks = [complexes.make_C(c.representative) for c in window] + [
        complexes.make_Cstar(c.representative) for c in window
    ]
    acyclics = [complexes.make_K(c.representative) for c in window] + [
        complexes.make_Kstar(c.representative) for c in window
    ]
    for m, k in itertools.product(stalks, acyclics):
        for sub, quotient in ((k, m), (m, k)):
            mid, inc, proj = complexes.split_sequence(sub, quotient)
            guarded(
                result,
                lambda sub=sub, mid=mid, quotient=quotient, inc=inc, proj=proj: complexes.ses_image_additivity_check(
                    sub, mid, quotient, inc, proj
                ),
                kind="additivity_split",
            )
            space = complexes.extension_space(sub, quotient)
            for rep in space.structures(complexes.caps.complex_scan, "complex_scan"):
                mid = complexes.unflatten(rep)
                guarded(
                    result,
                    lambda sub=sub, mid=mid, quotient=quotient, space=space: complexes.ses_image_additivity_check(
                        sub, mid, quotient, space.inclusion(), space.projection()
                    ),
                    kind="additivity",
                )
