"""Symmetric separability idempotents and coinvariance.

Derived oracles used below (computed by hand from the regular
representation): for a group algebra kG the trace form is
T[u, v] = |G| * [uv == e], so the idempotent is
p = (1/|G|) * sum_g g (x) g^{-1}; for the dual (pointwise functions on G)
the trace form is the identity, so p = sum_g delta_g (x) delta_g.
"""

import pytest

from kitaev_defects.comodule import (
    opposite_bicomodule,
    regular_bicomodule,
    trivial_bicomodule,
    twisted_subgroup_algebra,
)
from kitaev_defects.errors import DegenerateTraceForm
from kitaev_defects.hopf import (
    AlgebraData,
    dual_hopf,
    group_algebra,
    haar_integral,
    tensor_algebra,
)
from kitaev_defects.linalg import Tensor
from kitaev_defects.rationals import ONE, Q, ZERO
from kitaev_defects.separability import (
    check_coinvariance,
    check_haar_reduction,
    check_idempotent_property,
    check_separability_identities,
    symmetric_separability_idempotent,
    tensor_idempotent,
    trace_form,
)
from tests.test_comodule import klein_four_sign_cocycle


def test_check_line_names_are_stable(kZ2):
    p = symmetric_separability_idempotent(kZ2.algebra)
    report = check_separability_identities(p)
    assert [c.name for c in report.checks] == ["normalization", "invariance", "symmetry"]
    assert report.ok
    cov = check_coinvariance(regular_bicomodule(kZ2), "left")
    assert [c.name for c in cov.checks] == ["cyclic_exchange", "coinvariance"]


def test_group_algebra_trace_form(kZ3):
    g = kZ3._cache["group"]
    t = trace_form(kZ3.algebra)
    for i in range(3):
        for j in range(3):
            expected = Q(3) if g.mul(i, j) == g.identity else ZERO
            assert t.get(i, j) == expected


def test_group_algebra_idempotent_closed_form(kZ2, kZ3, kS3):
    for h in (kZ2, kZ3, kS3):
        g = h._cache["group"]
        p = symmetric_separability_idempotent(h.algebra)
        expected = {(i, g.inverse[i]): Q(1, g.order) for i in range(g.order)}
        assert dict(p.element.items()) == expected


def test_dual_idempotent_is_diagonal(kZ2, kS3):
    for h in (kZ2, kS3):
        d = dual_hopf(h)
        p = symmetric_separability_idempotent(d.algebra)
        expected = {(i, i): ONE for i in range(d.dim)}
        assert dict(p.element.items()) == expected


def test_idempotent_property_and_identities(kZ1, kZ2, kZ3, kZ4, kV4, kS3):
    for h in (kZ1, kZ2, kZ3, kZ4, kV4, kS3):
        for variant in (h, dual_hopf(h)):
            p = symmetric_separability_idempotent(variant.algebra)
            assert check_separability_identities(p).ok
            assert check_idempotent_property(p)


def test_haar_reduction_for_all_hopf_instances(kZ1, kZ2, kZ3, kZ4, kV4, kS3):
    # dual route: the trace-form idempotent must equal sum l_(1) (x) S(l_(2))
    for h in (kZ1, kZ2, kZ3, kZ4, kV4, kS3):
        assert check_haar_reduction(h)
        assert check_haar_reduction(dual_hopf(h))


def test_z2_idempotent_equals_haar_coproduct(kZ2):
    # for Z2 the antipode is the identity, so the Haar form is just the
    # coproduct of the integral: 1/2 (g0 x g0 + g1 x g1)
    vec = haar_integral(kZ2).as_vector()
    pairs = {}
    for i, q in vec.items():
        for a, b, w in kZ2.comult_legs().get(i, []):
            pairs[(a, b)] = pairs.get((a, b), ZERO) + q * w
    p = symmetric_separability_idempotent(kZ2.algebra)
    assert pairs == dict(p.element.items())
    assert pairs == {(0, 0): Q(1, 2), (1, 1): Q(1, 2)}


def test_twisted_klein_four_idempotent():
    from kitaev_defects.groups import cyclic_product

    g = cyclic_product([2, 2])
    k = twisted_subgroup_algebra(
        group_algebra(g), g, list(g.labels), klein_four_sign_cocycle(g)
    )
    p = symmetric_separability_idempotent(k.algebra)
    assert check_separability_identities(p).ok
    assert check_idempotent_property(p)
    # T[u,v] = 4 zeta(u,v) [uv == e]; every element is self-inverse, and
    # zeta(t,t) = -1 for t = g1|g1, so that diagonal entry flips sign
    t = g.index("g1|g1")
    expected = {(i, i): Q(1, 4) for i in range(4)}
    expected[(t, t)] = Q(-1, 4)
    assert dict(p.element.items()) == expected


def test_degenerate_trace_form_raises():
    # k[x]/(x^2): tr L_1 = 2, tr L_x = 0, and x*x = 0, so the form is singular
    mult = Tensor((2, 2, 2), {(0, 0, 0): ONE, (0, 1, 1): ONE, (1, 0, 1): ONE})
    a = AlgebraData(2, ["1", "x"], mult, (ONE, ZERO))
    with pytest.raises(DegenerateTraceForm):
        symmetric_separability_idempotent(a)


def test_coinvariance_both_sides(kZ2, kZ3, kS3, kV4):
    from kitaev_defects.groups import cyclic_product

    g = cyclic_product([2, 2])
    cases = [
        regular_bicomodule(kZ2),
        regular_bicomodule(kZ3),
        regular_bicomodule(kS3),
        regular_bicomodule(dual_hopf(kS3)),
        trivial_bicomodule(kZ2, kZ3),
        opposite_bicomodule(regular_bicomodule(kS3)),
        twisted_subgroup_algebra(
            group_algebra(g), g, list(g.labels), klein_four_sign_cocycle(g)
        ),
        twisted_subgroup_algebra(kV4, g, ["g0|g0", "g1|g1"]),
    ]
    for k in cases:
        for side in ("left", "right"):
            report = check_coinvariance(k, side)
            assert report.ok, f"{k!r} {side}: {report.render()}"


def test_coinvariance_rejects_bad_side(kZ2):
    with pytest.raises(ValueError):
        check_coinvariance(regular_bicomodule(kZ2), "up")


def test_tensor_idempotent_matches_direct(kZ2, kZ3):
    p = symmetric_separability_idempotent(kZ2.algebra)
    q = symmetric_separability_idempotent(kZ3.algebra)
    composite = tensor_idempotent(p, q, verify_direct=True)
    direct = symmetric_separability_idempotent(tensor_algebra(kZ2.algebra, kZ3.algebra))
    assert dict(composite.element.items()) == dict(direct.element.items())
    assert check_idempotent_property(composite)
