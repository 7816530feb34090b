"""Bicomodule algebras: regular, trivial, cocycle-twisted subgroup; twists."""

import pytest

from kitaev_defects.comodule import (
    check_cocycle,
    opposite_bicomodule,
    regular_bicomodule,
    trivial_bicomodule,
    twist,
    twisted_subgroup_algebra,
    validate_bicomodule,
)
from kitaev_defects.errors import NotCocycle, NotSubgroup
from kitaev_defects.groups import cyclic_group, cyclic_product, symmetric_group
from kitaev_defects.hopf import dual_hopf, group_algebra, is_commutative
from kitaev_defects.rationals import ONE, Q

BICOMODULE_CHECK_NAMES = [
    "unit_left",
    "unit_right",
    "associativity",
    "coaction_counit",
    "reconstruction_left_then_right",
    "reconstruction_right_then_left",
    "left_coassociativity",
    "right_coassociativity",
    "coaction_unital",
    "coaction_algebra_map",
    "character_multiplicative",
]


def klein_four_sign_cocycle(group):
    """The nontrivial bilinear 2-cocycle on Z2 x Z2.

    With elements written as pairs (x1, x2) via the "a|b" product labels,
    zeta((x1, x2), (y1, y2)) = (-1)^(x2 * y1).  Bilinearity makes the
    cocycle identity automatic, and the twisted algebra is noncommutative.
    """

    def bit(index, pos):
        return int(group.labels[index].split("|")[pos][1])

    return lambda u, v: Q((-1) ** (bit(u, 1) * bit(v, 0)))


def test_check_line_names_are_stable(kZ2):
    report = validate_bicomodule(regular_bicomodule(kZ2))
    assert [c.name for c in report.checks] == BICOMODULE_CHECK_NAMES


@pytest.mark.parametrize("gname", ["Z1", "Z2", "Z3", "V4", "S3"])
def test_regular_bicomodule_validates(gname, request):
    groups = {
        "Z1": cyclic_group(1),
        "Z2": cyclic_group(2),
        "Z3": cyclic_group(3),
        "V4": cyclic_product([2, 2]),
        "S3": symmetric_group(3),
    }
    h = group_algebra(groups[gname])
    for hopf in (h, dual_hopf(h)):
        k = regular_bicomodule(hopf)
        report = validate_bicomodule(k)
        assert report.ok, report.render()
        # the regular bicomodule's character is the counit
        assert k.character == hopf.counit


def test_regular_coaction_of_grouplike_is_diagonal(kZ3):
    k = regular_bicomodule(kZ3)
    # comult is grouplike, so the two-sided coaction of basis g is g (x) g (x) g
    for i in range(3):
        assert k.coaction.get(i, i, i, i) == ONE
    assert len(dict(k.coaction.items())) == 3


def test_trivial_bicomodule_validates(kZ2, kZ3):
    for left, right in [(None, None), (kZ2, kZ3), (kZ3, kZ3), (kZ2, None)]:
        k = trivial_bicomodule(left, right)
        assert k.dim == 1
        assert validate_bicomodule(k).ok


def test_twisted_subgroup_trivial_cocycle(kZ4=None):
    g = cyclic_group(4)
    h = group_algebra(g)
    k = twisted_subgroup_algebra(h, g, ["g0", "g2"])
    assert k.dim == 2
    assert k.character == (ONE, ONE)
    assert validate_bicomodule(k).ok
    # the even subgroup sits diagonally: b_{g2} coacts by g2 on both sides
    assert k.coaction.get(1, 2, 1, 2) == ONE


def test_twisted_subgroup_alternating_in_s3():
    g = symmetric_group(3)
    h = group_algebra(g)
    k = twisted_subgroup_algebra(h, g, ["012", "120", "201"])
    assert k.dim == 3
    assert validate_bicomodule(k).ok


def test_twisted_subgroup_nontrivial_cocycle_klein_four():
    g = cyclic_product([2, 2])
    h = group_algebra(g)
    zeta = klein_four_sign_cocycle(g)
    k = twisted_subgroup_algebra(h, g, list(g.labels), zeta)
    assert k.dim == 4
    report = validate_bicomodule(k)
    assert report.ok, report.render()
    # a nontrivial twist admits no algebra character
    assert k.character is None
    assert not is_commutative(k.algebra)
    # b_u b_v = zeta(u,v) b_{uv}: check the sign pair explicitly
    u = g.index("g0|g1")
    v = g.index("g1|g0")
    uv = g.mul(u, v)
    assert k.algebra.multiply({u: ONE}, {v: ONE}) == {uv: Q(-1)}
    assert k.algebra.multiply({v: ONE}, {u: ONE}) == {uv: ONE}


def test_not_subgroup_negatives():
    g = cyclic_group(3)
    h = group_algebra(g)
    with pytest.raises(NotSubgroup):
        twisted_subgroup_algebra(h, g, ["g0", "g1"])  # not closed: g1*g1 = g2
    with pytest.raises(NotSubgroup):
        twisted_subgroup_algebra(h, g, ["g1", "g2"])  # missing identity
    with pytest.raises(NotSubgroup):
        twisted_subgroup_algebra(h, g, ["g0", "g0"])  # duplicates
    with pytest.raises(NotSubgroup):
        twisted_subgroup_algebra(h, g, ["g0", "nope"])  # unknown label


def test_not_cocycle_negatives():
    g = cyclic_product([2, 2])
    t = g.index("g1|g1")
    with pytest.raises(NotCocycle):
        check_cocycle(g, range(4), lambda u, v: Q(-1) if u == g.identity else ONE)
    with pytest.raises(NotCocycle):
        check_cocycle(g, range(4), lambda u, v: Q(0) if (u, v) == (t, t) else ONE)
    with pytest.raises(NotCocycle):
        # a lone -1 at (t, t) violates the cocycle identity at (t, t, s)
        check_cocycle(g, range(4), lambda u, v: Q(-1) if (u, v) == (t, t) else ONE)


def test_opposite_is_involution(kS3):
    k = regular_bicomodule(kS3)
    kk = opposite_bicomodule(opposite_bicomodule(k))
    assert kk.same_structure(k)
    assert validate_bicomodule(opposite_bicomodule(k)).ok


def test_opposite_swaps_sides(kZ2, kZ3):
    k = trivial_bicomodule(kZ2, kZ3)
    o = opposite_bicomodule(k)
    assert o.left_hopf.dim == 3 and o.right_hopf.dim == 2
    assert validate_bicomodule(o).ok


def test_twist_signs(kS3):
    k = regular_bicomodule(kS3)
    assert twist(k, 1) is k
    assert twist(k, -1).same_structure(opposite_bicomodule(k))
    with pytest.raises(ValueError):
        twist(k, 0)


def test_twisted_klein_four_opposite_validates():
    g = cyclic_product([2, 2])
    k = twisted_subgroup_algebra(
        group_algebra(g), g, list(g.labels), klein_four_sign_cocycle(g)
    )
    o = opposite_bicomodule(k)
    assert validate_bicomodule(o).ok
    assert o.character is None
