"""Crossed products: doubles, signed single-site products, straightening."""

import pytest

from kitaev_defects.comodule import regular_bicomodule
from kitaev_defects.crossed import (
    ModuleAlgebraData,
    balancing_algebra,
    balancing_t_hopf,
    bracket_vector,
    check_idempotents_commute,
    check_straightening,
    crossed_product,
    drinfeld_double,
    left_comodule_from_bicomodule,
    side_signed_bicomodule,
    sign_hopf,
    signed_regular_crossed_product,
    validate_comodule_algebra,
    validate_module_algebra,
)
from kitaev_defects.comodule import validate_bicomodule
from kitaev_defects.errors import AssociativityFailure, HopfMismatch
from kitaev_defects.hopf import is_commutative, op_cop, validate_hopf
from kitaev_defects.linalg import Tensor
from kitaev_defects.rationals import ONE, Q

SIGN_PAIRS = [(1, 1), (1, -1), (-1, 1), (-1, -1)]


def test_bracket_vector(kZ3):
    assert bracket_vector(kZ3, 1, 1) == {1: ONE}
    # the antipode of a group algebra sends g to its inverse
    assert bracket_vector(kZ3, 1, -1) == {2: ONE}
    assert bracket_vector(kZ3, 0, -1) == {0: ONE}


def test_sign_hopf(kS3):
    assert sign_hopf(kS3, 1) is kS3
    assert sign_hopf(kS3, -1).same_structure(op_cop(kS3))
    with pytest.raises(ValueError):
        sign_hopf(kS3, 2)


@pytest.mark.parametrize("sl,sr", SIGN_PAIRS)
def test_balancing_t_hopf_validates(kZ2, sl, sr):
    t = balancing_t_hopf(kZ2, sl, sr)
    assert t.dim == 4
    assert validate_hopf(t).ok


@pytest.mark.parametrize("sl,sr", SIGN_PAIRS)
def test_signed_bicomodules_validate(kZ3, sl, sr):
    k = side_signed_bicomodule(kZ3, sl, sr)
    assert validate_bicomodule(k).ok


@pytest.mark.parametrize("fixture", ["kZ2", "kZ3", "kS3"])
def test_drinfeld_double(fixture, request):
    h = request.getfixturevalue(fixture)
    dd = drinfeld_double(h)
    assert dd.algebra.dim == h.dim ** 2
    assert validate_module_algebra(dd.module_part).ok
    assert validate_comodule_algebra(dd.comodule_part).ok
    report = check_straightening(dd)
    assert [c.name for c in report.checks] == ["exchange_law"]
    assert report.ok
    assert check_idempotents_commute(dd)


def test_double_of_abelian_group_is_commutative(kZ2, kZ3, kS3):
    # for abelian G the double collapses to functions-on-G tensor kG,
    # which is commutative; for S3 the exchange is genuinely twisted
    assert is_commutative(drinfeld_double(kZ2).algebra)
    assert is_commutative(drinfeld_double(kZ3).algebra)
    assert not is_commutative(drinfeld_double(kS3).algebra)


def test_double_unit_and_embeddings(kZ3):
    dd = drinfeld_double(kZ3)
    c = dd.algebra
    one = c.unit_vector()
    # unit = (counit functional) (x) identity group element
    assert one == {dd.flat(i, 0): ONE for i in range(3)}
    # embeddings multiply like their sources
    f1 = dd.embed_a({1: ONE})
    g1 = dd.embed_k({1: ONE})
    assert c.multiply(one, f1) == f1
    assert c.multiply(g1, one) == g1


@pytest.mark.parametrize("fixture", ["kZ2", "kZ3"])
@pytest.mark.parametrize("sl,sr", SIGN_PAIRS)
def test_signed_regular_crossed_products(fixture, request, sl, sr):
    h = request.getfixturevalue(fixture)
    cp = signed_regular_crossed_product(h, sl, sr)
    assert cp.algebra.dim == h.dim ** 2
    assert validate_module_algebra(cp.module_part).ok
    assert validate_comodule_algebra(cp.comodule_part).ok
    assert check_straightening(cp).ok
    assert check_idempotents_commute(cp)


@pytest.mark.parametrize("sl,sr", [(1, 1), (-1, -1)])
def test_signed_regular_crossed_products_s3(kS3, sl, sr):
    cp = signed_regular_crossed_product(kS3, sl, sr)
    assert cp.algebra.dim == 36
    assert check_straightening(cp).ok


def test_plain_signs_recover_the_double(kZ3):
    cp = signed_regular_crossed_product(kZ3, 1, 1)
    dd = drinfeld_double(kZ3)
    assert cp.algebra.same_structure(dd.algebra)


@pytest.mark.parametrize("sl,sr", SIGN_PAIRS)
def test_balancing_module_algebra_validates(kZ3, sl, sr):
    ma = balancing_algebra(kZ3, sl, sr)
    assert validate_module_algebra(ma).ok


def test_hopf_mismatch_raises(kZ2, kZ3):
    ma = balancing_algebra(kZ2, 1, 1)
    ca = left_comodule_from_bicomodule(regular_bicomodule(kZ3))
    with pytest.raises(HopfMismatch):
        crossed_product(ma, ca)


def test_corrupted_action_fails_closed(kZ2):
    good = balancing_algebra(kZ2, 1, 1)
    entries = {key: q for key, q in good.action.items()}
    # breaking the unit action makes the would-be product violate unit laws
    entries[(0, 0, 0)] = Q(2)
    bad = ModuleAlgebraData(
        good.hopf, good.algebra, Tensor(good.action.dims, entries)
    )
    assert not validate_module_algebra(bad).ok
    with pytest.raises(AssociativityFailure):
        crossed_product(bad, left_comodule_from_bicomodule(regular_bicomodule(kZ2)))


def test_straighten_terms_trivial_for_commutative_double(kZ2):
    dd = drinfeld_double(kZ2)
    for x in range(dd.dim_k):
        for j in range(dd.dim_a):
            assert dd.straighten_terms()[(x, j)] == [(j, x, ONE)]
