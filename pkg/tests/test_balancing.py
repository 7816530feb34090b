"""The balancing <-> crossed-product-module correspondence and per-site gluing."""

import pytest

from kitaev_defects.balancing import (
    BalancingFamily,
    CrossedModule,
    balancing_from_module,
    check_balancing_round_trip,
    check_module_round_trip,
    family_from_module,
    module_from_balancing,
    regular_crossed_module,
    regular_module,
    signed_regular_comodule,
    site_restricted_modules,
    standard_test_family,
    tensor_module,
    trivial_module,
    validate_crossed_module,
    validate_hopf_module,
    verify_balancing_family,
    verify_equivalence,
    verify_gluing_equivalence,
)
from kitaev_defects.comodule import trivial_bicomodule
from kitaev_defects.errors import HopfMismatch, ModuleInvalid, NotAModule
from kitaev_defects.linalg import Tensor, kernel_dimension
from kitaev_defects.rationals import Q
from tests.conftest import (
    defect_loop_labels,
    digon_cells,
    torus_2x2_cells,
    two_vertex_sphere_cells,
    uniform_labels,
)

SIGN_PAIRS = [(1, 1), (1, -1), (-1, 1), (-1, -1)]


def test_standard_family_are_modules(kZ3, kS3):
    for h in (kZ3, kS3):
        for x in standard_test_family(h):
            assert validate_hopf_module(x).ok
        assert trivial_module(h).dim == 1
        assert regular_module(h).dim == h.dim
        assert tensor_module(regular_module(h), regular_module(h)).dim == h.dim ** 2


def test_tensor_module_rejects_mismatched_factors(kZ2, kZ3):
    with pytest.raises(HopfMismatch):
        tensor_module(regular_module(kZ2), regular_module(kZ3))


def test_equivalence_check_count_is_21(kZ2):
    report = verify_equivalence(kZ2, 1, 1, signed_regular_comodule(kZ2, 1, 1))
    assert report.ok, report.render()
    assert len(report.checks) == 21


@pytest.mark.parametrize("sl,sr", SIGN_PAIRS)
def test_equivalence_regular_comodule_z2(kZ2, sl, sr):
    report = verify_equivalence(kZ2, sl, sr, signed_regular_comodule(kZ2, sl, sr))
    assert report.ok, report.render()


@pytest.mark.parametrize("sl,sr", SIGN_PAIRS)
def test_equivalence_trivial_comodule_z2(kZ2, sl, sr):
    report = verify_equivalence(kZ2, sl, sr, trivial_bicomodule(kZ2, kZ2))
    assert report.ok, report.render()


@pytest.mark.parametrize("sl,sr", [(1, 1), (-1, -1)])
def test_equivalence_z3(kZ3, sl, sr):
    report = verify_equivalence(kZ3, sl, sr, signed_regular_comodule(kZ3, sl, sr))
    assert report.ok, report.render()


def test_regular_balancing_is_invertible_8x8(kZ2):
    bm = regular_crossed_module(kZ2, 1, 1, signed_regular_comodule(kZ2, 1, 1))
    assert bm.dim == 4
    swap = balancing_from_module(bm, regular_module(kZ2))
    assert (swap.rows, swap.cols) == (8, 8)
    assert kernel_dimension(swap) == 0


def test_round_trip_line_names(kZ2):
    bm = regular_crossed_module(kZ2, 1, 1, signed_regular_comodule(kZ2, 1, 1))
    rt = check_module_round_trip(bm)
    assert [c.name for c in rt.checks] == [
        "dual_action_restored",
        "comodule_action_unchanged",
    ]
    assert rt.ok
    fam = family_from_module(bm)
    rt2 = check_balancing_round_trip(fam)
    assert [c.name for c in rt2.checks] == [
        "balancing_restored_trivial",
        "balancing_restored_regular",
        "balancing_restored_regular_x_regular",
    ]
    assert rt2.ok


def test_family_axioms_run_standalone(kZ3):
    bm = regular_crossed_module(kZ3, 1, -1, signed_regular_comodule(kZ3, 1, -1))
    fam = family_from_module(bm)
    report = verify_balancing_family(fam)
    assert report.ok, report.render()


def test_balancing_from_module_rejects_foreign_module(kZ2, kZ3):
    bm = regular_crossed_module(kZ2, 1, 1, signed_regular_comodule(kZ2, 1, 1))
    with pytest.raises(HopfMismatch):
        balancing_from_module(bm, regular_module(kZ3))


def test_corrupted_module_is_rejected(kZ2):
    good = regular_crossed_module(kZ2, 1, 1, signed_regular_comodule(kZ2, 1, 1))
    entries = {key: q for key, q in good.dual_action.items()}
    entries[(0, 0, 0)] = entries.get((0, 0, 0), Q(0)) + 1
    bad = CrossedModule(
        good.hopf,
        1,
        1,
        good.comodule,
        good.dim,
        Tensor(good.dual_action.dims, entries),
        good.comodule_action,
    )
    assert not validate_crossed_module(bad).ok
    with pytest.raises(ModuleInvalid):
        balancing_from_module(bad, regular_module(kZ2))


def test_inconsistent_balancing_fails_the_tensor_square_route(kZ2):
    # a family whose tensor-square swap disagrees with its regular swap
    # must be caught by the independent multiplicativity route
    good = regular_crossed_module(kZ2, 1, 1, signed_regular_comodule(kZ2, 1, 1))
    fam = family_from_module(good)

    def tampered_beta(x):
        swap = fam.beta(x)
        if x.dim == 4:  # the tensor square of the regular module
            return swap.scale(2)
        return swap

    tampered = BalancingFamily(
        fam.hopf,
        fam.sign_left,
        fam.sign_right,
        fam.comodule,
        fam.dim,
        fam.comodule_action,
        tampered_beta,
    )
    with pytest.raises(NotAModule):
        module_from_balancing(tampered)


def test_gluing_on_sphere_and_digon(kZ2, kZ3):
    for hopf, cells in ((kZ2, two_vertex_sphere_cells()), (kZ3, digon_cells())):
        ls = uniform_labels(cells, hopf)
        for v in cells.vertex_ids:
            report = verify_gluing_equivalence(ls, v)
            assert report.ok, report.render()
            # four certified lines per site
            sites = len(ls.cells.rotations[v])
            assert len(report.checks) == 4 * sites


def test_gluing_on_torus_vertex(kZ2):
    ls = uniform_labels(torus_2x2_cells(), kZ2)
    report = verify_gluing_equivalence(ls, "v00")
    assert report.ok, report.render()
    assert len(report.checks) == 16


def test_gluing_on_defect_vertex(kZ2):
    ls = defect_loop_labels(kZ2)
    report = verify_gluing_equivalence(ls, "v00")
    assert report.ok, report.render()


def test_gluing_reports_corrupted_site(kZ2):
    ls = uniform_labels(two_vertex_sphere_cells(), kZ2)
    modules = site_restricted_modules(ls, "u")
    bm = modules[0]
    entries = {key: q for key, q in bm.dual_action.items()}
    entries[(0, 0, 0)] = entries.get((0, 0, 0), Q(0)) + 1
    modules[0] = CrossedModule(
        bm.hopf,
        bm.sign_left,
        bm.sign_right,
        bm.comodule,
        bm.dim,
        Tensor(bm.dual_action.dims, entries),
        bm.comodule_action,
    )
    report = verify_gluing_equivalence(ls, "u", modules)
    assert not report.ok
    assert [c.name for c in report.failures] == ["site0_round_trips"]
