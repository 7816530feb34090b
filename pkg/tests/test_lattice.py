"""State spaces, vertex/plaquette projectors, and the verification suite.

Ground-state dimensions asserted here have independent derivations: on a
sphere the model has a unique ground state for any group; on a torus with
abelian group G the degeneracy is |G|^2 (pairs of commuting holonomies);
the transparent defect loop on the 2x2 torus cuts that in half to |G|.
Check-line counts are regression pins.
"""

import pytest

from kitaev_defects.comodule import regular_bicomodule
from kitaev_defects.crossed import drinfeld_double
from kitaev_defects.errors import DimensionGuardExceeded, NotASite
from kitaev_defects.lattice import (
    VertexModule,
    build_operator_set,
    build_state_space,
    build_vertex_module,
    check_straightening_representation,
    dimension_guard,
    ground_space_dimension,
    hamiltonian,
    validate_vertex_module,
    vertex_algebra,
    verify_operator_set,
)
from kitaev_defects.linalg import kernel_dimension
from kitaev_defects.surface import LabeledSurface, VertexLabelSpec
from tests.conftest import (
    defect_loop_labels,
    digon_cells,
    tetrahedron_cells,
    torus_1x1_cells,
    torus_2x2_cells,
    two_vertex_sphere_cells,
    uniform_labels,
)


def _ops(labels):
    return build_operator_set(build_state_space(labels))


def test_state_space_dimensions(kZ2):
    assert build_state_space(uniform_labels(two_vertex_sphere_cells(), kZ2)).total_dim == 2
    assert build_state_space(uniform_labels(digon_cells(), kZ2)).total_dim == 4
    assert build_state_space(uniform_labels(tetrahedron_cells(), kZ2)).total_dim == 64
    assert build_state_space(uniform_labels(torus_2x2_cells(), kZ2)).total_dim == 256
    assert build_state_space(defect_loop_labels(kZ2)).total_dim == 64
    assert build_state_space(uniform_labels(torus_1x1_cells(), kZ2)).total_dim == 4


def test_sphere_suite(kZ2):
    ops = _ops(uniform_labels(two_vertex_sphere_cells(), kZ2))
    report = verify_operator_set(ops)
    assert report.ok, report.render()
    assert len(report.checks) == 9
    assert ground_space_dimension(ops, method="both") == {
        "trace": 1,
        "kernel": 1,
        "dimension": 1,
    }


def test_digon_suite(kZ3):
    ops = _ops(uniform_labels(digon_cells(), kZ3))
    report = verify_operator_set(ops)
    assert report.ok, report.render()
    assert ground_space_dimension(ops)["dimension"] == 1


def test_tetrahedron_suite(kZ2):
    ops = _ops(uniform_labels(tetrahedron_cells(), kZ2))
    report = verify_operator_set(ops)
    assert report.ok, report.render()
    assert len(report.checks) == 72
    assert ground_space_dimension(ops, method="both")["dimension"] == 1


def test_torus_suite_and_degeneracy(kZ2):
    ops = _ops(uniform_labels(torus_2x2_cells(), kZ2))
    report = verify_operator_set(ops)
    assert report.ok, report.render()
    assert len(report.checks) == 80
    gd = ground_space_dimension(ops, method="both")
    assert gd["trace"] == gd["kernel"] == gd["dimension"] == 4


def test_defect_loop_halves_the_degeneracy(kZ2):
    ops = _ops(defect_loop_labels(kZ2))
    assert ops.state_space.total_dim == 64
    report = verify_operator_set(ops)
    assert report.ok, report.render()
    assert len(report.checks) == 80
    # vertices on the transparent loop act trivially
    assert ops.vertex_ops["v00"].is_identity()
    assert ops.vertex_ops["v01"].is_identity()
    assert not ops.vertex_ops["v10"].is_identity()
    assert not ops.vertex_ops["v11"].is_identity()
    assert ground_space_dimension(ops, method="both")["dimension"] == 2


def test_nonregular_torus_warns_and_still_grounds(kZ2):
    ops = _ops(uniform_labels(torus_1x1_cells(), kZ2))
    report = verify_operator_set(ops)
    assert report.ok
    names = [c.name for c in report.checks]
    assert names == [
        "idempotent:A[v]",
        "idempotent:B[0]",
        "pairwise_commutation",
        "base_site_independent",
        "straightening_representation",
        "local:A[v]",
        "local:B[0]",
    ]
    by_name = {c.name: c for c in report.checks}
    assert "SKIPPED (warning)" in by_name["pairwise_commutation"].detail
    assert "SKIPPED (warning)" in by_name["straightening_representation"].detail
    assert ground_space_dimension(ops, method="both")["dimension"] == 4


def test_hamiltonian_kernel_equals_ground_dimension(kZ2):
    ops = _ops(uniform_labels(digon_cells(), kZ2))
    h = hamiltonian(ops)
    assert kernel_dimension(h) == ground_space_dimension(ops, method="trace")["trace"]


def test_valence_one_site_is_the_double(kZ2, kZ3, kS3):
    # at a valence-1 vertex with regular labels, the local site algebra is
    # exactly the double of the face algebra
    for hopf in (kZ2, kZ3, kS3):
        ls = uniform_labels(two_vertex_sphere_cells(), hopf)
        va = vertex_algebra(ls, "u")
        assert len(va.sites) == 1
        cp = va.site_crossed(0)
        assert cp.algebra.same_structure(drinfeld_double(hopf).algebra)


def test_straightening_representation_orientation(kZ3):
    ls = uniform_labels(digon_cells(), kZ3)
    ss = build_state_space(ls)
    for v in ss.vertex_order:
        for site in vertex_algebra(ls, v).sites:
            assert check_straightening_representation(ss, site.face, site, 1).ok
            # the mirror distribution is a deliberate corruption: must fail
            assert not check_straightening_representation(ss, site.face, site, -1).ok


def test_straightening_representation_orientation_tetrahedron(kZ3):
    ls = uniform_labels(tetrahedron_cells(), kZ3)
    ss = build_state_space(ls)
    site = vertex_algebra(ls, "1").sites[0]
    assert check_straightening_representation(ss, site.face, site, 1).ok
    assert not check_straightening_representation(ss, site.face, site, -1).ok


def test_external_face_raises_not_a_site(kZ2):
    cells = tetrahedron_cells()
    ls = uniform_labels(cells, kZ2)
    ss = build_state_space(ls)
    site = vertex_algebra(ls, "1").sites[0]
    with pytest.raises(NotASite):
        check_straightening_representation(ss, 99, site)


def test_regular_vertex_module_digon(kZ2):
    cells = digon_cells()
    ls = LabeledSurface(
        cells,
        {f: kZ2 for f in cells.internal_faces()},
        {e: regular_bicomodule(kZ2) for e in cells.edge_ids},
        {"u": VertexLabelSpec("regular")},
    )
    ss = build_state_space(ls)
    assert ss.total_dim == 64
    assert ss.vertex_modules["u"].dim == 16
    va = vertex_algebra(ls, "u")
    report = validate_vertex_module(va, ss.vertex_modules["u"])
    assert [c.name for c in report.checks] == [
        "site_factor_representations",
        "edge_factor_representations",
        "module_straightening_pairs",
    ]
    assert report.ok, report.render()
    ops = build_operator_set(ss)
    suite = verify_operator_set(ops)
    assert suite.ok, suite.render()
    gd = ground_space_dimension(ops, method="both")
    assert gd["trace"] == gd["kernel"] == 2


def test_corrupted_module_fails_validation(kZ2):
    cells = digon_cells()
    ls = LabeledSurface(
        cells,
        {f: kZ2 for f in cells.internal_faces()},
        {e: regular_bicomodule(kZ2) for e in cells.edge_ids},
        {"u": VertexLabelSpec("regular")},
    )
    va = vertex_algebra(ls, "u")
    good = build_vertex_module(va, VertexLabelSpec("regular"))
    assert good.k_matrices is not None and good.a_matrices is not None
    bad_k = [list(ms) for ms in good.k_matrices]
    bad_k[0][1] = bad_k[0][1].scale(0)  # kill one generator action
    bad = VertexModule(va, good.dim, "explicit", good.a_matrices, bad_k)
    report = validate_vertex_module(va, bad)
    assert not report.ok
    assert any(c.name == "edge_factor_representations" for c in report.failures)


def test_vacuum_module_validation(kZ2):
    ls = uniform_labels(torus_2x2_cells(), kZ2)
    va = vertex_algebra(ls, "v00")
    module = build_vertex_module(va, VertexLabelSpec("vacuum"))
    assert module.is_vacuum and module.dim == 1
    report = validate_vertex_module(va, module)
    assert report.ok, report.render()
    assert any(c.name == "vacuum_slot_characters" for c in report.checks)


def test_dimension_guard(monkeypatch, kZ2):
    ls = uniform_labels(torus_2x2_cells(), kZ2)
    with pytest.raises(DimensionGuardExceeded):
        build_state_space(ls, guard=100)
    monkeypatch.setenv("KITAEV_MAX_DIM", "100")
    assert dimension_guard() == 100
    with pytest.raises(DimensionGuardExceeded):
        build_state_space(ls)
    monkeypatch.setenv("KITAEV_MAX_DIM", "256")
    assert build_state_space(ls).total_dim == 256


def test_ground_space_methods_agree(kZ3):
    ops = _ops(uniform_labels(digon_cells(), kZ3))
    for method in ("auto", "trace", "kernel", "both"):
        out = ground_space_dimension(ops, method)
        assert out["dimension"] == 1
