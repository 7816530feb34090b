"""Shared fixtures: the standard group algebras and surfaces used across
the suite.  Everything is session-scoped — all structures are immutable in
practice (builders memoize on private caches only)."""

from pathlib import Path

import pytest

from kitaev_defects.comodule import regular_bicomodule, trivial_bicomodule
from kitaev_defects.groups import cyclic_group, cyclic_product, symmetric_group
from kitaev_defects.hopf import group_algebra
from kitaev_defects.surface import LabeledSurface, build_cells

MODELS = Path(__file__).resolve().parent.parent / "models"


@pytest.fixture(scope="session")
def kZ1():
    return group_algebra(cyclic_group(1))


@pytest.fixture(scope="session")
def kZ2():
    return group_algebra(cyclic_group(2))


@pytest.fixture(scope="session")
def kZ3():
    return group_algebra(cyclic_group(3))


@pytest.fixture(scope="session")
def kZ4():
    return group_algebra(cyclic_group(4))


@pytest.fixture(scope="session")
def kV4():
    return group_algebra(cyclic_product([2, 2]))


@pytest.fixture(scope="session")
def kS3():
    return group_algebra(symmetric_group(3))


def uniform_labels(cells, hopf):
    """Every internal face gets ``hopf``, every edge its regular bicomodule,
    every vertex the vacuum."""
    return LabeledSurface(
        cells,
        {f: hopf for f in cells.internal_faces()},
        {e: regular_bicomodule(hopf) for e in cells.edge_ids},
        {},
    )


def two_vertex_sphere_cells():
    return build_cells(
        ["u", "v"],
        {"e": ("u", "v")},
        {"u": [("e", "out")], "v": [("e", "in")]},
    )


def tetrahedron_cells():
    return build_cells(
        ["1", "2", "3", "4"],
        {
            "e12": ("1", "2"),
            "e13": ("1", "3"),
            "e14": ("1", "4"),
            "e23": ("2", "3"),
            "e24": ("2", "4"),
            "e34": ("3", "4"),
        },
        {
            "1": [("e12", "out"), ("e14", "out"), ("e13", "out")],
            "2": [("e23", "out"), ("e24", "out"), ("e12", "in")],
            "3": [("e13", "in"), ("e34", "out"), ("e23", "in")],
            "4": [("e34", "in"), ("e14", "in"), ("e24", "in")],
        },
    )


def torus_2x2_cells():
    verts = [f"v{i}{j}" for i in range(2) for j in range(2)]
    edges = {}
    for i in range(2):
        for j in range(2):
            edges[f"h{i}{j}"] = (f"v{i}{j}", f"v{(i + 1) % 2}{j}")
            edges[f"x{i}{j}"] = (f"v{i}{j}", f"v{i}{(j + 1) % 2}")
    rot = {}
    for i in range(2):
        for j in range(2):
            rot[f"v{i}{j}"] = [
                (f"h{i}{j}", "out"),
                (f"x{i}{j}", "out"),
                (f"h{(i + 1) % 2}{j}", "in"),
                (f"x{i}{(j + 1) % 2}", "in"),
            ]
    return build_cells(verts, edges, rot)


def torus_1x1_cells():
    return build_cells(
        ["v"],
        {"h": ("v", "v"), "x": ("v", "v")},
        {"v": [("h", "out"), ("x", "out"), ("h", "in"), ("x", "in")]},
    )


def digon_cells():
    return build_cells(
        ["u", "v"],
        {"e1": ("u", "v"), "e2": ("u", "v")},
        {"u": [("e1", "out"), ("e2", "out")], "v": [("e2", "in"), ("e1", "in")]},
    )


def defect_loop_labels(hopf):
    """2x2 torus with the vertical loop x00, x01 carrying the transparent
    (one-dimensional) edge algebra."""
    cells = torus_2x2_cells()
    defect = {"x00", "x01"}
    edge_labels = {
        e: (trivial_bicomodule(hopf, hopf) if e in defect else regular_bicomodule(hopf))
        for e in cells.edge_ids
    }
    return LabeledSurface(
        cells, {f: hopf for f in cells.internal_faces()}, edge_labels, {}
    )
