"""JSON model documents: parse, resolve into a labeled surface, validate.

A *model document* is a UTF-8 JSON object describing one lattice-model
instance.  All scalars are exact rationals encoded as ``"num/den"`` strings
(plain integers may be written as JSON integers or as ``"n"``).  Top-level
keys:

``name`` (optional)
    Display name; defaults to the file stem.

``hopf_algebras``
    Object mapping names to Hopf-algebra definitions:

    * ``{"type": "group", "group": GROUP}`` — group algebra of a finite
      group.  ``GROUP`` is one of ``{"type": "cyclic", "order": n}``,
      ``{"type": "cyclic_product", "orders": [n1, n2, ...]}``,
      ``{"type": "symmetric", "degree": n}`` or
      ``{"type": "table", "labels": [...], "table": [[...]]}``.
    * ``{"type": "dual", "of": "name"}`` — dual of another entry.
    * ``{"type": "explicit", "dim": n, "basis_labels": [...]?,
      "mult": [[i, j, k, q], ...], "unit": [q, ...],
      "comult": [[i, j, k, q], ...], "counit": [q, ...],
      "antipode": [[row, col, q], ...]}`` — raw structure constants.
      ``mult`` entries give the coefficient of basis ``k`` in ``b_i b_j``;
      ``comult`` entries the coefficient of ``b_j (x) b_k`` in the coproduct
      of ``b_i``; ``antipode`` is a matrix acting on coordinate columns.

``edge_algebras``
    Object mapping names to two-sided comodule-algebra definitions:

    * ``{"type": "regular", "hopf": "name"}`` — the Hopf algebra over
      itself (coproduct coactions on both sides).
    * ``{"type": "trivial", "left": "name", "right": "name"}`` — the
      one-dimensional algebra with unit coactions.
    * ``{"type": "twisted_subgroup", "hopf": "name", "subgroup": [labels],
      "cocycle": [[q, ...], ...]}`` — subgroup algebra with multiplication
      twisted by a normalized 2-cocycle; the cocycle table is indexed by the
      ``subgroup`` list order.  ``hopf`` must be a ``group``-type entry.
    * ``{"type": "explicit", "left": "name", "right": "name", "dim": n,
      "basis_labels": [...]?, "mult": [[i, j, k, q], ...],
      "unit": [q, ...], "coaction": [[a, k, k0, b, q], ...],
      "character": [q, ...]?}`` — raw structure constants; ``coaction``
      entries give the coefficient of ``h_a (x) basis_k0 (x) h_b`` in the
      two-sided coaction of ``basis_k``.

``surface``
    ``{"vertices": [...], "edges": {"e": ["tail", "head"], ...},
    "rotations": {"v": [["e", "out"|"in"], ...], ...},
    "external_faces": [["e", "out"|"in"], ...]?}``.  Rotations list the
    half-edges incident to each vertex in counterclockwise order; faces are
    derived from the rotation system, and ``external_faces`` marks derived
    faces (each by any one dart on its boundary walk) as suppressed.

``labels``
    * ``plaquettes``: ``{"default": "hopf name"?,
      "by_face": [[["e", "out"|"in"], "hopf name"], ...]?}`` — every
      internal face must end up labeled (faces are addressed by a
      representative boundary dart).
    * ``edges``: ``{"default": "edge algebra name"?,
      "by_edge": {"e": "edge algebra name", ...}?}`` — every edge must end
      up labeled.
    * ``vertices``: ``{"default": VSPEC?, "by_vertex": {"v": VSPEC}?}``
      where ``VSPEC`` is ``{"kind": "vacuum"}``, ``{"kind": "regular"}`` or
      ``{"kind": "explicit", "dim": n, "a_matrices": [...], "k_matrices":
      [...]}`` (one list of ``[[row, col, q], ...]`` matrices per local
      generator factor, one matrix per basis element of that factor).
      Unlisted vertices default to vacuum.

``options`` (optional)
    ``{"guard": n?, "seed": n?}`` — state-space dimension guard and the
    sampling seed used by the verification suite.

Schema and reference errors raise :class:`InputError` (command-line exit
code 2); mathematically invalid but well-formed content surfaces as
:class:`MathViolation` failures (exit code 1), either raised by builders
(for example a multiplication table that is not a group) or reported by
:func:`validate_document`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .comodule import (
    BicomoduleAlgebraData,
    regular_bicomodule,
    trivial_bicomodule,
    twisted_subgroup_algebra,
    validate_bicomodule,
)
from .errors import InputError, MathViolation, UnlabeledCell
from .groups import (
    GroupTable,
    cyclic_group,
    cyclic_product,
    group_from_table,
    symmetric_group,
)
from .hopf import AlgebraData, HopfAlgebraData, dual_hopf, group_algebra, validate_hopf
from .lattice import build_vertex_module, validate_vertex_module, vertex_algebra
from .linalg import SparseMatrix, Tensor
from .rationals import Rational, rational_from_str
from .reporting import CheckReport
from .surface import (
    CellDecomposition,
    LabeledSurface,
    VertexLabelSpec,
    build_cells,
)

__all__ = [
    "ModelDocument",
    "document_from_dict",
    "load_document",
    "validate_document",
]


# --- low-level JSON helpers ---------------------------------------------------------


def _expect(data: object, typ: type, where: str) -> object:
    if not isinstance(data, typ):
        raise InputError(f"{where}: expected {typ.__name__}, got {type(data).__name__}")
    return data


def _get(data: Dict, key: str, typ: type, where: str, default: object = None) -> object:
    if key not in data:
        if default is not None:
            return default
        raise InputError(f"{where}: missing required key {key!r}")
    return _expect(data[key], typ, f"{where}.{key}")


def _opt(data: Dict, key: str, typ: type, where: str) -> Optional[object]:
    if key not in data or data[key] is None:
        return None
    return _expect(data[key], typ, f"{where}.{key}")


def _rational(value: object, where: str) -> Rational:
    if isinstance(value, bool):
        raise InputError(f"{where}: booleans are not rationals")
    if isinstance(value, int):
        return rational_from_str(str(value))
    if isinstance(value, str):
        try:
            return rational_from_str(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"{where}: bad rational {value!r}: {exc}") from exc
    raise InputError(
        f"{where}: rationals must be integers or 'num/den' strings, got "
        f"{type(value).__name__}"
    )


def _rational_vector(value: object, dim: int, where: str) -> Tuple[Rational, ...]:
    seq = _expect(value, list, where)
    if len(seq) != dim:
        raise InputError(f"{where}: expected {dim} entries, got {len(seq)}")
    return tuple(_rational(v, f"{where}[{i}]") for i, v in enumerate(seq))


def _index(value: object, bound: int, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputError(f"{where}: expected an integer index")
    if not 0 <= value < bound:
        raise InputError(f"{where}: index {value} out of range [0, {bound})")
    return value


def _tensor(value: object, dims: Sequence[int], where: str) -> Tensor:
    """Entry list ``[[i_1, ..., i_r, q], ...]`` -> sparse tensor."""
    seq = _expect(value, list, where)
    entries: Dict[Tuple[int, ...], Rational] = {}
    rank = len(dims)
    for pos, row in enumerate(seq):
        item = _expect(row, list, f"{where}[{pos}]")
        if len(item) != rank + 1:
            raise InputError(
                f"{where}[{pos}]: expected {rank} indices plus a coefficient"
            )
        key = tuple(
            _index(item[axis], dims[axis], f"{where}[{pos}][{axis}]")
            for axis in range(rank)
        )
        q = _rational(item[rank], f"{where}[{pos}][{rank}]")
        if key in entries:
            raise InputError(f"{where}[{pos}]: duplicate entry for index {key}")
        if q:
            entries[key] = q
    return Tensor(tuple(dims), entries)


def _matrix(value: object, rows: int, cols: int, where: str) -> SparseMatrix:
    t = _tensor(value, (rows, cols), where)
    return SparseMatrix(rows, cols, dict(t.entries))


def _dart_pair(value: object, where: str) -> Tuple[str, str]:
    item = _expect(value, list, where)
    if len(item) != 2 or not all(isinstance(x, str) for x in item):
        raise InputError(f"{where}: expected [edge_id, \"out\"|\"in\"]")
    if item[1] not in ("out", "in"):
        raise InputError(f"{where}: dart end must be 'out' or 'in', got {item[1]!r}")
    return (item[0], item[1])


def _resolve_dart(cells: CellDecomposition, pair: Tuple[str, str], where: str) -> int:
    edge, end = pair
    if edge not in cells.edge_ids:
        raise InputError(f"{where}: unknown edge {edge!r}")
    return cells.dart(edge, 0 if end == "out" else 1)


# --- named algebra builders ---------------------------------------------------------


def _build_group(spec: Dict, where: str) -> GroupTable:
    kind = _get(spec, "type", str, where)
    if kind == "cyclic":
        return cyclic_group(_expect(_get(spec, "order", int, where), int, where))
    if kind == "cyclic_product":
        orders = _expect(_get(spec, "orders", list, where), list, where)
        if not all(isinstance(n, int) and not isinstance(n, bool) for n in orders):
            raise InputError(f"{where}.orders: expected a list of integers")
        return cyclic_product(orders)
    if kind == "symmetric":
        return symmetric_group(_expect(_get(spec, "degree", int, where), int, where))
    if kind == "table":
        labels = _get(spec, "labels", list, where)
        table = _get(spec, "table", list, where)
        if not all(isinstance(x, str) for x in labels):
            raise InputError(f"{where}.labels: expected strings")
        rows = []
        for i, row in enumerate(table):
            row = _expect(row, list, f"{where}.table[{i}]")
            rows.append(
                [
                    _index(v, len(labels), f"{where}.table[{i}][{j}]")
                    for j, v in enumerate(row)
                ]
            )
        return group_from_table(labels, rows)
    raise InputError(f"{where}: unknown group type {kind!r}")


def _build_explicit_hopf(spec: Dict, where: str) -> HopfAlgebraData:
    dim = _expect(_get(spec, "dim", int, where), int, where)
    if dim < 1:
        raise InputError(f"{where}.dim: must be positive")
    labels_raw = _opt(spec, "basis_labels", list, where)
    if labels_raw is None:
        labels = [f"b{i}" for i in range(dim)]
    else:
        if len(labels_raw) != dim or not all(isinstance(x, str) for x in labels_raw):
            raise InputError(f"{where}.basis_labels: expected {dim} strings")
        labels = list(labels_raw)
    mult = _tensor(_get(spec, "mult", list, where), (dim, dim, dim), f"{where}.mult")
    unit = _rational_vector(_get(spec, "unit", list, where), dim, f"{where}.unit")
    algebra = AlgebraData(dim, labels, mult, unit)
    comult = _tensor(
        _get(spec, "comult", list, where), (dim, dim, dim), f"{where}.comult"
    )
    counit = _rational_vector(_get(spec, "counit", list, where), dim, f"{where}.counit")
    antipode = _matrix(
        _get(spec, "antipode", list, where), dim, dim, f"{where}.antipode"
    )
    return HopfAlgebraData(algebra, comult, counit, antipode)


def _build_hopf_algebras(
    data: Dict, where: str
) -> Tuple[Dict[str, HopfAlgebraData], Dict[str, GroupTable]]:
    hopfs: Dict[str, HopfAlgebraData] = {}
    groups: Dict[str, GroupTable] = {}
    pending = dict(data)
    # "dual" entries may reference entries defined later; resolve in passes.
    while pending:
        progressed = False
        for name in list(pending):
            spec = _expect(pending[name], dict, f"{where}.{name}")
            kind = _get(spec, "type", str, f"{where}.{name}")
            if kind == "group":
                group = _build_group(
                    _get(spec, "group", dict, f"{where}.{name}"), f"{where}.{name}.group"
                )
                groups[name] = group
                hopfs[name] = group_algebra(group)
            elif kind == "explicit":
                hopfs[name] = _build_explicit_hopf(spec, f"{where}.{name}")
            elif kind == "dual":
                target = _get(spec, "of", str, f"{where}.{name}")
                if target == name:
                    raise InputError(f"{where}.{name}: dual of itself")
                if target not in hopfs:
                    if target not in pending:
                        raise InputError(
                            f"{where}.{name}: unknown Hopf algebra {target!r}"
                        )
                    continue
                hopfs[name] = dual_hopf(hopfs[target])
            else:
                raise InputError(f"{where}.{name}: unknown Hopf type {kind!r}")
            del pending[name]
            progressed = True
        if not progressed:
            raise InputError(f"{where}: circular 'dual' references: {sorted(pending)}")
    return hopfs, groups


def _cocycle_from_table(
    group: GroupTable, members: List[str], table: object, where: str
) -> Callable[[int, int], Rational]:
    rows = _expect(table, list, where)
    if len(rows) != len(members):
        raise InputError(f"{where}: expected {len(members)} rows")
    parsed: List[List[Rational]] = []
    for i, row in enumerate(rows):
        row = _expect(row, list, f"{where}[{i}]")
        if len(row) != len(members):
            raise InputError(f"{where}[{i}]: expected {len(members)} entries")
        parsed.append([_rational(v, f"{where}[{i}][{j}]") for j, v in enumerate(row)])
    position: Dict[int, int] = {}
    for r, label in enumerate(members):
        if label not in group.labels:
            raise InputError(f"{where}: {label!r} is not a group element label")
        position[group.index(label)] = r

    def zeta(u: int, v: int) -> Rational:
        if u not in position or v not in position:
            raise InputError(f"{where}: cocycle queried outside the subgroup")
        return parsed[position[u]][position[v]]

    return zeta


def _build_explicit_edge(
    spec: Dict,
    left: HopfAlgebraData,
    right: HopfAlgebraData,
    where: str,
) -> BicomoduleAlgebraData:
    dim = _expect(_get(spec, "dim", int, where), int, where)
    if dim < 1:
        raise InputError(f"{where}.dim: must be positive")
    labels_raw = _opt(spec, "basis_labels", list, where)
    if labels_raw is None:
        labels = [f"k{i}" for i in range(dim)]
    else:
        if len(labels_raw) != dim or not all(isinstance(x, str) for x in labels_raw):
            raise InputError(f"{where}.basis_labels: expected {dim} strings")
        labels = list(labels_raw)
    mult = _tensor(_get(spec, "mult", list, where), (dim, dim, dim), f"{where}.mult")
    unit = _rational_vector(_get(spec, "unit", list, where), dim, f"{where}.unit")
    algebra = AlgebraData(dim, labels, mult, unit)
    coaction = _tensor(
        _get(spec, "coaction", list, where),
        (dim, left.dim, dim, right.dim),
        f"{where}.coaction",
    )
    character_raw = _opt(spec, "character", list, where)
    character = (
        None
        if character_raw is None
        else _rational_vector(character_raw, dim, f"{where}.character")
    )
    return BicomoduleAlgebraData(algebra, left, right, coaction, character)


def _build_edge_algebras(
    data: Dict,
    hopfs: Dict[str, HopfAlgebraData],
    groups: Dict[str, GroupTable],
    where: str,
) -> Dict[str, BicomoduleAlgebraData]:
    def hopf_ref(spec: Dict, key: str, ctx: str) -> HopfAlgebraData:
        name = _get(spec, key, str, ctx)
        if name not in hopfs:
            raise InputError(f"{ctx}.{key}: unknown Hopf algebra {name!r}")
        return hopfs[name]

    out: Dict[str, BicomoduleAlgebraData] = {}
    for name in data:
        ctx = f"{where}.{name}"
        spec = _expect(data[name], dict, ctx)
        kind = _get(spec, "type", str, ctx)
        if kind == "regular":
            out[name] = regular_bicomodule(hopf_ref(spec, "hopf", ctx))
        elif kind == "trivial":
            out[name] = trivial_bicomodule(
                hopf_ref(spec, "left", ctx), hopf_ref(spec, "right", ctx)
            )
        elif kind == "twisted_subgroup":
            hopf_name = _get(spec, "hopf", str, ctx)
            if hopf_name not in hopfs:
                raise InputError(f"{ctx}.hopf: unknown Hopf algebra {hopf_name!r}")
            if hopf_name not in groups:
                raise InputError(
                    f"{ctx}.hopf: {hopf_name!r} is not a 'group'-type entry, so it "
                    "has no underlying group for a twisted subgroup algebra"
                )
            members_raw = _get(spec, "subgroup", list, ctx)
            if not all(isinstance(x, str) for x in members_raw):
                raise InputError(f"{ctx}.subgroup: expected element labels")
            members = list(members_raw)
            zeta = _cocycle_from_table(
                groups[hopf_name], members, _get(spec, "cocycle", list, ctx),
                f"{ctx}.cocycle",
            )
            out[name] = twisted_subgroup_algebra(
                hopfs[hopf_name], groups[hopf_name], members, zeta
            )
        elif kind == "explicit":
            out[name] = _build_explicit_edge(
                spec, hopf_ref(spec, "left", ctx), hopf_ref(spec, "right", ctx), ctx
            )
        else:
            raise InputError(f"{ctx}: unknown edge-algebra type {kind!r}")
    return out


# --- surface and labels -------------------------------------------------------------


def _build_surface(spec: Dict, where: str) -> CellDecomposition:
    vertices_raw = _get(spec, "vertices", list, where)
    if not all(isinstance(v, str) for v in vertices_raw):
        raise InputError(f"{where}.vertices: expected strings")
    edges_raw = _get(spec, "edges", dict, where)
    edges: Dict[str, Tuple[str, str]] = {}
    for e in edges_raw:
        pair = _expect(edges_raw[e], list, f"{where}.edges.{e}")
        if len(pair) != 2 or not all(isinstance(x, str) for x in pair):
            raise InputError(f"{where}.edges.{e}: expected [tail, head]")
        edges[e] = (pair[0], pair[1])
    rotations_raw = _get(spec, "rotations", dict, where)
    rotations: Dict[str, List[Tuple[str, str]]] = {}
    for v in rotations_raw:
        seq = _expect(rotations_raw[v], list, f"{where}.rotations.{v}")
        rotations[v] = [
            _dart_pair(item, f"{where}.rotations.{v}[{i}]")
            for i, item in enumerate(seq)
        ]
    external_raw = _opt(spec, "external_faces", list, where) or []
    external = [
        _dart_pair(item, f"{where}.external_faces[{i}]")
        for i, item in enumerate(external_raw)
    ]
    return build_cells(list(vertices_raw), edges, rotations, external)


def _vertex_spec(raw: object, where: str) -> VertexLabelSpec:
    spec = _expect(raw, dict, where)
    kind = _get(spec, "kind", str, where)
    if kind == "vacuum":
        return VertexLabelSpec("vacuum")
    if kind == "regular":
        return VertexLabelSpec("regular")
    if kind == "explicit":
        dim = _expect(_get(spec, "dim", int, where), int, where)
        if dim < 1:
            raise InputError(f"{where}.dim: must be positive")

        def matrices(key: str) -> List[List[SparseMatrix]]:
            groups_raw = _get(spec, key, list, where)
            out: List[List[SparseMatrix]] = []
            for i, group in enumerate(groups_raw):
                group = _expect(group, list, f"{where}.{key}[{i}]")
                out.append(
                    [
                        _matrix(m, dim, dim, f"{where}.{key}[{i}][{j}]")
                        for j, m in enumerate(group)
                    ]
                )
            return out

        return VertexLabelSpec("explicit", dim, matrices("a_matrices"), matrices("k_matrices"))
    raise InputError(f"{where}: unknown vertex label kind {kind!r}")


def _build_labels(
    spec: Dict,
    cells: CellDecomposition,
    hopfs: Dict[str, HopfAlgebraData],
    edge_algebras: Dict[str, BicomoduleAlgebraData],
    where: str,
) -> LabeledSurface:
    plaquette_spec = _expect(spec.get("plaquettes", {}), dict, f"{where}.plaquettes")
    default_hopf = _opt(plaquette_spec, "default", str, f"{where}.plaquettes")
    plaquette_labels: Dict[int, Optional[HopfAlgebraData]] = {}
    for face in cells.internal_faces():
        if default_hopf is not None:
            if default_hopf not in hopfs:
                raise InputError(
                    f"{where}.plaquettes.default: unknown Hopf algebra {default_hopf!r}"
                )
            plaquette_labels[face] = hopfs[default_hopf]
    by_face = _opt(plaquette_spec, "by_face", list, f"{where}.plaquettes") or []
    for i, item in enumerate(by_face):
        ctx = f"{where}.plaquettes.by_face[{i}]"
        item = _expect(item, list, ctx)
        if len(item) != 2:
            raise InputError(f"{ctx}: expected [[edge, end], hopf name]")
        dart = _resolve_dart(cells, _dart_pair(item[0], f"{ctx}[0]"), f"{ctx}[0]")
        name = _expect(item[1], str, f"{ctx}[1]")
        if name not in hopfs:
            raise InputError(f"{ctx}: unknown Hopf algebra {name!r}")
        face = cells.face_of_dart(dart)
        if face in cells.external_faces:
            raise InputError(f"{ctx}: face of that dart is external")
        plaquette_labels[face] = hopfs[name]
    for face in cells.internal_faces():
        if face not in plaquette_labels:
            raise UnlabeledCell(
                f"internal face {face} has no plaquette label and no default is set"
            )

    edge_spec = _expect(spec.get("edges", {}), dict, f"{where}.edges")
    default_edge = _opt(edge_spec, "default", str, f"{where}.edges")
    by_edge = _opt(edge_spec, "by_edge", dict, f"{where}.edges") or {}
    edge_labels: Dict[str, BicomoduleAlgebraData] = {}
    for e in by_edge:
        if e not in cells.edge_ids:
            raise InputError(f"{where}.edges.by_edge: unknown edge {e!r}")
    for e in cells.edge_ids:
        name = by_edge.get(e, default_edge)
        if name is None:
            raise UnlabeledCell(
                f"edge {e!r} has no edge-algebra label and no default is set"
            )
        name = _expect(name, str, f"{where}.edges.by_edge.{e}")
        if name not in edge_algebras:
            raise InputError(f"{where}.edges: unknown edge algebra {name!r}")
        edge_labels[e] = edge_algebras[name]

    vertex_spec = _expect(spec.get("vertices", {}), dict, f"{where}.vertices")
    default_vertex_raw = vertex_spec.get("default")
    by_vertex = _opt(vertex_spec, "by_vertex", dict, f"{where}.vertices") or {}
    vertex_labels: Dict[str, VertexLabelSpec] = {}
    if default_vertex_raw is not None:
        default_label = _vertex_spec(default_vertex_raw, f"{where}.vertices.default")
        for v in cells.vertex_ids:
            vertex_labels[v] = default_label
    for v in by_vertex:
        if v not in cells.vertex_ids:
            raise InputError(f"{where}.vertices.by_vertex: unknown vertex {v!r}")
        vertex_labels[v] = _vertex_spec(
            by_vertex[v], f"{where}.vertices.by_vertex.{v}"
        )
    return LabeledSurface(cells, plaquette_labels, edge_labels, vertex_labels)


# --- the document -------------------------------------------------------------------


@dataclass(eq=False)
class ModelDocument:
    """A fully resolved model instance plus its run options."""

    name: str
    hopf_algebras: Dict[str, HopfAlgebraData]
    edge_algebras: Dict[str, BicomoduleAlgebraData]
    labels: LabeledSurface
    guard: Optional[int] = None
    seed: int = 0
    _cache: Dict[str, object] = field(default_factory=dict, repr=False)


_KNOWN_TOP_KEYS = {
    "name",
    "description",
    "hopf_algebras",
    "edge_algebras",
    "surface",
    "labels",
    "options",
}


def document_from_dict(data: object, name: str = "document") -> ModelDocument:
    root = _expect(data, dict, "document")
    unknown = sorted(set(root) - _KNOWN_TOP_KEYS)
    if unknown:
        raise InputError(f"document: unknown top-level keys {unknown}")
    doc_name = _opt(root, "name", str, "document") or name
    hopfs, groups = _build_hopf_algebras(
        _get(root, "hopf_algebras", dict, "document"), "hopf_algebras"
    )
    edge_algebras = _build_edge_algebras(
        _expect(root.get("edge_algebras", {}), dict, "document.edge_algebras"),
        hopfs,
        groups,
        "edge_algebras",
    )
    cells = _build_surface(_get(root, "surface", dict, "document"), "surface")
    labels = _build_labels(
        _get(root, "labels", dict, "document"), cells, hopfs, edge_algebras, "labels"
    )
    options = _expect(root.get("options", {}), dict, "document.options")
    guard = _opt(options, "guard", int, "document.options")
    if guard is not None and guard < 1:
        raise InputError("document.options.guard: must be positive")
    seed_raw = _opt(options, "seed", int, "document.options")
    seed = 0 if seed_raw is None else int(seed_raw)
    return ModelDocument(doc_name, hopfs, edge_algebras, labels, guard, seed)


def load_document(path: str) -> ModelDocument:
    from pathlib import Path

    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc
    return document_from_dict(data, name=p.stem)


# --- validation ---------------------------------------------------------------------


def validate_document(doc: ModelDocument) -> CheckReport:
    """Validate every algebraic object the document defines, plus every
    vertex-local structure it induces on the surface.

    Structural (schema) problems never reach this point — they are raised
    while loading.  Each mathematical law that fails appears as a failing
    line; a vertex whose local constructions cannot even be built (for
    example mismatched Hopf sides between an edge label and its adjacent
    plaquette labels) contributes a failing line carrying the violation
    message.
    """
    report = CheckReport(f"document {doc.name!r}")
    for name in sorted(doc.hopf_algebras):
        report.extend(validate_hopf(doc.hopf_algebras[name]), prefix=f"hopf[{name}].")
    for name in sorted(doc.edge_algebras):
        report.extend(
            validate_bicomodule(doc.edge_algebras[name]), prefix=f"edge[{name}]."
        )
    ls = doc.labels
    cells = ls.cells
    for v in cells.vertex_ids:
        sites = cells.sites_at_vertex(v)
        if any(ls.hopf_at(s.face) is None for s in sites):
            report.add(
                f"vertex[{v}].module",
                True,
                "SKIPPED: vertex touches an external face",
            )
            continue
        try:
            va = vertex_algebra(ls, v)
            for k in range(len(va.sites)):
                va.site_crossed(k)
            module = build_vertex_module(va, ls.vertex_label(v))
            report.extend(validate_vertex_module(va, module), prefix=f"vertex[{v}].")
        except MathViolation as exc:
            report.add(f"vertex[{v}].local_structure", False, str(exc))
    return report
