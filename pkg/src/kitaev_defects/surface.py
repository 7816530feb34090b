"""Oriented surfaces as rotation systems on half-edges (darts).

Representation
--------------

* Edges are directed (source -> target) and sorted by id; edge number ``e``
  contributes two darts: ``2e`` (the *outgoing* end, based at the source)
  and ``2e + 1`` (the *incoming* end, based at the target).
* ``alpha`` swaps the two darts of an edge; traversing dart ``d`` walks from
  its base vertex to the base of ``alpha(d)``.
* Each vertex stores its incident darts in **counterclockwise** cyclic order
  (the rotation).  ``sigma`` maps a dart to the next dart counterclockwise
  at the same vertex.

Faces
-----

Faces are traced so that the interior lies on the **right** of the walk
(clockwise boundary walks): after traversing dart ``d``, the walk continues
with ``sigma(alpha(d))`` — the *successor* of the reversed dart in the
counterclockwise rotation at the arrival vertex.  (The predecessor rule is
also implemented, solely as a deliberately flipped convention for negative
controls; it produces interior-on-the-left walks.)

A *site* is a wedge between two rotation-consecutive darts at a vertex; the
face it belongs to is the face whose boundary walk passes through the wedge.
Sites are enumerated clockwise starting from the dart with the smallest id
(the anchor), which fixes the canonical factor order everywhere downstream.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .comodule import BicomoduleAlgebraData
from .errors import InputError, MalformedRotation, NotASite, NotIncident
from .hopf import HopfAlgebraData
from .reporting import CheckReport

Dart = int

OUT_END = 0  # dart based at the edge's source, pointing along the edge
IN_END = 1  # dart based at the edge's target, pointing against the edge


def dart_sign(d: Dart) -> int:
    """+1 for an outgoing dart (points away from its base vertex), -1 else."""
    return 1 if d % 2 == OUT_END else -1


@dataclass(eq=False)
class PlaquetteWalk:
    """One face: its boundary darts in clockwise walk order."""

    face: int
    darts: Tuple[Dart, ...]

    def __len__(self) -> int:
        return len(self.darts)


@dataclass(eq=False)
class SiteData:
    """A vertex-face wedge between two rotation-consecutive darts.

    ``left_flank`` and ``right_flank`` are darts based at ``vertex``; walking
    the face boundary clockwise one traverses (reversed) right flank, swings
    through the wedge, then traverses the left flank.  ``index`` is the
    position in the canonical clockwise enumeration at the vertex.
    """

    vertex: str
    face: int
    index: int
    left_flank: Dart
    right_flank: Dart


@dataclass(eq=False)
class CellDecomposition:
    """A closed oriented surface given by a rotation system, with a chosen
    subset of faces marked external (suppressed plaquettes)."""

    vertex_ids: List[str]
    edge_ids: List[str]
    edge_endpoints: Dict[str, Tuple[str, str]]
    rotations: Dict[str, List[Dart]]
    face_turn: str = "successor"
    external_faces: FrozenSet[int] = frozenset()
    _cache: Dict[str, object] = field(default_factory=dict, repr=False)

    # --- dart primitives --------------------------------------------------

    @property
    def dart_count(self) -> int:
        return 2 * len(self.edge_ids)

    def dart(self, edge_id: str, end: int) -> Dart:
        return 2 * self.edge_ids.index(edge_id) + end

    def dart_edge(self, d: Dart) -> str:
        return self.edge_ids[d // 2]

    def dart_end(self, d: Dart) -> int:
        return d % 2

    def alpha(self, d: Dart) -> Dart:
        return d ^ 1

    def dart_base(self, d: Dart) -> str:
        src, tgt = self.edge_endpoints[self.dart_edge(d)]
        return src if d % 2 == OUT_END else tgt

    def dart_label(self, d: Dart) -> str:
        return f"{self.dart_edge(d)}:{'out' if d % 2 == OUT_END else 'in'}"

    def sigma(self, d: Dart) -> Dart:
        """Next dart counterclockwise at the base vertex."""
        rot = self.rotations[self.dart_base(d)]
        i = rot.index(d)
        return rot[(i + 1) % len(rot)]

    def sigma_inv(self, d: Dart) -> Dart:
        rot = self.rotations[self.dart_base(d)]
        i = rot.index(d)
        return rot[(i - 1) % len(rot)]

    # --- faces ---------------------------------------------------------------

    def trace_faces(self) -> List[PlaquetteWalk]:
        """All face boundary walks, deterministically ordered: each face is
        keyed by its smallest dart and faces are listed by that key."""
        if "faces" not in self._cache:
            visited: Dict[Dart, int] = {}
            walks: List[PlaquetteWalk] = []
            for start in range(self.dart_count):
                if start in visited:
                    continue
                walk: List[Dart] = []
                d = start
                while True:
                    visited[d] = len(walks)
                    walk.append(d)
                    if self.face_turn == "successor":
                        d = self.sigma(self.alpha(d))
                    else:
                        d = self.sigma_inv(self.alpha(d))
                    if d == start:
                        break
                walks.append(PlaquetteWalk(len(walks), tuple(walk)))
            self._cache["faces"] = walks
            self._cache["face_of"] = visited
        return self._cache["faces"]  # type: ignore[return-value]

    def face_of_dart(self, d: Dart) -> int:
        self.trace_faces()
        return self._cache["face_of"][d]  # type: ignore[index]

    def face_count(self) -> int:
        return len(self.trace_faces())

    def euler_characteristic(self) -> int:
        return len(self.vertex_ids) - len(self.edge_ids) + self.face_count()

    def internal_faces(self) -> List[int]:
        return [w.face for w in self.trace_faces() if w.face not in self.external_faces]

    def left_face(self, edge_id: str) -> int:
        """Face on the left of the directed edge (contains the incoming dart)."""
        return self.face_of_dart(self.dart(edge_id, IN_END))

    def right_face(self, edge_id: str) -> int:
        """Face on the right of the directed edge (contains the outgoing dart)."""
        return self.face_of_dart(self.dart(edge_id, OUT_END))

    # --- sites -----------------------------------------------------------------

    def darts_clockwise(self, vertex: str) -> List[Dart]:
        """Incident darts, clockwise starting from the smallest dart id."""
        rot = self.rotations[vertex]
        if not rot:
            return []
        anchor = min(rot)
        i = rot.index(anchor)
        return [rot[(i - k) % len(rot)] for k in range(len(rot))]

    def sites_at_vertex(self, vertex: str) -> List[SiteData]:
        """Canonical clockwise site enumeration: site k sits between
        clockwise-consecutive darts h_k (left flank) and h_{k+1} (right
        flank); its face is the face whose walk contains the left flank."""
        key = f"sites:{vertex}"
        if key not in self._cache:
            cw = self.darts_clockwise(vertex)
            sites: List[SiteData] = []
            for k, left in enumerate(cw):
                right = cw[(k + 1) % len(cw)]
                face = self.face_of_dart(left)
                # the same wedge seen from the walk: the dart before the
                # wedge is alpha(right); both determinations must agree
                if self.face_of_dart(self.alpha(right)) != face:
                    raise MalformedRotation(
                        f"inconsistent wedge at vertex {vertex!r}"
                    )
                sites.append(SiteData(vertex, face, k, left, right))
            self._cache[key] = sites
        return self._cache[key]  # type: ignore[return-value]

    def sites_of_face_at_vertex(self, vertex: str, face: int) -> List[SiteData]:
        found = [s for s in self.sites_at_vertex(vertex) if s.face == face]
        if not found:
            raise NotASite(f"no site at vertex {vertex!r} on face {face}")
        return found

    def walk_site(self, walk: PlaquetteWalk, position: int) -> SiteData:
        """The site the walk swings through after traversing its
        ``position``-th dart (the wedge at the arrival vertex)."""
        d = walk.darts[position]
        nxt = walk.darts[(position + 1) % len(walk.darts)]
        vertex = self.dart_base(nxt)
        for s in self.sites_at_vertex(vertex):
            if s.left_flank == nxt:
                if s.right_flank != self.alpha(d) and self.face_turn == "successor":
                    raise MalformedRotation(
                        f"walk/site mismatch at vertex {vertex!r}"
                    )
                return s
        raise NotASite(f"walk position {position} has no site at {vertex!r}")


def build_cells(
    vertices: Iterable[str],
    edges: Dict[str, Tuple[str, str]],
    rotations: Dict[str, Sequence[Tuple[str, str]]],
    external_face_darts: Sequence[Tuple[str, str]] = (),
    face_turn: str = "successor",
) -> CellDecomposition:
    """Construct and validate a cell decomposition.

    ``rotations[v]`` lists incident darts counterclockwise as
    ``(edge_id, "out"|"in")`` pairs; ``external_face_darts`` marks faces by
    any dart their boundary walk contains.
    """
    vertex_ids = sorted(set(vertices))
    edge_ids = sorted(edges)
    if len(edge_ids) != len(edges):
        raise InputError("duplicate edge ids")
    endpoints: Dict[str, Tuple[str, str]] = {}
    for e in edge_ids:
        src, tgt = edges[e]
        if src not in vertex_ids or tgt not in vertex_ids:
            raise InputError(f"edge {e!r} references unknown vertex")
        endpoints[e] = (src, tgt)

    def resolve(pair: Tuple[str, str]) -> Dart:
        eid, end = pair
        if eid not in edges:
            raise MalformedRotation(f"rotation references unknown edge {eid!r}")
        if end not in ("out", "in"):
            raise MalformedRotation(f"rotation end must be 'out' or 'in', got {end!r}")
        return 2 * edge_ids.index(eid) + (OUT_END if end == "out" else IN_END)

    resolved: Dict[str, List[Dart]] = {}
    seen: Dict[Dart, str] = {}
    for v in vertex_ids:
        if v not in rotations:
            raise MalformedRotation(f"vertex {v!r} has no rotation")
        darts = [resolve(p) for p in rotations[v]]
        if len(set(darts)) != len(darts):
            raise MalformedRotation(f"vertex {v!r} lists a dart twice")
        for d in darts:
            if d in seen:
                raise MalformedRotation(
                    f"dart {d} appears at both {seen[d]!r} and {v!r}"
                )
            seen[d] = v
        resolved[v] = darts
    cells = CellDecomposition(vertex_ids, edge_ids, endpoints, resolved, face_turn)
    for d in range(cells.dart_count):
        if d not in seen:
            raise MalformedRotation(f"dart {cells.dart_label(d)} missing from rotations")
        if seen[d] != cells.dart_base(d):
            raise MalformedRotation(
                f"dart {cells.dart_label(d)} listed at {seen[d]!r}, "
                f"but is based at {cells.dart_base(d)!r}"
            )
    if external_face_darts:
        faces = set()
        for pair in external_face_darts:
            faces.add(cells.face_of_dart(resolve(pair)))
        cells.external_faces = frozenset(faces)
    return cells


def trace_faces(cells: CellDecomposition) -> List[PlaquetteWalk]:
    """Module-level alias for :meth:`CellDecomposition.trace_faces`."""
    return cells.trace_faces()


def half_edge_sign(cells: CellDecomposition, d: Dart) -> int:
    """+1 if the dart points away from its base vertex, -1 if toward it."""
    if not (0 <= d < cells.dart_count):
        raise NotIncident(f"dart {d} out of range")
    return dart_sign(d)


def plaquette_edge_sign(cells: CellDecomposition, face: int, edge_id: str) -> int:
    """+1 if the face's clockwise walk traverses the edge along its
    direction, -1 against it.  Raises :class:`NotIncident` if the edge does
    not bound the face and :class:`InputError` if it bounds it on both sides
    (the sign is then per-incidence, not per-edge)."""
    if edge_id not in cells.edge_ids:
        raise NotIncident(f"unknown edge {edge_id!r}")
    walks = cells.trace_faces()
    if not (0 <= face < len(walks)):
        raise NotIncident(f"unknown face {face}")
    darts = walks[face].darts
    out_d = cells.dart(edge_id, OUT_END)
    in_d = cells.dart(edge_id, IN_END)
    has_out = out_d in darts
    has_in = in_d in darts
    if has_out and has_in:
        raise InputError(
            f"edge {edge_id!r} bounds face {face} on both sides; "
            "per-edge sign is ambiguous"
        )
    if has_out:
        return 1
    if has_in:
        return -1
    raise NotIncident(f"edge {edge_id!r} does not bound face {face}")


def regularity_check(cells: CellDecomposition) -> CheckReport:
    """A decomposition is regular when no face walk repeats a vertex and no
    face walk traverses the same edge twice."""
    report = CheckReport("regularity")
    vertex_ok = True
    edge_ok = True
    vdetail = edetail = ""
    for walk in cells.trace_faces():
        verts = [cells.dart_base(d) for d in walk.darts]
        if len(set(verts)) != len(verts):
            vertex_ok = False
            vdetail = f"face {walk.face} revisits a vertex"
        edges = [cells.dart_edge(d) for d in walk.darts]
        if len(set(edges)) != len(edges):
            edge_ok = False
            edetail = f"face {walk.face} traverses an edge twice"
    report.add("faces_visit_vertices_once", vertex_ok, vdetail)
    report.add("faces_traverse_edges_once", edge_ok, edetail)
    return report


def mirror_cells(cells: CellDecomposition) -> CellDecomposition:
    """The mirror surface: every rotation reversed (still a valid oriented
    surface, with the opposite global orientation)."""
    return CellDecomposition(
        list(cells.vertex_ids),
        list(cells.edge_ids),
        dict(cells.edge_endpoints),
        {v: list(reversed(r)) for v, r in cells.rotations.items()},
        cells.face_turn,
        cells.external_faces,
    )


# --- labels -----------------------------------------------------------------------


@dataclass(eq=False)
class VertexLabelSpec:
    """How to build the local module at a vertex: ``kind`` is ``"vacuum"``,
    ``"regular"``, or ``"explicit"`` (with matrices supplied)."""

    kind: str = "vacuum"
    explicit_dim: Optional[int] = None
    explicit_a_matrices: Optional[list] = None
    explicit_k_matrices: Optional[list] = None


@dataclass(eq=False)
class LabeledSurface:
    """Cells plus algebraic labels: a Hopf algebra per internal face, a
    bicomodule algebra per edge, and a module choice per vertex."""

    cells: CellDecomposition
    plaquette_labels: Dict[int, Optional[HopfAlgebraData]]
    edge_labels: Dict[str, BicomoduleAlgebraData]
    vertex_labels: Dict[str, VertexLabelSpec]
    _cache: Dict[str, object] = field(default_factory=dict, repr=False)

    def hopf_at(self, face: int) -> Optional[HopfAlgebraData]:
        return self.plaquette_labels.get(face)

    def edge_algebra(self, edge_id: str) -> BicomoduleAlgebraData:
        return self.edge_labels[edge_id]

    def vertex_label(self, vertex: str) -> VertexLabelSpec:
        return self.vertex_labels.get(vertex, VertexLabelSpec("vacuum"))
