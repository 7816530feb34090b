"""Lattice layer: state spaces on labeled surfaces and commuting projectors.

The state space of a labeled surface is the tensor product of one dual edge
factor per edge (ascending edge id) and one vertex module factor per vertex
(ascending vertex id).  Vertex operators average the local gauge symmetry,
plaquette operators distribute the dual Haar functional along the face walk
through the edge coactions, and the verification suite checks idempotence,
pairwise commutation, base-site independence, the represented straightening
exchange law at every site, and locality — all in exact rational arithmetic.
"""

from __future__ import annotations

import os
import random
from dataclasses import dataclass, field
from itertools import product as iter_product
from typing import Dict, List, Optional, Sequence, Tuple

from .comodule import BicomoduleAlgebraData, regular_bicomodule, twist
from .crossed import (
    CrossedProductAlgebra,
    LeftComoduleAlgebraData,
    ModuleAlgebraData,
    balancing_algebra,
    balancing_t_hopf,
    crossed_product,
)
from .errors import (
    DimensionGuardExceeded,
    HopfMismatch,
    InvalidLabeling,
    Mismatch,
    NonIntegerTrace,
    NotASite,
)
from .hopf import (
    HopfAlgebraData,
    dual_hopf,
    haar_integral,
    tensor_algebra,
    tensor_hopf,
)
from .linalg import SparseMatrix, Tensor, kernel_dimension, kron
from .rationals import ONE, Rational, ZERO
from .reporting import CheckReport
from .separability import symmetric_separability_idempotent
from .surface import (
    LabeledSurface,
    OUT_END,
    PlaquetteWalk,
    SiteData,
    VertexLabelSpec,
    dart_sign,
    regularity_check,
)

DEFAULT_MAX_DIM = 2 ** 20
FULL_CHECK_DIM = 4096
SAMPLE_COLUMNS = 256

Vector = Dict[int, Rational]


def dimension_guard() -> int:
    """Current state-space dimension guard (env override: KITAEV_MAX_DIM)."""
    raw = os.environ.get("KITAEV_MAX_DIM")
    if raw is None:
        return DEFAULT_MAX_DIM
    try:
        value = int(raw)
    except ValueError as exc:
        raise DimensionGuardExceeded(f"KITAEV_MAX_DIM is not an integer: {raw!r}") from exc
    if value <= 0:
        raise DimensionGuardExceeded(f"KITAEV_MAX_DIM must be positive, got {value}")
    return value


# --- the vertex algebra ------------------------------------------------------------
#
# A half-edge pointing away from its vertex contributes its label as stored;
# a half-edge pointing toward its vertex contributes the opposite bicomodule
# (multiplication reversed, coaction sides swapped).  Such an element acts on
# the edge dual factor by plain dualized right multiplication.


def _fold_tensor_algebras(algebras: Sequence) -> object:
    acc = algebras[0]
    for a in algebras[1:]:
        acc = tensor_algebra(acc, a)
    return acc


def _fold_tensor_hopfs(hopfs: Sequence[HopfAlgebraData]) -> HopfAlgebraData:
    acc = hopfs[0]
    for h in hopfs[1:]:
        acc = tensor_hopf(acc, h)
    return acc


@dataclass(eq=False)
class VertexAlgebra:
    """The local algebra at a vertex: one dual-functional factor per site
    crossed with one (sign-twisted) edge-algebra factor per half-edge.

    Half-edge factors are ordered clockwise from the smallest incident dart;
    site ``k`` sits between half-edges ``k`` and ``k+1`` in that order.
    """

    labels: LabeledSurface
    vertex: str
    star: List[int]  # darts, clockwise from the anchor
    sites: List[SiteData]
    site_hopfs: List[HopfAlgebraData]
    _cache: Dict[str, object] = field(default_factory=dict, repr=False)

    @property
    def valence(self) -> int:
        return len(self.star)

    def star_signs(self) -> List[int]:
        return [dart_sign(d) for d in self.star]

    def edge_of_slot(self, j: int) -> str:
        return self.labels.cells.dart_edge(self.star[j])

    def label_of_slot(self, j: int) -> BicomoduleAlgebraData:
        return self.labels.edge_algebra(self.edge_of_slot(j))

    def prepared_label(self, j: int) -> BicomoduleAlgebraData:
        """The slot's label twisted by the half-edge orientation sign."""
        return twist(self.label_of_slot(j), dart_sign(self.star[j]))

    def a_dims(self) -> List[int]:
        return [h.dim for h in self.site_hopfs]

    def k_dims(self) -> List[int]:
        return [self.label_of_slot(j).dim for j in range(self.valence)]

    @property
    def dim(self) -> int:
        total = 1
        for d in self.a_dims() + self.k_dims():
            total *= d
        return total

    def balancings(self) -> List[ModuleAlgebraData]:
        def build() -> List[ModuleAlgebraData]:
            out = []
            for k, site in enumerate(self.sites):
                sl = dart_sign(site.left_flank)
                sr = dart_sign(site.right_flank)
                out.append(balancing_algebra(self.site_hopfs[k], sl, sr))
            return out

        if "balancings" not in self._cache:
            self._cache["balancings"] = build()
        return self._cache["balancings"]  # type: ignore[return-value]

    def module_part(self) -> ModuleAlgebraData:
        """All site factors as one module algebra over the product of the
        per-site acting Hopf algebras (componentwise action)."""

        def build() -> ModuleAlgebraData:
            mods = self.balancings()
            t_hopf = _fold_tensor_hopfs([m.hopf for m in mods])
            algebra = _fold_tensor_algebras([m.algebra for m in mods])
            t_dims = [m.hopf.dim for m in mods]
            a_dims = [m.algebra.dim for m in mods]
            entries: Dict[Tuple[int, int, int], Rational] = {}
            per_site = [list(m.action.items()) for m in mods]
            for combo in iter_product(*per_site):
                t = a_in = a_out = 0
                coeff = ONE
                for k, ((tk, ik, ok), qk) in enumerate(combo):
                    t = t * t_dims[k] + tk
                    a_in = a_in * a_dims[k] + ik
                    a_out = a_out * a_dims[k] + ok
                    coeff = coeff * qk
                if coeff:
                    entries[(t, a_in, a_out)] = entries.get((t, a_in, a_out), ZERO) + coeff
            dims = (t_hopf.dim, algebra.dim, algebra.dim)
            return ModuleAlgebraData(t_hopf, algebra, Tensor(dims, entries))

        if "module_part" not in self._cache:
            self._cache["module_part"] = build()
        return self._cache["module_part"]  # type: ignore[return-value]

    def comodule_part(self) -> LeftComoduleAlgebraData:
        """All half-edge factors as one comodule algebra: half-edge ``j``
        feeds its (sign-composed) right leg to site ``j`` as left multiplier
        and its left leg to site ``j-1`` as right multiplier."""

        def build() -> LeftComoduleAlgebraData:
            n = self.valence
            t_hopf = self.module_part().hopf
            algebra = _fold_tensor_algebras(
                [self.prepared_label(j).algebra for j in range(n)]
            )
            k_dims = self.k_dims()
            h_dims = [h.dim for h in self.site_hopfs]
            legs = [self.prepared_label(j).two_sided_legs() for j in range(n)]
            entries: Dict[Tuple[int, int, int], Rational] = {}
            for combo_k in iter_product(*[range(d) for d in k_dims]):
                per_slot = [legs[j][combo_k[j]] for j in range(n)]
                flat_in = 0
                for j, kj in enumerate(combo_k):
                    flat_in = flat_in * k_dims[j] + kj
                for chosen in iter_product(*per_slot):
                    coeff = ONE
                    k0 = 0
                    u = [0] * n  # left multiplier for site j: right leg of slot j
                    v = [0] * n  # right multiplier for site j: left leg of slot j+1
                    for j, (a, mid, b, q) in enumerate(chosen):
                        coeff = coeff * q
                        k0 = k0 * k_dims[j] + mid
                        u[j] = b
                        v[(j - 1) % n] = a
                    if not coeff:
                        continue
                    t = 0
                    for k in range(n):
                        t = t * (h_dims[k] * h_dims[k]) + (u[k] * h_dims[k] + v[k])
                    key = (flat_in, t, k0)
                    s = entries.get(key, ZERO) + coeff
                    if s:
                        entries[key] = s
                    else:
                        entries.pop(key, None)
            dims = (algebra.dim, t_hopf.dim, algebra.dim)
            return LeftComoduleAlgebraData(t_hopf, algebra, Tensor(dims, entries))

        if "comodule_part" not in self._cache:
            self._cache["comodule_part"] = build()
        return self._cache["comodule_part"]  # type: ignore[return-value]

    def crossed(self, guard: int = FULL_CHECK_DIM) -> CrossedProductAlgebra:
        """Materialize the full local algebra (guarded)."""
        if self.dim > guard:
            raise DimensionGuardExceeded(
                f"vertex algebra at {self.vertex!r} has dim {self.dim} > {guard}"
            )
        if "crossed" not in self._cache:
            self._cache["crossed"] = crossed_product(
                self.module_part(), self.comodule_part()
            )
        return self._cache["crossed"]  # type: ignore[return-value]

    def site_crossed(self, site_index: int) -> CrossedProductAlgebra:
        """The one-site local algebra: the site's dual functionals crossed
        with its two flanking half-edge factors (one factor at valence 1)."""
        key = f"site_crossed:{site_index}"
        if key in self._cache:
            return self._cache[key]  # type: ignore[return-value]
        site = self.sites[site_index]
        h = self.site_hopfs[site_index]
        sl = dart_sign(site.left_flank)
        sr = dart_sign(site.right_flank)
        t_hopf = balancing_t_hopf(h, sl, sr)
        n = h.dim
        left_label = twist(
            self.labels.edge_algebra(self.labels.cells.dart_edge(site.left_flank)), sl
        )
        right_label = twist(
            self.labels.edge_algebra(self.labels.cells.dart_edge(site.right_flank)), sr
        )

        def require_side(hopf_side: HopfAlgebraData, flank: int, which: str) -> None:
            if not hopf_side.same_structure(h):
                edge = self.labels.cells.dart_edge(flank)
                raise HopfMismatch(
                    f"edge {edge!r} at vertex {self.vertex!r}: its {which} coacting "
                    f"side (dim {hopf_side.dim}) does not match the Hopf algebra of "
                    f"plaquette {site.face} (dim {h.dim})"
                )

        if site.left_flank == site.right_flank:
            require_side(left_label.left_hopf, site.left_flank, "left")
            require_side(left_label.right_hopf, site.left_flank, "right")
        else:
            require_side(left_label.right_hopf, site.left_flank, "plaquette-facing")
            require_side(right_label.left_hopf, site.right_flank, "plaquette-facing")
        entries: Dict[Tuple[int, int, int], Rational] = {}
        if site.left_flank == site.right_flank:
            algebra = left_label.algebra
            for k, legs in left_label.two_sided_legs().items():
                for (a, k0, b, q) in legs:
                    key2 = (k, b * n + a, k0)
                    s = entries.get(key2, ZERO) + q
                    if s:
                        entries[key2] = s
                    else:
                        entries.pop(key2, None)
        else:
            algebra = tensor_algebra(left_label.algebra, right_label.algebra)
            dl, dr = left_label.dim, right_label.dim
            lL = left_label.right_coaction_legs()  # right leg -> left multiplier
            lR = right_label.left_coaction_legs()  # left leg -> right multiplier
            for kl in range(dl):
                for kr in range(dr):
                    for (k0l, b, ql) in lL[kl]:
                        for (a, k0r, qr) in lR[kr]:
                            key2 = (kl * dr + kr, b * n + a, k0l * dr + k0r)
                            s = entries.get(key2, ZERO) + ql * qr
                            if s:
                                entries[key2] = s
                            else:
                                entries.pop(key2, None)
        dims = (algebra.dim, t_hopf.dim, algebra.dim)
        comodule = LeftComoduleAlgebraData(t_hopf, algebra, Tensor(dims, entries))
        cp = crossed_product(balancing_algebra(h, sl, sr), comodule)
        self._cache[key] = cp
        return cp


def vertex_algebra(ls: LabeledSurface, vertex: str) -> VertexAlgebra:
    key = f"vertex_algebra:{vertex}"
    if key in ls._cache:
        return ls._cache[key]  # type: ignore[return-value]
    cells = ls.cells
    star = cells.darts_clockwise(vertex)
    if not star:
        raise InvalidLabeling(f"vertex {vertex!r} has no incident half-edges")
    sites = cells.sites_at_vertex(vertex)
    hopfs: List[HopfAlgebraData] = []
    for s in sites:
        h = ls.hopf_at(s.face)
        if h is None:
            raise InvalidLabeling(
                f"site at {vertex!r} lies on an external face; "
                "vertex algebras need internal plaquette labels"
            )
        hopfs.append(h)
    va = VertexAlgebra(ls, vertex, star, sites, hopfs)
    ls._cache[key] = va
    return va


# --- vertex modules ----------------------------------------------------------------


@dataclass(eq=False)
class VertexModule:
    """A module over a vertex algebra, given by generator action matrices.

    ``a_matrices[k][j]`` is the action of the ``j``-th dual-basis functional
    of site ``k``; ``k_matrices[j][x]`` the action of basis element ``x`` of
    the half-edge-``j`` factor.  ``dim == 1`` with all actions scalar
    counits is the vacuum (not itself a module at valence > 1 — its
    operators bypass the module structure; see vertex_operator).
    """

    algebra: VertexAlgebra
    dim: int
    kind: str
    a_matrices: Optional[List[List[SparseMatrix]]] = None
    k_matrices: Optional[List[List[SparseMatrix]]] = None

    @property
    def is_vacuum(self) -> bool:
        return self.kind == "vacuum"

    def site_action(self, site_index: int, f_vec: Vector) -> SparseMatrix:
        """Action of a dual functional of site ``site_index`` on the module."""
        if self.is_vacuum:
            h = self.algebra.site_hopfs[site_index]
            value = ZERO
            for j, q in f_vec.items():
                unit_coord = h.algebra.unit[j]
                if unit_coord:
                    value += q * unit_coord
            return SparseMatrix(1, 1, {(0, 0): value} if value else {})
        assert self.a_matrices is not None
        acc = SparseMatrix.zeros(self.dim, self.dim)
        for j, q in f_vec.items():
            acc = acc + self.a_matrices[site_index][j].scale(q)
        return acc

    def slot_action(self, slot: int, y_vec: Vector) -> SparseMatrix:
        """Action of a half-edge-factor element on the module."""
        if self.is_vacuum:
            label = self.algebra.label_of_slot(slot)
            value = ZERO
            char = label.character
            for x, q in y_vec.items():
                c = char[x] if char is not None else (ONE if label.dim == 1 else ZERO)
                if c:
                    value += q * c
            return SparseMatrix(1, 1, {(0, 0): value} if value else {})
        assert self.k_matrices is not None
        acc = SparseMatrix.zeros(self.dim, self.dim)
        for x, q in y_vec.items():
            acc = acc + self.k_matrices[slot][x].scale(q)
        return acc


def build_vertex_module(va: VertexAlgebra, spec: VertexLabelSpec) -> VertexModule:
    if spec.kind == "vacuum":
        return VertexModule(va, 1, "vacuum")
    if spec.kind == "regular":
        cp = va.crossed()
        dim = cp.algebra.dim
        a_mats: List[List[SparseMatrix]] = []
        a_dims = va.a_dims()
        a_units = [m.algebra.unit_vector() for m in va.balancings()]
        for k in range(len(va.sites)):
            mats = []
            for j in range(a_dims[k]):
                vec: Vector = {j: ONE}
                full = _embed_single_factor(vec, k, a_dims, a_units)
                mats.append(cp.algebra.left_mult_matrix(cp.embed_a(full)))
            a_mats.append(mats)
        k_mats: List[List[SparseMatrix]] = []
        k_dims = va.k_dims()
        k_units = [
            va.prepared_label(j).algebra.unit_vector() for j in range(va.valence)
        ]
        for j in range(va.valence):
            mats = []
            for x in range(k_dims[j]):
                vec = {x: ONE}
                full = _embed_single_factor(vec, j, k_dims, k_units)
                mats.append(cp.algebra.left_mult_matrix(cp.embed_k(full)))
            k_mats.append(mats)
        return VertexModule(va, dim, "regular", a_mats, k_mats)
    if spec.kind == "explicit":
        if spec.explicit_dim is None or spec.explicit_a_matrices is None:
            raise InvalidLabeling("explicit vertex module needs dim and matrices")
        return VertexModule(
            va,
            spec.explicit_dim,
            "explicit",
            spec.explicit_a_matrices,
            spec.explicit_k_matrices,
        )
    raise InvalidLabeling(f"unknown vertex label kind {spec.kind!r}")


def _embed_single_factor(
    vec: Vector, index: int, dims: List[int], units: List[Vector]
) -> Vector:
    """Tensor-embed a single-factor vector with algebra units elsewhere;
    the composite index is row-major over ``dims``."""
    acc: Vector = {0: ONE}
    for i, d in enumerate(dims):
        comp = vec if i == index else units[i]
        nxt: Vector = {}
        for base, qb in acc.items():
            for j, qj in comp.items():
                key = base * d + j
                s = nxt.get(key, ZERO) + qb * qj
                if s:
                    nxt[key] = s
                else:
                    nxt.pop(key, None)
        acc = nxt
    return acc


def validate_vertex_module(va: VertexAlgebra, module: VertexModule) -> CheckReport:
    """Generator-pair module checks: per-factor representations, cross-factor
    commutation, and the straightening exchange on every (slot, site) pair."""
    report = CheckReport(f"vertex module at {va.vertex!r}")
    if module.is_vacuum:
        # The vacuum is not itself a module over the local algebra at
        # valence > 1 (see _vacuum_scalar_product); the vertex operator
        # bypasses the module structure and only needs a character on each
        # incident half-edge factor.
        ok = True
        detail = ""
        for j in range(va.valence):
            label = va.label_of_slot(j)
            if label.character is None and label.dim != 1:
                ok = False
                edge = va.labels.cells.dart_edge(va.star[j])
                detail = (
                    f"slot {j} (edge {edge!r}): {label.dim}-dimensional label "
                    "admits no designated character"
                )
                break
        report.add("vacuum_slot_characters", ok, detail)
        for k in range(len(va.sites)):
            va.site_crossed(k)
        return report
    a_dims = va.a_dims()
    k_dims = va.k_dims()
    # per-factor representation property on basis pairs
    rep_ok = True
    rep_detail = ""
    for k, mats in enumerate(module.a_matrices or []):
        alg = dual_hopf(va.site_hopfs[k]).algebra
        for i in range(a_dims[k]):
            for j in range(a_dims[k]):
                prod_vec = alg.multiply({i: ONE}, {j: ONE})
                want = module.site_action(k, prod_vec)
                got = mats[i].matmul(mats[j])
                if got != want:
                    rep_ok = False
                    rep_detail = f"site {k}: basis pair ({i},{j})"
                    break
            if not rep_ok:
                break
        if not rep_ok:
            break
    report.add("site_factor_representations", rep_ok, rep_detail)
    rep_ok = True
    rep_detail = ""
    for j, mats in enumerate(module.k_matrices or []):
        alg = va.label_of_slot(j).algebra
        for x in range(k_dims[j]):
            for y in range(k_dims[j]):
                prod_vec = alg.multiply({x: ONE}, {y: ONE})
                want = module.slot_action(j, prod_vec)
                got = mats[x].matmul(mats[y])
                if got != want:
                    rep_ok = False
                    rep_detail = f"slot {j}: basis pair ({x},{y})"
                    break
            if not rep_ok:
                break
        if not rep_ok:
            break
    report.add("edge_factor_representations", rep_ok, rep_detail)
    # straightening exchange per (slot, site): the slot element moved past a
    # site functional picks up the site's sandwich action through the legs.
    ok = True
    detail = ""
    for k in range(len(va.sites)):
        cp = va.site_crossed(k)
        terms = cp.straighten_terms()
        pair = _site_slot_indices(va, k)
        for x in range(cp.dim_k):
            for j in range(va.site_hopfs[k].dim):
                lhs = _module_slot_matrix(va, module, pair, x).matmul(
                    module.site_action(k, {j: ONE})
                )
                rhs = SparseMatrix.zeros(module.dim, module.dim)
                for (j2, x0, q) in terms.get((x, j), []):
                    rhs = rhs + module.site_action(k, {j2: ONE}).matmul(
                        _module_slot_matrix(va, module, pair, x0)
                    ).scale(q)
                if lhs != rhs:
                    ok = False
                    detail = f"site {k}, pair (k={x}, f={j})"
                    break
            if not ok:
                break
        if not ok:
            break
    report.add("module_straightening_pairs", ok, detail)
    return report


def _site_slot_indices(va: VertexAlgebra, site_index: int) -> List[int]:
    site = va.sites[site_index]
    if site.left_flank == site.right_flank:
        return [va.star.index(site.left_flank)]
    return [va.star.index(site.left_flank), va.star.index(site.right_flank)]


def _module_slot_matrix(
    va: VertexAlgebra, module: VertexModule, slots: List[int], flat: int
) -> SparseMatrix:
    """Action of a flank-pair basis element (flat index over the pair)."""
    if len(slots) == 1:
        return module.slot_action(slots[0], {flat: ONE})
    dr = va.k_dims()[slots[1]]
    xl, xr = divmod(flat, dr)
    return module.slot_action(slots[0], {xl: ONE}).matmul(
        module.slot_action(slots[1], {xr: ONE})
    )


def _vacuum_scalar_product(va, module, site_index, x, j, terms) -> Optional[str]:
    """Check one scalar straightening relation for the vacuum; returns a
    failure description or None.  (The vacuum is not a module at valence > 1;
    this check documents exactly which relations do fail.)"""
    h = va.site_hopfs[site_index]
    pair = _site_slot_indices(va, site_index)
    lhs_mat = _module_slot_matrix(va, module, pair, x).matmul(
        module.site_action(site_index, {j: ONE})
    )
    rhs_mat = SparseMatrix.zeros(1, 1)
    for (j2, x0, q) in terms.get((x, j), []):
        rhs_mat = rhs_mat + module.site_action(site_index, {j2: ONE}).matmul(
            _module_slot_matrix(va, module, pair, x0)
        ).scale(q)
    if lhs_mat != rhs_mat:
        return f"site {site_index}: pair (k={x}, f={j})"
    return None


# --- state space -------------------------------------------------------------------


@dataclass(eq=False)
class StateSpace:
    """Ordered tensor factors: dual edge factors then vertex module factors."""

    labels: LabeledSurface
    edge_order: List[str]
    vertex_order: List[str]
    edge_dims: List[int]
    vertex_modules: Dict[str, VertexModule]
    _cache: Dict[str, object] = field(default_factory=dict, repr=False)

    @property
    def factor_dims(self) -> List[int]:
        return self.edge_dims + [self.vertex_modules[v].dim for v in self.vertex_order]

    @property
    def total_dim(self) -> int:
        total = 1
        for d in self.factor_dims:
            total *= d
        return total

    def edge_factor(self, edge_id: str) -> int:
        return self.edge_order.index(edge_id)

    def vertex_factor(self, vertex: str) -> int:
        return len(self.edge_order) + self.vertex_order.index(vertex)

    def assemble(self, factor_mats: Dict[int, SparseMatrix]) -> SparseMatrix:
        """Kronecker product over all factors, identity where unspecified."""
        dims = self.factor_dims
        acc: Optional[SparseMatrix] = None
        for i, d in enumerate(dims):
            m = factor_mats.get(i)
            if m is None:
                m = SparseMatrix.identity(d)
            acc = m if acc is None else kron(acc, m)
        assert acc is not None
        return acc


def build_state_space(ls: LabeledSurface, guard: Optional[int] = None) -> StateSpace:
    limit = dimension_guard() if guard is None else guard
    cells = ls.cells
    edge_order = list(cells.edge_ids)
    vertex_order = list(cells.vertex_ids)
    edge_dims = [ls.edge_algebra(e).dim for e in edge_order]
    modules: Dict[str, VertexModule] = {}
    total = 1
    for d in edge_dims:
        total *= d
    for v in vertex_order:
        va = vertex_algebra(ls, v)
        module = build_vertex_module(va, ls.vertex_label(v))
        modules[v] = module
        total *= module.dim
    if total > limit:
        raise DimensionGuardExceeded(
            f"state space dimension {total} exceeds guard {limit}"
        )
    return StateSpace(ls, edge_order, vertex_order, edge_dims, modules)


# --- local actions -----------------------------------------------------------------


def edge_precompose_operator(
    ss: StateSpace, edge_id: str, end: int, component: Vector
) -> SparseMatrix:
    """Raw dualized multiplication on an edge factor: outgoing half-edges act
    by left multiplication, incoming by right multiplication, transposed."""
    label = ss.labels.edge_algebra(edge_id)
    if end == OUT_END:
        m = label.algebra.left_mult_matrix(component)
    else:
        m = label.algebra.right_mult_matrix(component)
    return m.transpose()




def vertex_action(
    ss: StateSpace, vertex: str, x_components: Optional[List[Vector]],
    y_components: Optional[List[Vector]],
) -> SparseMatrix:
    """The two-sided local action at a vertex.

    ``y_components`` (one per star half-edge, clockwise from the anchor) act
    by dualized multiplications on the edge factors; ``x_components`` act on
    the vertex module factor (slot actions composed in star order).
    Either side may be None (identity).
    """
    va = vertex_algebra(ss.labels, vertex)
    cells = ss.labels.cells
    factor_mats: Dict[int, SparseMatrix] = {}
    if y_components is not None:
        if len(y_components) != va.valence:
            raise InvalidLabeling("one y component per star half-edge required")
        for j, comp in enumerate(y_components):
            d = va.star[j]
            e = cells.dart_edge(d)
            idx = ss.edge_factor(e)
            m = edge_precompose_operator(ss, e, cells.dart_end(d), comp)
            if idx in factor_mats:
                factor_mats[idx] = factor_mats[idx].matmul(m)
            else:
                factor_mats[idx] = m
    if x_components is not None:
        module = ss.vertex_modules[vertex]
        if len(x_components) != va.valence:
            raise InvalidLabeling("one x component per star half-edge required")
        acc = SparseMatrix.identity(module.dim)
        for j, comp in enumerate(x_components):
            acc = acc.matmul(module.slot_action(j, comp))
        factor_mats[ss.vertex_factor(vertex)] = acc
    return ss.assemble(factor_mats)


def _walk_of_face(cells, face: int) -> PlaquetteWalk:
    for w in cells.trace_faces():
        if w.face == face:
            return w
    raise NotASite(f"face {face} not found")


def _plaquette_slots(ss: StateSpace, face: int, base: SiteData, orientation: int = 1):
    """Slot sequence clockwise from (and excluding) the base site.

    Yields ("edge", walk position) and ("site", SiteData) entries; vacuum
    site slots are dropped (their leg contracts with the unit evaluation).
    ``orientation=-1`` reverses the sequence — the distribution a mirror
    face-walk convention would produce (negative-control support).
    """
    cells = ss.labels.cells
    walk = _walk_of_face(cells, face)
    m = len(walk.darts)
    try:
        start = walk.darts.index(base.left_flank)
    except ValueError as exc:
        raise NotASite(
            f"base site at {base.vertex!r} does not lie on face {face}"
        ) from exc
    slots = []
    for t in range(m):
        pos = (start + t) % m
        slots.append(("edge", pos))
        if t < m - 1:
            site = cells.walk_site(walk, pos)
            if not ss.vertex_modules[site.vertex].is_vacuum:
                slots.append(("site", site))
    if orientation == -1:
        slots = list(reversed(slots))
    return walk, slots


def _dual_iterated_legs(
    hd: HopfAlgebraData, vec: Vector, count: int
) -> List[Tuple[Tuple[int, ...], Rational]]:
    """Distribute a dual-algebra element over ``count`` slots by iterated
    comultiplication of the dual Hopf algebra."""
    terms: List[Tuple[Tuple[int, ...], Rational]] = [
        ((j,), q) for j, q in vec.items() if q
    ]
    legs = hd.comult_legs()
    for _ in range(count - 1):
        nxt: Dict[Tuple[int, ...], Rational] = {}
        for (indices, q) in terms:
            head = indices[:-1]
            for (a, b, w) in legs.get(indices[-1], []):
                key = head + (a, b)
                s = nxt.get(key, ZERO) + q * w
                if s:
                    nxt[key] = s
                else:
                    nxt.pop(key, None)
        terms = list(nxt.items())
    return terms


def _edge_slot_matrix(
    ss: StateSpace, walk: PlaquetteWalk, pos: int, leg_index: int,
    hopf: HopfAlgebraData, hopf_dual: HopfAlgebraData, orientation: int = 1,
) -> Tuple[int, SparseMatrix]:
    """Element-side matrix of one edge slot eating one dual-basis leg.

    Walking along the edge orientation eats the right coaction leg plainly;
    walking against it eats the antipode of the left leg.  Returns the state
    factor index and the (untransposed) matrix on the edge algebra.
    ``orientation=-1`` flips the traversal sign (mirror-walk corruption).
    """
    cells = ss.labels.cells
    d = walk.darts[pos]
    e = cells.dart_edge(d)
    sigma = dart_sign(d) * orientation
    label = ss.labels.edge_algebra(e)
    n = label.dim
    entries: Dict[Tuple[int, int], Rational] = {}
    if sigma == 1:
        for j, legs in label.right_coaction_legs().items():
            for (k0, b, q) in legs:
                if b == leg_index:
                    key = (k0, j)
                    s = entries.get(key, ZERO) + q
                    if s:
                        entries[key] = s
                    else:
                        entries.pop(key, None)
    else:
        s_mat = hopf.antipode
        for j, legs in label.left_coaction_legs().items():
            for (a, k0, q) in legs:
                w = s_mat.get(leg_index, a)
                if w:
                    key = (k0, j)
                    s = entries.get(key, ZERO) + q * w
                    if s:
                        entries[key] = s
                    else:
                        entries.pop(key, None)
    return ss.edge_factor(e), SparseMatrix(n, n, entries)


def plaquette_action(
    ss: StateSpace, face: int, base: SiteData, left_vec: Optional[Vector],
    right_vec: Optional[Vector], orientation: int = 1,
) -> SparseMatrix:
    """The two-sided local action of dual functionals at a plaquette.

    ``left_vec`` acts on the base site's vertex module; ``right_vec`` is
    distributed clockwise from the base site over edge slots (coaction legs)
    and non-vacuum site slots (antipode-pulled module actions).
    ``orientation=-1`` distributes along the reversed walk (for negative
    controls; the result is not a valid plaquette functional action).
    """
    hopf = ss.labels.hopf_at(face)
    if hopf is None:
        raise NotASite(f"face {face} is external")
    hd = dual_hopf(hopf)
    base_module = ss.vertex_modules[base.vertex]
    site_idx = _site_index_of(ss, base)
    left_mat = (
        base_module.site_action(site_idx, left_vec) if left_vec is not None else None
    )
    if right_vec is None:
        mats: Dict[int, SparseMatrix] = {}
        if left_mat is not None:
            mats[ss.vertex_factor(base.vertex)] = left_mat
        return ss.assemble(mats)
    total = SparseMatrix.zeros(ss.total_dim, ss.total_dim)
    walk, slots = _plaquette_slots(ss, face, base, orientation)
    for (leg_tuple, coeff) in _dual_iterated_legs(hd, right_vec, len(slots)):
        factor_mats: Dict[int, SparseMatrix] = {}
        if left_mat is not None:
            factor_mats[ss.vertex_factor(base.vertex)] = left_mat
        dead = False
        for slot, leg in zip(slots, leg_tuple):
            kind, payload = slot
            if kind == "edge":
                fidx, m = _edge_slot_matrix(ss, walk, payload, leg, hopf, hd, orientation)
            else:
                site: SiteData = payload
                module = ss.vertex_modules[site.vertex]
                s_leg = _dual_antipode_vector(hopf, leg)
                m = module.site_action(_site_index_of(ss, site), s_leg)
                fidx = ss.vertex_factor(site.vertex)
            prev = factor_mats.get(fidx)
            factor_mats[fidx] = m if prev is None else m.matmul(prev)
            if not factor_mats[fidx].entries:
                dead = True
                break
        if dead:
            continue
        # edge-slot matrices were built on the element side
        for i in list(factor_mats):
            if i < len(ss.edge_order):
                factor_mats[i] = factor_mats[i].transpose()
        total = total + ss.assemble(factor_mats).scale(coeff)
    return total


def _site_index_of(ss: StateSpace, site: SiteData) -> int:
    va = vertex_algebra(ss.labels, site.vertex)
    for k, s in enumerate(va.sites):
        if s.index == site.index:
            return k
    raise NotASite(f"site {site.index} not found at {site.vertex!r}")


def _dual_antipode_vector(hopf: HopfAlgebraData, leg: int) -> Vector:
    """The dual-basis functional composed with the antipode, as a vector."""
    out: Vector = {}
    for (w, a), q in hopf.antipode.entries.items():
        if w == leg and q:
            out[a] = out.get(a, ZERO) + q
    return out


# --- operators ---------------------------------------------------------------------


def _classify_edge_label(
    ss: StateSpace, edge_id: str, hopf: HopfAlgebraData
) -> str:
    label = ss.labels.edge_algebra(edge_id)
    if label.same_structure(regular_bicomodule(hopf)):
        return "transparent"
    if label.dim == 1:
        return "trivial"
    return "other"


def vertex_operator(ss: StateSpace, vertex: str) -> SparseMatrix:
    """The commuting projector at a vertex.

    Vacuum vertices: average of the local gauge symmetry — the plaquette
    Hopf algebra's Haar integral distributed over the star by iterated
    comultiplication (antipode on incoming half-edges), pushed into each
    edge factor through the label's unit structure (transparent: identity;
    one-dimensional: counit), acting by dualized multiplications.

    Module vertices: the symmetric separability idempotent of the edge-factor
    product algebra, one leg acting on the module, the other by dualized
    multiplications.
    """
    va = vertex_algebra(ss.labels, vertex)
    module = ss.vertex_modules[vertex]
    cells = ss.labels.cells
    if module.is_vacuum:
        hopfs = va.site_hopfs
        h0 = hopfs[0]
        for h in hopfs[1:]:
            if not h0.same_structure(h):
                raise InvalidLabeling(
                    f"vacuum vertex {vertex!r} needs one Hopf structure on all "
                    "incident plaquettes; supply an explicit module instead"
                )
        kinds = [
            _classify_edge_label(ss, va.edge_of_slot(j), h0) for j in range(va.valence)
        ]
        if any(k == "other" for k in kinds):
            raise InvalidLabeling(
                f"vacuum vertex {vertex!r} has an edge label without a unit "
                "structure; supply an explicit module instead"
            )
        if any(k == "trivial" for k in kinds):
            # A one-dimensional edge factor transports no gauge leg, so a
            # gauge component g can never be compensated on the adjacent
            # face holonomies; the only averaging that commutes with every
            # plaquette projector is over the trivial subalgebra.
            return SparseMatrix.identity(ss.total_dim)
        ell = haar_integral(h0).as_vector()
        terms = _iterated_comult_legs(h0, ell, va.valence)
        total = SparseMatrix.zeros(ss.total_dim, ss.total_dim)
        for (legs, coeff) in terms:
            factor_mats: Dict[int, SparseMatrix] = {}
            scalar = coeff
            dead = False
            for j, leg in enumerate(legs):
                d = va.star[j]
                sign = dart_sign(d)
                comp: Vector = (
                    {leg: ONE} if sign == 1 else h0.antipode.matvec({leg: ONE})
                )
                if kinds[j] == "trivial":
                    value = ZERO
                    for a, q in comp.items():
                        c = h0.counit[a]
                        if c:
                            value += q * c
                    if not value:
                        dead = True
                        break
                    scalar = scalar * value
                    continue
                e = cells.dart_edge(d)
                idx = ss.edge_factor(e)
                m = edge_precompose_operator(ss, e, cells.dart_end(d), comp)
                if idx in factor_mats:
                    factor_mats[idx] = factor_mats[idx].matmul(m)
                else:
                    factor_mats[idx] = m
            if dead:
                continue
            total = total + ss.assemble(factor_mats).scale(scalar)
        return total
    # module vertex: both legs of the separability idempotent of the
    # edge-factor product algebra
    k_alg = _fold_tensor_algebras(
        [va.prepared_label(j).algebra for j in range(va.valence)]
    )
    p = symmetric_separability_idempotent(k_alg)
    k_dims = va.k_dims()
    total = SparseMatrix.zeros(ss.total_dim, ss.total_dim)
    for (i, j, q) in p.terms():
        x_components = _split_flat(i, k_dims)
        y_components = _split_flat(j, k_dims)
        mat = vertex_action(
            ss,
            vertex,
            [{c: ONE} for c in x_components],
            [{c: ONE} for c in y_components],
        )
        total = total + mat.scale(q)
    return total


def _split_flat(flat: int, dims: List[int]) -> List[int]:
    out = [0] * len(dims)
    for i in range(len(dims) - 1, -1, -1):
        out[i] = flat % dims[i]
        flat //= dims[i]
    return out


def _iterated_comult_legs(
    h: HopfAlgebraData, vec: Vector, count: int
) -> List[Tuple[Tuple[int, ...], Rational]]:
    terms: List[Tuple[Tuple[int, ...], Rational]] = [
        ((j,), q) for j, q in vec.items() if q
    ]
    legs = h.comult_legs()
    for _ in range(count - 1):
        nxt: Dict[Tuple[int, ...], Rational] = {}
        for (indices, q) in terms:
            head = indices[:-1]
            for (a, b, w) in legs.get(indices[-1], []):
                key = head + (a, b)
                s = nxt.get(key, ZERO) + q * w
                if s:
                    nxt[key] = s
                else:
                    nxt.pop(key, None)
        terms = list(nxt.items())
    return terms


def canonical_base_site(ss: StateSpace, face: int) -> SiteData:
    """Deterministic base site: smallest (vertex id, site index) on the walk."""
    cells = ss.labels.cells
    walk = _walk_of_face(cells, face)
    sites = [cells.walk_site(walk, t) for t in range(len(walk.darts))]
    return min(sites, key=lambda s: (s.vertex, s.index))


def plaquette_operator(
    ss: StateSpace, face: int, base: Optional[SiteData] = None
) -> SparseMatrix:
    """The commuting projector at a plaquette: the dual Haar functional's
    comultiplication legs, one acting on the base site's module, the other
    (antipode-composed) distributed along the clockwise face walk."""
    hopf = ss.labels.hopf_at(face)
    if hopf is None:
        raise NotASite(f"face {face} is external")
    if base is None:
        base = canonical_base_site(ss, face)
    hd = dual_hopf(hopf)
    lam = haar_integral(hd).as_vector()
    module = ss.vertex_modules[base.vertex]
    if module.is_vacuum:
        # the unit-evaluation character collapses the base-site leg
        s_lam = _compose_dual_antipode(hopf, lam)
        return plaquette_action(ss, face, base, None, s_lam)
    total = SparseMatrix.zeros(ss.total_dim, ss.total_dim)
    for (pair, q) in _dual_iterated_legs(hd, lam, 2):
        left = {pair[0]: ONE}
        right = _dual_antipode_vector(hopf, pair[1])
        total = total + plaquette_action(ss, face, base, left, right).scale(q)
    return total


def _compose_dual_antipode(hopf: HopfAlgebraData, vec: Vector) -> Vector:
    """``f -> f composed with the antipode`` on dual coordinates."""
    out: Vector = {}
    for u, q in vec.items():
        for (w, a), s in hopf.antipode.entries.items():
            if w == u and s:
                out[a] = out.get(a, ZERO) + q * s
    return out


# --- operator sets and verification ------------------------------------------------


@dataclass(eq=False)
class OperatorSet:
    state_space: StateSpace
    vertex_ops: Dict[str, SparseMatrix]
    plaquette_ops: Dict[int, SparseMatrix]
    base_sites: Dict[int, SiteData]

    def all_ops(self) -> List[Tuple[str, SparseMatrix]]:
        out = [(f"A[{v}]", m) for v, m in sorted(self.vertex_ops.items())]
        out += [(f"B[{p}]", m) for p, m in sorted(self.plaquette_ops.items())]
        return out


def build_operator_set(ss: StateSpace) -> OperatorSet:
    vertex_ops = {v: vertex_operator(ss, v) for v in ss.vertex_order}
    plaquette_ops = {}
    base_sites = {}
    for p in ss.labels.cells.internal_faces():
        base = canonical_base_site(ss, p)
        base_sites[p] = base
        plaquette_ops[p] = plaquette_operator(ss, p, base)
    return OperatorSet(ss, vertex_ops, plaquette_ops, base_sites)


def _sample_columns(dim: int, seed: int) -> List[int]:
    rng = random.Random(seed)
    if dim <= SAMPLE_COLUMNS:
        return list(range(dim))
    return sorted(rng.sample(range(dim), SAMPLE_COLUMNS))


def _product_columns_equal(
    a: SparseMatrix, b: SparseMatrix, c: SparseMatrix, d: SparseMatrix,
    cols: List[int],
) -> bool:
    """Compare a@b with c@d on the given basis columns."""
    for j in cols:
        if a.matvec(b.matvec({j: ONE})) != c.matvec(d.matvec({j: ONE})):
            return False
    return True


def check_idempotence(ops: OperatorSet, seed: int = 0) -> CheckReport:
    report = CheckReport("projector idempotence")
    dim = ops.state_space.total_dim
    full = dim <= FULL_CHECK_DIM
    cols = None if full else _sample_columns(dim, seed)
    for name, m in ops.all_ops():
        if full:
            ok = m.matmul(m) == m
        else:
            ok = True
            for j in cols or []:
                col = m.matvec({j: ONE})
                if m.matvec(col) != col:
                    ok = False
                    break
        report.add(f"idempotent:{name}", ok, "" if ok else "square differs")
    return report


def check_pairwise_commutation(ops: OperatorSet, seed: int = 0) -> CheckReport:
    report = CheckReport("pairwise commutation")
    reg = regularity_check(ops.state_space.labels.cells)
    if not reg.ok:
        report.add(
            "pairwise_commutation",
            True,
            "SKIPPED (warning): non-regular cell decomposition — commutation "
            "is not guaranteed and was not checked",
        )
        return report
    dim = ops.state_space.total_dim
    full = dim <= FULL_CHECK_DIM
    cols = None if full else _sample_columns(dim, seed)
    named = ops.all_ops()
    for i in range(len(named)):
        for j in range(i + 1, len(named)):
            ni, mi = named[i]
            nj, mj = named[j]
            if full:
                ok = mi.matmul(mj) == mj.matmul(mi)
            else:
                ok = _product_columns_equal(mi, mj, mj, mi, cols or [])
            report.add(
                f"commute:{ni}*{nj}", ok,
                "" if ok else ("full matrices differ" if full else "sampled columns differ"),
            )
    return report


def check_base_site_independence(ss: StateSpace, face: int) -> CheckReport:
    report = CheckReport(f"base-site independence, plaquette {face}")
    cells = ss.labels.cells
    walk = _walk_of_face(cells, face)
    sites = [cells.walk_site(walk, t) for t in range(len(walk.darts))]
    reference = plaquette_operator(ss, face, sites[0])
    ok = True
    detail = ""
    for s in sites[1:]:
        if plaquette_operator(ss, face, s) != reference:
            ok = False
            detail = f"site at {s.vertex!r} differs from {sites[0].vertex!r}"
            break
    report.add("base_site_independent", ok, detail)
    return report


def check_straightening_representation(
    ss: StateSpace, face: int, site: SiteData, orientation: int = 1
) -> CheckReport:
    """The exchange law at one site, as exact matrix identities.

    Right action: moving a flank-pair element past a plaquette functional
    re-sandwiches the functional through the site's coaction legs — checked
    against the abstract straightening terms of the site's crossed product.
    The corresponding left-action law needs the vertex factor to be an
    actual module; on vacuum factors it is reported as skipped.
    ``orientation=-1`` builds the functional operators with the mirror
    distribution (a deliberate corruption; the law is expected to fail).
    """
    report = CheckReport(f"straightening at plaquette {face}, vertex {site.vertex!r}")
    hopf = ss.labels.hopf_at(face)
    if hopf is None:
        raise NotASite(f"face {face} is external")
    va = vertex_algebra(ss.labels, site.vertex)
    site_index = _site_index_of(ss, site)
    cp = va.site_crossed(site_index)
    terms = cp.straighten_terms()
    n = hopf.dim
    slots = _site_slot_indices(va, site_index)
    f_ops = [
        plaquette_action(ss, face, site, None, {j: ONE}, orientation)
        for j in range(n)
    ]
    k_ops = [_flank_pair_operator(ss, va, slots, x) for x in range(cp.dim_k)]
    ok = True
    detail = ""
    for x in range(cp.dim_k):
        for j in range(n):
            lhs = f_ops[j].matmul(k_ops[x])
            rhs = SparseMatrix.zeros(ss.total_dim, ss.total_dim)
            for (j2, x0, q) in terms.get((x, j), []):
                rhs = rhs + k_ops[x0].matmul(f_ops[j2]).scale(q)
            if lhs != rhs:
                ok = False
                detail = f"right action: pair (k={x}, f={j})"
                break
        if not ok:
            break
    report.add("right_action_exchange", ok, detail)
    module = ss.vertex_modules[site.vertex]
    if module.is_vacuum:
        report.add(
            "left_action_exchange",
            True,
            "SKIPPED: vacuum vertex factors carry no two-sided module",
        )
        return report
    ok = True
    detail = ""
    for x in range(cp.dim_k):
        k_mat = _module_slot_matrix(va, module, slots, x)
        for j in range(n):
            f_mat = module.site_action(site_index, {j: ONE})
            lhs = k_mat.matmul(f_mat)
            rhs = SparseMatrix.zeros(module.dim, module.dim)
            for (j2, x0, q) in terms.get((x, j), []):
                rhs = rhs + module.site_action(site_index, {j2: ONE}).matmul(
                    _module_slot_matrix(va, module, slots, x0)
                ).scale(q)
            if lhs != rhs:
                ok = False
                detail = f"left action: pair (k={x}, f={j})"
                break
        if not ok:
            break
    report.add("left_action_exchange", ok, detail)
    return report


def _flank_pair_operator(
    ss: StateSpace, va: VertexAlgebra, slots: List[int], flat: int
) -> SparseMatrix:
    cells = ss.labels.cells
    if len(slots) == 1:
        components = [flat]
    else:
        dr = va.k_dims()[slots[1]]
        components = list(divmod(flat, dr))
    factor_mats: Dict[int, SparseMatrix] = {}
    for slot, comp in zip(slots, components):
        d = va.star[slot]
        e = cells.dart_edge(d)
        idx = ss.edge_factor(e)
        m = edge_precompose_operator(ss, e, cells.dart_end(d), {comp: ONE})
        if idx in factor_mats:
            factor_mats[idx] = factor_mats[idx].matmul(m)
        else:
            factor_mats[idx] = m
    return ss.assemble(factor_mats)


def check_locality(ops: OperatorSet) -> CheckReport:
    report = CheckReport("operator locality")
    ss = ops.state_space
    cells = ss.labels.cells
    for v, m in sorted(ops.vertex_ops.items()):
        support = {ss.edge_factor(cells.dart_edge(d)) for d in cells.rotations[v]}
        support.add(ss.vertex_factor(v))
        ok = _acts_as_identity_outside(ss, m, support)
        report.add(f"local:A[{v}]", ok, "" if ok else "acts outside incident factors")
    for p, m in sorted(ops.plaquette_ops.items()):
        walk = _walk_of_face(cells, p)
        support = {ss.edge_factor(cells.dart_edge(d)) for d in walk.darts}
        for t in range(len(walk.darts)):
            support.add(ss.vertex_factor(cells.walk_site(walk, t).vertex))
        ok = _acts_as_identity_outside(ss, m, support)
        report.add(f"local:B[{p}]", ok, "" if ok else "acts outside incident factors")
    return report


def _acts_as_identity_outside(
    ss: StateSpace, m: SparseMatrix, support: set
) -> bool:
    dims = ss.factor_dims
    others = [i for i in range(len(dims)) if i not in support]
    if not others:
        return True
    comp_card = 1
    for i in others:
        comp_card *= dims[i]
    blocks: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], Dict] = {}
    for (r, c), q in m.entries.items():
        ri = _split_flat(r, dims)
        ci = _split_flat(c, dims)
        for i in others:
            if ri[i] != ci[i]:
                return False
        key = (
            tuple(ri[i] for i in sorted(support)),
            tuple(ci[i] for i in sorted(support)),
        )
        info = blocks.setdefault(key, {"count": 0, "value": None})
        info["count"] += 1
        if info["value"] is None:
            info["value"] = q
        elif info["value"] != q:
            return False
    for info in blocks.values():
        if info["count"] != comp_card:
            return False
    return True


def verify_operator_set(ops: OperatorSet, seed: int = 0) -> CheckReport:
    """The full verification suite for a built operator set."""
    report = CheckReport("operator suite")
    report.extend(check_idempotence(ops, seed))
    report.extend(check_pairwise_commutation(ops, seed))
    ss = ops.state_space
    for p in sorted(ops.plaquette_ops):
        report.extend(check_base_site_independence(ss, p))
    reg = regularity_check(ss.labels.cells)
    if reg.ok:
        cells = ss.labels.cells
        for v in ss.vertex_order:
            for site in vertex_algebra(ss.labels, v).sites:
                if ss.labels.hopf_at(site.face) is None:
                    continue
                report.extend(check_straightening_representation(ss, site.face, site))
    else:
        report.add(
            "straightening_representation",
            True,
            "SKIPPED (warning): non-regular cell decomposition",
        )
    report.extend(check_locality(ops))
    return report


# --- Hamiltonian and ground space --------------------------------------------------


def hamiltonian(ops: OperatorSet) -> SparseMatrix:
    dim = ops.state_space.total_dim
    ident = SparseMatrix.identity(dim)
    total = SparseMatrix.zeros(dim, dim)
    for _, m in ops.all_ops():
        total = total + (ident - m)
    return total


def ground_space_dimension(
    ops: OperatorSet, method: str = "auto"
) -> Dict[str, object]:
    """Exact ground-space dimension.

    ``trace``: trace of the product of all projectors (valid because the
    suite verifies pairwise commutation and idempotence); ``kernel``: null
    space of the Hamiltonian; ``auto``: trace, cross-checked by the kernel
    whenever the total dimension allows full matrices; ``both``: force both.
    Returns a dict with the methods used and the agreed dimension.
    """
    dim = ops.state_space.total_dim
    out: Dict[str, object] = {}
    want_trace = method in ("auto", "trace", "both")
    want_kernel = method in ("kernel", "both") or (
        method == "auto" and dim <= FULL_CHECK_DIM
    )
    if want_trace:
        value = _projector_product_trace(ops)
        if value.denominator != 1 or value < 0:
            raise NonIntegerTrace(
                f"projector-product trace {value} is not a nonnegative integer; "
                "an idempotence or commutation failure upstream"
            )
        out["trace"] = int(value)
    if want_kernel:
        out["kernel"] = kernel_dimension(hamiltonian(ops))
    values = {v for k, v in out.items() if k in ("trace", "kernel")}
    if len(values) > 1:
        raise Mismatch(f"ground dimension disagreement: {out}")
    out["dimension"] = next(iter(values))
    return out


def _projector_product_trace(ops: OperatorSet) -> Rational:
    mats = [m for _, m in ops.all_ops()]
    dim = ops.state_space.total_dim
    total = ZERO
    for j in range(dim):
        vec: Vector = {j: ONE}
        for m in mats:
            vec = m.matvec(vec)
            if not vec:
                break
        if vec:
            q = vec.get(j)
            if q:
                total += q
    return total
