"""Crossed products of module algebras with comodule algebras.

The central construction: given a Hopf algebra ``T``, a left ``T``-module
algebra ``A`` and a left ``T``-comodule algebra ``K``, the crossed product
``A >< K`` is ``A (x) K`` with multiplication::

    (a (x) k)(a' (x) k')  =  a (k_(-1) . a')  (x)  k_(0) k'

For the lattice model, ``T`` is built from a plaquette Hopf algebra ``H``
and two orientation signs: ``T = cop(H^sign') (x) H^sign`` where ``H^+`` is
``H`` and ``H^-`` is its op-cop form.  ``A`` is the dual algebra of ``H``
with the sandwich action (the *balancing algebra*), and ``K`` is an edge
algebra with its two-sided coaction folded into a single left ``T``-coaction.

The Drinfeld double arises as the special case of a transparent edge with
both signs positive.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .comodule import BicomoduleAlgebraData, regular_bicomodule
from .errors import AssociativityFailure, HopfMismatch, NotAModule
from .hopf import (
    AlgebraData,
    HopfAlgebraData,
    _acc3,
    _memo,
    cop_only,
    dual_hopf,
    op_cop,
    tensor_algebra,
    tensor_hopf,
    validate_algebra,
)
from .linalg import SparseMatrix, Tensor, Vector
from .rationals import ONE, Rational, ZERO
from .reporting import CheckReport
from .separability import symmetric_separability_idempotent


# --- module / comodule algebra data -------------------------------------------


@dataclass(eq=False)
class ModuleAlgebraData:
    """A left module algebra: ``action[t, a_in, a_out]`` is the coefficient
    of basis vector ``a_out`` in ``b_t . b_{a_in}``."""

    hopf: HopfAlgebraData
    algebra: AlgebraData
    action: Tensor  # dims (nT, nA, nA)
    _cache: Dict[str, object] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        expected = (self.hopf.dim, self.algebra.dim, self.algebra.dim)
        if self.action.dims != expected:
            raise ValueError(f"action dims {self.action.dims} != {expected}")

    def action_terms(self) -> Dict[Tuple[int, int], List[Tuple[int, Rational]]]:
        """``(t, a_in) -> [(a_out, coeff)]`` view."""

        def build() -> Dict[Tuple[int, int], List[Tuple[int, Rational]]]:
            out: Dict[Tuple[int, int], List[Tuple[int, Rational]]] = {}
            for (t, a, a2), q in self.action.items():
                out.setdefault((t, a), []).append((a2, q))
            return out

        return _memo(self, "action_terms", build)

    def action_matrix(self, t_vec: Vector) -> SparseMatrix:
        n = self.algebra.dim
        entries: Dict[Tuple[int, int], Rational] = {}
        terms = self.action_terms()
        for t, qt in t_vec.items():
            for a in range(n):
                for (a2, q) in terms.get((t, a), []):
                    key = (a2, a)
                    s = entries.get(key, ZERO) + qt * q
                    if s:
                        entries[key] = s
                    else:
                        entries.pop(key, None)
        return SparseMatrix(n, n, entries)


@dataclass(eq=False)
class LeftComoduleAlgebraData:
    """A left comodule algebra: ``coaction[k, t, k0]`` is the coefficient of
    ``b_t (x) b_{k0}`` in the coaction of basis vector ``k``."""

    hopf: HopfAlgebraData
    algebra: AlgebraData
    coaction: Tensor  # dims (nK, nT, nK)
    _cache: Dict[str, object] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        nk = self.algebra.dim
        expected = (nk, self.hopf.dim, nk)
        if self.coaction.dims != expected:
            raise ValueError(f"coaction dims {self.coaction.dims} != {expected}")

    def coaction_legs(self) -> Dict[int, List[Tuple[int, int, Rational]]]:
        """``k -> [(t, k0, coeff)]`` view."""

        def build() -> Dict[int, List[Tuple[int, int, Rational]]]:
            out: Dict[int, List[Tuple[int, int, Rational]]] = {}
            for (k, t, k0), q in self.coaction.items():
                out.setdefault(k, []).append((t, k0, q))
            return out

        return _memo(self, "coaction_legs", build)


def validate_module_algebra(ma: ModuleAlgebraData, subject: str = "module algebra") -> CheckReport:
    """Exact left module-algebra laws over the acting Hopf algebra."""
    report = CheckReport(subject)
    t_hopf, a = ma.hopf, ma.algebra
    terms = ma.action_terms()
    n_t, n_a = t_hopf.dim, a.dim

    report.add("unit_action", ma.action_matrix(t_hopf.algebra.unit_vector()).is_identity())

    prods_t = t_hopf.algebra.pair_products()
    mats = [ma.action_matrix({t: ONE}) for t in range(n_t)]
    hom_ok = True
    for t1 in range(n_t):
        for t2 in range(n_t):
            expected = SparseMatrix.zeros(n_a, n_a)
            for (s, q) in prods_t.get((t1, t2), []):
                expected = expected + mats[s].scale(q)
            if mats[t1].matmul(mats[t2]) != expected:
                hom_ok = False
                break
        if not hom_ok:
            break
    report.add("action_homomorphism", hom_ok)

    # t . (f g) = (t_(1) . f)(t_(2) . g)
    prods_a = a.pair_products()
    legs = t_hopf.comult_legs()
    lhs: Dict[Tuple[int, int, int, int], Rational] = {}
    for (i, j), pterms in prods_a.items():
        for (m, qm) in pterms:
            for t in range(n_t):
                for (k, q) in terms.get((t, m), []):
                    _acc3(lhs, (t, i, j, k), qm * q)
    rhs: Dict[Tuple[int, int, int, int], Rational] = {}
    for t in range(n_t):
        for (t1, t2, qt) in legs.get(t, []):
            for i in range(n_a):
                for (i2, q1) in terms.get((t1, i), []):
                    for j in range(n_a):
                        for (j2, q2) in terms.get((t2, j), []):
                            w = qt * q1 * q2
                            for (k, qk) in prods_a.get((i2, j2), []):
                                _acc3(rhs, (t, i, j, k), w * qk)
    report.add("module_algebra_law", lhs == rhs)

    # t . 1_A = counit(t) 1_A
    unit_ok = True
    unit_vec = a.unit_vector()
    for t in range(n_t):
        got: Vector = {}
        for i, qi in unit_vec.items():
            for (k, q) in terms.get((t, i), []):
                s = got.get(k, ZERO) + qi * q
                if s:
                    got[k] = s
                else:
                    got.pop(k, None)
        want = {k: t_hopf.counit[t] * q for k, q in unit_vec.items() if t_hopf.counit[t] * q}
        if got != want:
            unit_ok = False
            break
    report.add("unit_preservation", unit_ok)
    return report


def validate_comodule_algebra(
    ca: LeftComoduleAlgebraData, subject: str = "comodule algebra"
) -> CheckReport:
    """Exact left comodule-algebra laws over the coacting Hopf algebra."""
    report = CheckReport(subject)
    t_hopf, k_alg = ca.hopf, ca.algebra
    legs = ca.coaction_legs()
    nk = k_alg.dim

    # counit law
    ident: Dict[Tuple[int, int], Rational] = {}
    for (k, t, k0), q in ca.coaction.items():
        e = t_hopf.counit[t]
        if e:
            _acc3(ident, (k, k0), q * e)
    report.add("coaction_counit", ident == {(i, i): ONE for i in range(nk)})

    # coassociativity
    clegs = t_hopf.comult_legs()
    lhs: Dict[Tuple[int, int, int, int], Rational] = {}
    rhs: Dict[Tuple[int, int, int, int], Rational] = {}
    for (k, t, k0), q in ca.coaction.items():
        for (t1, t2, w) in clegs.get(t, []):
            _acc3(lhs, (k, t1, t2, k0), q * w)
        for (t2, k00, w) in legs.get(k0, []):
            _acc3(rhs, (k, t, t2, k00), q * w)
    report.add("coassociativity", lhs == rhs)

    # algebra map
    prods_k = k_alg.pair_products()
    prods_t = t_hopf.algebra.pair_products()
    want: Dict[Tuple[int, int, int, int], Rational] = {}
    for (i, j), terms in prods_k.items():
        for (k, qk) in terms:
            for (t, k0, q) in legs.get(k, []):
                _acc3(want, (i, j, t, k0), qk * q)
    got: Dict[Tuple[int, int, int, int], Rational] = {}
    for i in range(nk):
        for (t1, k1, q1) in legs.get(i, []):
            for j in range(nk):
                for (t2, k2, q2) in legs.get(j, []):
                    w = q1 * q2
                    tt = prods_t.get((t1, t2))
                    kk = prods_k.get((k1, k2))
                    if not tt or not kk:
                        continue
                    for (t, qt) in tt:
                        wt = w * qt
                        for (k0, qk0) in kk:
                            _acc3(got, (i, j, t, k0), wt * qk0)
    report.add("coaction_algebra_map", got == want)

    # unit coaction
    got_u: Dict[Tuple[int, int], Rational] = {}
    for i, qi in k_alg.unit_vector().items():
        for (t, k0, q) in legs.get(i, []):
            _acc3(got_u, (t, k0), qi * q)
    want_u: Dict[Tuple[int, int], Rational] = {}
    for t, qt in t_hopf.algebra.unit_vector().items():
        for k0, qk in k_alg.unit_vector().items():
            want_u[(t, k0)] = qt * qk
    report.add("coaction_unital", got_u == want_u)
    return report


# --- balancing algebras ---------------------------------------------------------


def sign_hopf(h: HopfAlgebraData, sign: int) -> HopfAlgebraData:
    """``H^+ = H``; ``H^- = H`` with opposite multiplication and
    comultiplication (same antipode, valid for involutive antipodes)."""
    if sign == 1:
        return h
    if sign == -1:
        return op_cop(h)
    raise ValueError("sign must be +1 or -1")


def balancing_t_hopf(h: HopfAlgebraData, sign_left: int, sign_right: int) -> HopfAlgebraData:
    """The acting Hopf algebra ``T = cop(H^sign_left) (x) H^sign_right``."""

    def build() -> HopfAlgebraData:
        return tensor_hopf(cop_only(sign_hopf(h, sign_left)), sign_hopf(h, sign_right))

    return _memo(h, f"t_hopf_{sign_left}_{sign_right}", build)


def bracket_vector(h: HopfAlgebraData, i: int, exponent: int) -> Vector:
    """``b_i`` for exponent +1, ``S(b_i)`` for exponent -1."""
    if exponent == 1:
        return {i: ONE}
    return h.antipode.matvec({i: ONE})


def balancing_algebra(
    h: HopfAlgebraData, sign_left: int, sign_right: int
) -> ModuleAlgebraData:
    """The dual algebra of ``H`` as a left module algebra over
    ``T = cop(H^sign_left) (x) H^sign_right``.

    Basis element ``(u, v)`` of ``T`` acts on a dual-basis functional by a
    two-sided sandwich: evaluate the functional on ``<b_u>^(-sign_left) *
    arg * <b_v>^(sign_right)`` where ``<x>^+ = x`` and ``<x>^- = S(x)``.
    """

    def build() -> ModuleAlgebraData:
        n = h.dim
        t_hopf = balancing_t_hopf(h, sign_left, sign_right)
        a = dual_hopf(h).algebra
        entries: Dict[Tuple[int, int, int], Rational] = {}
        for u in range(n):
            lvec = bracket_vector(h, u, -sign_left)
            lmat = h.algebra.left_mult_matrix(lvec)
            for v in range(n):
                rvec = bracket_vector(h, v, sign_right)
                m = lmat.matmul(h.algebra.right_mult_matrix(rvec))
                t = u * n + v
                for (w, x), q in m.entries.items():
                    entries[(t, w, x)] = q
        action = Tensor((n * n, n, n), entries)
        return ModuleAlgebraData(t_hopf, a, action)

    return _memo(h, f"balancing_{sign_left}_{sign_right}", build)


# --- comodule algebras from two-sided coactions ----------------------------------


def left_comodule_from_bicomodule(k: BicomoduleAlgebraData) -> LeftComoduleAlgebraData:
    """Fold a two-sided coaction into a single left coaction by
    ``T = cop(right side) (x) left side``:  ``k -> (k_(1), k_(-1)) (x) k_(0)``."""

    def build() -> LeftComoduleAlgebraData:
        t_hopf = tensor_hopf(cop_only(k.right_hopf), k.left_hopf)
        n_l = k.left_hopf.dim
        entries: Dict[Tuple[int, int, int], Rational] = {}
        for (kk, a, k0, b), q in k.coaction.items():
            entries[(kk, b * n_l + a, k0)] = q
        coaction = Tensor((k.dim, t_hopf.dim, k.dim), entries)
        return LeftComoduleAlgebraData(t_hopf, k.algebra, coaction)

    return _memo(k, "left_comodule", build)


def side_signed_bicomodule(
    h: HopfAlgebraData, sign_left: int, sign_right: int
) -> BicomoduleAlgebraData:
    """The regular bicomodule with independently signed sides.

    A negative side replaces that side's Hopf algebra by its op-cop form and
    composes the corresponding coaction leg with the antipode (this is again
    a bicomodule algebra; validated in the test suite)."""
    base = regular_bicomodule(h)
    if sign_left == 1 and sign_right == 1:
        return base

    def build() -> BicomoduleAlgebraData:
        hl = sign_hopf(h, sign_left)
        hr = sign_hopf(h, sign_right)
        entries: Dict[Tuple[int, int, int, int], Rational] = {}
        for (kk, a, k0, b), q in base.coaction.items():
            avec = bracket_vector(h, a, sign_left)
            bvec = bracket_vector(h, b, sign_right)
            for a2, qa in avec.items():
                for b2, qb in bvec.items():
                    _acc3(entries, (kk, a2, k0, b2), q * qa * qb)
        coaction = Tensor((h.dim, hl.dim, h.dim, hr.dim), entries)
        return BicomoduleAlgebraData(
            base.algebra, hl, hr, coaction, character=base.character
        )

    return _memo(h, f"side_signed_{sign_left}_{sign_right}", build)


# --- crossed products -------------------------------------------------------------


@dataclass(eq=False)
class CrossedProductAlgebra:
    """The algebra ``A >< K`` with its constituents and embeddings.

    Basis index convention: pair ``(i, x)`` flattens to ``i * dim_K + x``.
    """

    t_hopf: HopfAlgebraData
    module_part: ModuleAlgebraData
    comodule_part: LeftComoduleAlgebraData
    algebra: AlgebraData
    _cache: Dict[str, object] = field(default_factory=dict, repr=False)

    @property
    def dim_a(self) -> int:
        return self.module_part.algebra.dim

    @property
    def dim_k(self) -> int:
        return self.comodule_part.algebra.dim

    def flat(self, i: int, x: int) -> int:
        return i * self.dim_k + x

    def embed_a(self, vec: Vector) -> Vector:
        """a -> a (x) 1_K."""
        out: Vector = {}
        for x, qx in self.comodule_part.algebra.unit_vector().items():
            for i, qi in vec.items():
                out[self.flat(i, x)] = qi * qx
        return out

    def embed_k(self, vec: Vector) -> Vector:
        """k -> 1_A (x) k."""
        out: Vector = {}
        for i, qi in self.module_part.algebra.unit_vector().items():
            for x, qx in vec.items():
                out[self.flat(i, x)] = qi * qx
        return out

    def straighten_terms(self) -> Dict[Tuple[int, int], List[Tuple[int, int, Rational]]]:
        """``(x, j) -> [(j2, x0, coeff)]`` solving
        ``(1 (x) k_x)(f_j (x) 1) = sum coeff * (f_j2 (x) k_x0)``."""

        def build() -> Dict[Tuple[int, int], List[Tuple[int, int, Rational]]]:
            acc: Dict[Tuple[int, int], Dict[Tuple[int, int], Rational]] = {}
            legs = self.comodule_part.coaction_legs()
            terms = self.module_part.action_terms()
            n_a = self.dim_a
            for x in range(self.dim_k):
                for (t, x0, q) in legs.get(x, []):
                    for j in range(n_a):
                        for (j2, w) in terms.get((t, j), []):
                            _acc3(acc.setdefault((x, j), {}), (j2, x0), q * w)
            return {
                key: [(j2, x0, q) for (j2, x0), q in inner.items()]
                for key, inner in acc.items()
            }

        return _memo(self, "straighten_terms", build)


def crossed_product(
    ma: ModuleAlgebraData, ca: LeftComoduleAlgebraData
) -> CrossedProductAlgebra:
    """Build and verify the crossed product ``A >< K``.

    Raises :class:`HopfMismatch` if the two constituents are over
    structurally different Hopf algebras, and :class:`AssociativityFailure`
    if the resulting multiplication is not associative (which would indicate
    inconsistent action/coaction data).  Subalgebra embeddings are verified.
    """
    if not ma.hopf.same_structure(ca.hopf):
        raise HopfMismatch(
            "module part and comodule part are over different Hopf structures"
        )
    a, k = ma.algebra, ca.algebra
    n_a, n_k = a.dim, k.dim
    n = n_a * n_k
    legs = ca.coaction_legs()
    act = ma.action_terms()
    prods_a = a.pair_products()
    prods_k = k.pair_products()

    # twisted[(x, j)] = sum_t coaction legs applied to f_j
    twisted: Dict[Tuple[int, int], List[Tuple[int, int, Rational]]] = {}
    for x in range(n_k):
        for (t, x0, q) in legs.get(x, []):
            for j in range(n_a):
                for (j2, w) in act.get((t, j), []):
                    twisted.setdefault((x, j), []).append((j2, x0, q * w))

    entries: Dict[Tuple[int, int, int], Rational] = {}
    for i in range(n_a):
        for x in range(n_k):
            row = i * n_k + x
            for j in range(n_a):
                for y in range(n_k):
                    col = j * n_k + y
                    for (j2, x0, q) in twisted.get((x, j), []):
                        terms_a = prods_a.get((i, j2))
                        if not terms_a:
                            continue
                        terms_k = prods_k.get((x0, y))
                        if not terms_k:
                            continue
                        for (i3, qa) in terms_a:
                            w = q * qa
                            for (y3, qk) in terms_k:
                                _acc3(entries, (row, col, i3 * n_k + y3), w * qk)
    mult = Tensor((n, n, n), entries)
    unit = tuple(
        a.unit[i] * k.unit[x] for i in range(n_a) for x in range(n_k)
    )
    labels = [
        f"{la}|{lk}" for la in a.basis_labels for lk in k.basis_labels
    ]
    product = AlgebraData(n, labels, mult, unit)
    report = validate_algebra(product, "crossed product")
    if not report.ok:
        raise AssociativityFailure(report.summary())
    cp = CrossedProductAlgebra(ma.hopf, ma, ca, product)
    _verify_embeddings(cp)
    return cp


def _verify_embeddings(cp: CrossedProductAlgebra) -> None:
    """The two canonical embeddings must be algebra maps (exact)."""
    a = cp.module_part.algebra
    k = cp.comodule_part.algebra
    c = cp.algebra
    for i in range(a.dim):
        for j in range(a.dim):
            got = c.multiply(cp.embed_a({i: ONE}), cp.embed_a({j: ONE}))
            want = cp.embed_a(a.multiply({i: ONE}, {j: ONE}))
            if got != want:
                raise AssociativityFailure(
                    "module-part embedding is not an algebra map"
                )
    for x in range(k.dim):
        for y in range(k.dim):
            got = c.multiply(cp.embed_k({x: ONE}), cp.embed_k({y: ONE}))
            want = cp.embed_k(k.multiply({x: ONE}, {y: ONE}))
            if got != want:
                raise AssociativityFailure(
                    "comodule-part embedding is not an algebra map"
                )


def check_straightening(cp: CrossedProductAlgebra) -> CheckReport:
    """Dual-route check of the defining exchange law: multiply embedded
    generators in the product algebra and compare with the coaction/action
    route computed independently of the product table."""
    report = CheckReport("straightening")
    c = cp.algebra
    ok = True
    for x in range(cp.dim_k):
        for j in range(cp.dim_a):
            via_product = c.multiply(cp.embed_k({x: ONE}), cp.embed_a({j: ONE}))
            via_exchange: Vector = {}
            for (j2, x0, q) in cp.straighten_terms().get((x, j), []):
                key = cp.flat(j2, x0)
                s = via_exchange.get(key, ZERO) + q
                if s:
                    via_exchange[key] = s
                else:
                    via_exchange.pop(key, None)
            if via_product != via_exchange:
                ok = False
                break
        if not ok:
            break
    report.add("exchange_law", ok)
    return report


def signed_regular_crossed_product(
    h: HopfAlgebraData, sign_left: int, sign_right: int
) -> CrossedProductAlgebra:
    """Single-site crossed product over ``H`` with the given flank signs:
    balancing dual algebra against the regular edge with signed sides."""
    ma = balancing_algebra(h, sign_left, sign_right)
    ca = left_comodule_from_bicomodule(
        side_signed_bicomodule(h, sign_right, sign_left)
    )
    return crossed_product(ma, ca)


def drinfeld_double(h: HopfAlgebraData) -> CrossedProductAlgebra:
    """The Drinfeld double as the one-transparent-edge special case."""

    def build() -> CrossedProductAlgebra:
        ma = balancing_algebra(h, 1, 1)
        ca = left_comodule_from_bicomodule(regular_bicomodule(h))
        return crossed_product(ma, ca)

    return _memo(h, "drinfeld_double", build)


def check_idempotents_commute(cp: CrossedProductAlgebra) -> bool:
    """The two embedded separability idempotents commute inside
    ``C (x) C^op``.  With ``(u (x) u')(w (x) w') = uw (x) w'u'`` the two
    products are computed exactly and compared."""
    p = symmetric_separability_idempotent(cp.comodule_part.algebra)
    pi = symmetric_separability_idempotent(cp.module_part.algebra)
    c = cp.algebra

    def mul(u: Vector, w: Vector) -> Vector:
        return c.multiply(u, w)

    lhs: Dict[Tuple[int, int], Rational] = {}
    rhs: Dict[Tuple[int, int], Rational] = {}
    for (x1, x2), qp in p.element.items():
        k1 = cp.embed_k({x1: ONE})
        k2 = cp.embed_k({x2: ONE})
        for (i1, i2), qpi in pi.element.items():
            a1 = cp.embed_a({i1: ONE})
            a2 = cp.embed_a({i2: ONE})
            w = qp * qpi
            left_first = mul(k1, a1)  # (1 (x) p1)(pi1 (x) 1)
            right_second = mul(a2, k2)  # (pi2 (x) 1)(1 (x) p2)
            for u, qu in left_first.items():
                for v, qv in right_second.items():
                    _acc3(lhs, (u, v), w * qu * qv)
            left_first2 = mul(a1, k1)  # (pi1 (x) 1)(1 (x) p1)
            right_second2 = mul(k2, a2)  # (1 (x) p2)(pi2 (x) 1)
            for u, qu in left_first2.items():
                for v, qv in right_second2.items():
                    _acc3(rhs, (u, v), w * qu * qv)
    return lhs == rhs
