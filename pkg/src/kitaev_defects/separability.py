"""Symmetric separability idempotents of separable algebras.

For a finite-dimensional algebra whose regular-representation trace form
``T[i,j] = tr(L_{b_i b_j})`` is nondegenerate, the canonical symmetric
separability idempotent is ``p = sum_ij (T^{-1})[i,j]  b_i (x) b_j``.
It satisfies, and is verified here to satisfy, exactly:

* normalization:   ``p1 * p2 = 1``
* invariance:      ``(x * p1) (x) p2 = p1 (x) (p2 * x)`` for all basis x
* symmetry:        ``swap(p) = p``

(The names p1/p2 refer to the two tensor legs, summation implicit.)
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .errors import DegenerateTraceForm, PropertyCheckFailed
from .hopf import AlgebraData, HopfAlgebraData, _acc3, _memo, haar_integral, tensor_algebra
from .comodule import BicomoduleAlgebraData
from .linalg import SparseMatrix, Tensor, invert
from .rationals import ONE, Rational, ZERO
from .reporting import CheckReport


@dataclass(eq=False)
class SeparabilityIdempotent:
    """Element of A (x) A,  stored as a rank-2 tensor over the basis."""

    algebra: AlgebraData
    element: Tensor  # dims (n, n)

    def terms(self) -> List[Tuple[int, int, Rational]]:
        return [(i, j, q) for (i, j), q in self.element.items()]

    def __repr__(self) -> str:
        return f"SeparabilityIdempotent(dim={self.algebra.dim}, nnz={len(self.element.entries)})"


def trace_form(a: AlgebraData) -> SparseMatrix:
    """``T[i,j] = tr(L_{b_i * b_j})`` in the left regular representation."""
    traces = a.left_mult_traces()
    entries: Dict[Tuple[int, int], Rational] = {}
    for (i, j, k), q in a.mult.items():
        t = traces[k]
        if t:
            key = (i, j)
            s = entries.get(key, ZERO) + q * t
            if s:
                entries[key] = s
            else:
                entries.pop(key, None)
    return SparseMatrix(a.dim, a.dim, entries)


def symmetric_separability_idempotent(a: AlgebraData) -> SeparabilityIdempotent:
    """The canonical symmetric separability idempotent (cached per algebra).

    Raises :class:`DegenerateTraceForm` if the regular trace form is
    singular.  The three defining identities are verified exactly before
    the result is returned.
    """

    def build() -> SeparabilityIdempotent:
        form = trace_form(a)
        inv = invert(form)
        if inv is None:
            raise DegenerateTraceForm(
                "regular trace form is singular; no symmetric separability idempotent"
            )
        element = Tensor((a.dim, a.dim), {(i, j): q for (i, j), q in inv.entries.items()})
        p = SeparabilityIdempotent(a, element)
        report = check_separability_identities(p)
        report.assert_ok(PropertyCheckFailed)
        return p

    return _memo(a, "separability_idempotent", build)


def check_separability_identities(p: SeparabilityIdempotent) -> CheckReport:
    """Exact normalization, invariance (both-sided), and symmetry checks."""
    a = p.algebra
    report = CheckReport("separability identities")
    prods = a.pair_products()

    # normalization: sum p[i,j] b_i b_j == 1
    norm: Dict[int, Rational] = {}
    for (i, j), q in p.element.items():
        for (k, w) in prods.get((i, j), []):
            s = norm.get(k, ZERO) + q * w
            if s:
                norm[k] = s
            else:
                norm.pop(k, None)
    report.add("normalization", norm == a.unit_vector())

    # invariance: for every basis x: (x p1) (x) p2 == p1 (x) (p2 x)
    inv_ok = True
    detail = ""
    for x in range(a.dim):
        lhs: Dict[Tuple[int, int], Rational] = {}
        rhs: Dict[Tuple[int, int], Rational] = {}
        for (i, j), q in p.element.items():
            for (k, w) in prods.get((x, i), []):
                _acc3(lhs, (k, j), q * w)
            for (k, w) in prods.get((j, x), []):
                _acc3(rhs, (i, k), q * w)
        if lhs != rhs:
            inv_ok = False
            detail = f"basis element {x}"
            break
    report.add("invariance", inv_ok, detail)

    # symmetry: swapping the two legs leaves p unchanged
    swapped = {(j, i): q for (i, j), q in p.element.items()}
    report.add("symmetry", swapped == dict(p.element.items()))
    return report


def check_idempotent_property(p: SeparabilityIdempotent) -> bool:
    """p is idempotent in A (x) A^op:  sum p1 q1 (x) q2 p2 == p."""
    a = p.algebra
    prods = a.pair_products()
    acc: Dict[Tuple[int, int], Rational] = {}
    for (i, j), q in p.element.items():
        for (u, v), w in p.element.items():
            c = q * w
            for (k1, w1) in prods.get((i, u), []):
                for (k2, w2) in prods.get((v, j), []):
                    _acc3(acc, (k1, k2), c * w1 * w2)
    return acc == dict(p.element.items())


def check_haar_reduction(h: HopfAlgebraData) -> bool:
    """For Hopf algebra data the idempotent must reduce to the Haar form:
    ``p = sum l_(1) (x) S(l_(2))`` with l the Haar integral.  Exact compare."""
    p = symmetric_separability_idempotent(h.algebra)
    integral = haar_integral(h)
    legs = h.comult_legs()
    acc: Dict[Tuple[int, int], Rational] = {}
    for c, qc in integral.as_vector().items():
        for (a_leg, b_leg, w) in legs.get(c, []):
            coeff = qc * w
            for (s, qs) in h.antipode.matvec({b_leg: ONE}).items():
                _acc3(acc, (a_leg, s), coeff * qs)
    return acc == dict(p.element.items())


def check_coinvariance(k: BicomoduleAlgebraData, side: str) -> CheckReport:
    """Coinvariance of the separability idempotent under one side's coaction.

    ``side`` is ``"left"`` or ``"right"``.  Two exact identities per side:
    a cyclic exchange identity and full coinvariance of the pair.
    """
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    p = symmetric_separability_idempotent(k.algebra)
    report = CheckReport(f"{side} coinvariance")
    nk = k.dim

    if side == "right":
        legs = k.right_coaction_legs()
        hop = k.right_hopf
        # cyclic: p1_(0) (x) p1_(1) (x) p2  ==  p1 (x) S(p2_(1)) (x) p2_(0)
        lhs: Dict[Tuple[int, int, int], Rational] = {}
        rhs: Dict[Tuple[int, int, int], Rational] = {}
        for (i, j), q in p.element.items():
            for (i0, b, w) in legs.get(i, []):
                _acc3(lhs, (i0, b, j), q * w)
            for (j0, b, w) in legs.get(j, []):
                for (s, qs) in hop.antipode.matvec({b: ONE}).items():
                    _acc3(rhs, (i, s, j0), q * w * qs)
        report.add("cyclic_exchange", lhs == rhs)
        # coinvariance: p1_(0) (x) p2_(0) (x) p1_(1) p2_(1)  ==  p1 (x) p2 (x) 1
        got: Dict[Tuple[int, int, int], Rational] = {}
        prods = hop.algebra.pair_products()
        for (i, j), q in p.element.items():
            for (i0, b1, w1) in legs.get(i, []):
                for (j0, b2, w2) in legs.get(j, []):
                    c = q * w1 * w2
                    for (b, wb) in prods.get((b1, b2), []):
                        _acc3(got, (i0, j0, b), c * wb)
        want: Dict[Tuple[int, int, int], Rational] = {}
        for (i, j), q in p.element.items():
            for b, qb in hop.algebra.unit_vector().items():
                want[(i, j, b)] = q * qb
        report.add("coinvariance", got == want)
    else:
        legs = k.left_coaction_legs()
        hop = k.left_hopf
        # cyclic: p1_(0) (x) p1_(-1) (x) p2  ==  p1 (x) S(p2_(-1)) (x) p2_(0)
        lhs = {}
        rhs = {}
        for (i, j), q in p.element.items():
            for (a, i0, w) in legs.get(i, []):
                _acc3(lhs, (i0, a, j), q * w)
            for (a, j0, w) in legs.get(j, []):
                for (s, qs) in hop.antipode.matvec({a: ONE}).items():
                    _acc3(rhs, (i, s, j0), q * w * qs)
        report.add("cyclic_exchange", lhs == rhs)
        # coinvariance: p1_(-1) p2_(-1) (x) p1_(0) (x) p2_(0)  ==  1 (x) p1 (x) p2
        got = {}
        prods = hop.algebra.pair_products()
        for (i, j), q in p.element.items():
            for (a1, i0, w1) in legs.get(i, []):
                for (a2, j0, w2) in legs.get(j, []):
                    c = q * w1 * w2
                    for (aa, wa) in prods.get((a1, a2), []):
                        _acc3(got, (aa, i0, j0), c * wa)
        want = {}
        for a, qa in hop.algebra.unit_vector().items():
            for (i, j), q in p.element.items():
                want[(a, i, j)] = qa * q
        report.add("coinvariance", got == want)
    return report


def tensor_idempotent(
    p: SeparabilityIdempotent,
    q: SeparabilityIdempotent,
    product_algebra: Optional[AlgebraData] = None,
    verify_direct: Optional[bool] = None,
) -> SeparabilityIdempotent:
    """Interleaved tensor idempotent ``(p1 (x) q1) (x) (p2 (x) q2)`` on the
    tensor product algebra.

    The composite is always verified against the three defining identities;
    by uniqueness of the symmetric separability idempotent this pins it to
    the direct construction.  When ``verify_direct`` is true (default for
    dimensions <= 256) it is additionally compared entry-for-entry with the
    idempotent computed directly from the product algebra's trace form
    (dual-route check).
    """
    a, b = p.algebra, q.algebra
    prod = product_algebra if product_algebra is not None else tensor_algebra(a, b)
    nb = b.dim
    entries: Dict[Tuple[int, int], Rational] = {}
    for (i, j), qp in p.element.items():
        for (u, v), qq in q.element.items():
            entries[(i * nb + u, j * nb + v)] = qp * qq
    composite = SeparabilityIdempotent(prod, Tensor((prod.dim, prod.dim), entries))
    check_separability_identities(composite).assert_ok(PropertyCheckFailed)
    if verify_direct is None:
        verify_direct = prod.dim <= 256
    if verify_direct:
        direct = symmetric_separability_idempotent(prod)
        if dict(direct.element.items()) != dict(composite.element.items()):
            raise PropertyCheckFailed(
                "interleaved tensor idempotent differs from direct computation"
            )
        return direct
    prod._cache["separability_idempotent"] = composite
    return composite
