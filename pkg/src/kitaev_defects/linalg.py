"""Exact sparse linear algebra over the rationals.

Everything here is dictionary-backed and exact: matrices never store zero
entries, dimensions are fixed at construction, and all results are computed
with rational arithmetic (no floating point, no tolerances).

The two workhorse types are :class:`SparseMatrix` (2-index) and
:class:`Tensor` (arbitrary arity, used for structure constants such as
multiplication and comultiplication tables).  Module-level helpers provide
the operations used throughout: :func:`kron`, :func:`trace`,
:func:`kernel_dimension`, :func:`invert`, :func:`solve_linear`.
"""

from __future__ import annotations

import bisect
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .errors import NonSquare
from .rationals import ONE, Q, Rational, ZERO

Vector = Dict[int, Rational]  # sparse vector: index -> nonzero rational


def vec_add(a: Vector, b: Vector) -> Vector:
    out = dict(a)
    for i, q in b.items():
        s = out.get(i, ZERO) + q
        if s:
            out[i] = s
        else:
            out.pop(i, None)
    return out


def vec_scale(a: Vector, q: Rational) -> Vector:
    if not q:
        return {}
    return {i: v * q for i, v in a.items()}


def vec_dot(a: Vector, b: Vector) -> Rational:
    if len(b) < len(a):
        a, b = b, a
    total = ZERO
    for i, v in a.items():
        w = b.get(i)
        if w is not None:
            total += v * w
    return total


class SparseMatrix:
    """Immutable-by-convention sparse matrix with exact rational entries.

    ``entries`` maps ``(row, col)`` to a nonzero rational.  Zero results are
    dropped eagerly so that ``entries`` is always a faithful support set.
    """

    __slots__ = ("rows", "cols", "entries", "_rows_cache", "_cols_cache")

    def __init__(
        self,
        rows: int,
        cols: int,
        entries: Optional[Dict[Tuple[int, int], Rational]] = None,
    ) -> None:
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        self.rows = rows
        self.cols = cols
        clean: Dict[Tuple[int, int], Rational] = {}
        if entries:
            for (r, c), q in entries.items():
                if not (0 <= r < rows and 0 <= c < cols):
                    raise ValueError(f"entry ({r},{c}) out of bounds for {rows}x{cols}")
                if q:
                    clean[(r, c)] = Q(q)
        self.entries = clean
        self._rows_cache: Optional[Dict[int, List[Tuple[int, Rational]]]] = None
        self._cols_cache: Optional[Dict[int, List[Tuple[int, Rational]]]] = None

    # --- constructors ---------------------------------------------------

    @staticmethod
    def identity(n: int) -> "SparseMatrix":
        return SparseMatrix(n, n, {(i, i): ONE for i in range(n)})

    @staticmethod
    def zeros(rows: int, cols: int) -> "SparseMatrix":
        return SparseMatrix(rows, cols, {})

    @staticmethod
    def from_rows(data: Sequence[Sequence[object]]) -> "SparseMatrix":
        rows = len(data)
        cols = len(data[0]) if rows else 0
        entries: Dict[Tuple[int, int], Rational] = {}
        for r, row in enumerate(data):
            if len(row) != cols:
                raise ValueError("ragged rows")
            for c, v in enumerate(row):
                q = Q(v)  # type: ignore[arg-type]
                if q:
                    entries[(r, c)] = q
        return SparseMatrix(rows, cols, entries)

    @staticmethod
    def column(vec: Vector, dim: int) -> "SparseMatrix":
        return SparseMatrix(dim, 1, {(i, 0): q for i, q in vec.items()})

    # --- inspection -------------------------------------------------------

    def get(self, r: int, c: int) -> Rational:
        return self.entries.get((r, c), ZERO)

    def nnz(self) -> int:
        return len(self.entries)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return not self.entries

    def is_identity(self) -> bool:
        if self.rows != self.cols or len(self.entries) != self.rows:
            return False
        return all(r == c and q == ONE for (r, c), q in self.entries.items())

    def row_items(self) -> Dict[int, List[Tuple[int, Rational]]]:
        """Row-major adjacency view; cached (treat matrices as immutable)."""
        if self._rows_cache is None:
            cache: Dict[int, List[Tuple[int, Rational]]] = {}
            for (r, c), q in self.entries.items():
                cache.setdefault(r, []).append((c, q))
            self._rows_cache = cache
        return self._rows_cache

    def col_items(self) -> Dict[int, List[Tuple[int, Rational]]]:
        """Column-major adjacency view; cached (treat matrices as immutable)."""
        if self._cols_cache is None:
            cache: Dict[int, List[Tuple[int, Rational]]] = {}
            for (r, c), q in self.entries.items():
                cache.setdefault(c, []).append((r, q))
            self._cols_cache = cache
        return self._cols_cache

    def to_dense(self) -> List[List[Rational]]:
        out = [[ZERO] * self.cols for _ in range(self.rows)]
        for (r, c), q in self.entries.items():
            out[r][c] = q
        return out

    # --- arithmetic -------------------------------------------------------

    def __add__(self, other: "SparseMatrix") -> "SparseMatrix":
        self._require_same_shape(other)
        entries = dict(self.entries)
        for key, q in other.entries.items():
            s = entries.get(key, ZERO) + q
            if s:
                entries[key] = s
            else:
                entries.pop(key, None)
        return SparseMatrix(self.rows, self.cols, entries)

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self + other.scale(Q(-1))

    def __neg__(self) -> "SparseMatrix":
        return self.scale(Q(-1))

    def scale(self, q: Rational) -> "SparseMatrix":
        if not q:
            return SparseMatrix.zeros(self.rows, self.cols)
        return SparseMatrix(self.rows, self.cols, {k: v * q for k, v in self.entries.items()})

    def __mul__(self, other: object) -> "SparseMatrix":
        if isinstance(other, SparseMatrix):
            return self.matmul(other)
        return self.scale(Q(other))  # type: ignore[arg-type]

    def __rmul__(self, other: object) -> "SparseMatrix":
        return self.scale(Q(other))  # type: ignore[arg-type]

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        return self.matmul(other)

    def matmul(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        other_rows = other.row_items()
        acc: Dict[Tuple[int, int], Rational] = {}
        for (r, k), q in self.entries.items():
            row = other_rows.get(k)
            if not row:
                continue
            for c, w in row:
                key = (r, c)
                s = acc.get(key, ZERO) + q * w
                if s:
                    acc[key] = s
                else:
                    acc.pop(key, None)
        return SparseMatrix(self.rows, other.cols, acc)

    def matvec(self, vec: Vector) -> Vector:
        """Apply to a sparse column vector (index -> value); column-driven,
        so repeated applications of one matrix stay proportional to the
        touched columns rather than the whole entry set."""
        cols = self.col_items()
        out: Vector = {}
        for c, w in vec.items():
            if not w:
                continue
            col = cols.get(c)
            if not col:
                continue
            for r, q in col:
                s = out.get(r, ZERO) + q * w
                if s:
                    out[r] = s
                else:
                    out.pop(r, None)
        return out

    def transpose(self) -> "SparseMatrix":
        return SparseMatrix(self.cols, self.rows, {(c, r): q for (r, c), q in self.entries.items()})

    def trace(self) -> Rational:
        if not self.is_square():
            raise NonSquare(f"trace of non-square {self.rows}x{self.cols} matrix")
        total = ZERO
        for (r, c), q in self.entries.items():
            if r == c:
                total += q
        return total

    def kron(self, other: "SparseMatrix") -> "SparseMatrix":
        entries: Dict[Tuple[int, int], Rational] = {}
        br, bc = other.rows, other.cols
        for (ra, ca), qa in self.entries.items():
            for (rb, cb), qb in other.entries.items():
                entries[(ra * br + rb, ca * bc + cb)] = qa * qb
        return SparseMatrix(self.rows * br, self.cols * bc, entries)

    def is_idempotent(self) -> bool:
        return self.is_square() and self.matmul(self) == self

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"SparseMatrix({self.rows}x{self.cols}, nnz={len(self.entries)})"

    def _require_same_shape(self, other: "SparseMatrix") -> None:
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError(
                f"shape mismatch: {self.rows}x{self.cols} vs {other.rows}x{other.cols}"
            )


class Tensor:
    """Sparse multi-index array of rationals with fixed per-axis dimensions."""

    __slots__ = ("dims", "entries")

    def __init__(
        self,
        dims: Sequence[int],
        entries: Optional[Dict[Tuple[int, ...], Rational]] = None,
    ) -> None:
        self.dims: Tuple[int, ...] = tuple(dims)
        clean: Dict[Tuple[int, ...], Rational] = {}
        if entries:
            for idx, q in entries.items():
                key = tuple(idx)
                if len(key) != len(self.dims) or any(
                    not (0 <= i < d) for i, d in zip(key, self.dims)
                ):
                    raise ValueError(f"index {key} out of bounds for dims {self.dims}")
                if q:
                    clean[key] = Q(q)
        self.entries = clean

    def get(self, *idx: int) -> Rational:
        return self.entries.get(tuple(idx), ZERO)

    def items(self) -> Iterator[Tuple[Tuple[int, ...], Rational]]:
        return iter(self.entries.items())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Tensor):
            return NotImplemented
        return self.dims == other.dims and self.entries == other.entries

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"Tensor(dims={self.dims}, nnz={len(self.entries)})"

    def permute(self, axes: Sequence[int]) -> "Tensor":
        axes = tuple(axes)
        if sorted(axes) != list(range(len(self.dims))):
            raise ValueError("axes must be a permutation")
        dims = tuple(self.dims[a] for a in axes)
        entries = {tuple(idx[a] for a in axes): q for idx, q in self.entries.items()}
        return Tensor(dims, entries)

    def tensor_product(self, other: "Tensor") -> "Tensor":
        dims = self.dims + other.dims
        entries: Dict[Tuple[int, ...], Rational] = {}
        for ia, qa in self.entries.items():
            for ib, qb in other.entries.items():
                entries[ia + ib] = qa * qb
        return Tensor(dims, entries)

    def contract_vector(self, axis: int, vec: Sequence[Rational]) -> "Tensor":
        """Sum the given axis against a dense coordinate vector."""
        if len(vec) != self.dims[axis]:
            raise ValueError("vector length does not match axis dimension")
        dims = self.dims[:axis] + self.dims[axis + 1 :]
        acc: Dict[Tuple[int, ...], Rational] = {}
        for idx, q in self.entries.items():
            w = vec[idx[axis]]
            if not w:
                continue
            key = idx[:axis] + idx[axis + 1 :]
            s = acc.get(key, ZERO) + q * w
            if s:
                acc[key] = s
            else:
                acc.pop(key, None)
        return Tensor(dims, acc)


# --- module-level operations -------------------------------------------------


def kron(a: SparseMatrix, b: SparseMatrix) -> SparseMatrix:
    """Kronecker product with row-major index convention:
    pair index ``(i, j)`` flattens to ``i * dim_b + j``."""
    return a.kron(b)


def trace(m: SparseMatrix) -> Rational:
    """Exact trace of a square matrix; raises :class:`NonSquare` otherwise."""
    return m.trace()


def _eliminate(rows: Iterable[Vector]) -> List[Tuple[int, Vector]]:
    """Sparse Gaussian elimination; returns the pivoted rows.

    Each returned entry is ``(pivot_col, row)`` with ``row[pivot_col] == 1``
    and pivot columns distinct.  Exact over the rationals.
    """
    pivots: Dict[int, Vector] = {}  # pivot col -> normalized row
    pivot_cols: List[int] = []  # sorted; every stored row's smallest col is its pivot
    for raw in rows:
        row = dict(raw)
        # One ascending sweep suffices: reducing by pivot col c only
        # introduces columns > c, which the sweep has not passed yet.
        i = bisect.bisect_left(pivot_cols, min(row)) if row else 0
        while i < len(pivot_cols):
            hit = pivot_cols[i]
            i += 1
            factor = row.get(hit)
            if not factor:
                continue
            for c, v in pivots[hit].items():
                s = row.get(c, ZERO) - factor * v
                if s:
                    row[c] = s
                else:
                    row.pop(c, None)
        if row:
            pcol = min(row)
            inv = ONE / row[pcol]
            pivots[pcol] = {c: v * inv for c, v in row.items()}
            bisect.insort(pivot_cols, pcol)
    return sorted(pivots.items())


def rank(m: SparseMatrix) -> int:
    return len(_eliminate(_rows_as_vectors(m)))


def _rows_as_vectors(m: SparseMatrix) -> List[Vector]:
    rows: Dict[int, Vector] = {}
    for (r, c), q in m.entries.items():
        rows.setdefault(r, {})[c] = q
    return list(rows.values())


def kernel_dimension(m: SparseMatrix) -> int:
    """Exact dimension of the null space (columns minus rank)."""
    return m.cols - len(_eliminate(_rows_as_vectors(m)))


def solve_linear(m: SparseMatrix, rhs: Vector) -> Optional[Vector]:
    """One exact solution ``x`` of ``m @ x = rhs``, or ``None`` if inconsistent.

    When the system is underdetermined the free variables are set to zero.
    """
    rows: Dict[int, Vector] = {}
    for (r, c), q in m.entries.items():
        rows.setdefault(r, {})[c] = q
    aug_col = m.cols  # place the right-hand side in a virtual extra column
    aug_rows: List[Vector] = []
    for r in range(m.rows):
        row = dict(rows.get(r, {}))
        b = rhs.get(r, ZERO)
        if b:
            row[aug_col] = b
        if row:
            aug_rows.append(row)
    reduced = _eliminate(aug_rows)
    for pcol, _row in reduced:
        if pcol == aug_col:
            return None  # a row reads 0 = 1: inconsistent
    # back-substitute (rows are pivot-normalized but not fully reduced)
    solution: Vector = {}
    for pcol, row in reversed(reduced):
        val = row.get(aug_col, ZERO)
        for c, v in row.items():
            if c == pcol or c == aug_col:
                continue
            x = solution.get(c)
            if x is not None:
                val -= v * x
        if val:
            solution[pcol] = val
    return solution


def invert(m: SparseMatrix) -> Optional[SparseMatrix]:
    """Exact inverse, or ``None`` if the matrix is singular/non-square."""
    if not m.is_square():
        return None
    n = m.rows
    # Gauss-Jordan on [M | I] with sparse rows.
    work: List[Vector] = []
    rows: Dict[int, Vector] = {}
    for (r, c), q in m.entries.items():
        rows.setdefault(r, {})[c] = q
    for r in range(n):
        row = dict(rows.get(r, {}))
        row[n + r] = ONE
        work.append(row)
    pivots: Dict[int, Vector] = {}
    for row in work:
        row = dict(row)
        changed = True
        while changed:
            changed = False
            for col in sorted(c for c in row if c < n):
                if col in pivots:
                    factor = row[col]
                    for c, v in pivots[col].items():
                        s = row.get(c, ZERO) - factor * v
                        if s:
                            row[c] = s
                        else:
                            row.pop(c, None)
                    changed = True
                    break
        lead = [c for c in row if c < n]
        if not lead:
            return None  # singular
        pcol = min(lead)
        inv = ONE / row[pcol]
        pivots[pcol] = {c: v * inv for c, v in row.items()}
    # eliminate upwards for reduced form
    for pcol in sorted(pivots, reverse=True):
        row = pivots[pcol]
        for other_col in sorted(pivots):
            if other_col >= pcol:
                break
            target = pivots[other_col]
            factor = target.get(pcol, ZERO)
            if factor:
                for c, v in row.items():
                    s = target.get(c, ZERO) - factor * v
                    if s:
                        target[c] = s
                    else:
                        target.pop(c, None)
    entries: Dict[Tuple[int, int], Rational] = {}
    for pcol, row in pivots.items():
        for c, v in row.items():
            if c >= n:
                entries[(pcol, c - n)] = v
    return SparseMatrix(n, n, entries)


# --- mixed-radix index helpers (row-major, used for tensor factor layouts) ---


def flatten_index(digits: Sequence[int], dims: Sequence[int]) -> int:
    """Row-major flattening: the LAST digit varies fastest."""
    idx = 0
    for digit, dim in zip(digits, dims):
        if not (0 <= digit < dim):
            raise ValueError(f"digit {digit} out of range for dim {dim}")
        idx = idx * dim + digit
    return idx


def unflatten_index(index: int, dims: Sequence[int]) -> Tuple[int, ...]:
    digits = [0] * len(dims)
    for pos in range(len(dims) - 1, -1, -1):
        index, digits[pos] = divmod(index, dims[pos])
    if index:
        raise ValueError("index out of range for dims")
    return tuple(digits)
