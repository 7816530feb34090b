"""Finite groups presented by explicit multiplication tables.

Groups only enter as input data for building group algebras and twisted
subgroup algebras, so a plain table representation (labels + index table)
is all that is needed.  :func:`check_group_axioms` verifies closure,
identity, associativity, and inverses exactly and raises
:class:`~kitaev_defects.errors.NotAGroup` on any failure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from typing import Dict, List, Sequence, Tuple

from .errors import NotAGroup


@dataclass(eq=False)
class GroupTable:
    """A finite group: element labels and the index multiplication table.

    ``table[i][j]`` is the index of ``labels[i] * labels[j]``.
    """

    labels: List[str]
    table: List[List[int]]
    identity: int = field(init=False)
    inverse: List[int] = field(init=False)

    def __post_init__(self) -> None:
        check_group_axioms(self.labels, self.table)
        self.identity = _find_identity(self.table)
        self.inverse = _find_inverses(self.table, self.identity)

    @property
    def order(self) -> int:
        return len(self.labels)

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def __repr__(self) -> str:
        return f"GroupTable(order={self.order}, labels={self.labels[:6]}...)"


def _find_identity(table: Sequence[Sequence[int]]) -> int:
    n = len(table)
    for e in range(n):
        if all(table[e][x] == x and table[x][e] == x for x in range(n)):
            return e
    raise NotAGroup("no two-sided identity element")


def _find_inverses(table: Sequence[Sequence[int]], identity: int) -> List[int]:
    n = len(table)
    inv = [-1] * n
    for x in range(n):
        for y in range(n):
            if table[x][y] == identity and table[y][x] == identity:
                inv[x] = y
                break
        if inv[x] < 0:
            raise NotAGroup(f"element {x} has no two-sided inverse")
    return inv


def check_group_axioms(labels: Sequence[str], table: Sequence[Sequence[int]]) -> None:
    """Raise :class:`NotAGroup` unless (labels, table) is a finite group."""
    n = len(labels)
    if len(set(labels)) != n:
        raise NotAGroup("duplicate element labels")
    if len(table) != n or any(len(row) != n for row in table):
        raise NotAGroup("multiplication table is not n-by-n")
    for row in table:
        for v in row:
            if not (0 <= v < n):
                raise NotAGroup("table entry out of range (not closed)")
    identity = _find_identity(table)
    _find_inverses(table, identity)
    for i in range(n):
        for j in range(n):
            ij = table[i][j]
            for k in range(n):
                if table[ij][k] != table[i][table[j][k]]:
                    raise NotAGroup(
                        f"associativity fails at ({labels[i]}, {labels[j]}, {labels[k]})"
                    )


# --- builders ----------------------------------------------------------------


def cyclic_group(n: int) -> GroupTable:
    """Z_n with labels ``g0..g{n-1}`` (g0 = identity)."""
    if n < 1:
        raise NotAGroup("cyclic group order must be >= 1")
    labels = [f"g{i}" for i in range(n)]
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return GroupTable(labels, table)


def product_group(a: GroupTable, b: GroupTable) -> GroupTable:
    """Direct product with labels ``"x|y"`` and row-major element order."""
    labels = [f"{la}|{lb}" for la in a.labels for lb in b.labels]
    nb = b.order
    table = [
        [a.table[ia][ja] * nb + b.table[ib][jb] for ja in range(a.order) for jb in range(nb)]
        for ia in range(a.order)
        for ib in range(nb)
    ]
    return GroupTable(labels, table)


def cyclic_product(ns: Sequence[int]) -> GroupTable:
    """Direct product of cyclic groups Z_{ns[0]} x Z_{ns[1]} x ..."""
    if not ns:
        raise NotAGroup("empty cyclic product")
    g = cyclic_group(ns[0])
    for n in ns[1:]:
        g = product_group(g, cyclic_group(n))
    return g


def symmetric_group(n: int) -> GroupTable:
    """S_n on {0..n-1}; elements are permutation tuples in lexicographic
    order, labeled by their one-line notation, composed left-then-right as
    functions acting on the left: (pq)(x) = p(q(x))."""
    perms: List[Tuple[int, ...]] = list(permutations(range(n)))
    index: Dict[Tuple[int, ...], int] = {p: i for i, p in enumerate(perms)}
    labels = ["".join(str(x) for x in p) for p in perms]
    table = [
        [index[tuple(p[q[x]] for x in range(n))] for q in perms]
        for p in perms
    ]
    return GroupTable(labels, table)


def group_from_table(labels: Sequence[str], table: Sequence[Sequence[int]]) -> GroupTable:
    return GroupTable(list(labels), [list(row) for row in table])
