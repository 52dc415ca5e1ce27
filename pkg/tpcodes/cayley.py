"""
Cayley graphs Cay(G, S) with bit-packed adjacency rows.

x and y are adjacent iff x*y^-1 lies in S, so the neighbourhood of v is Sv.
"""

from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np

from .errors import IdentityInConnectionSet, NotInverseClosed
from .groups import (
    GroupTable,
    VertexSet,
    closure,
    conjugacy_classes,
    cyclic_group,
    direct_product,
    inverse_set,
    iter_bits,
)


@dataclass(frozen=True)
class ConnectionSet:
    """Identity-free, inverse-closed connection set S.

    Attributes:
        set: The elements of S
        classes: Conjugacy classes making up S, empty unless S is conjugation-closed
        conjugation_closed: Whether S is a union of conjugacy classes
    """

    set: VertexSet
    classes: Tuple[VertexSet, ...] = ()
    conjugation_closed: bool = False

    @property
    def size(self) -> int:
        return self.set.size

    @property
    def class_count(self) -> int:
        return len(self.classes)


@dataclass(frozen=True, eq=False)
class CayleyGraph:
    group: GroupTable
    conn: ConnectionSet
    adj: Tuple[int, ...] = field(repr=False)

    @property
    def order(self) -> int:
        return self.group.order

    @property
    def degree(self) -> int:
        return self.conn.size

    @property
    def connection(self) -> VertexSet:
        return self.conn.set

    def neighbors(self, v: int) -> VertexSet:
        return VertexSet(self.adj[v], self.group.order)

    def vertices(self) -> VertexSet:
        return VertexSet.full(self.group.order)


def _class_decomposition(group: GroupTable, subset: VertexSet) -> Tuple[bool, Tuple[VertexSet, ...]]:
    inside = []
    for cls in conjugacy_classes(group).parts:
        if cls.issubset(subset):
            inside.append(cls)
        elif not cls.isdisjoint(subset):
            return False, ()
    return True, tuple(inside)


def make_connection_set(group: GroupTable, subset: VertexSet) -> ConnectionSet:
    """Validate S and record its conjugacy-class decomposition.

    Raises:
        IdentityInConnectionSet: 1 is in S
        NotInverseClosed: S != S^-1, naming the first element whose inverse is missing
    """
    if 0 in subset:
        raise IdentityInConnectionSet(f"the identity lies in the connection set of {group.label}")
    missing = subset - inverse_set(group, subset)
    if missing.bits:
        s = missing.min()
        x = group.inverse(s)
        raise NotInverseClosed(
            f"connection set contains {s} but not its inverse {x}",
            witness={"element": s, "inverse": x},
        )
    closed, classes = _class_decomposition(group, subset)
    return ConnectionSet(set=subset, classes=classes, conjugation_closed=closed)


def close_connection_set(group: GroupTable, seed: VertexSet, under_conjugation: bool = False) -> ConnectionSet:
    """Smallest inverse-closed (and optionally conjugation-closed) superset of ``seed``."""
    if 0 in seed:
        raise IdentityInConnectionSet(f"the identity lies in the connection set of {group.label}")
    classes = conjugacy_classes(group) if under_conjugation else None
    current = seed
    while True:
        grown = current | inverse_set(group, current)
        if classes is not None:
            for x in grown.indices():
                grown = grown | classes.parts[classes.part_of[x]]
        if grown == current:
            return make_connection_set(group, current)
        current = grown


def build_cayley(group: GroupTable, connection) -> CayleyGraph:
    """Build Cay(G, S).

    Args:
        group: The group G
        connection: S as a VertexSet, or an already validated ConnectionSet

    Returns:
        CayleyGraph with adjacency row v equal to Sv
    """
    conn = connection if isinstance(connection, ConnectionSet) else make_connection_set(group, connection)
    n = group.order
    s_idx = conn.set.indices()
    adj: List[int] = []
    if s_idx:
        # column v of mul[S] lists Sv
        for col in group.mul[s_idx].T.tolist():
            row = 0
            for u in col:
                row |= 1 << u
            adj.append(row)
    else:
        adj = [0] * n
    return CayleyGraph(group=group, conn=conn, adj=tuple(adj))


def is_connected(graph: CayleyGraph) -> bool:
    """Breadth-first search from the identity."""
    n = graph.order
    full = (1 << n) - 1
    reached = frontier = 1
    while frontier:
        grown = 0
        for v in iter_bits(frontier):
            grown |= graph.adj[v]
        frontier = grown & ~reached
        reached |= grown
    return reached == full


def generates_group(graph: CayleyGraph) -> bool:
    """closure(S) = G, the algebraic form of connectivity."""
    if not graph.connection.bits:
        return graph.order == 1
    return closure(graph.group, graph.connection).size == graph.order


def adjacency_matrix(graph: CayleyGraph) -> np.ndarray:
    n = graph.order
    a = np.zeros((n, n), dtype=np.int64)
    s_idx = graph.connection.indices()
    if s_idx:
        a[np.repeat(np.arange(n), len(s_idx)), graph.group.mul[s_idx].T.ravel()] = 1
    return a


def edges(graph: CayleyGraph) -> List[Tuple[int, int]]:
    """Undirected edges (u, v) with u < v, in lexicographic order."""
    out = []
    for u in range(graph.order):
        for v in iter_bits(graph.adj[u] >> (u + 1)):
            out.append((u, u + 1 + v))
    return out


def double_cover(graph: CayleyGraph, twisted: bool = False) -> Tuple[CayleyGraph, Tuple[int, ...]]:
    """A 2-fold cover of ``graph`` on G x Z_2.

    Untwisted uses S x {0}, two disjoint copies of the graph. Twisted uses
    S x {1}, the canonical bipartite double cover. Vertex (x, a) has index
    2x + a, so the fibre over x is {2x, 2x + 1}.

    Returns:
        The covering graph and the projection table x -> x // 2
    """
    cover_group = direct_product(graph.group, cyclic_group(2))
    flip = 1 if twisted else 0
    lifted = VertexSet.from_indices((2 * s + flip for s in graph.connection), cover_group.order)
    cover = build_cayley(cover_group, lifted)
    return cover, tuple(x // 2 for x in range(cover_group.order))


def lift_code(code: VertexSet, cover: CayleyGraph) -> VertexSet:
    """Preimage of ``code`` under the double-cover projection."""
    bits = 0
    for c in code:
        bits |= 0b11 << (2 * c)
    return VertexSet(bits, cover.order)
