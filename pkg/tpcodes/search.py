"""
Exact-cover search for total perfect codes.

Choosing vertex v for the code covers the columns Gamma(v); a TPC is a set
of rows covering every column exactly once. The solver is column-first
backtracking over bitsets with the fewest-candidates column rule.
"""

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Tuple, Union

import numpy as np

from .cayley import CayleyGraph, ConnectionSet, make_connection_set
from .codes import check_normal_subgroup_code, verify_tpc
from .errors import InternalInvariantViolated, SizeGuardExceeded, UsageError
from .groups import GroupTable, VertexSet, enumerate_normal_subgroups, iter_bits, right_translate

SEARCH_MODES = ("first", "all", "count")
MAX_NAIVE_ORDER = 24


@dataclass(frozen=True)
class ExactCoverInstance:
    """Rows and columns are both indexed by vertices.

    Attributes:
        n: Number of vertices
        rows: rows[v] is the column set covered by row v, i.e. Gamma(v)
        col_rows: col_rows[u] is the set of rows covering column u
        conflicts: conflicts[v] is the set of rows sharing a column with row v
    """

    n: int
    rows: Tuple[int, ...]
    col_rows: Tuple[int, ...]
    conflicts: Tuple[int, ...]

    @classmethod
    def from_graph(cls, graph: CayleyGraph) -> "ExactCoverInstance":
        rows = graph.adj
        # adjacency is symmetric, so the rows covering u are Gamma(u)
        col_rows = rows
        conflicts = []
        for r in rows:
            acc = 0
            for u in iter_bits(r):
                acc |= col_rows[u]
            conflicts.append(acc)
        return cls(n=graph.order, rows=tuple(rows), col_rows=tuple(col_rows), conflicts=tuple(conflicts))

    @property
    def all_columns(self) -> int:
        return (1 << self.n) - 1

    def branch(self, open_cols: int, avail: int) -> int:
        """Candidate rows for the open column with fewest candidates, lowest index on ties."""
        best_count, best = None, 0
        for u in iter_bits(open_cols):
            cands = self.col_rows[u] & avail
            count = cands.bit_count()
            if count == 0:
                return 0
            if best_count is None or count < best_count:
                best_count, best = count, cands
                if count == 1:
                    break
        return best

    def choose(self, state: Tuple[int, int, int], row: int) -> Tuple[int, int, int]:
        open_cols, avail, chosen = state
        return open_cols & ~self.rows[row], avail & ~self.conflicts[row], chosen | 1 << row


def iter_solutions(instance: ExactCoverInstance, open_cols: int, avail: int, chosen: int = 0) -> Iterator[int]:
    """Yield exact covers as row bitsets in depth-first order."""
    if not open_cols:
        yield chosen
        return
    first = instance.branch(open_cols, avail)
    if not first:
        return
    stack = [[open_cols, avail, chosen, first]]
    while stack:
        frame = stack[-1]
        cands = frame[3]
        if not cands:
            stack.pop()
            continue
        low = cands & -cands
        frame[3] = cands ^ low
        o, a, c = instance.choose((frame[0], frame[1], frame[2]), low.bit_length() - 1)
        if not o:
            yield c
            continue
        cands = instance.branch(o, a)
        if cands:
            stack.append([o, a, c, cands])


def _collect(instance: ExactCoverInstance, state: Tuple[int, int, int], cap: Optional[int], keep: bool) -> Tuple[List[int], int]:
    found: List[int] = []
    count = 0
    for solution in iter_solutions(instance, *state):
        count += 1
        if keep:
            found.append(solution)
        if cap is not None and count >= cap:
            break
    return found, count


def _collect_branch(args) -> Tuple[List[int], int]:
    instance, state, cap, keep = args
    return _collect(instance, state, cap, keep)


@dataclass
class SearchResult:
    """Outcome of find_tpcs.

    Attributes:
        solutions: Codes found, sorted by bitset value (empty in count mode)
        count: Number of codes found
        exhausted: Whether the whole search tree was explored
        limit_exceeded: Whether more codes exist beyond the requested limit
    """

    solutions: List[VertexSet] = field(default_factory=list)
    count: int = 0
    exhausted: bool = True
    limit_exceeded: bool = False


def tpc_possible_by_counting(graph: CayleyGraph) -> bool:
    """A TPC needs d >= 1, d | |V| and |V|/d even."""
    d, n = graph.degree, graph.order
    return d >= 1 and n % d == 0 and (n // d) % 2 == 0


def _canonical(group: GroupTable, code: VertexSet) -> VertexSet:
    """Lexicographically least right translate Cg, comparing sorted element lists."""
    return min((right_translate(group, code, g) for g in group.elements()), key=lambda t: t.indices())


def find_tpcs(
    graph: CayleyGraph,
    mode: str = "all",
    limit: Optional[int] = None,
    workers: int = 1,
    canonical: bool = False,
) -> SearchResult:
    """Search for total perfect codes.

    Args:
        graph: The Cayley graph
        mode: "first" stops at one code, "all" lists codes, "count" only counts them
        limit: Maximum number of codes to report in all/count mode
        workers: Processes used to explore the first branching level
        canonical: Report one lexicographically least right translate per orbit

    Returns:
        SearchResult, identical for any number of workers
    """
    if mode not in SEARCH_MODES:
        raise UsageError(f"--mode must be one of {', '.join(SEARCH_MODES)}, got '{mode}'")
    if limit is not None and limit < 1:
        raise UsageError(f"--limit must be at least 1, got {limit}")
    if not tpc_possible_by_counting(graph):
        return SearchResult()

    instance = ExactCoverInstance.from_graph(graph)
    cap = 1 if mode == "first" else (None if limit is None else limit + 1)
    keep = mode != "count" or canonical
    root = (instance.all_columns, instance.all_columns, 0)

    if workers > 1:
        cands = instance.branch(root[0], root[1])
        tasks = [(instance, instance.choose(root, r), cap, keep) for r in iter_bits(cands)]
        found: List[int] = []
        count = 0
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for branch_found, branch_count in pool.map(_collect_branch, tasks):
                found.extend(branch_found)
                count += branch_count
        if cap is not None:
            found = found[:cap]
            count = min(count, cap)
    else:
        found, count = _collect(instance, root, cap, keep)

    result = SearchResult(count=count)
    if mode == "first":
        result.exhausted = count == 0
    elif cap is not None and count >= cap:
        result.exhausted = False
        result.limit_exceeded = True
        found = found[:limit]
        result.count = limit

    codes = [VertexSet(bits, graph.order) for bits in found]
    if canonical:
        reps = {_canonical(graph.group, c).bits for c in codes}
        codes = [VertexSet(bits, graph.order) for bits in reps]
        result.count = len(codes)
    codes.sort(key=lambda c: c.bits)
    for code in codes:
        if not verify_tpc(graph, code).ok:
            raise InternalInvariantViolated(f"search returned a non-code {code.indices()}")
    if mode != "count":
        result.solutions = codes
    return result


def find_tpc_partition(graph: CayleyGraph) -> Optional[List[VertexSet]]:
    """Partition the vertices into total perfect codes, or None if impossible.

    Each layer is a code among the remaining vertices that contains the
    lowest remaining vertex; layers are searched depth first.
    """
    if not tpc_possible_by_counting(graph):
        return None
    instance = ExactCoverInstance.from_graph(graph)
    full = instance.all_columns

    def layer(remaining: int) -> Iterator[int]:
        v = (remaining & -remaining).bit_length() - 1
        state = instance.choose((full, remaining, 0), v)
        return iter_solutions(instance, *state)

    parts: List[int] = []
    remaining = [full]
    layers = [layer(full)]
    while layers:
        level = len(layers) - 1
        try:
            code = next(layers[-1])
        except StopIteration:
            layers.pop()
            remaining.pop()
            continue
        parts = parts[:level] + [code]
        rest = remaining[level] & ~code
        if not rest:
            return [VertexSet(bits, graph.order) for bits in parts]
        remaining.append(rest)
        layers.append(layer(rest))
    return None


def find_subgroup_tpcs(group: GroupTable, s: Union[VertexSet, ConnectionSet]) -> List[VertexSet]:
    """Normal subgroups of G that are total perfect codes of Cay(G, S)."""
    conn = s if isinstance(s, ConnectionSet) else make_connection_set(group, s)
    if conn.size == 0:
        return []
    target = group.order // conn.size if group.order % conn.size == 0 else None
    found = []
    for subgroup in enumerate_normal_subgroups(group):
        if subgroup.size != target:
            continue
        if check_normal_subgroup_code(group, conn, subgroup).ok:
            found.append(subgroup)
    return found


def naive_tpcs(graph: CayleyGraph) -> List[VertexSet]:
    """Every subset of the vertex set filtered by the TPC condition, sorted by bitset value."""
    n = graph.order
    if n > MAX_NAIVE_ORDER:
        raise SizeGuardExceeded(f"naive enumeration needs at most {MAX_NAIVE_ORDER} vertices, got {n}")
    candidates = np.arange(1 << n, dtype=np.int64)
    for row in graph.adj:
        keep = np.bitwise_count(candidates & row) == 1
        candidates = candidates[keep]
    codes = [VertexSet(int(bits), n) for bits in candidates.tolist()]
    return [c for c in codes if verify_tpc(graph, c).ok]
