"""
Equitable partitions, exact quotient matrices and spectral necessary conditions.

Every rank, nullity and determinant here is exact: fraction-free elimination
over Python integers. Floating point appears only in the human-readable
character sums of abelian_spectrum_report, and is cross-checked against the
exact nullity.
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from .cayley import CayleyGraph, ConnectionSet, adjacency_matrix, build_cayley, make_connection_set
from .codes import Verdict, verify_tpc
from .errors import (
    ConnectionSetNotConjugationClosed,
    InternalInvariantViolated,
    NotAbelian,
    NotACode,
    NotAPartition,
    NotEquitable,
)
from .groups import (
    NORMAL_SUBGROUP_ORDER_LIMIT,
    GroupPartition,
    GroupTable,
    VertexSet,
    conjugacy_classes,
    cyclic_subgroups,
    enumerate_normal_subgroups,
    left_cosets,
)
from .search import tpc_possible_by_counting

NUMERIC_TOLERANCE = 1e-9
MAX_NUMERIC_ORDER = 10000


class Conclusion(str, Enum):
    NO_OBSTRUCTION = "no-obstruction"
    TPC_IMPOSSIBLE = "TPC-impossible"
    STRUCTURAL_CONSTRAINT = "structural-constraint"


@dataclass
class EliminationSummary:
    rank: int
    nullity: int
    det: Optional[int] = None


def exact_eliminate(matrix: Union[Sequence[Sequence[int]], np.ndarray]) -> EliminationSummary:
    """Rank, nullity and (for square input) determinant by Bareiss elimination.

    Rows are swapped to find nonzero pivots and columns without a pivot are
    skipped, so every division is exact.

    Args:
        matrix: Integer matrix

    Returns:
        EliminationSummary with nullity = columns - rank
    """
    a = np.array([[int(x) for x in row] for row in matrix], dtype=object)
    if a.size == 0:
        rows = len(matrix)
        cols = a.shape[1] if a.ndim == 2 else 0
        return EliminationSummary(rank=0, nullity=cols, det=1 if rows == cols == 0 else None)
    rows, cols = a.shape
    prev = 1
    sign = 1
    rank = 0
    for col in range(cols):
        if rank == rows:
            break
        nonzero = [i for i in range(rank, rows) if a[i, col] != 0]
        if not nonzero:
            continue
        pivot = nonzero[0]
        if pivot != rank:
            a[[rank, pivot]] = a[[pivot, rank]]
            sign = -sign
        p = a[rank, col]
        if rank + 1 < rows:
            below = a[rank + 1:, col]
            a[rank + 1:, col + 1:] = (a[rank + 1:, col + 1:] * p - np.outer(below, a[rank, col + 1:])) // prev
            a[rank + 1:, col] = 0
        prev = p
        rank += 1

    det = None
    if rows == cols:
        det = sign * int(a[rows - 1, cols - 1]) if rank == rows else 0
    return EliminationSummary(rank=rank, nullity=cols - rank, det=det)


@dataclass(frozen=True)
class QuotientMatrix:
    """Quotient matrix of an equitable partition.

    Attributes:
        entries: entries[i][j] is the number of neighbours a vertex of part i has in part j
        partition: The equitable partition
        part_sizes: Sizes of the parts
    """

    entries: Tuple[Tuple[int, ...], ...]
    partition: GroupPartition
    part_sizes: Tuple[int, ...]

    def __len__(self) -> int:
        return len(self.entries)

    def to_list(self) -> List[List[int]]:
        return [list(row) for row in self.entries]

    def to_numpy(self) -> np.ndarray:
        return np.array(self.entries, dtype=np.int64)

    def multiply(self, vector: Sequence[Fraction]) -> List[Fraction]:
        return [sum((b * k for b, k in zip(row, vector)), Fraction(0)) for row in self.entries]


def trivial_partition(n: int) -> GroupPartition:
    """The partition into singletons, whose quotient matrix is the adjacency matrix."""
    return GroupPartition.singletons(n)


def quotient_matrix(graph: CayleyGraph, partition: GroupPartition) -> QuotientMatrix:
    """Quotient matrix of ``partition``.

    Raises:
        NotAPartition: the parts do not partition the vertex set
        NotEquitable: two vertices of one part see different counts in some part
    """
    n = graph.order
    if len(partition.part_of) != n or any(p.n != n for p in partition.parts):
        raise NotAPartition(f"partition is over {len(partition.part_of)} elements, graph has {n} vertices")
    part_bits = [p.bits for p in partition.parts]
    entries = []
    for i, part in enumerate(partition.parts):
        first = None
        counts = None
        for u in part:
            row = graph.adj[u]
            current = [(row & bits).bit_count() for bits in part_bits]
            if counts is None:
                first, counts = u, current
            elif current != counts:
                j = next(j for j, (a, b) in enumerate(zip(counts, current)) if a != b)
                raise NotEquitable(
                    f"vertices {first} and {u} of part {i} have {counts[j]} and {current[j]} neighbours in part {j}",
                    witness={"part": i, "vertices": [first, u], "target_part": j, "counts": [counts[j], current[j]]},
                )
        entries.append(tuple(counts or [0] * len(part_bits)))

    sizes = tuple(p.size for p in partition.parts)
    for i, row in enumerate(entries):
        if sum(row) != graph.degree:
            raise InternalInvariantViolated(f"quotient row {i} sums to {sum(row)}, not {graph.degree}")
        for j, b in enumerate(row):
            if sizes[i] * b != sizes[j] * entries[j][i]:
                raise InternalInvariantViolated(f"edge counts between parts {i} and {j} disagree")
    return QuotientMatrix(entries=tuple(entries), partition=partition, part_sizes=sizes)


@dataclass(frozen=True)
class RationalVector:
    values: Tuple[Fraction, ...]

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i: int) -> Fraction:
        return self.values[i]

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.values)

    def to_strings(self) -> List[str]:
        return [str(v) for v in self.values]


def check_equitable_identity(graph: CayleyGraph, partition: GroupPartition, code: VertexSet) -> Tuple[Verdict, RationalVector]:
    """Check the equitable-partition identity for a TPC C.

    With k_i = |V_i n C| / |V_i| - 1/d, the quotient matrix annihilates k.

    Returns:
        Verdict and the exact vector k
    """
    first = verify_tpc(graph, code)
    if not first.ok:
        raise NotACode("the equitable-partition identity needs a total perfect code", witness=first.witness)
    quotient = quotient_matrix(graph, partition)
    d = graph.degree
    meets = [(part & code).size for part in partition.parts]
    k = RationalVector(tuple(Fraction(m, size) - Fraction(1, d) for m, size in zip(meets, quotient.part_sizes)))
    image = quotient.multiply(k.values)
    details = {
        "k": k.to_strings(),
        "intersections": meets,
        "d_divides_all_parts": all(size % d == 0 for size in quotient.part_sizes),
    }
    bad = next((i for i, v in enumerate(image) if v != 0), None)
    if bad is not None:
        return Verdict(ok=False, witness={"row": bad, "value": str(image[bad])}, details=details), k
    return Verdict(ok=True, details=details), k


@dataclass
class NecessityReport:
    """Outcome of one necessary-condition test.

    Attributes:
        condition: Name of the test
        holds: False only when the necessary condition provably fails
        quantities: Computed nullities, determinants and bounds
        conclusion: What the test says about the existence of a TPC
    """

    condition: str
    holds: bool
    quantities: Dict[str, Any] = field(default_factory=dict)
    conclusion: Conclusion = Conclusion.NO_OBSTRUCTION

    def __post_init__(self):
        if (self.conclusion == Conclusion.TPC_IMPOSSIBLE) == self.holds:
            raise InternalInvariantViolated(
                f"{self.condition}: conclusion {self.conclusion.value} contradicts holds={self.holds}"
            )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "condition": self.condition,
            "holds": self.holds,
            "quantities": self.quantities,
            "conclusion": self.conclusion.value,
        }


def _impossible_unless(holds: bool) -> Conclusion:
    return Conclusion.NO_OBSTRUCTION if holds else Conclusion.TPC_IMPOSSIBLE


def adjacency_nullity(graph: CayleyGraph) -> int:
    return exact_eliminate(adjacency_matrix(graph).tolist()).nullity


def _conjugation_closed(group: GroupTable, s: Union[VertexSet, ConnectionSet]) -> ConnectionSet:
    conn = s if isinstance(s, ConnectionSet) else make_connection_set(group, s)
    if not conn.conjugation_closed:
        raise ConnectionSetNotConjugationClosed(
            f"the connection set is not a union of conjugacy classes of {group.label}"
        )
    return conn


def divisibility_report(graph: CayleyGraph) -> NecessityReport:
    """d >= 1, d divides |V| and |V|/d is even."""
    holds = tpc_possible_by_counting(graph)
    return NecessityReport(
        condition="divisibility",
        holds=holds,
        quantities={"order": graph.order, "degree": graph.degree},
        conclusion=_impossible_unless(holds),
    )


def zero_eigenvalue_report(graph: CayleyGraph) -> NecessityReport:
    """For d >= 2 a TPC gives a nonzero vector in the kernel of A."""
    nullity = adjacency_nullity(graph)
    holds = graph.degree < 2 or nullity > 0
    return NecessityReport(
        condition="zero-eigenvalue",
        holds=holds,
        quantities={"nullity_adjacency": nullity, "degree": graph.degree},
        conclusion=_impossible_unless(holds),
    )


def kernel_bounds_report(group: GroupTable, s: Union[VertexSet, ConnectionSet]) -> NecessityReport:
    """Kernel bounds for a conjugation-closed S made of s classes.

    A TPC forces nullity(A) >= |S| - 1 and, for the conjugacy partition,
    nullity(A_pi) >= s.
    """
    conn = _conjugation_closed(group, s)
    graph = build_cayley(group, conn)
    nullity = adjacency_nullity(graph)
    quotient = quotient_matrix(graph, conjugacy_classes(group))
    quotient_nullity = exact_eliminate(quotient.to_list()).nullity
    bound_a = conn.size - 1
    holds = nullity >= bound_a and quotient_nullity >= conn.class_count
    return NecessityReport(
        condition="kernel-bounds",
        holds=holds,
        quantities={
            "nullity_adjacency": nullity,
            "bound_adjacency": bound_a,
            "nullity_quotient": quotient_nullity,
            "classes": conn.class_count,
        },
        conclusion=_impossible_unless(holds),
    )


def coset_test_report(group: GroupTable, s: Union[VertexSet, ConnectionSet], subgroup: VertexSet) -> NecessityReport:
    """Coset test for a subgroup H.

    If the quotient matrix of the left cosets of H is nonsingular, every TPC
    meets every left coset in exactly |H|/|S| elements, so |S| must divide |H|.
    """
    conn = _conjugation_closed(group, s)
    cosets = left_cosets(group, subgroup)
    graph = build_cayley(group, conn)
    quotient = quotient_matrix(graph, cosets)
    det = exact_eliminate(quotient.to_list()).det
    quantities: Dict[str, Any] = {
        "subgroup": subgroup.indices(),
        "subgroup_order": subgroup.size,
        "degree": conn.size,
        "det_quotient": det,
    }
    if det == 0:
        return NecessityReport(condition="coset-test", holds=True, quantities=quantities)
    if subgroup.size % conn.size:
        return NecessityReport(
            condition="coset-test", holds=False, quantities=quantities, conclusion=Conclusion.TPC_IMPOSSIBLE
        )
    quantities["per_coset"] = subgroup.size // conn.size
    return NecessityReport(
        condition="coset-test", holds=True, quantities=quantities, conclusion=Conclusion.STRUCTURAL_CONSTRAINT
    )


def _character_sums(group: GroupTable, s: VertexSet) -> Optional[np.ndarray]:
    idx = np.array(s.indices(), dtype=np.int64)
    n = group.order
    if group.kind == "cyclic" and n <= MAX_NUMERIC_ORDER:
        k = np.arange(n)
        return np.exp(2j * np.pi * np.outer(k, idx) / n).sum(axis=1)
    if group.kind == "elem2":
        k = np.arange(n)
        parity = np.bitwise_count(np.bitwise_and.outer(k, idx)) % 2
        return (1 - 2 * parity).sum(axis=1).astype(np.complex128)
    return None


def abelian_spectrum_report(group: GroupTable, s: Union[VertexSet, ConnectionSet]) -> NecessityReport:
    """Multiplicity of the eigenvalue 0 in an abelian Cayley graph, which a TPC forces to be >= |S|."""
    if not group.is_abelian:
        raise NotAbelian(f"{group.label} is not abelian")
    conn = s if isinstance(s, ConnectionSet) else make_connection_set(group, s)
    graph = build_cayley(group, conn)
    multiplicity = adjacency_nullity(graph)
    quantities: Dict[str, Any] = {"multiplicity_zero": multiplicity, "degree": conn.size}
    sums = _character_sums(group, conn.set)
    if sums is not None:
        vanishing = np.flatnonzero(np.abs(sums) < NUMERIC_TOLERANCE).tolist()
        if len(vanishing) != multiplicity:
            raise InternalInvariantViolated(
                f"{len(vanishing)} vanishing character sums but exact multiplicity {multiplicity}"
            )
        quantities["vanishing_characters"] = vanishing
    holds = multiplicity >= conn.size
    return NecessityReport(
        condition="abelian-spectrum",
        holds=holds,
        quantities=quantities,
        conclusion=_impossible_unless(holds),
    )


def candidate_subgroups(group: GroupTable) -> List[VertexSet]:
    """Normal and cyclic subgroups, deduplicated, sorted by size then bitset value."""
    found = {h.bits for h in enumerate_normal_subgroups(group)}
    found.update(h.bits for h in cyclic_subgroups(group))
    return sorted((VertexSet(bits, group.order) for bits in found), key=lambda h: (h.size, h.bits))


def necessity_reports(
    group: GroupTable,
    s: Union[VertexSet, ConnectionSet],
    subgroups: Optional[Sequence[VertexSet]] = None,
) -> List[NecessityReport]:
    """Every applicable necessary-condition test for Cay(G, S).

    Args:
        group: The group G
        s: The connection set
        subgroups: Subgroups for the coset test; defaults to the normal and
            cyclic subgroups when |G| is small enough

    Returns:
        Reports in a fixed order: divisibility, zero-eigenvalue, kernel-bounds,
        coset-test per subgroup, abelian-spectrum
    """
    conn = s if isinstance(s, ConnectionSet) else make_connection_set(group, s)
    graph = build_cayley(group, conn)
    reports = [divisibility_report(graph), zero_eigenvalue_report(graph)]
    if conn.conjugation_closed:
        reports.append(kernel_bounds_report(group, conn))
        if subgroups is None:
            subgroups = candidate_subgroups(group) if group.order <= NORMAL_SUBGROUP_ORDER_LIMIT else []
        reports.extend(coset_test_report(group, conn, h) for h in subgroups)
    elif subgroups:
        raise ConnectionSetNotConjugationClosed(
            f"the coset test needs a conjugation-closed connection set in {group.label}"
        )
    if group.is_abelian:
        reports.append(abelian_spectrum_report(group, conn))
    return reports
