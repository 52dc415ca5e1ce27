"""
Verification of total perfect codes and their algebraic characterizations.

A total perfect code (TPC) C is a vertex set such that every vertex,
members of C included, has exactly one neighbour in C.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Union

from .cayley import CayleyGraph, ConnectionSet, build_cayley, make_connection_set
from .errors import (
    CodeNotConjugationClosed,
    ElementInSubgroup,
    ElementNotInS,
    EmptyEdgeSet,
    InternalInvariantViolated,
    NotAbelian,
    NotACode,
    NotAPartition,
    NotNormal,
)
from .groups import (
    GroupTable,
    VertexSet,
    conjugacy_classes,
    inverse_set,
    is_normal,
    is_subgroup,
    left_translate,
    product_set,
    right_translate,
)


@dataclass
class Verdict:
    """Outcome of a check.

    Attributes:
        ok: Whether the checked property holds
        witness: Why it fails, e.g. {"vertex": 6, "neighbors_in_code": 0}
        details: Extra facts established along the way
    """

    ok: bool
    witness: Optional[Dict[str, Any]] = None
    details: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if not self.ok and self.witness is None:
            raise InternalInvariantViolated("a failing verdict needs a witness")

    def __bool__(self) -> bool:
        return self.ok

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"ok": self.ok}
        if self.witness is not None:
            data["witness"] = self.witness
        if self.details:
            data["details"] = self.details
        return data


def _fail(**witness) -> Verdict:
    return Verdict(ok=False, witness=witness)


def _connection(group: GroupTable, s: Union[VertexSet, ConnectionSet]) -> ConnectionSet:
    return s if isinstance(s, ConnectionSet) else make_connection_set(group, s)


def _require_vertex_set(graph: CayleyGraph, code: VertexSet) -> None:
    if code.n != graph.order:
        raise NotACode(f"code lives in a set of size {code.n}, the graph has {graph.order} vertices")


def _crosscheck(verdict: Verdict, group: GroupTable, conn: ConnectionSet, code: VertexSet, name: str) -> None:
    direct = verify_tpc(build_cayley(group, conn), code)
    if direct.ok != verdict.ok:
        raise InternalInvariantViolated(
            f"{name} says {verdict.ok} but direct verification says {direct.ok}",
            witness={"code": code.indices()},
        )


def verify_tpc(graph: CayleyGraph, code: VertexSet) -> Verdict:
    """Check that every vertex has exactly one neighbour in ``code``.

    Args:
        graph: The Cayley graph
        code: Candidate code

    Returns:
        Verdict whose witness is the first vertex with 0 or >= 2 neighbours in the code
    """
    _require_vertex_set(graph, code)
    bits = code.bits
    for v, row in enumerate(graph.adj):
        count = (row & bits).bit_count()
        if count != 1:
            return _fail(vertex=v, neighbors_in_code=count)
    if code.size * graph.degree != graph.order:
        raise InternalInvariantViolated(
            f"verified code of size {code.size} breaks |C| * d = |V| with d = {graph.degree}"
        )
    return Verdict(ok=True)


def _partition_verdict(sets: Sequence[int], n: int) -> Verdict:
    seen = 0
    for i, bits in enumerate(sets):
        overlap = bits & seen
        if overlap:
            return _fail(index=i, vertex=(overlap & -overlap).bit_length() - 1, reason="covered twice")
        seen |= bits
    missing = ((1 << n) - 1) & ~seen
    if missing:
        return _fail(vertex=(missing & -missing).bit_length() - 1, reason="not covered")
    return Verdict(ok=True)


def check_matching_structure(graph: CayleyGraph, code: VertexSet) -> Verdict:
    """Check that C induces a matching and {Gamma(v) \\ C : v in C} partitions V \\ C.

    Both clauses together are equivalent to C being a TPC.
    """
    _require_vertex_set(graph, code)
    if code.size % 2:
        return _fail(clause="parity", size=code.size)
    bits = code.bits
    pairs = []
    for v in code:
        inside = graph.adj[v] & bits
        count = inside.bit_count()
        if count != 1:
            return _fail(clause="matching", vertex=v, neighbors_in_code=count)
        u = inside.bit_length() - 1
        if v < u:
            pairs.append([v, u])
    outside = [graph.adj[v] & ~bits for v in code]
    covered = _partition_verdict(outside + [bits], graph.order)
    if not covered.ok:
        return _fail(clause="partition", **covered.witness)
    return Verdict(ok=True, details={"matching": pairs})


@dataclass
class TranslateReport:
    """Clause-by-clause results for the translates of a TPC.

    right_partition is None when S is not conjugation-closed.
    """

    right_translates_are_codes: Verdict
    left_translates_partition: Verdict
    right_partition: Optional[Verdict]
    translates: Dict[int, List[int]] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        clauses = [self.right_translates_are_codes, self.left_translates_partition]
        if self.right_partition is not None:
            clauses.append(self.right_partition)
        return all(c.ok for c in clauses)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "ok": self.ok,
            "right_translates_are_codes": self.right_translates_are_codes.to_dict(),
            "left_translates_partition": self.left_translates_partition.to_dict(),
            "right_translates_partition": (
                "not_applicable" if self.right_partition is None else self.right_partition.to_dict()
            ),
            "translates": {str(g): members for g, members in self.translates.items()},
        }


def check_translates(graph: CayleyGraph, code: VertexSet) -> TranslateReport:
    """Check the translate properties of a TPC C.

    For g in S: every Cg is a TPC; the sets gC partition G; and when S is
    conjugation-closed the sets Cg partition G too.

    Raises:
        NotACode: ``code`` is not a TPC
    """
    first = verify_tpc(graph, code)
    if not first.ok:
        raise NotACode("translate checks need a total perfect code", witness=first.witness)
    group, n = graph.group, graph.order
    conn = graph.connection

    right = {g: right_translate(group, code, g) for g in conn}
    codes_ok = Verdict(ok=True)
    for g, translate in right.items():
        verdict = verify_tpc(graph, translate)
        if not verdict.ok:
            codes_ok = _fail(g=g, **verdict.witness)
            break

    left = _partition_verdict([left_translate(group, g, code).bits for g in conn], n)
    if not left.ok and "index" in left.witness:
        left.witness["g"] = conn.indices()[left.witness.pop("index")]

    right_part = None
    if graph.conn.conjugation_closed:
        right_part = _partition_verdict([t.bits for t in right.values()], n)
        if not right_part.ok and "index" in right_part.witness:
            right_part.witness["g"] = conn.indices()[right_part.witness.pop("index")]

    return TranslateReport(
        right_translates_are_codes=codes_ok,
        left_translates_partition=left,
        right_partition=right_part,
        translates={g: t.indices() for g, t in right.items()},
    )


def _first_outside_class(group: GroupTable, code: VertexSet) -> Optional[Dict[str, int]]:
    classes = conjugacy_classes(group)
    for x in code:
        missing = classes.parts[classes.part_of[x]] - code
        if missing.bits:
            return {"element": x, "conjugate": missing.min()}
    return None


def check_conjugation_closed_code(
    group: GroupTable,
    s: Union[VertexSet, ConnectionSet],
    code: VertexSet,
    crosscheck: bool = False,
) -> Verdict:
    """Decide whether a conjugation-closed C is a TPC of Cay(G, S) algebraically.

    C is a TPC iff |C||S| = |G| and C is disjoint from (S^2 \\ {1})C.

    Raises:
        CodeNotConjugationClosed: C is not a union of conjugacy classes
    """
    conn = _connection(group, s)
    witness = _first_outside_class(group, code)
    if witness is not None:
        raise CodeNotConjugationClosed(
            f"code contains {witness['element']} but not its conjugate {witness['conjugate']}",
            witness=witness,
        )
    verdict = _pseudo_conditions(group, conn.set, code)
    if crosscheck:
        _crosscheck(verdict, group, conn, code, "the cardinality/disjointness test")
    return verdict


def _pseudo_conditions(group: GroupTable, s: VertexSet, code: VertexSet) -> Verdict:
    if code.size * s.size != group.order:
        return _fail(condition="cardinality", code_size=code.size, degree=s.size, order=group.order)
    squares = product_set(group, s, s) - VertexSet(1, group.order)
    clash = product_set(group, squares, code) & code
    if clash.bits:
        return _fail(condition="disjointness", element=clash.min())
    return Verdict(ok=True)


def _require_normal(group: GroupTable, subgroup: VertexSet) -> None:
    if not is_normal(group, subgroup):
        raise NotNormal(f"{subgroup.indices()} is not a normal subgroup of {group.label}")


def check_normal_subgroup_code(
    group: GroupTable,
    s: Union[VertexSet, ConnectionSet],
    subgroup: VertexSet,
    crosscheck: bool = False,
) -> Verdict:
    """Decide whether a normal subgroup N is a TPC: |G:N| = |S| and N meets S^2 only in 1.

    On success the details name the unique element of N and S, which is an involution.
    """
    conn = _connection(group, s)
    _require_normal(group, subgroup)
    n, size = group.order, subgroup.size
    if n // size != conn.size:
        verdict = _fail(condition="index", index=n // size, degree=conn.size)
    else:
        squares = product_set(group, conn.set, conn.set)
        extra = (subgroup & squares) - VertexSet(1, n)
        if extra.bits:
            verdict = _fail(condition="square_intersection", element=extra.min())
        else:
            meet = subgroup & conn.set
            g = meet.min() if meet.size == 1 else None
            if g is None or group.multiply(g, g) != 0:
                raise InternalInvariantViolated(
                    f"normal subgroup code meets S in {meet.indices()}, expected one involution"
                )
            verdict = Verdict(ok=True, details={"involution": g})
    if crosscheck:
        _crosscheck(verdict, group, conn, subgroup, "the normal subgroup test")
    return verdict


def check_union_coset_code(
    group: GroupTable,
    s: Union[VertexSet, ConnectionSet],
    subgroup: VertexSet,
    g: int,
    crosscheck: bool = False,
) -> Verdict:
    """Decide whether N u gN is a TPC for a normal N and g in S \\ N.

    That holds iff |G:N| = 2|S|, N meets S^2 only in 1, N misses S, and both
    gN and g^-1 N miss S^2.
    """
    conn = _connection(group, s)
    _require_normal(group, subgroup)
    if g in subgroup:
        raise ElementInSubgroup(f"{g} lies in the subgroup", witness={"g": g})
    if g not in conn.set:
        raise ElementNotInS(f"{g} is not in the connection set", witness={"g": g})
    n = group.order
    identity = VertexSet(1, n)
    squares = product_set(group, conn.set, conn.set)
    coset = left_translate(group, g, subgroup)
    inverse_coset = left_translate(group, group.inverse(g), subgroup)
    code = subgroup | coset

    if n // subgroup.size != 2 * conn.size:
        verdict = _fail(condition="index", index=n // subgroup.size, degree=conn.size)
    else:
        checks = [
            ("square_intersection", (subgroup & squares) - identity),
            ("connection_intersection", subgroup & conn.set),
            ("coset_square_intersection", coset & squares),
            ("inverse_coset_square_intersection", inverse_coset & squares),
        ]
        verdict = Verdict(ok=True, details={"code": code.indices()})
        for condition, bad in checks:
            if bad.bits:
                verdict = _fail(condition=condition, element=bad.min())
                break
    if crosscheck:
        _crosscheck(verdict, group, conn, code, "the union-of-cosets test")
    return verdict


def check_abelian_condition(
    group: GroupTable,
    s: Union[VertexSet, ConnectionSet],
    code: VertexSet,
    crosscheck: bool = False,
) -> Verdict:
    """Decide the TPC property in an abelian group: |C||S| = |G| and (C - C) meets S + S only in 0."""
    if not group.is_abelian:
        raise NotAbelian(f"{group.label} is not abelian")
    conn = _connection(group, s)
    n = group.order
    if code.size * conn.size != n:
        verdict = _fail(condition="cardinality", code_size=code.size, degree=conn.size, order=n)
    else:
        sums = product_set(group, conn.set, conn.set)
        if is_subgroup(group, code):
            differences = code
        else:
            differences = product_set(group, code, inverse_set(group, code))
        clash = (differences & sums) - VertexSet(1, n)
        if clash.bits:
            x = clash.min()
            pair = next(
                [c, d] for c in code for d in code if group.multiply(c, group.inverse(d)) == x
            )
            verdict = _fail(condition="difference_intersection", element=x, pair=pair)
        else:
            verdict = Verdict(ok=True)
    if crosscheck:
        _crosscheck(verdict, group, conn, code, "the abelian difference test")
    return verdict


def _require_partition(graph: CayleyGraph, parts: Sequence[VertexSet]) -> None:
    for i, part in enumerate(parts):
        if part.n != graph.order:
            raise NotAPartition(f"part {i} lives in a set of size {part.n}", witness={"index": i})
    verdict = _partition_verdict([p.bits for p in parts], graph.order)
    if not verdict.ok:
        raise NotAPartition(f"parts do not partition the vertex set: {verdict.witness}", witness=verdict.witness)


def verify_pseudocover_partition(graph: CayleyGraph, parts: Sequence[VertexSet]) -> Verdict:
    """Check that every part of a vertex partition is a TPC.

    Such a partition makes the graph a pseudocover of the complete graph on
    the parts: each part carries a perfect matching and every vertex has
    exactly one neighbour in every other part.
    """
    _require_partition(graph, parts)
    if graph.degree == 0:
        raise EmptyEdgeSet(f"Cay({graph.group.label}, {{}}) has no edges")
    for i, part in enumerate(parts):
        verdict = verify_tpc(graph, part)
        if not verdict.ok:
            return _fail(part=i, **verdict.witness)

    bits = [p.bits for p in parts]
    for i, part in enumerate(parts):
        for v in part:
            row = graph.adj[v]
            for j, other in enumerate(bits):
                if (row & other).bit_count() != 1:
                    raise InternalInvariantViolated(
                        f"vertex {v} of part {i} has {(row & other).bit_count()} neighbours in part {j}"
                    )
    return Verdict(
        ok=True,
        details={"parts": len(parts), "fibre_size": parts[0].size if parts else 0},
    )


def check_cover_of_complete(graph: CayleyGraph, codes: Sequence[VertexSet]) -> Verdict:
    """Check that disjoint TPCs C_1..C_k induce a c-fold cover of K_k.

    Edges inside a code are ignored; every vertex of C_i must have exactly one
    neighbour in each C_j, j != i, and all codes have size c = |V| / d.
    """
    for i, code in enumerate(codes):
        _require_vertex_set(graph, code)
        verdict = verify_tpc(graph, code)
        if not verdict.ok:
            raise NotACode(f"member {i} is not a total perfect code", witness={"index": i, **verdict.witness})
    seen = 0
    for i, code in enumerate(codes):
        if code.bits & seen:
            raise NotAPartition(f"member {i} overlaps an earlier member", witness={"index": i})
        seen |= code.bits

    fold = graph.order // graph.degree if graph.degree else 0
    for i, code in enumerate(codes):
        if code.size != fold:
            return _fail(index=i, size=code.size, expected=fold)
        for v in code:
            for j, other in enumerate(codes):
                if j != i and (graph.adj[v] & other.bits).bit_count() != 1:
                    return _fail(index=i, vertex=v, other=j)
    return Verdict(ok=True, details={"codes": len(codes), "fold": fold})


def pseudocover_from_code(graph: CayleyGraph, code: VertexSet) -> Verdict:
    """Build the partition {gC : g in S} of a TPC with gC = Cg for all g in S."""
    first = verify_tpc(graph, code)
    if not first.ok:
        raise NotACode("pseudocover construction needs a total perfect code", witness=first.witness)
    group = graph.group
    parts = []
    for g in graph.connection:
        left = left_translate(group, g, code)
        if left != right_translate(group, code, g):
            return _fail(g=g, reason="left and right translates differ")
        parts.append(left)
    verdict = verify_pseudocover_partition(graph, parts)
    if verdict.ok:
        verdict.details["fibres"] = [p.indices() for p in parts]
    return verdict
