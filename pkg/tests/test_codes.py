import itertools

import pytest

from tpcodes.codes import (
    Verdict,
    check_abelian_condition,
    check_conjugation_closed_code,
    check_cover_of_complete,
    check_matching_structure,
    check_normal_subgroup_code,
    check_translates,
    check_union_coset_code,
    pseudocover_from_code,
    verify_pseudocover_partition,
    verify_tpc,
)
from tpcodes.errors import (
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
from tpcodes.groups import VertexSet, right_translate


def shifted(code, k, n):
    return VertexSet.from_indices(((x + k) % n for x in code), n)


class TestVerdict:
    def test_failure_needs_witness(self):
        with pytest.raises(InternalInvariantViolated):
            Verdict(ok=False)

    def test_to_dict(self):
        assert Verdict(ok=True).to_dict() == {"ok": True}
        assert Verdict(ok=False, witness={"vertex": 2}).to_dict() == {"ok": False, "witness": {"vertex": 2}}
        assert not Verdict(ok=False, witness={})


class TestVerifyTPC:
    def test_cyclic_codes(self, z18_graph, z18_code, z20_graph, z20_code):
        assert verify_tpc(z18_graph, z18_code).ok
        assert verify_tpc(z20_graph, z20_code).ok

    def test_hypercube_code(self, q4_graph, q4_code):
        assert verify_tpc(q4_graph, q4_code).ok

    def test_missing_element(self, z18_graph):
        verdict = verify_tpc(z18_graph, z18_graph.group.subset([0, 3, 6, 9, 12]))
        assert not verdict.ok
        assert verdict.witness == {"vertex": 6, "neighbors_in_code": 0}

    def test_extra_element(self, z18_graph):
        verdict = verify_tpc(z18_graph, z18_graph.group.subset([0, 1, 3, 6, 9, 12, 15]))
        assert verdict.witness == {"vertex": 0, "neighbors_in_code": 2}

    def test_empty_code(self, z18_graph):
        assert verify_tpc(z18_graph, VertexSet.empty(18)).witness["vertex"] == 0

    def test_wrong_universe(self, z18_graph):
        with pytest.raises(NotACode):
            verify_tpc(z18_graph, VertexSet.from_indices([0], 20))

    def test_every_edge_of_k33(self, k33_graph):
        for u, v in itertools.product([0, 3, 4], [1, 2, 5]):
            assert verify_tpc(k33_graph, k33_graph.group.subset([u, v])).ok

    def test_k2(self, make_cayley):
        graph = make_cayley("cyclic:2", [1])
        assert verify_tpc(graph, VertexSet.full(2)).ok


class TestMatchingStructure:
    def test_code(self, z18_graph, z18_code):
        verdict = check_matching_structure(z18_graph, z18_code)
        assert verdict.ok
        assert verdict.details["matching"] == [[0, 9], [3, 12], [6, 15]]

    def test_odd_size(self, z18_graph):
        verdict = check_matching_structure(z18_graph, z18_graph.group.subset([0, 9, 3]))
        assert verdict.witness["clause"] == "parity"

    def test_not_a_matching(self, z18_graph):
        verdict = check_matching_structure(z18_graph, z18_graph.group.subset([0, 3]))
        assert verdict.witness == {"clause": "matching", "vertex": 0, "neighbors_in_code": 0}

    def test_agrees_with_verification_on_all_subsets(self, make_cayley):
        graph = make_cayley("cyclic:8", [1, 7])
        for bits in range(1 << 8):
            code = VertexSet(bits, 8)
            assert check_matching_structure(graph, code).ok == verify_tpc(graph, code).ok


class TestTranslates:
    def test_abelian(self, z18_graph, z18_code):
        report = check_translates(z18_graph, z18_code)
        assert report.ok
        assert report.right_partition is not None and report.right_partition.ok
        assert sorted(report.translates) == [1, 9, 17]
        assert report.translates[1] == [1, 4, 7, 10, 13, 16]

    def test_not_applicable_without_conjugation_closure(self, make_cayley):
        graph = make_cayley("sym:3", [1, 3, 4])
        code = graph.group.subset([0, 1])
        assert verify_tpc(graph, code).ok
        report = check_translates(graph, code)
        assert report.ok
        assert report.to_dict()["right_translates_partition"] == "not_applicable"

    def test_every_right_translate_is_a_code(self, k33_graph):
        code = k33_graph.group.subset([0, 1])
        for g in k33_graph.group.elements():
            assert verify_tpc(k33_graph, right_translate(k33_graph.group, code, g)).ok

    def test_requires_a_code(self, z18_graph):
        with pytest.raises(NotACode):
            check_translates(z18_graph, z18_graph.group.subset([0, 3]))


class TestConjugationClosedCode:
    def test_cyclic(self, z18_graph, z18_code):
        assert check_conjugation_closed_code(z18_graph.group, z18_graph.conn, z18_code, crosscheck=True).ok

    def test_cardinality(self, z18_graph):
        verdict = check_conjugation_closed_code(z18_graph.group, z18_graph.conn, z18_graph.group.subset([0, 9]))
        assert verdict.witness["condition"] == "cardinality"

    def test_disjointness(self, k33_graph):
        group = k33_graph.group
        verdict = check_conjugation_closed_code(group, k33_graph.conn, group.subset([3, 4]), crosscheck=True)
        assert verdict.witness["condition"] == "disjointness"
        assert not verify_tpc(k33_graph, group.subset([3, 4])).ok

    def test_code_must_be_conjugation_closed(self, k33_graph):
        group = k33_graph.group
        with pytest.raises(CodeNotConjugationClosed) as excinfo:
            check_conjugation_closed_code(group, k33_graph.conn, group.subset([0, 1]))
        assert excinfo.value.witness == {"element": 1, "conjugate": 2}


class TestNormalSubgroupCode:
    def test_z18(self, z18_graph, z18_code):
        verdict = check_normal_subgroup_code(z18_graph.group, z18_graph.conn, z18_code, crosscheck=True)
        assert verdict.ok
        assert verdict.details == {"involution": 9}

    def test_z20(self, z20_graph, z20_code):
        verdict = check_normal_subgroup_code(z20_graph.group, z20_graph.conn, z20_code, crosscheck=True)
        assert verdict.details == {"involution": 10}

    def test_index(self, z18_graph):
        evens = z18_graph.group.subset(range(0, 18, 2))
        verdict = check_normal_subgroup_code(z18_graph.group, z18_graph.conn, evens, crosscheck=True)
        assert verdict.witness == {"condition": "index", "index": 2, "degree": 3}

    def test_square_intersection(self, make_cayley):
        graph = make_cayley("cyclic:8", [1, 7])
        subgroup = graph.group.subset([0, 2, 4, 6])
        verdict = check_normal_subgroup_code(graph.group, graph.conn, subgroup, crosscheck=True)
        assert verdict.witness == {"condition": "square_intersection", "element": 2}

    def test_requires_normal(self, k33_graph):
        group = k33_graph.group
        with pytest.raises(NotNormal):
            check_normal_subgroup_code(group, k33_graph.conn, group.subset([0, 1]))


class TestUnionCosetCode:
    def test_subgroup_union(self, z18_graph):
        group = z18_graph.group
        verdict = check_union_coset_code(group, z18_graph.conn, group.subset([0, 6, 12]), 9, crosscheck=True)
        assert verdict.ok
        assert verdict.details["code"] == [0, 3, 6, 9, 12, 15]

    def test_non_subgroup_union(self, z18_graph):
        group = z18_graph.group
        verdict = check_union_coset_code(group, z18_graph.conn, group.subset([0, 6, 12]), 1, crosscheck=True)
        assert verdict.ok
        code = VertexSet.from_indices(verdict.details["code"], 18)
        assert code.indices() == [0, 1, 6, 7, 12, 13]
        assert verify_tpc(z18_graph, code).ok

    def test_index(self, z18_graph, z18_code):
        verdict = check_union_coset_code(z18_graph.group, z18_graph.conn, z18_code, 1, crosscheck=True)
        assert verdict.witness["condition"] == "index"

    def test_element_in_subgroup(self, z18_graph):
        group = z18_graph.group
        with pytest.raises(ElementInSubgroup):
            check_union_coset_code(group, z18_graph.conn, group.subset([0, 9]), 9)

    def test_element_not_in_connection_set(self, z18_graph):
        group = z18_graph.group
        with pytest.raises(ElementNotInS):
            check_union_coset_code(group, z18_graph.conn, group.subset([0, 6, 12]), 2)


class TestAbelianCondition:
    def test_code(self, z18_graph, z18_code):
        assert check_abelian_condition(z18_graph.group, z18_graph.conn, z18_code, crosscheck=True).ok

    def test_difference_witness(self, z18_graph):
        group = z18_graph.group
        verdict = check_abelian_condition(group, z18_graph.conn, group.subset([0, 3, 6, 9, 12, 16]), crosscheck=True)
        assert verdict.witness == {"condition": "difference_intersection", "element": 2, "pair": [0, 16]}

    def test_cardinality(self, z20_graph):
        group = z20_graph.group
        verdict = check_abelian_condition(group, z20_graph.conn, group.subset([0, 10]))
        assert verdict.witness["condition"] == "cardinality"

    def test_hypercube(self, q4_graph, q4_code):
        assert check_abelian_condition(q4_graph.group, q4_graph.conn, q4_code, crosscheck=True).ok

    def test_requires_abelian(self, k33_graph):
        group = k33_graph.group
        with pytest.raises(NotAbelian):
            check_abelian_condition(group, k33_graph.conn, group.subset([0, 1]))


class TestPseudocovers:
    def test_translates_of_a_code(self, z18_graph, z18_code):
        parts = [z18_code, shifted(z18_code, 1, 18), shifted(z18_code, 17, 18)]
        verdict = verify_pseudocover_partition(z18_graph, parts)
        assert verdict.ok
        assert verdict.details == {"parts": 3, "fibre_size": 6}

    def test_part_that_is_not_a_code(self, z18_graph):
        evens = z18_graph.group.subset(range(0, 18, 2))
        verdict = verify_pseudocover_partition(z18_graph, [evens, evens.complement()])
        assert verdict.witness == {"part": 0, "vertex": 0, "neighbors_in_code": 0}

    def test_not_a_partition(self, z18_graph, z18_code):
        with pytest.raises(NotAPartition):
            verify_pseudocover_partition(z18_graph, [z18_code, shifted(z18_code, 1, 18)])
        with pytest.raises(NotAPartition):
            verify_pseudocover_partition(z18_graph, [z18_code, z18_code.complement(), z18_code])

    def test_empty_edge_set(self, make_cayley):
        graph = make_cayley("cyclic:4", [])
        with pytest.raises(EmptyEdgeSet):
            verify_pseudocover_partition(graph, [VertexSet.full(4)])

    def test_cover_of_complete_graph(self, z18_graph, z18_code):
        codes = [z18_code, shifted(z18_code, 1, 18)]
        verdict = check_cover_of_complete(z18_graph, codes)
        assert verdict.ok
        assert verdict.details == {"codes": 2, "fold": 6}

    def test_cover_members_must_be_codes(self, z18_graph, z18_code):
        with pytest.raises(NotACode):
            check_cover_of_complete(z18_graph, [z18_code, z18_graph.group.subset([1])])
        with pytest.raises(NotAPartition):
            check_cover_of_complete(z18_graph, [z18_code, z18_code])

    def test_pseudocover_from_code(self, z18_graph, z18_code):
        verdict = pseudocover_from_code(z18_graph, z18_code)
        assert verdict.ok
        assert verdict.details["fibres"][0] == [1, 4, 7, 10, 13, 16]

    def test_pseudocover_needs_commuting_translates(self, k33_graph):
        verdict = pseudocover_from_code(k33_graph, k33_graph.group.subset([0, 1]))
        assert not verdict.ok
        assert verdict.witness["g"] == 2
