import json

import numpy as np
import pytest

from tpcodes.errors import GroupSpecError, NotASubgroup, SizeGuardExceeded
from tpcodes.groups import (
    MAX_ELEM2_RANK,
    MAX_GROUP_ORDER,
    GroupPartition,
    VertexSet,
    check_group_axioms,
    closure,
    conjugacy_classes,
    cyclic_subgroups,
    element_order,
    enumerate_normal_subgroups,
    group_to_json,
    inverse_set,
    is_normal,
    is_subgroup,
    iter_bits,
    left_cosets,
    left_translate,
    load_group_json,
    make_group,
    product_set,
    right_translate,
)

# Latin square with identity 0 and x*x = 0, but (1*2)*4 != 1*(2*4)
LOOP_OF_ORDER_5 = [
    [0, 1, 2, 3, 4],
    [1, 0, 3, 4, 2],
    [2, 4, 0, 1, 3],
    [3, 2, 4, 0, 1],
    [4, 3, 1, 2, 0],
]


def test_iter_bits():
    assert list(iter_bits(0)) == []
    assert list(iter_bits(0b101001)) == [0, 3, 5]


class TestVertexSet:
    def test_from_indices(self):
        s = VertexSet.from_indices([5, 0, 3, 3], 8)
        assert s.bits == 0b101001
        assert len(s) == 3
        assert list(s) == [0, 3, 5]
        assert 3 in s and 4 not in s and 99 not in s

    def test_membership_accepts_numpy_integers(self):
        group = make_group("cyclic:6")
        s = group.subset([0, 2, 4])
        assert group.mul[1, 1] in s
        assert np.int64(4) in s and np.int32(3) not in s
        assert "2" not in s and 2.0 not in s

    def test_set_algebra(self):
        a = VertexSet.from_indices([0, 1, 2], 6)
        b = VertexSet.from_indices([2, 3], 6)
        assert (a | b).indices() == [0, 1, 2, 3]
        assert (a & b).indices() == [2]
        assert (a - b).indices() == [0, 1]
        assert a.complement().indices() == [3, 4, 5]
        assert (a & b).issubset(a)
        assert (a - b).isdisjoint(b)
        assert a.min() == 0 and b.min() == 2

    def test_mask(self):
        mask = VertexSet.from_indices([1, 3], 4).mask()
        assert mask.dtype == bool
        assert mask.tolist() == [False, True, False, True]

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            VertexSet.from_indices([4], 4)
        with pytest.raises(ValueError):
            VertexSet(1 << 4, 4)

    def test_empty_has_no_minimum(self):
        with pytest.raises(ValueError):
            VertexSet.empty(3).min()

    def test_equality_and_hash(self):
        assert VertexSet.from_indices([1, 2], 5) == VertexSet(0b110, 5)
        assert len({VertexSet(3, 4), VertexSet(3, 4)}) == 1
        assert VertexSet(3, 4) != VertexSet(3, 5)


class TestBuilders:
    def test_cyclic(self):
        g = make_group("cyclic:6")
        assert g.order == 6 and g.kind == "cyclic"
        assert g.multiply(2, 5) == 1
        assert g.inverse(2) == 4
        assert g.is_abelian

    def test_elementary_abelian(self):
        g = make_group("elem2:3")
        assert g.order == 8 and g.bit_width == 3
        assert g.multiply(3, 5) == 6
        assert all(g.inverse(x) == x for x in g.elements())

    def test_dihedral(self):
        g = make_group("dihedral:4")
        assert g.order == 8 and not g.is_abelian
        r, s = 1, 4
        assert element_order(g, r) == 4
        assert g.multiply(s, s) == 0
        # s r s^-1 = r^-1
        assert g.multiply(g.multiply(s, r), g.inverse(s)) == g.inverse(r)

    def test_symmetric(self):
        g = make_group("sym:3")
        assert g.order == 6 and not g.is_abelian
        assert [element_order(g, x) for x in g.elements()] == [1, 2, 2, 3, 3, 2]

    def test_direct_product(self):
        g = make_group("product:(cyclic:2),(cyclic:3)")
        assert g.order == 6 and g.is_abelian and g.kind == "product"
        assert g.label == "product:(cyclic:2),(cyclic:3)"
        # (1, 1) has order 6, so Z2 x Z3 is cyclic
        assert element_order(g, 4) == 6

    def test_nested_product(self):
        g = make_group("product:(product:(cyclic:2),(cyclic:2)),(dihedral:3)")
        assert g.order == 24
        check_group_axioms(g, associativity=True)

    def test_product_of_elem2_is_elem2(self):
        g = make_group("product:(elem2:2),(elem2:1)")
        assert g.kind == "elem2"
        assert all(g.multiply(a, b) == a ^ b for a in range(8) for b in range(8))

    @pytest.mark.parametrize("spec", ["cyclic:7", "dihedral:5", "sym:4", "elem2:4", "product:(cyclic:4),(sym:3)"])
    def test_builders_satisfy_axioms(self, spec):
        check_group_axioms(make_group(spec), associativity=True)

    @pytest.mark.parametrize(
        "spec",
        ["cyclic", "foo:3", "cyclic:x", "cyclic:0", "dihedral:1", "sym:7", "elem2:0", "product:(cyclic:2)", "product:cyclic:2"],
    )
    def test_malformed_specs(self, spec):
        with pytest.raises(GroupSpecError):
            make_group(spec)

    @pytest.mark.parametrize("spec", ["cyclic:20001", "elem2:15", "product:(cyclic:200),(cyclic:101)"])
    def test_size_guard(self, spec):
        with pytest.raises(SizeGuardExceeded):
            make_group(spec)

    def test_elem2_rank_limit(self):
        assert 1 << MAX_ELEM2_RANK <= MAX_GROUP_ORDER < 1 << (MAX_ELEM2_RANK + 1)
        with pytest.raises(SizeGuardExceeded) as excinfo:
            make_group("elem2:16")
        assert "k <= 14" in excinfo.value.message


class TestJsonGroups:
    def test_round_trip(self, tmp_path):
        original = make_group("dihedral:3")
        path = tmp_path / "d3.json"
        path.write_text(json.dumps(group_to_json(original)))
        loaded = make_group(f"json:{path}")
        assert loaded.order == 6
        assert loaded.label == "dihedral:3"
        assert np.array_equal(loaded.mul, original.mul)
        assert np.array_equal(loaded.inv, original.inv)

    def test_column_not_a_permutation(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"order": 2, "mul": [[0, 1], [0, 1]]}))
        with pytest.raises(GroupSpecError, match="column 0"):
            load_group_json(str(path))

    def test_identity_not_at_zero(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"order": 2, "mul": [[1, 0], [0, 1]]}))
        with pytest.raises(GroupSpecError, match="identity"):
            load_group_json(str(path))

    def test_missing_file(self, tmp_path):
        with pytest.raises(GroupSpecError):
            make_group(f"json:{tmp_path / 'absent.json'}")

    def test_associativity_is_opt_in(self, tmp_path):
        path = tmp_path / "loop.json"
        path.write_text(json.dumps({"mul": LOOP_OF_ORDER_5}))
        loop = load_group_json(str(path))
        with pytest.raises(GroupSpecError, match="associativity"):
            check_group_axioms(loop, associativity=True)


class TestSubgroups:
    def test_conjugacy_classes_of_s3(self):
        classes = conjugacy_classes(make_group("sym:3"))
        assert [p.indices() for p in classes.parts] == [[0], [1, 2, 5], [3, 4]]
        assert classes.part_of == (0, 1, 1, 2, 2, 1)
        assert classes.sizes == [1, 3, 2]

    def test_abelian_classes_are_singletons(self):
        classes = conjugacy_classes(make_group("cyclic:5"))
        assert len(classes) == 5

    def test_closure(self):
        z18 = make_group("cyclic:18")
        assert closure(z18, z18.subset([3])).indices() == [0, 3, 6, 9, 12, 15]
        assert closure(z18, VertexSet.empty(18)).indices() == [0]
        s3 = make_group("sym:3")
        assert closure(s3, s3.subset([1, 2])).size == 6

    def test_subgroup_and_normality(self):
        s3 = make_group("sym:3")
        assert is_subgroup(s3, s3.subset([0, 1]))
        assert not is_subgroup(s3, s3.subset([1, 2]))
        assert not is_subgroup(s3, s3.subset([0, 1, 2]))
        assert not is_normal(s3, s3.subset([0, 1]))
        assert is_normal(s3, s3.subset([0, 3, 4]))
        with pytest.raises(NotASubgroup):
            is_normal(s3, s3.subset([0, 3]))

    def test_left_cosets(self):
        z18 = make_group("cyclic:18")
        cosets = left_cosets(z18, z18.subset([0, 3, 6, 9, 12, 15]))
        assert len(cosets) == 3
        assert cosets.parts[0].indices() == [0, 3, 6, 9, 12, 15]
        assert cosets.parts[cosets.part_of[1]].indices() == [1, 4, 7, 10, 13, 16]

    def test_left_cosets_of_non_normal_subgroup(self):
        s3 = make_group("sym:3")
        h = s3.subset([0, 1])
        cosets = left_cosets(s3, h)
        assert cosets.sizes == [2, 2, 2]
        assert cosets.parts[0] == h
        for part in cosets.parts:
            x = part.min()
            assert part == left_translate(s3, x, h)

    def test_normal_subgroups(self):
        s3 = make_group("sym:3")
        assert [h.indices() for h in enumerate_normal_subgroups(s3)] == [[0], [0, 3, 4], [0, 1, 2, 3, 4, 5]]
        assert [h.size for h in enumerate_normal_subgroups(make_group("cyclic:12"))] == [1, 2, 3, 4, 6, 12]
        assert [h.size for h in enumerate_normal_subgroups(make_group("dihedral:4"))] == [1, 2, 4, 4, 4, 8]

    def test_normal_subgroups_are_normal(self):
        g = make_group("product:(sym:3),(cyclic:2)")
        for h in enumerate_normal_subgroups(g):
            assert is_normal(g, h)

    def test_cyclic_subgroups(self):
        s3 = make_group("sym:3")
        assert [h.indices() for h in cyclic_subgroups(s3)] == [[0], [0, 1], [0, 2], [0, 5], [0, 3, 4]]

    def test_enumeration_size_guard(self):
        with pytest.raises(SizeGuardExceeded):
            enumerate_normal_subgroups(make_group("sym:6"))

    def test_from_parts_rejects_overlap(self):
        with pytest.raises(ValueError):
            GroupPartition.from_parts([VertexSet(0b011, 3), VertexSet(0b110, 3)], 3)
        with pytest.raises(ValueError):
            GroupPartition.from_parts([VertexSet(0b001, 3)], 3)


def test_set_products():
    z6 = make_group("cyclic:6")
    assert product_set(z6, z6.subset([1, 2]), z6.subset([3])).indices() == [4, 5]
    assert product_set(z6, VertexSet.empty(6), z6.subset([3])).bits == 0
    assert right_translate(z6, z6.subset([0, 5]), 2).indices() == [1, 2]
    assert inverse_set(z6, z6.subset([1, 3])).indices() == [3, 5]


def test_translates_differ_in_nonabelian_groups():
    s3 = make_group("sym:3")
    code = s3.subset([0, 1])
    assert left_translate(s3, 2, code) != right_translate(s3, code, 2)
