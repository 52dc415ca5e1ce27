"""
Finite groups as explicit multiplication tables.

Elements are dense indices 0..n-1 with the identity pinned at index 0.
Subsets of a group are bit-packed into Python integers (VertexSet).
"""

import itertools
import json
import operator
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from .errors import GroupSpecError, NotASubgroup, SizeGuardExceeded

MAX_GROUP_ORDER = 20000
NORMAL_SUBGROUP_ORDER_LIMIT = 512
MAX_NORMAL_SUBGROUPS = 100000
MAX_ELEM2_RANK = MAX_GROUP_ORDER.bit_length() - 1
MAX_SYM_DEGREE = 6

SUPPORTED_SPECS = {
    "cyclic:n": "cyclic group Z_n, index j is a^j",
    "elem2:k": "elementary abelian group Z_2^k, index is the bit pattern of the vector",
    "dihedral:n": "dihedral group of order 2n, 0..n-1 rotations, n..2n-1 reflections",
    "sym:n": "symmetric group S_n (n <= 6), index is the lexicographic rank",
    "product:(A),(B)": "direct product, (a, b) is encoded as a*|B| + b",
    "json:<path>": "table loaded from a JSON group file",
}


def iter_bits(bits: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``bits`` in increasing order."""
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


@dataclass(frozen=True)
class VertexSet:
    """A subset of {0, ..., n-1} stored as a bitset."""

    bits: int
    n: int
    size: int = field(init=False, compare=False)

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.n:
            raise ValueError(f"bitset {self.bits:#x} has members outside 0..{self.n - 1}")
        object.__setattr__(self, "size", self.bits.bit_count())

    @classmethod
    def from_indices(cls, indices: Iterable[int], n: int) -> "VertexSet":
        bits = 0
        for x in indices:
            x = int(x)
            if not 0 <= x < n:
                raise ValueError(f"element {x} is outside 0..{n - 1}")
            bits |= 1 << x
        return cls(bits, n)

    @classmethod
    def empty(cls, n: int) -> "VertexSet":
        return cls(0, n)

    @classmethod
    def full(cls, n: int) -> "VertexSet":
        return cls((1 << n) - 1, n)

    def __len__(self) -> int:
        return self.size

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.bits)

    def __contains__(self, x: object) -> bool:
        try:
            x = operator.index(x)
        except TypeError:
            return False
        return 0 <= x < self.n and bool(self.bits >> x & 1)

    def __or__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.bits | other.bits, self.n)

    def __and__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.bits & other.bits, self.n)

    def __sub__(self, other: "VertexSet") -> "VertexSet":
        return VertexSet(self.bits & ~other.bits, self.n)

    def issubset(self, other: "VertexSet") -> bool:
        return self.bits & ~other.bits == 0

    def isdisjoint(self, other: "VertexSet") -> bool:
        return self.bits & other.bits == 0

    def complement(self) -> "VertexSet":
        return VertexSet(((1 << self.n) - 1) & ~self.bits, self.n)

    def indices(self) -> List[int]:
        return list(iter_bits(self.bits))

    def min(self) -> int:
        if not self.bits:
            raise ValueError("empty vertex set has no minimum")
        return (self.bits & -self.bits).bit_length() - 1

    def mask(self) -> np.ndarray:
        """Boolean numpy mask of length n."""
        out = np.zeros(self.n, dtype=bool)
        out[self.indices()] = True
        return out


@dataclass(frozen=True, eq=False)
class GroupTable:
    """A finite group given by its multiplication table.

    Attributes:
        order: Number of elements n
        mul: n x n numpy table, mul[a, b] is the index of a*b
        inv: Length-n numpy table of inverses
        label: Construction string the table was built from
        bit_width: k for elem2:k groups, whose elements print as bit-strings
    """

    order: int
    mul: np.ndarray = field(repr=False)
    inv: np.ndarray = field(repr=False)
    label: str
    bit_width: Optional[int] = None
    kind: str = "table"

    @cached_property
    def table(self) -> List[List[int]]:
        """Multiplication table as nested Python lists, for scalar hot loops."""
        return self.mul.tolist()

    @cached_property
    def inverses(self) -> List[int]:
        return self.inv.tolist()

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mul, self.mul.T))

    def elements(self) -> range:
        return range(self.order)

    def multiply(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inverse(self, a: int) -> int:
        return self.inverses[a]

    def subset(self, indices: Iterable[int]) -> VertexSet:
        return VertexSet.from_indices(indices, self.order)


@dataclass(frozen=True)
class GroupPartition:
    """A partition of the group elements into disjoint parts."""

    parts: Tuple[VertexSet, ...]
    part_of: Tuple[int, ...]

    @classmethod
    def from_parts(cls, parts: Sequence[VertexSet], n: int) -> "GroupPartition":
        part_of = [-1] * n
        for i, part in enumerate(parts):
            if part.n != n:
                raise ValueError(f"part {i} lives in a set of size {part.n}, expected {n}")
            for x in part:
                if part_of[x] != -1:
                    raise ValueError(f"element {x} lies in parts {part_of[x]} and {i}")
                part_of[x] = i
        if -1 in part_of:
            raise ValueError(f"element {part_of.index(-1)} is not covered by any part")
        return cls(tuple(parts), tuple(part_of))

    @classmethod
    def singletons(cls, n: int) -> "GroupPartition":
        return cls(tuple(VertexSet(1 << x, n) for x in range(n)), tuple(range(n)))

    def __len__(self) -> int:
        return len(self.parts)

    @property
    def sizes(self) -> List[int]:
        return [part.size for part in self.parts]


def _table_group(mul: np.ndarray, label: str, **kwargs) -> GroupTable:
    mul = np.ascontiguousarray(mul, dtype=np.int32)
    inv = np.argmax(mul == 0, axis=1).astype(np.int32)
    return GroupTable(order=int(mul.shape[0]), mul=mul, inv=inv, label=label, **kwargs)


def _guard_order(order: int, spec: str) -> None:
    if order > MAX_GROUP_ORDER:
        raise SizeGuardExceeded(
            f"group '{spec}' has order {order}, above the limit of {MAX_GROUP_ORDER}"
        )


def cyclic_group(n: int) -> GroupTable:
    if n < 1:
        raise GroupSpecError(f"cyclic:n needs n >= 1, got {n}")
    _guard_order(n, f"cyclic:{n}")
    idx = np.arange(n)
    return _table_group((idx[:, None] + idx[None, :]) % n, f"cyclic:{n}", kind="cyclic")


def elementary_abelian_2_group(k: int) -> GroupTable:
    if k < 1:
        raise GroupSpecError(f"elem2:k needs k >= 1, got {k}")
    if k > MAX_ELEM2_RANK:
        raise SizeGuardExceeded(
            f"elem2:{k} has order 2^{k}, above the limit of {MAX_GROUP_ORDER}; use k <= {MAX_ELEM2_RANK}"
        )
    idx = np.arange(1 << k)
    return _table_group(np.bitwise_xor.outer(idx, idx), f"elem2:{k}", bit_width=k, kind="elem2")


def dihedral_group(n: int) -> GroupTable:
    """Dihedral group of order 2n; index f*n + i stands for s^f r^i."""
    if n < 2:
        raise GroupSpecError(f"dihedral:n needs n >= 2, got {n}")
    _guard_order(2 * n, f"dihedral:{n}")
    idx = np.arange(2 * n)
    f, i = idx // n, idx % n
    f1, i1 = f[:, None], i[:, None]
    f2, i2 = f[None, :], i[None, :]
    # r^i s = s r^-i
    rot = (np.where(f2 == 1, -i1, i1) + i2) % n
    return _table_group(((f1 + f2) % 2) * n + rot, f"dihedral:{n}", kind="dihedral")


def symmetric_group(n: int) -> GroupTable:
    """Symmetric group on n points; (p*q)(x) = p(q(x))."""
    if not 1 <= n <= MAX_SYM_DEGREE:
        raise GroupSpecError(f"sym:n needs 1 <= n <= {MAX_SYM_DEGREE}, got {n}")
    perms = list(itertools.permutations(range(n)))
    rank = {p: r for r, p in enumerate(perms)}
    mul = [[rank[tuple(p[q[x]] for x in range(n))] for q in perms] for p in perms]
    return _table_group(np.array(mul), f"sym:{n}", kind="sym")


def direct_product(g1: GroupTable, g2: GroupTable) -> GroupTable:
    label = f"product:({g1.label}),({g2.label})"
    _guard_order(g1.order * g2.order, label)
    idx = np.arange(g1.order * g2.order)
    a, b = idx // g2.order, idx % g2.order
    mul = g1.mul[a[:, None], a[None, :]] * g2.order + g2.mul[b[:, None], b[None, :]]
    kind = "elem2" if g1.kind == g2.kind == "elem2" else "product"
    return _table_group(mul, label, kind=kind)


def load_group_json(path: str) -> GroupTable:
    """Load a group from {"order": n, "mul": [[...]], "label": "..."}."""
    try:
        with open(path) as f:
            data = json.load(f)
        mul = np.array(data["mul"], dtype=np.int64)
        order = int(data.get("order", len(mul)))
    except (OSError, ValueError, KeyError, TypeError) as e:
        raise GroupSpecError(f"cannot read group file {path}: {e}")
    if mul.ndim != 2 or mul.shape != (order, order):
        raise GroupSpecError(f"group file {path}: mul must be a {order}x{order} table")
    _guard_order(order, f"json:{path}")
    group = _table_group(mul, str(data.get("label", f"json:{path}")))
    check_group_axioms(group)
    return group


def group_to_json(group: GroupTable) -> Dict[str, object]:
    return {"order": group.order, "mul": group.table, "label": group.label}


def _split_product_args(body: str, spec: str) -> Tuple[str, str]:
    if not body.startswith("("):
        raise GroupSpecError(f"malformed product spec '{spec}': expected '(' after 'product:'")
    depth = 0
    for pos, ch in enumerate(body):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth == 0:
                left, rest = body[1:pos], body[pos + 1:]
                if not (rest.startswith(",(") and rest.endswith(")")):
                    break
                return left, rest[2:-1]
    raise GroupSpecError(f"malformed product spec '{spec}': expected product:(A),(B)")


def make_group(spec: str) -> GroupTable:
    """Build a group from a construction string.

    Args:
        spec: One of cyclic:n, elem2:k, dihedral:n, sym:n, product:(A),(B), json:<path>

    Returns:
        The validated GroupTable
    """
    spec = spec.strip()
    kind, sep, arg = spec.partition(":")
    if not sep:
        raise GroupSpecError(
            f"malformed group spec '{spec}'. Supported forms: {', '.join(SUPPORTED_SPECS)}"
        )
    if kind == "product":
        left, right = _split_product_args(arg, spec)
        return direct_product(make_group(left), make_group(right))
    if kind == "json":
        return load_group_json(arg)
    builders = {
        "cyclic": cyclic_group,
        "elem2": elementary_abelian_2_group,
        "dihedral": dihedral_group,
        "sym": symmetric_group,
    }
    if kind not in builders:
        raise GroupSpecError(
            f"unknown group family '{kind}'. Supported forms: {', '.join(SUPPORTED_SPECS)}"
        )
    try:
        n = int(arg)
    except ValueError:
        raise GroupSpecError(f"malformed group spec '{spec}': '{arg}' is not an integer")
    return builders[kind](n)


def check_group_axioms(group: GroupTable, associativity: bool = False) -> None:
    """Check the Latin-square, identity and inverse laws, and optionally associativity.

    Raises:
        GroupSpecError: naming the first failing row, column or triple
    """
    mul, n = group.mul, group.order
    target = np.arange(n)
    if np.any(mul < 0) or np.any(mul >= n):
        raise GroupSpecError(f"group {group.label}: table entries must lie in 0..{n - 1}")
    for name, axis_sorted in (("row", np.sort(mul, axis=1)), ("column", np.sort(mul, axis=0).T)):
        bad = np.flatnonzero(np.any(axis_sorted != target, axis=1))
        if bad.size:
            raise GroupSpecError(f"group {group.label}: {name} {int(bad[0])} is not a permutation")
    if not (np.array_equal(mul[0], target) and np.array_equal(mul[:, 0], target)):
        raise GroupSpecError(f"group {group.label}: index 0 is not the identity")
    if np.any(mul[target, group.inv] != 0):
        raise GroupSpecError(f"group {group.label}: inverse table is inconsistent")
    if associativity:
        for a in range(n):
            # (ab)c against a(bc) for all b, c
            if not np.array_equal(mul[mul[a]], mul[a][mul]):
                lhs, rhs = mul[mul[a]], mul[a][mul]
                b, c = (int(v) for v in np.argwhere(lhs != rhs)[0])
                raise GroupSpecError(
                    f"group {group.label}: associativity fails for ({a}, {b}, {c})"
                )


def conjugacy_classes(group: GroupTable) -> GroupPartition:
    """Orbits of x -> g x g^-1, ordered by their minimum element."""
    n, mul, inv = group.order, group.mul, group.inv
    part_of = [-1] * n
    parts: List[VertexSet] = []
    for x in range(n):
        if part_of[x] != -1:
            continue
        orbit = np.unique(mul[mul[:, x], inv])
        for y in orbit.tolist():
            part_of[y] = len(parts)
        parts.append(VertexSet.from_indices(orbit.tolist(), n))
    return GroupPartition(tuple(parts), tuple(part_of))


def closure(group: GroupTable, seed: VertexSet) -> VertexSet:
    """Smallest subgroup containing ``seed``, by product saturation."""
    gens = seed.indices()
    table = group.table
    members = 1
    frontier = [0]
    while frontier:
        new = []
        for x in frontier:
            row = table[x]
            for s in gens:
                y = row[s]
                if not members >> y & 1:
                    members |= 1 << y
                    new.append(y)
        frontier = new
    return VertexSet(members, group.order)


def is_subgroup(group: GroupTable, subset: VertexSet) -> bool:
    if 0 not in subset:
        return False
    idx = np.array(subset.indices())
    return bool(subset.mask()[group.mul[np.ix_(idx, idx)]].all())


def _require_subgroup(group: GroupTable, subset: VertexSet) -> np.ndarray:
    if subset.n != group.order or not is_subgroup(group, subset):
        raise NotASubgroup(f"{subset.indices()} is not a subgroup of {group.label}")
    return np.array(subset.indices())


def is_normal(group: GroupTable, subgroup: VertexSet) -> bool:
    """True iff g H g^-1 = H for every g."""
    idx = _require_subgroup(group, subgroup)
    conj = group.mul[group.mul[:, idx], group.inv[:, None]]
    return bool(subgroup.mask()[conj].all())


def left_cosets(group: GroupTable, subgroup: VertexSet) -> GroupPartition:
    """Left cosets xH ordered by minimum element; the first part is H."""
    idx = _require_subgroup(group, subgroup)
    n = group.order
    part_of = [-1] * n
    parts: List[VertexSet] = []
    for x in range(n):
        if part_of[x] != -1:
            continue
        coset = group.mul[x, idx].tolist()
        for y in coset:
            part_of[y] = len(parts)
        parts.append(VertexSet.from_indices(coset, n))
    return GroupPartition(tuple(parts), tuple(part_of))


def product_set(group: GroupTable, a: VertexSet, b: VertexSet) -> VertexSet:
    """The set {x*y : x in A, y in B}."""
    if not a.bits or not b.bits:
        return VertexSet.empty(group.order)
    prods = group.mul[np.ix_(a.indices(), b.indices())]
    return VertexSet.from_indices(np.unique(prods).tolist(), group.order)


def right_translate(group: GroupTable, subset: VertexSet, g: int) -> VertexSet:
    """Xg."""
    if not subset.bits:
        return subset
    return VertexSet.from_indices(group.mul[subset.indices(), g].tolist(), group.order)


def left_translate(group: GroupTable, g: int, subset: VertexSet) -> VertexSet:
    """gX."""
    if not subset.bits:
        return subset
    return VertexSet.from_indices(group.mul[g, subset.indices()].tolist(), group.order)


def inverse_set(group: GroupTable, subset: VertexSet) -> VertexSet:
    return VertexSet.from_indices((group.inverse(x) for x in subset), group.order)


def element_order(group: GroupTable, x: int) -> int:
    k, y = 1, x
    while y != 0:
        y = group.table[y][x]
        k += 1
    return k


def _size_guard(group: GroupTable, what: str) -> None:
    if group.order > NORMAL_SUBGROUP_ORDER_LIMIT:
        raise SizeGuardExceeded(
            f"{what} needs |G| <= {NORMAL_SUBGROUP_ORDER_LIMIT}, {group.label} has order {group.order}"
        )


def _sorted_subgroups(found: Iterable[int], n: int) -> List[VertexSet]:
    subs = [VertexSet(bits, n) for bits in found]
    return sorted(subs, key=lambda h: (h.size, h.bits))


def enumerate_normal_subgroups(group: GroupTable) -> List[VertexSet]:
    """All normal subgroups, sorted by size then bitset value.

    Every normal subgroup is a union of conjugacy classes closed under
    products, so it is the join of the subgroups generated by the classes it
    contains. Those joins are built up to a fixpoint.
    """
    _size_guard(group, "normal subgroup enumeration")
    n = group.order
    class_closures = {closure(group, cls).bits for cls in conjugacy_classes(group).parts}
    found = {1}
    frontier = [1]
    while frontier:
        new = []
        for bits in frontier:
            for gen in class_closures:
                if gen & ~bits == 0:
                    continue
                joined = closure(group, VertexSet(bits | gen, n)).bits
                if joined not in found:
                    found.add(joined)
                    new.append(joined)
                    if len(found) > MAX_NORMAL_SUBGROUPS:
                        raise SizeGuardExceeded(
                            f"{group.label} has more than {MAX_NORMAL_SUBGROUPS} normal subgroups"
                        )
        frontier = new
    return _sorted_subgroups(found, n)


def cyclic_subgroups(group: GroupTable) -> List[VertexSet]:
    """The distinct subgroups <x>, sorted by size then bitset value."""
    _size_guard(group, "cyclic subgroup enumeration")
    n = group.order
    return _sorted_subgroups({closure(group, VertexSet(1 << x, n)).bits for x in range(n)}, n)
