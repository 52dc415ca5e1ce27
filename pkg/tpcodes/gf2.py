"""
Bit-packed GF(2) linear algebra and linear total perfect codes in cubelike graphs.

Vectors of V(n, 2) are Python ints: coordinate i is bit i, which is also the
index of the vector in elem2:n. Bit-strings are little-endian, character i
is coordinate i.
"""

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .codes import Verdict
from .errors import (
    ConstructionExhausted,
    DegreeNotPowerOfTwo,
    IdentityInConnectionSet,
    InternalInvariantViolated,
    NotSpanning,
    SizeGuardExceeded,
    UsageError,
)
from .groups import VertexSet, iter_bits

MAX_CODEWORD_DIMENSION = 20
MAX_CUBELIKE_DIMENSION = 24
MAX_HAMMING_T = 16
RANDOM_ATTEMPTS = 64
SPANNING_ATTEMPTS = 1000


def _low_bit(x: int) -> int:
    return (x & -x).bit_length() - 1


def reduce_basis(vectors: Sequence[int]) -> List[int]:
    """Reduced echelon basis of span(vectors): lowest-bit pivots, sorted ascending."""
    basis: List[int] = []
    for v in vectors:
        for b in basis:
            if v >> _low_bit(b) & 1:
                v ^= b
        if v:
            p = _low_bit(v)
            basis = [b ^ v if b >> p & 1 else b for b in basis]
            basis.append(v)
    return sorted(basis)


def gf2_rank(vectors: Sequence[int]) -> int:
    return len(reduce_basis(vectors))


@dataclass(frozen=True)
class GF2Matrix:
    """An r x c matrix over GF(2); bit j of data[i] is entry (i, j)."""

    rows: int
    cols: int
    data: Tuple[int, ...]

    def __post_init__(self):
        if len(self.data) != self.rows:
            raise ValueError(f"expected {self.rows} rows, got {len(self.data)}")
        for i, row in enumerate(self.data):
            if row < 0 or row >> self.cols:
                raise ValueError(f"row {i} has entries beyond column {self.cols - 1}")

    @classmethod
    def from_strings(cls, rows: Sequence[str]) -> "GF2Matrix":
        if not rows:
            raise UsageError("a matrix needs at least one row")
        cols = len(rows[0])
        data = []
        for text in rows:
            if len(text) != cols or set(text) - {"0", "1"}:
                raise UsageError(f"matrix row '{text}' is not a bit-string of length {cols}")
            data.append(sum(1 << j for j, ch in enumerate(text) if ch == "1"))
        return cls(len(rows), cols, tuple(data))

    @classmethod
    def from_columns(cls, columns: Sequence[int], rows: int) -> "GF2Matrix":
        data = [sum(1 << j for j, col in enumerate(columns) if col >> i & 1) for i in range(rows)]
        return cls(rows, len(columns), tuple(data))

    def columns(self) -> List[int]:
        """Column j as a vector of V(rows, 2)."""
        return [sum(1 << i for i, row in enumerate(self.data) if row >> j & 1) for j in range(self.cols)]

    def to_strings(self) -> List[str]:
        return ["".join("1" if row >> j & 1 else "0" for j in range(self.cols)) for row in self.data]

    def to_numpy(self) -> np.ndarray:
        out = np.zeros((self.rows, self.cols), dtype=np.uint8)
        for i, row in enumerate(self.data):
            for j in iter_bits(row):
                out[i, j] = 1
        return out

    def left_multiply(self, x: int) -> int:
        """The row vector xM."""
        acc = 0
        for i in iter_bits(x):
            acc ^= self.data[i]
        return acc


@dataclass
class EliminationResult:
    """Row reduction of an r x c matrix M.

    Attributes:
        rank: Rank of M
        pivots: Pivot column of each nonzero row of the reduced form
        reduced: Reduced row echelon form, nonzero rows first
        left_kernel: Basis of {x in V(r, 2) : xM = 0}
        nullspace: Basis of {y in V(c, 2) : My = 0}
    """

    rank: int
    pivots: List[int]
    reduced: List[int]
    left_kernel: List[int]
    nullspace: List[int]

    @property
    def left_nullity(self) -> int:
        return len(self.left_kernel)


def gf2_eliminate(matrix: GF2Matrix) -> EliminationResult:
    """Gauss-Jordan elimination with the lowest-index pivot row per column."""
    rows = list(matrix.data)
    combos = [1 << i for i in range(matrix.rows)]
    pivots: List[int] = []
    rank = 0
    for col in range(matrix.cols):
        pivot = next((i for i in range(rank, matrix.rows) if rows[i] >> col & 1), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        combos[rank], combos[pivot] = combos[pivot], combos[rank]
        for i in range(matrix.rows):
            if i != rank and rows[i] >> col & 1:
                rows[i] ^= rows[rank]
                combos[i] ^= combos[rank]
        pivots.append(col)
        rank += 1

    free = [c for c in range(matrix.cols) if c not in pivots]
    nullspace = []
    for f in free:
        y = 1 << f
        for r, p in enumerate(pivots):
            if rows[r] >> f & 1:
                y |= 1 << p
        nullspace.append(y)

    return EliminationResult(
        rank=rank,
        pivots=pivots,
        reduced=rows,
        left_kernel=reduce_basis(combos[rank:]),
        nullspace=reduce_basis(nullspace),
    )


def syndrome_table(matrix: GF2Matrix) -> np.ndarray:
    """xM for every x in V(r, 2), indexed by x."""
    if matrix.rows > MAX_CODEWORD_DIMENSION:
        raise SizeGuardExceeded(
            f"syndrome table needs at most {MAX_CODEWORD_DIMENSION} rows, got {matrix.rows}"
        )
    table = np.zeros(1, dtype=np.int64)
    for row in matrix.data:
        table = np.concatenate([table, table ^ row])
    return table


@dataclass
class LinearCode:
    """Linear code C = {x : xM = 0} in V(n, 2) with n x t check matrix M.

    Attributes:
        n: Length of the code, the dimension of the cubelike graph
        check_matrix: M; its transpose is the parity check matrix
        connection: The spanning set the code was built for, if any
    """

    n: int
    check_matrix: GF2Matrix
    connection: Optional[List[int]] = None

    @cached_property
    def rank(self) -> int:
        return gf2_rank(self.check_matrix.columns())

    @cached_property
    def basis(self) -> List[int]:
        """Reduced basis of C."""
        return gf2_eliminate(self.check_matrix).left_kernel

    @property
    def dimension(self) -> int:
        return self.n - self.rank

    @property
    def size(self) -> int:
        return 1 << self.dimension

    @property
    def materializable(self) -> bool:
        return self.n <= MAX_CODEWORD_DIMENSION

    @cached_property
    def codewords(self) -> VertexSet:
        if not self.materializable:
            raise SizeGuardExceeded(
                f"codewords are only listed for n <= {MAX_CODEWORD_DIMENSION}, got n = {self.n}"
            )
        zero = np.flatnonzero(syndrome_table(self.check_matrix) == 0)
        return VertexSet.from_indices(zero.tolist(), 1 << self.n)

    def syndrome(self, x: int) -> int:
        return self.check_matrix.left_multiply(x)

    def contains(self, x: int) -> bool:
        return self.syndrome(x) == 0


def linear_code_from_check_matrix(matrix: GF2Matrix, connection: Optional[Sequence[int]] = None) -> LinearCode:
    """C = left kernel of M."""
    return LinearCode(n=matrix.rows, check_matrix=matrix, connection=None if connection is None else list(connection))


def _validate_cubelike_set(connection: Sequence[int], n: int) -> Tuple[List[int], int]:
    if not 1 <= n <= MAX_CUBELIKE_DIMENSION:
        raise SizeGuardExceeded(f"cubelike dimension must lie in 1..{MAX_CUBELIKE_DIMENSION}, got {n}")
    s = [int(u) for u in connection]
    for u in s:
        if u == 0:
            raise IdentityInConnectionSet("the zero vector lies in the connection set")
        if not 0 < u < 1 << n:
            raise UsageError(f"vector {u} does not lie in V({n}, 2)")
    if len(set(s)) != len(s):
        raise UsageError("connection set vectors must be distinct")
    d = len(s)
    if d == 0 or d & (d - 1):
        raise DegreeNotPowerOfTwo(
            f"degree {d} is not a power of two, so a connected cubelike graph has no total perfect code",
            witness={"degree": d},
        )
    return s, d.bit_length() - 1


def _difference_set(s: Sequence[int], size: int) -> np.ndarray:
    blocked = np.zeros(size, dtype=bool)
    arr = np.array(s, dtype=np.int64)
    sums = np.bitwise_xor.outer(arr, arr).ravel()
    blocked[sums] = True
    return blocked


def _grow(blocked: np.ndarray, x: int, index: np.ndarray) -> np.ndarray:
    # blocked marks C u (D + C); adding x to C adds its translates by x
    return blocked | blocked[index ^ x]


def _random_kernel(base: np.ndarray, target: int, seed: int, attempts: int) -> Optional[List[int]]:
    rng = np.random.default_rng(seed)
    index = np.arange(base.size)
    for _ in range(attempts):
        blocked, basis = base, []
        while len(basis) < target:
            free = np.flatnonzero(~blocked)
            if free.size == 0:
                break
            x = int(rng.choice(free))
            basis.append(x)
            blocked = _grow(blocked, x, index)
        if len(basis) == target:
            return basis
    return None


def _exhaustive_kernel(base: np.ndarray, target: int) -> Optional[List[int]]:
    """Depth-first search over increasing basis vectors; complete for subspaces avoiding D."""
    if target == 0:
        return []
    index = np.arange(base.size)
    stack = [(base, [], iter(np.flatnonzero(~base).tolist()))]
    while stack:
        blocked, basis, candidates = stack[-1]
        x = next(candidates, None)
        if x is None:
            stack.pop()
            continue
        grown = _grow(blocked, x, index)
        chosen = basis + [x]
        if len(chosen) == target:
            return chosen
        later = np.flatnonzero(~grown[x + 1:]) + x + 1
        if later.size:
            stack.append((grown, chosen, iter(later.tolist())))
    return None


def _annihilator_matrix(kernel_basis: Sequence[int], n: int) -> GF2Matrix:
    """n x t matrix whose columns span the orthogonal complement of the kernel."""
    if not kernel_basis:
        return GF2Matrix.from_columns([1 << i for i in range(n)], n)
    span = GF2Matrix(len(kernel_basis), n, tuple(kernel_basis))
    return GF2Matrix.from_columns(gf2_eliminate(span).nullspace, n)


def construct_cubelike_tpc(connection: Sequence[int], n: int, seed: int = 0) -> LinearCode:
    """Build a linear TPC in Cay(Z_2^n, S) for a spanning S of size 2^t.

    The kernel C is grown one vector at a time, only accepting x outside
    C u (D + C) with D = (S + S) \\ {0}, so C never meets D and every u_i M
    is distinct. A seeded random stage runs first, then a deterministic
    exhaustive stage. M is read off as a basis of the annihilator of C.

    Args:
        connection: Distinct nonzero vectors u_1..u_d as ints
        n: Dimension of the cubelike graph
        seed: Seed for the random stage

    Returns:
        LinearCode with rank(M) = t and pairwise distinct syndromes u_i M
    """
    s, t = _validate_cubelike_set(connection, n)
    if gf2_rank(s) != n:
        raise NotSpanning(
            f"the connection set spans a space of dimension {gf2_rank(s)}, not {n}",
            witness={"rank": gf2_rank(s), "n": n},
        )
    if not t < n <= 1 << t:
        raise InternalInvariantViolated(f"spanning set of size 2^{t} in dimension {n}")

    base = _difference_set(s, 1 << n)
    target = n - t
    kernel = _random_kernel(base, target, seed, RANDOM_ATTEMPTS)
    if kernel is None:
        kernel = _exhaustive_kernel(base, target)
    if kernel is None:
        raise ConstructionExhausted(
            f"no admissible check matrix for n = {n}, S = {sorted(s)}",
            witness={"n": n, "connection": sorted(s)},
        )

    code = linear_code_from_check_matrix(_annihilator_matrix(kernel, n), connection=s)
    verdict = check_linear_code_condition(code, s)
    if code.rank != t or not verdict.ok:
        raise InternalInvariantViolated(f"constructed check matrix fails: {verdict.witness}")
    if code.materializable:
        direct = verify_cubelike_code(n, s, code.codewords)
        if not direct.ok:
            raise InternalInvariantViolated(f"constructed code is not a TPC: {direct.witness}")
    return code


def hamming_style_code(t: int) -> LinearCode:
    """Linear TPC of Q_d, d = 2^t, whose check rows are all of V(t, 2), zero row last."""
    if not 1 <= t <= MAX_HAMMING_T:
        raise SizeGuardExceeded(f"t must lie in 1..{MAX_HAMMING_T}, got {t}")
    d = 1 << t
    rows = tuple(list(range(1, d)) + [0])
    return linear_code_from_check_matrix(GF2Matrix(d, t, rows), connection=[1 << i for i in range(d)])


def classical_hamming_code(t: int) -> LinearCode:
    """Hamming code of length 2^t - 1, check rows in binary counting order."""
    if not 1 <= t <= MAX_HAMMING_T:
        raise SizeGuardExceeded(f"t must lie in 1..{MAX_HAMMING_T}, got {t}")
    d = 1 << t
    return linear_code_from_check_matrix(GF2Matrix(d - 1, t, tuple(range(1, d))))


def coset_family(code: LinearCode, connection: Optional[Sequence[int]] = None) -> List[VertexSet]:
    """The cosets C + u_i, one per u_i in S; they partition V(n, 2)."""
    if connection is None:
        connection = code.connection
    if connection is None:
        raise UsageError("coset_family needs a connection set; the code was not built for one")
    s = list(connection)
    words = code.codewords.indices()
    size = 1 << code.n
    cosets = [VertexSet.from_indices((w ^ u for w in words), size) for u in s]
    seen = 0
    for u, coset in zip(s, cosets):
        if coset.bits & seen:
            raise InternalInvariantViolated(f"coset of {u} overlaps an earlier coset")
        seen |= coset.bits
    if seen != (1 << size) - 1:
        raise InternalInvariantViolated("cosets do not cover the vector space")
    return cosets


def verify_cubelike_code(n: int, connection: Sequence[int], code: VertexSet) -> Verdict:
    """TPC check on Cay(Z_2^n, S) by XOR-translation counts, without a group table."""
    if n > MAX_CODEWORD_DIMENSION:
        raise SizeGuardExceeded(f"direct verification needs n <= {MAX_CODEWORD_DIMENSION}, got {n}")
    size = 1 << n
    mask = code.mask()
    index = np.arange(size)
    counts = np.zeros(size, dtype=np.int64)
    for u in connection:
        counts += mask[index ^ int(u)]
    bad = np.flatnonzero(counts != 1)
    if bad.size:
        v = int(bad[0])
        return Verdict(ok=False, witness={"vertex": v, "neighbors_in_code": int(counts[v])})
    return Verdict(ok=True)


def check_linear_code_condition(code: LinearCode, connection: Sequence[int]) -> Verdict:
    """|C||S| = 2^n and the syndromes u_i M pairwise distinct; no graph needed."""
    s = list(connection)
    if code.size * len(s) != 1 << code.n:
        return Verdict(ok=False, witness={"condition": "cardinality", "code_size": code.size, "degree": len(s)})
    first: Dict[int, int] = {}
    for u in s:
        syn = code.syndrome(u)
        if syn in first:
            return Verdict(ok=False, witness={"condition": "syndrome_collision", "pair": [first[syn], u]})
        first[syn] = u
    return Verdict(ok=True)


def random_spanning_set(n: int, t: int, seed: int = 0) -> List[int]:
    """2^t distinct nonzero vectors of V(n, 2) containing a basis, sorted."""
    if not (1 <= t < n <= 1 << t) or n > MAX_CUBELIKE_DIMENSION:
        raise UsageError(f"need 1 <= t < n <= 2^t and n <= {MAX_CUBELIKE_DIMENSION}, got n = {n}, t = {t}")
    rng = np.random.default_rng(seed)
    d = 1 << t
    for _ in range(SPANNING_ATTEMPTS):
        chosen = (rng.choice((1 << n) - 1, size=d, replace=False) + 1).tolist()
        if gf2_rank(chosen) == n:
            return sorted(chosen)
    # standard basis topped up with the smallest remaining vectors
    basis = [1 << i for i in range(n)]
    rest = list(itertools.islice((x for x in range(1, 1 << n) if x & (x - 1)), d - n))
    return sorted(basis + rest)
