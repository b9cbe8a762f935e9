"""Bit-packed linear algebra over GF(2).

Vectors and matrix rows are stored as Python ints, one bit per coordinate.
Convention used everywhere in this package: coordinate 1 of a length-n
vector is the leftmost character of its text form and the most significant
of the n packed bits.  So ``BitVec.from_string("100011")`` has coordinate 1
set, and its ``value`` doubles as the basis-state index of the matching
computational basis ket.

Subspaces are canonicalized to reduced row echelon form, which makes
subspace equality a plain bit-grid comparison.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

from .errors import BudgetExceededError
from .rng import Seed, as_generator

# Exhaustive span enumeration refuses to walk more elements than this.
DEFAULT_ENUM_BUDGET = 1 << 26


class BitVec:
    """Immutable vector over GF(2) of fixed length n, packed into one int."""

    __slots__ = ("n", "value")

    def __init__(self, n: int, value: int = 0):
        if n < 1:
            raise ValueError("BitVec length must be >= 1")
        if not 0 <= value < (1 << n):
            raise ValueError(f"value {value} out of range for {n} bits")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, val):
        raise AttributeError("BitVec is immutable")

    @classmethod
    def from_string(cls, text: str) -> "BitVec":
        """Parse an ASCII '0'/'1' string, leftmost character = coordinate 1."""
        if not text or any(c not in "01" for c in text):
            raise ValueError(f"not a bit string: {text!r}")
        return cls(len(text), int(text, 2))

    @classmethod
    def from_bits(cls, bits: Sequence[int]) -> "BitVec":
        value = 0
        for b in bits:
            if b not in (0, 1):
                raise ValueError("bits must be 0 or 1")
            value = (value << 1) | b
        return cls(len(bits), value)

    @classmethod
    def from_support(cls, n: int, positions: Iterable[int]) -> "BitVec":
        """Vector with ones exactly at the given 0-based coordinates."""
        value = 0
        for p in positions:
            if not 0 <= p < n:
                raise ValueError(f"position {p} out of range")
            value |= 1 << (n - 1 - p)
        return cls(n, value)

    @classmethod
    def zeros(cls, n: int) -> "BitVec":
        return cls(n, 0)

    def bit(self, i: int) -> int:
        """Bit at 0-based coordinate i (coordinate i+1 of the 1-based convention)."""
        if not 0 <= i < self.n:
            raise IndexError(i)
        return (self.value >> (self.n - 1 - i)) & 1

    __getitem__ = bit

    @property
    def weight(self) -> int:
        return self.value.bit_count()

    def dot(self, other: "BitVec") -> int:
        """GF(2) inner product."""
        self._check_len(other)
        return (self.value & other.value).bit_count() & 1

    def support(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.n) if self.bit(i))

    def concat(self, other: "BitVec") -> "BitVec":
        return BitVec(self.n + other.n, (self.value << other.n) | other.value)

    def split(self, k: int) -> tuple["BitVec", "BitVec"]:
        """Split into the leftmost k coordinates and the rest."""
        if not 0 < k < self.n:
            raise ValueError(f"cannot split {self.n} bits at {k}")
        rest = self.n - k
        return BitVec(k, self.value >> rest), BitVec(rest, self.value & ((1 << rest) - 1))

    def _check_len(self, other: "BitVec") -> None:
        if self.n != other.n:
            raise ValueError(f"length mismatch: {self.n} vs {other.n}")

    def __xor__(self, other: "BitVec") -> "BitVec":
        self._check_len(other)
        return BitVec(self.n, self.value ^ other.value)

    def __and__(self, other: "BitVec") -> "BitVec":
        self._check_len(other)
        return BitVec(self.n, self.value & other.value)

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other) -> bool:
        return isinstance(other, BitVec) and self.n == other.n and self.value == other.value

    def __hash__(self) -> int:
        return hash((self.n, self.value))

    def __str__(self) -> str:
        return format(self.value, f"0{self.n}b")

    def __repr__(self) -> str:
        return f"BitVec('{self}')"


def random_bitvec(n: int, seed: Seed) -> BitVec:
    """Uniformly random length-n vector, deterministic given the seed."""
    rng = as_generator(seed)
    bits = rng.integers(0, 2, size=n)
    return BitVec.from_bits([int(b) for b in bits])


class Gf2Matrix:
    """Immutable matrix over GF(2), stored as packed row ints."""

    __slots__ = ("rows", "cols", "row_values")

    def __init__(self, rows: int, cols: int, row_values: Sequence[int]):
        if rows < 0 or cols < 1:
            raise ValueError("bad matrix shape")
        vals = tuple(int(v) for v in row_values)
        if len(vals) != rows:
            raise ValueError("row count mismatch")
        limit = 1 << cols
        if any(not 0 <= v < limit for v in vals):
            raise ValueError("row value out of range for column count")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "row_values", vals)

    def __setattr__(self, name, val):
        raise AttributeError("Gf2Matrix is immutable")

    @classmethod
    def from_strings(cls, lines: Sequence[str]) -> "Gf2Matrix":
        vecs = [BitVec.from_string(s) for s in lines]
        return cls.from_rows(vecs)

    @classmethod
    def from_rows(cls, vecs: Sequence[BitVec]) -> "Gf2Matrix":
        if not vecs:
            raise ValueError("need at least one row; use zeros() for empty shapes")
        cols = vecs[0].n
        if any(v.n != cols for v in vecs):
            raise ValueError("ragged rows")
        return cls(len(vecs), cols, [v.value for v in vecs])

    @classmethod
    def identity(cls, n: int) -> "Gf2Matrix":
        return cls(n, n, [1 << (n - 1 - i) for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Gf2Matrix":
        return cls(rows, cols, [0] * rows)

    def row(self, i: int) -> BitVec:
        return BitVec(self.cols, self.row_values[i])

    def __iter__(self) -> Iterator[BitVec]:
        for v in self.row_values:
            yield BitVec(self.cols, v)

    def entry(self, i: int, j: int) -> int:
        return (self.row_values[i] >> (self.cols - 1 - j)) & 1

    def column(self, j: int) -> BitVec:
        return BitVec.from_bits([self.entry(i, j) for i in range(self.rows)])

    def transpose(self) -> "Gf2Matrix":
        vals = []
        for j in range(self.cols):
            v = 0
            for i in range(self.rows):
                v = (v << 1) | self.entry(i, j)
            vals.append(v)
        return Gf2Matrix(self.cols, self.rows, vals)

    def mul_vec(self, v: BitVec) -> BitVec:
        """Matrix-vector product; result coordinate i is row_i . v."""
        if v.n != self.cols:
            raise ValueError(f"length mismatch: {v.n} vs {self.cols} columns")
        if not self.rows:
            raise ValueError("matrix has no rows")
        out = 0
        for rv in self.row_values:
            out = (out << 1) | ((rv & v.value).bit_count() & 1)
        return BitVec(self.rows, out)

    def __matmul__(self, other: "Gf2Matrix") -> "Gf2Matrix":
        if self.cols != other.rows:
            raise ValueError("inner dimensions differ")
        ot = other.transpose()
        vals = []
        for rv in self.row_values:
            v = 0
            for cv in ot.row_values:
                v = (v << 1) | ((rv & cv).bit_count() & 1)
            vals.append(v)
        return Gf2Matrix(self.rows, other.cols, vals)

    def rank(self) -> int:
        return rref(self)[1]

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.row_values)

    def inverse(self) -> "Gf2Matrix":
        """Inverse of a square invertible matrix; raises ValueError otherwise."""
        if self.rows != self.cols:
            raise ValueError("only square matrices can be inverted")
        n = self.cols
        # Work on [A | I] rows packed into 2n-bit ints.
        work = [(rv << n) | (1 << (n - 1 - i)) for i, rv in enumerate(self.row_values)]
        r = 0
        for c in range(n):
            bit = 1 << (2 * n - 1 - c)
            pivot = next((i for i in range(r, n) if work[i] & bit), None)
            if pivot is None:
                raise ValueError("matrix is not invertible over GF(2)")
            work[r], work[pivot] = work[pivot], work[r]
            for i in range(n):
                if i != r and work[i] & bit:
                    work[i] ^= work[r]
            r += 1
        mask = (1 << n) - 1
        return Gf2Matrix(n, n, [w & mask for w in work])

    def to_strings(self) -> list[str]:
        return [str(self.row(i)) for i in range(self.rows)]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Gf2Matrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.row_values == other.row_values
        )

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.row_values))

    def __repr__(self) -> str:
        return f"Gf2Matrix({self.to_strings()!r})"


def rref(m: Gf2Matrix) -> tuple[Gf2Matrix, int]:
    """Reduced row echelon form with zero rows dropped, plus the rank.

    The row space is unchanged and the output is the canonical
    representative of it: pivots strictly left to right, each pivot the only
    one in its column.
    """
    n = m.cols
    work = list(m.row_values)
    r = 0
    for c in range(n):
        bit = 1 << (n - 1 - c)
        pivot = next((i for i in range(r, len(work)) if work[i] & bit), None)
        if pivot is None:
            continue
        work[r], work[pivot] = work[pivot], work[r]
        for i in range(len(work)):
            if i != r and work[i] & bit:
                work[i] ^= work[r]
        r += 1
        if r == len(work):
            break
    # Rows below the last pivot are zero after full elimination.
    nonzero = [w for w in work if w]
    return Gf2Matrix(len(nonzero), n, nonzero), len(nonzero)


class SubspaceBasis:
    """A linear subspace of F_2^n held as its canonical RREF basis.

    Two SubspaceBasis values are equal exactly when they describe the same
    subspace, because the RREF representative is unique.
    """

    __slots__ = ("n", "basis")

    def __init__(self, n: int, rows: Iterable[BitVec | str | int] = ()):
        vecs = []
        for r in rows:
            if isinstance(r, BitVec):
                if r.n != n:
                    raise ValueError("row length differs from ambient dimension")
                vecs.append(r.value)
            elif isinstance(r, str):
                b = BitVec.from_string(r)
                if b.n != n:
                    raise ValueError("row length differs from ambient dimension")
                vecs.append(b.value)
            else:
                vecs.append(int(r))
        if vecs:
            canon, _ = rref(Gf2Matrix(len(vecs), n, vecs))
        else:
            canon = Gf2Matrix(0, n, [])
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "basis", canon)

    def __setattr__(self, name, val):
        raise AttributeError("SubspaceBasis is immutable")

    @classmethod
    def zero(cls, n: int) -> "SubspaceBasis":
        return cls(n)

    @classmethod
    def full(cls, n: int) -> "SubspaceBasis":
        return cls(n, list(Gf2Matrix.identity(n)))

    @classmethod
    def from_strings(cls, lines: Sequence[str]) -> "SubspaceBasis":
        if not lines:
            raise ValueError("cannot infer ambient dimension from no rows")
        return cls(len(lines[0]), lines)

    @property
    def dim(self) -> int:
        return self.basis.rows

    def basis_rows(self) -> list[BitVec]:
        return list(self.basis)

    def member(self, v: BitVec) -> bool:
        """Elimination of v against the RREF basis; True iff it reduces to zero."""
        if v.n != self.n:
            raise ValueError(f"length mismatch: {v.n} vs ambient {self.n}")
        x = v.value
        for rv in self.basis.row_values:
            lead = 1 << (rv.bit_length() - 1)
            if x & lead:
                x ^= rv
        return x == 0

    __contains__ = member

    def vectors(self, budget: int = DEFAULT_ENUM_BUDGET) -> Iterator[BitVec]:
        """All 2^dim elements of the subspace, in Gray-code order."""
        for v in self.vector_values(budget):
            yield BitVec(self.n, v)

    def vector_values(self, budget: int = DEFAULT_ENUM_BUDGET) -> list[int]:
        k = self.dim
        if 1 << k > budget:
            raise BudgetExceededError(f"2^{k} span elements exceed budget {budget}")
        rows = self.basis.row_values
        out = [0] * (1 << k)
        cur = 0
        for i in range(1, 1 << k):
            cur ^= rows[(i & -i).bit_length() - 1]
            out[i] = cur
        return out

    def dual(self) -> "SubspaceBasis":
        """Orthogonal complement under the GF(2) dot product."""
        n, k = self.n, self.dim
        if k == 0:
            return SubspaceBasis.full(n)
        pivots = [n - rv.bit_length() for rv in self.basis.row_values]
        pivot_set = set(pivots)
        free = [c for c in range(n) if c not in pivot_set]
        rows = []
        for f in free:
            w = 1 << (n - 1 - f)
            for i, p in enumerate(pivots):
                if (self.basis.row_values[i] >> (n - 1 - f)) & 1:
                    w |= 1 << (n - 1 - p)
            rows.append(w)
        return SubspaceBasis(n, rows)

    def min_distance(self, budget: int = DEFAULT_ENUM_BUDGET) -> int:
        """Minimum Hamming weight over the nonzero span, by exhaustive walk."""
        k = self.dim
        if k == 0:
            raise ValueError("minimum distance undefined for the zero subspace")
        if 1 << k > budget:
            raise BudgetExceededError(f"2^{k} codewords exceed budget {budget}")
        rows = self.basis.row_values
        best = self.n
        cur = 0
        for i in range(1, 1 << k):
            cur ^= rows[(i & -i).bit_length() - 1]
            w = cur.bit_count()
            if w < best:
                best = w
                if best == 1:
                    break
        return best

    def intersection_dim(self, other: "SubspaceBasis") -> int:
        if self.n != other.n:
            raise ValueError("ambient dimensions differ")
        stacked = Gf2Matrix(
            self.dim + other.dim, self.n, self.basis.row_values + other.basis.row_values
        )
        return self.dim + other.dim - stacked.rank()

    def __eq__(self, other) -> bool:
        return isinstance(other, SubspaceBasis) and self.n == other.n and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.n, self.basis))

    def __repr__(self) -> str:
        return f"SubspaceBasis({self.n}, {self.basis.to_strings()!r})"


def member(s: SubspaceBasis, v: BitVec) -> bool:
    return s.member(v)


def dual(s: SubspaceBasis) -> SubspaceBasis:
    return s.dual()


def min_distance(s: SubspaceBasis, budget: int = DEFAULT_ENUM_BUDGET) -> int:
    return s.min_distance(budget)


class BasisMap:
    """An invertible linear map of F_2^n given by its images of the standard basis.

    Column i of ``matrix`` is u_i, the image of the i-th standard basis
    vector; applying the map sends x to the GF(2) combination of columns
    selected by the bits of x.  The induced permutation of computational
    basis kets is the unitary used for conjugate-coding mints.
    """

    __slots__ = ("n", "matrix", "inverse_matrix")

    def __init__(self, matrix: Gf2Matrix):
        if matrix.rows != matrix.cols:
            raise ValueError("basis map must be square")
        inv = matrix.inverse()  # raises ValueError when singular
        object.__setattr__(self, "n", matrix.cols)
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "inverse_matrix", inv)

    def __setattr__(self, name, val):
        raise AttributeError("BasisMap is immutable")

    @classmethod
    def identity(cls, n: int) -> "BasisMap":
        return cls(Gf2Matrix.identity(n))

    @classmethod
    def from_columns(cls, cols: Sequence[BitVec]) -> "BasisMap":
        return cls(Gf2Matrix.from_rows(cols).transpose())

    @classmethod
    def from_permutation(cls, perm: Sequence[int]) -> "BasisMap":
        """Map sending coordinate i to coordinate perm[i]."""
        n = len(perm)
        if sorted(perm) != list(range(n)):
            raise ValueError("not a permutation")
        cols = [BitVec.from_support(n, [perm[i]]) for i in range(n)]
        return cls.from_columns(cols)

    def column(self, i: int) -> BitVec:
        return self.matrix.column(i)

    def columns(self) -> list[BitVec]:
        return [self.column(i) for i in range(self.n)]

    def apply(self, x: BitVec) -> BitVec:
        """Image of x: the sum of columns u_i over the set bits of x."""
        return self.matrix.mul_vec(x)

    def apply_inverse(self, y: BitVec) -> BitVec:
        return self.inverse_matrix.mul_vec(y)

    def map_subspace(self, s: SubspaceBasis) -> SubspaceBasis:
        return SubspaceBasis(self.n, [self.apply(r) for r in s.basis_rows()])

    def dual_basis(self) -> Gf2Matrix:
        """Rows u^1..u^n with u^i . u_j = delta_ij, verified exhaustively."""
        rows = self.inverse_matrix
        for i in range(self.n):
            for j in range(self.n):
                if rows.row(i).dot(self.column(j)) != (1 if i == j else 0):
                    raise AssertionError("dual basis failed the delta check")
        return rows

    def is_permutation(self) -> bool:
        return all(self.column(i).weight == 1 for i in range(self.n))

    def __eq__(self, other) -> bool:
        return isinstance(other, BasisMap) and self.matrix == other.matrix

    def __hash__(self) -> int:
        return hash(self.matrix)

    def __repr__(self) -> str:
        return f"BasisMap({self.matrix.to_strings()!r})"


def dual_basis(b: BasisMap) -> Gf2Matrix:
    return b.dual_basis()


def apply_basis_map(b: BasisMap, x: BitVec) -> BitVec:
    return b.apply(x)


def random_subspace(n: int, dim: int, seed: Seed) -> SubspaceBasis:
    """Uniformly random dim-dimensional subspace of F_2^n.

    Samples dim random rows and rejects on rank deficiency; conditioned on
    full rank, the row space is uniform over all dim-dimensional subspaces.
    """
    if not 0 <= dim <= n:
        raise ValueError(f"dim {dim} out of range for n={n}")
    if dim == 0:
        return SubspaceBasis.zero(n)
    rng = as_generator(seed)
    while True:
        rows = [random_bitvec(n, rng) for _ in range(dim)]
        s = SubspaceBasis(n, rows)
        if s.dim == dim:
            return s


def random_basis_map(n: int, seed: Seed) -> BasisMap:
    """Uniformly random invertible linear map of F_2^n (rejection on singularity)."""
    rng = as_generator(seed)
    while True:
        m = Gf2Matrix.from_rows([random_bitvec(n, rng) for _ in range(n)])
        try:
            return BasisMap(m)
        except ValueError:
            continue


def random_isometry(n: int, seed: Seed) -> BasisMap:
    """Random invertible linear isometry of the Hamming metric.

    Over GF(2) these are exactly the coordinate permutations, so the result
    is a permutation matrix and application preserves Hamming weight.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    rng = as_generator(seed)
    perm = [int(p) for p in rng.permutation(n)]
    return BasisMap.from_permutation(perm)
