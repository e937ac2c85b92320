"""Exact linear algebra over GF(2) on bit-packed matrices.

Rows are stored as Python integers used as bitsets: bit ``j`` of a row word
is the entry in column ``j``.  Arbitrary-precision integers give word-size
independent packing and make row operations single XORs.  Vectors are plain
integers under the same convention; APIs that accept a vector also accept a
sequence of 0/1 entries (which is length-checked).

Elimination is deterministic everywhere: pivots are chosen leftmost-column,
topmost-row first, so reduced forms, ranks, and nullspace bases are
reproducible bit for bit.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import DimensionMismatchError

__all__ = [
    "BitMatrix",
    "Rref",
    "rank",
    "nullspace_basis",
    "in_rowspace",
    "solve",
    "vector_from_bits",
    "vector_to_bits",
]


def vector_from_bits(bits: Sequence[int]) -> int:
    """Pack a 0/1 sequence into an integer bitset (index 0 = bit 0)."""
    v = 0
    for j, b in enumerate(bits):
        if b not in (0, 1):
            raise ValueError(f"entry {j} is not a bit: {b!r}")
        v |= b << j
    return v


def vector_to_bits(v: int, length: int) -> list[int]:
    """Unpack an integer bitset into a list of 0/1 entries."""
    return [(v >> j) & 1 for j in range(length)]


def _coerce_vector(v, cols: int) -> int:
    if isinstance(v, int):
        if v < 0 or v >> cols:
            raise DimensionMismatchError(f"vector does not fit in {cols} columns")
        return v
    seq = list(v)
    if len(seq) != cols:
        raise DimensionMismatchError(f"vector length {len(seq)} != {cols} columns")
    return vector_from_bits(seq)


class BitMatrix:
    """Immutable GF(2) matrix with bit-packed rows."""

    __slots__ = ("rows", "cols", "row_words")

    def __init__(self, rows: int, cols: int, row_words: Iterable[int]):
        words = tuple(row_words)
        if len(words) != rows:
            raise DimensionMismatchError(f"expected {rows} rows, got {len(words)}")
        for i, w in enumerate(words):
            if w < 0 or w >> cols:
                raise DimensionMismatchError(f"row {i} has bits outside {cols} columns")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "row_words", words)

    def __setattr__(self, name, value):
        raise AttributeError("BitMatrix is immutable")

    @classmethod
    def from_rows(cls, bit_rows: Sequence[Sequence[int]], cols: int | None = None) -> "BitMatrix":
        bit_rows = [list(r) for r in bit_rows]
        if cols is None:
            cols = len(bit_rows[0]) if bit_rows else 0
        for i, r in enumerate(bit_rows):
            if len(r) != cols:
                raise DimensionMismatchError(f"row {i} has length {len(r)}, expected {cols}")
        return cls(len(bit_rows), cols, (vector_from_bits(r) for r in bit_rows))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(rows, cols, (0,) * rows)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, n, (1 << i for i in range(n)))

    def to_lists(self) -> list[list[int]]:
        return [vector_to_bits(w, self.cols) for w in self.row_words]

    def row(self, i: int) -> int:
        return self.row_words[i]

    def get(self, i: int, j: int) -> int:
        return (self.row_words[i] >> j) & 1

    def transpose(self) -> "BitMatrix":
        out = [0] * self.cols
        for i, w in enumerate(self.row_words):
            bit = 1 << i
            while w:
                j = (w & -w).bit_length() - 1
                out[j] |= bit
                w &= w - 1
        return BitMatrix(self.cols, self.rows, out)

    def hstack(self, other: "BitMatrix") -> "BitMatrix":
        if self.rows != other.rows:
            raise DimensionMismatchError("row counts differ")
        shift = self.cols
        return BitMatrix(
            self.rows,
            self.cols + other.cols,
            (a | (b << shift) for a, b in zip(self.row_words, other.row_words)),
        )

    def vstack(self, other: "BitMatrix") -> "BitMatrix":
        if self.cols != other.cols:
            raise DimensionMismatchError("column counts differ")
        return BitMatrix(self.rows + other.rows, self.cols, self.row_words + other.row_words)

    def matmul(self, other: "BitMatrix") -> "BitMatrix":
        """GF(2) matrix product self @ other."""
        if self.cols != other.rows:
            raise DimensionMismatchError("inner dimensions differ")
        ot = other.transpose()
        out = []
        for w in self.row_words:
            acc = 0
            for j, c in enumerate(ot.row_words):
                acc |= ((w & c).bit_count() & 1) << j
            out.append(acc)
        return BitMatrix(self.rows, other.cols, out)

    def mul_vector(self, v) -> int:
        """Matrix-vector product M @ v; bit i of the result is row i parity."""
        v = _coerce_vector(v, self.cols)
        acc = 0
        for i, w in enumerate(self.row_words):
            acc |= ((w & v).bit_count() & 1) << i
        return acc

    def is_zero(self) -> bool:
        return all(w == 0 for w in self.row_words)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BitMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self.row_words == other.row_words
        )

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self.row_words))

    def __repr__(self) -> str:
        return f"BitMatrix({self.rows}x{self.cols})"


class Rref(object):
    """Reduced row-echelon form of a BitMatrix with elimination history.

    ``pivot_rows[i]`` has its leading one at column ``pivot_cols[i]`` and that
    column is zero in every other pivot row.  ``combos[i]`` records which
    original rows were XORed to produce ``pivot_rows[i]`` (bit k = row k),
    which is what back-solving against the original matrix needs.
    """

    __slots__ = ("matrix", "pivot_rows", "pivot_cols", "combos")

    def __init__(self, matrix: BitMatrix):
        self.matrix = matrix
        rows = list(matrix.row_words)
        combos = [1 << i for i in range(matrix.rows)]
        pivot_cols: list[int] = []
        r = 0
        for col in range(matrix.cols):
            bit = 1 << col
            pivot = None
            for i in range(r, len(rows)):
                if rows[i] & bit:
                    pivot = i
                    break
            if pivot is None:
                continue
            rows[r], rows[pivot] = rows[pivot], rows[r]
            combos[r], combos[pivot] = combos[pivot], combos[r]
            for i in range(len(rows)):
                if i != r and rows[i] & bit:
                    rows[i] ^= rows[r]
                    combos[i] ^= combos[r]
            pivot_cols.append(col)
            r += 1
            if r == len(rows):
                break
        # Rows must be sliced only after elimination has fully settled:
        # later pivots keep reducing earlier rows.
        self.pivot_rows = rows[:r]
        self.pivot_cols = pivot_cols
        self.combos = combos[:r]

    @property
    def rank(self) -> int:
        return len(self.pivot_cols)

    def reduce(self, v: int) -> int:
        """Residual of v after elimination against the pivot rows."""
        for row, col in zip(self.pivot_rows, self.pivot_cols):
            if (v >> col) & 1:
                v ^= row
        return v

    def contains(self, v: int) -> bool:
        return self.reduce(v) == 0

    def express(self, v: int) -> int | None:
        """Coefficients over the original rows summing to v, or None."""
        combo = 0
        for row, col, c in zip(self.pivot_rows, self.pivot_cols, self.combos):
            if (v >> col) & 1:
                v ^= row
                combo ^= c
        return combo if v == 0 else None

    def nullspace_basis(self) -> list[int]:
        """Deterministic kernel basis, one vector per free column."""
        pivot_set = set(self.pivot_cols)
        basis = []
        for free in range(self.matrix.cols):
            if free in pivot_set:
                continue
            v = 1 << free
            for row, col in zip(self.pivot_rows, self.pivot_cols):
                if (row >> free) & 1:
                    v |= 1 << col
            basis.append(v)
        return basis


def rank(m: BitMatrix) -> int:
    """Dimension of the row space of m over GF(2)."""
    return Rref(m).rank


def nullspace_basis(m: BitMatrix) -> list[int]:
    """Basis of {v : m @ v = 0}, packed as integers; length cols - rank."""
    return Rref(m).nullspace_basis()


def in_rowspace(v, m: BitMatrix) -> bool:
    """True iff v is a GF(2) sum of rows of m."""
    return Rref(m).contains(_coerce_vector(v, m.cols))


def solve(m: BitMatrix, target) -> int | None:
    """Row-combination coefficients x with x @ m = target, or None.

    The returned integer has bit k set iff row k participates.  A missing
    solution is a None result, not an error; dimension mismatches raise.
    """
    return Rref(m).express(_coerce_vector(target, m.cols))
