"""Exact linear algebra over GF(2) with bit-packed rows.

Vectors and matrix rows are stored as Python ints (bit i = coordinate i),
so products and eliminations reduce to XOR/AND plus popcounts.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

__all__ = [
    "BitVector",
    "BitMatrix",
    "SingularMatrix",
    "DependentInput",
    "mat_mul",
    "mat_vec",
    "mat_inverse",
    "rank",
    "kernel_basis",
    "column_space_basis",
    "extend_to_basis",
]


class SingularMatrix(ValueError):
    """Raised when an inverse is requested for a rank-deficient matrix."""


class DependentInput(ValueError):
    """Raised when vectors that must be linearly independent are not."""


@dataclass(frozen=True)
class BitVector:
    """Vector over GF(2): ``n`` coordinates packed into the int ``bits``."""

    n: int
    bits: int

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("negative vector length")
        if not 0 <= self.bits < (1 << self.n):
            raise ValueError(f"bits out of range for length {self.n}")

    @classmethod
    def from_bits(cls, coords: Iterable[int]) -> "BitVector":
        bits = 0
        n = 0
        for c in coords:
            if c not in (0, 1):
                raise ValueError("coordinates must be 0 or 1")
            bits |= c << n
            n += 1
        return cls(n, bits)

    @classmethod
    def zero(cls, n: int) -> "BitVector":
        return cls(n, 0)

    @classmethod
    def unit(cls, n: int, i: int) -> "BitVector":
        """Standard basis vector e_i (0-indexed)."""
        if not 0 <= i < n:
            raise ValueError("unit index out of range")
        return cls(n, 1 << i)

    def __len__(self) -> int:
        return self.n

    def __getitem__(self, i: int) -> int:
        if not 0 <= i < self.n:
            raise IndexError(i)
        return (self.bits >> i) & 1

    def __xor__(self, other: "BitVector") -> "BitVector":
        if self.n != other.n:
            raise ValueError("length mismatch")
        return BitVector(self.n, self.bits ^ other.bits)

    def weight(self) -> int:
        return self.bits.bit_count()

    def is_zero(self) -> bool:
        return self.bits == 0

    def support(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.n) if (self.bits >> i) & 1)

    def to_tuple(self) -> tuple[int, ...]:
        return tuple((self.bits >> i) & 1 for i in range(self.n))


@dataclass(frozen=True)
class BitMatrix:
    """Dense GF(2) matrix; ``rows[i]`` packs row i, bit j = entry (i, j)."""

    n_rows: int
    n_cols: int
    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n_rows < 0 or self.n_cols < 0:
            raise ValueError("negative matrix dimension")
        if len(self.rows) != self.n_rows:
            raise ValueError("row count does not match n_rows")
        limit = 1 << self.n_cols
        for r in self.rows:
            if not 0 <= r < limit:
                raise ValueError("row bits out of range")

    @classmethod
    def from_rows(cls, rows: Sequence[Iterable[int]], n_cols: int | None = None) -> "BitMatrix":
        packed = []
        width = n_cols
        for row in rows:
            bits = 0
            n = 0
            for c in row:
                if c not in (0, 1):
                    raise ValueError("entries must be 0 or 1")
                bits |= c << n
                n += 1
            if width is None:
                width = n
            elif n != width:
                raise ValueError("ragged rows")
            packed.append(bits)
        if width is None:
            raise ValueError("cannot infer column count from zero rows")
        return cls(len(packed), width, tuple(packed))

    @classmethod
    def from_columns(cls, cols: Sequence[BitVector], n_rows: int) -> "BitMatrix":
        rows = [0] * n_rows
        for j, c in enumerate(cols):
            if c.n != n_rows:
                raise ValueError("column length mismatch")
            for i in range(n_rows):
                rows[i] |= ((c.bits >> i) & 1) << j
        return cls(n_rows, len(cols), tuple(rows))

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def zeros(cls, n_rows: int, n_cols: int) -> "BitMatrix":
        return cls(n_rows, n_cols, (0,) * n_rows)

    def entry(self, i: int, j: int) -> int:
        if not (0 <= i < self.n_rows and 0 <= j < self.n_cols):
            raise IndexError((i, j))
        return (self.rows[i] >> j) & 1

    def row(self, i: int) -> BitVector:
        return BitVector(self.n_cols, self.rows[i])

    def column(self, j: int) -> BitVector:
        if not 0 <= j < self.n_cols:
            raise IndexError(j)
        bits = 0
        for i in range(self.n_rows):
            bits |= ((self.rows[i] >> j) & 1) << i
        return BitVector(self.n_rows, bits)

    def transpose(self) -> "BitMatrix":
        rows = [0] * self.n_cols
        for i, r in enumerate(self.rows):
            while r:
                j = r & -r
                rows[j.bit_length() - 1] |= 1 << i
                r ^= j
        return BitMatrix(self.n_cols, self.n_rows, tuple(rows))

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.n_cols)] for r in self.rows]


def mat_mul(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    """Matrix product over GF(2) (XOR-accumulated AND)."""
    if a.n_cols != b.n_rows:
        raise ValueError(f"dimension mismatch: {a.n_cols} vs {b.n_rows}")
    bt = b.transpose()
    rows = []
    for ra in a.rows:
        bits = 0
        for j, cb in enumerate(bt.rows):
            bits |= ((ra & cb).bit_count() & 1) << j
        rows.append(bits)
    return BitMatrix(a.n_rows, b.n_cols, tuple(rows))


def mat_vec(m: BitMatrix, v: BitVector) -> BitVector:
    """Matrix-vector product m.v over GF(2)."""
    if m.n_cols != v.n:
        raise ValueError(f"dimension mismatch: {m.n_cols} vs {v.n}")
    bits = 0
    for i, r in enumerate(m.rows):
        bits |= ((r & v.bits).bit_count() & 1) << i
    return BitVector(m.n_rows, bits)


def _reduce(v: int, echelon: dict[int, int]) -> int:
    # Reduce v against vectors keyed by their highest set bit.
    while v:
        lead = v.bit_length() - 1
        pivot = echelon.get(lead)
        if pivot is None:
            return v
        v ^= pivot
    return 0


def rank(m: BitMatrix) -> int:
    echelon: dict[int, int] = {}
    r = 0
    for row in m.rows:
        v = _reduce(row, echelon)
        if v:
            echelon[v.bit_length() - 1] = v
            r += 1
    return r


def mat_inverse(m: BitMatrix) -> BitMatrix:
    """Inverse by Gauss-Jordan elimination; raises SingularMatrix if rank < n."""
    if m.n_rows != m.n_cols:
        raise ValueError("matrix not square")
    n = m.n_rows
    # Augment each row with an identity block in the high bits.
    work = [m.rows[i] | (1 << (n + i)) for i in range(n)]
    for col in range(n):
        pivot = None
        for i in range(col, n):
            if (work[i] >> col) & 1:
                pivot = i
                break
        if pivot is None:
            raise SingularMatrix(f"matrix is singular (rank < {n})")
        work[col], work[pivot] = work[pivot], work[col]
        for i in range(n):
            if i != col and (work[i] >> col) & 1:
                work[i] ^= work[col]
    mask = (1 << n) - 1 if n else 0
    return BitMatrix(n, n, tuple((w >> n) & mask for w in work))


def _rref(m: BitMatrix) -> tuple[list[int], list[int]]:
    rows = list(m.rows)
    pivots: list[int] = []
    r = 0
    for col in range(m.n_cols):
        sel = None
        for i in range(r, m.n_rows):
            if (rows[i] >> col) & 1:
                sel = i
                break
        if sel is None:
            continue
        rows[r], rows[sel] = rows[sel], rows[r]
        for i in range(m.n_rows):
            if i != r and (rows[i] >> col) & 1:
                rows[i] ^= rows[r]
        pivots.append(col)
        r += 1
    return rows, pivots


def kernel_basis(m: BitMatrix) -> list[BitVector]:
    """Basis of {x : m.x = 0}, one vector per free column, ascending index."""
    rows, pivots = _rref(m)
    pivot_set = set(pivots)
    basis = []
    for free in range(m.n_cols):
        if free in pivot_set:
            continue
        bits = 1 << free
        for r, p in enumerate(pivots):
            bits |= ((rows[r] >> free) & 1) << p
        basis.append(BitVector(m.n_cols, bits))
    return basis


def column_space_basis(m: BitMatrix) -> tuple[list[BitVector], list[BitVector]]:
    """Greedy left-to-right basis of the column space with preimages.

    Returns (c_basis, d_preimages) where c_basis[i] is a kept column of m,
    d_preimages[i] is the standard basis vector of the kept column index,
    so m . d_preimages[i] = c_basis[i].
    """
    echelon: dict[int, int] = {}
    c_basis = []
    d_preimages = []
    for j in range(m.n_cols):
        col = m.column(j)
        reduced = _reduce(col.bits, echelon)
        if reduced:
            echelon[reduced.bit_length() - 1] = reduced
            c_basis.append(col)
            d_preimages.append(BitVector.unit(m.n_cols, j))
    return c_basis, d_preimages


def extend_to_basis(partial: Sequence[BitVector], dim: int) -> list[BitVector]:
    """Complete independent vectors to a basis of GF(2)^dim.

    Appends standard basis vectors e_0, e_1, ... in index order, keeping each
    one that is independent of the running set. Returns only the appended
    vectors.
    """
    echelon: dict[int, int] = {}
    for v in partial:
        if v.n != dim:
            raise ValueError("vector length does not match dim")
        reduced = _reduce(v.bits, echelon)
        if not reduced:
            raise DependentInput("partial set is linearly dependent")
        echelon[reduced.bit_length() - 1] = reduced
    appended = []
    for i in range(dim):
        if len(echelon) == dim:
            break
        reduced = _reduce(1 << i, echelon)
        if reduced:
            echelon[reduced.bit_length() - 1] = reduced
            appended.append(BitVector.unit(dim, i))
    return appended
