"""Bit-packed vectors and matrices over GF(2).

Coordinates are 1-indexed at the API (x1..xn).  Internally a vector is a
Python int with coordinate ``i`` stored at bit ``i - 1``, so the lowest
coordinate sits in the least significant bit of the lowest word.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence


class DimensionError(ValueError):
    """Operand shapes do not fit together."""


class MatrixFormatError(ValueError):
    """Malformed matrix text."""


def _mask(length: int) -> int:
    return (1 << length) - 1


@dataclass(frozen=True)
class BitVector:
    length: int
    bits: int = 0

    def __post_init__(self):
        if self.length < 0:
            raise ValueError("length must be non-negative")
        if self.bits < 0 or self.bits >> self.length:
            raise ValueError("bits set beyond vector length")

    @classmethod
    def from_bits(cls, values: Iterable[int]) -> "BitVector":
        values = list(values)
        word = 0
        for pos, v in enumerate(values):
            if v not in (0, 1, True, False):
                raise ValueError(f"not a bit: {v!r}")
            if v:
                word |= 1 << pos
        return cls(len(values), word)

    @classmethod
    def from_string(cls, text: str) -> "BitVector":
        if any(ch not in "01" for ch in text):
            raise ValueError(f"not a 0/1 string: {text!r}")
        return cls.from_bits(int(ch) for ch in text)

    @classmethod
    def unit(cls, length: int, i: int) -> "BitVector":
        """The vector e^(i): coordinate ``i`` (1-indexed) set, all others clear."""
        if not 1 <= i <= length:
            raise IndexError(f"coordinate {i} out of range 1..{length}")
        return cls(length, 1 << (i - 1))

    @classmethod
    def from_support(cls, length: int, support: Iterable[int]) -> "BitVector":
        word = 0
        for i in support:
            if not 1 <= i <= length:
                raise IndexError(f"coordinate {i} out of range 1..{length}")
            word |= 1 << (i - 1)
        return cls(length, word)

    def __getitem__(self, i: int) -> int:
        if not 1 <= i <= self.length:
            raise IndexError(f"coordinate {i} out of range 1..{self.length}")
        return (self.bits >> (i - 1)) & 1

    def __len__(self) -> int:
        return self.length

    def _check(self, other: "BitVector") -> None:
        if self.length != other.length:
            raise DimensionError(f"length {self.length} vs {other.length}")

    def __xor__(self, other: "BitVector") -> "BitVector":
        self._check(other)
        return BitVector(self.length, self.bits ^ other.bits)

    def __and__(self, other: "BitVector") -> "BitVector":
        self._check(other)
        return BitVector(self.length, self.bits & other.bits)

    def __or__(self, other: "BitVector") -> "BitVector":
        self._check(other)
        return BitVector(self.length, self.bits | other.bits)

    def __le__(self, other: "BitVector") -> bool:
        # coordinatewise partial order
        self._check(other)
        return self.bits & ~other.bits == 0

    def __ge__(self, other: "BitVector") -> bool:
        return other <= self

    def dot(self, other: "BitVector") -> int:
        self._check(other)
        return (self.bits & other.bits).bit_count() & 1

    def weight(self) -> int:
        return self.bits.bit_count()

    def support(self) -> tuple[int, ...]:
        out = []
        word = self.bits
        while word:
            low = word & -word
            out.append(low.bit_length())
            word ^= low
        return tuple(out)

    def is_zero(self) -> bool:
        return self.bits == 0

    def to_list(self) -> list[int]:
        return [(self.bits >> p) & 1 for p in range(self.length)]

    def __str__(self) -> str:
        return "".join(str(b) for b in self.to_list())


@dataclass(frozen=True)
class BitMatrix:
    """An m x n Boolean matrix stored as one packed int per row."""

    nrows: int
    ncols: int
    data: tuple[int, ...]

    def __post_init__(self):
        if len(self.data) != self.nrows:
            raise ValueError(f"expected {self.nrows} rows, got {len(self.data)}")
        limit = _mask(self.ncols)
        for r in self.data:
            if r < 0 or r & ~limit:
                raise ValueError("row has bits beyond the column count")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int] | str | BitVector],
                  ncols: int | None = None) -> "BitMatrix":
        vecs = []
        for r in rows:
            if isinstance(r, BitVector):
                vecs.append(r)
            elif isinstance(r, str):
                vecs.append(BitVector.from_string(r))
            else:
                vecs.append(BitVector.from_bits(r))
        if ncols is None:
            ncols = vecs[0].length if vecs else 0
        for v in vecs:
            if v.length != ncols:
                raise DimensionError("ragged rows")
        return cls(len(vecs), ncols, tuple(v.bits for v in vecs))

    @classmethod
    def zeros(cls, nrows: int, ncols: int | None = None) -> "BitMatrix":
        ncols = nrows if ncols is None else ncols
        return cls(nrows, ncols, (0,) * nrows)

    @classmethod
    def ones(cls, nrows: int, ncols: int | None = None) -> "BitMatrix":
        ncols = nrows if ncols is None else ncols
        return cls(nrows, ncols, (_mask(ncols),) * nrows)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def row(self, i: int) -> BitVector:
        """Row ``i`` (1-indexed)."""
        if not 1 <= i <= self.nrows:
            raise IndexError(f"row {i} out of range 1..{self.nrows}")
        return BitVector(self.ncols, self.data[i - 1])

    def rows(self) -> list[BitVector]:
        return [BitVector(self.ncols, r) for r in self.data]

    def entry(self, i: int, j: int) -> int:
        if not (1 <= i <= self.nrows and 1 <= j <= self.ncols):
            raise IndexError(f"entry ({i}, {j}) out of range")
        return (self.data[i - 1] >> (j - 1)) & 1

    def row_weights(self) -> list[int]:
        return [r.bit_count() for r in self.data]

    def weight(self) -> int:
        """Number of ones in the matrix."""
        return sum(self.row_weights())

    def column(self, j: int) -> int:
        """Column ``j`` packed as an int over rows (row i at bit i-1)."""
        word = 0
        bit = 1 << (j - 1)
        for i, r in enumerate(self.data):
            if r & bit:
                word |= 1 << i
        return word

    def transpose(self) -> "BitMatrix":
        return BitMatrix(self.ncols, self.nrows,
                         tuple(self.column(j) for j in range(1, self.ncols + 1)))

    def zero_columns(self, cols: Iterable[int]) -> "BitMatrix":
        """Copy with the given (1-indexed) columns cleared."""
        clear = 0
        for j in cols:
            clear |= 1 << (j - 1)
        return BitMatrix(self.nrows, self.ncols, tuple(r & ~clear for r in self.data))

    def to_lists(self) -> list[list[int]]:
        return [BitVector(self.ncols, r).to_list() for r in self.data]

    def to_text(self) -> str:
        return format_matrix(self)

    def __str__(self) -> str:
        return "\n".join(str(BitVector(self.ncols, r)) for r in self.data)


def matvec(A: BitMatrix, x: BitVector) -> BitVector:
    """y = A x over GF(2)."""
    if x.length != A.ncols:
        raise DimensionError(f"matrix has {A.ncols} columns, vector has length {x.length}")
    out = 0
    for i, r in enumerate(A.data):
        if (r & x.bits).bit_count() & 1:
            out |= 1 << i
    return BitVector(A.nrows, out)


def rank_gf2(A: BitMatrix) -> int:
    """Rank over GF(2) by elimination on a copy of the rows."""
    rows = [r for r in A.data if r]
    rank = 0
    while rows:
        pivot = rows.pop()
        if not pivot:
            continue
        rank += 1
        low = pivot & -pivot
        rows = [r ^ pivot if r & low else r for r in rows]
        rows = [r for r in rows if r]
    return rank


def det_gf2(A: BitMatrix) -> int:
    if A.nrows != A.ncols:
        raise DimensionError(f"determinant of non-square {A.nrows}x{A.ncols} matrix")
    return int(rank_gf2(A) == A.nrows)


def format_matrix(A: BitMatrix) -> str:
    lines = [f"{A.nrows} {A.ncols}"]
    lines.extend(str(BitVector(A.ncols, r)) for r in A.data)
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> BitMatrix:
    """Parse the ``m n`` header + 0/1 row strings format."""
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if lines and lines[-1].endswith("\r"):
        raise MatrixFormatError("carriage returns are not allowed")
    if not lines:
        raise MatrixFormatError("empty matrix text")
    header = lines[0].split(" ")
    if len(header) != 2 or not all(h.isdigit() for h in header):
        raise MatrixFormatError(f"bad header line: {lines[0]!r}")
    m, n = int(header[0]), int(header[1])
    body = lines[1:]
    if len(body) != m:
        raise MatrixFormatError(f"header says {m} rows, found {len(body)}")
    data = []
    for lineno, line in enumerate(body, start=2):
        if len(line) != n or any(ch not in "01" for ch in line):
            raise MatrixFormatError(f"line {lineno}: expected {n} characters from {{0,1}}")
        data.append(BitVector.from_string(line).bits)
    return BitMatrix(m, n, tuple(data))
