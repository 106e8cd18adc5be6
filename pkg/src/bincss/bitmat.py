"""Bit-packed binary matrices with GF(2) and Boolean-semiring kernels.

A :class:`BitMatrix` stores one Python integer per row; bit ``j`` of row ``i``
is entry ``(i, j)``.  Python integers are arbitrary-width word arrays, so this
is the usual row-major packing without a fixed word size.  Columns are
extracted on demand and cached, with bit ``i`` of a column integer holding
row ``i``.  Bits beyond the logical width are always zero, which keeps
popcount-based distances exact.
"""

from __future__ import annotations

import os
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import cached_property

from .errors import DimensionError, FormatError

__all__ = [
    "BitColumn",
    "BitMatrix",
    "bool_mul",
    "bool_union_columns",
    "bool_union_table",
    "format_bmx",
    "from_columns",
    "from_rows",
    "gf2_combine_columns",
    "gf2_mul",
    "gf2_rank",
    "gf2_span_table",
    "gray_code",
    "hamming_dist",
    "identity",
    "make",
    "ones",
    "parse_bmx",
    "read_bmx",
    "select_columns",
    "write_bmx",
    "zeros",
]


def _mask(width: int) -> int:
    return (1 << width) - 1


@dataclass(frozen=True)
class BitColumn:
    """A packed bit vector; bit ``i`` of ``bits`` is coordinate ``i``."""

    length: int
    bits: int

    def __post_init__(self):
        if self.length < 1:
            raise DimensionError(f"column length must be >= 1, got {self.length}")
        if self.bits < 0 or self.bits >> self.length:
            raise DimensionError("column has bits set beyond its length")

    @classmethod
    def from_list(cls, values: Sequence[int]) -> BitColumn:
        bits = 0
        for i, x in enumerate(values):
            if x not in (0, 1):
                raise ValueError(f"entry {i} is {x!r}, expected 0 or 1")
            bits |= x << i
        return cls(len(values), bits)

    def to_list(self) -> list[int]:
        return [(self.bits >> i) & 1 for i in range(self.length)]

    def weight(self) -> int:
        return self.bits.bit_count()

    def __xor__(self, other: BitColumn) -> BitColumn:
        if self.length != other.length:
            raise DimensionError("column lengths differ")
        return BitColumn(self.length, self.bits ^ other.bits)


@dataclass(frozen=True)
class BitMatrix:
    """Immutable ``rows x cols`` binary matrix packed row-major."""

    rows: int
    cols: int
    data: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise DimensionError(f"zero-dimension matrix {self.rows}x{self.cols}")
        if len(self.data) != self.rows:
            raise DimensionError(f"expected {self.rows} packed rows, got {len(self.data)}")
        limit = 1 << self.cols
        for r in self.data:
            if r < 0 or r >= limit:
                raise DimensionError("row has padding bits set")

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    @cached_property
    def columns(self) -> tuple[int, ...]:
        """Column bitsets (bit ``i`` = row ``i``), built once per matrix."""
        out = [0] * self.cols
        for i, r in enumerate(self.data):
            while r:
                low = r & -r
                j = low.bit_length() - 1
                out[j] |= 1 << i
                r ^= low
        return tuple(out)

    def column(self, j: int) -> BitColumn:
        return BitColumn(self.rows, self.columns[j])

    def entry(self, i: int, j: int) -> int:
        return (self.data[i] >> j) & 1

    def popcount(self) -> int:
        return sum(r.bit_count() for r in self.data)

    def transpose(self) -> BitMatrix:
        return BitMatrix(self.cols, self.rows, self.columns)

    @property
    def T(self) -> BitMatrix:
        return self.transpose()

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.cols)] for r in self.data]

    def __xor__(self, other: BitMatrix) -> BitMatrix:
        _same_shape(self, other)
        return BitMatrix(self.rows, self.cols, tuple(a ^ b for a, b in zip(self.data, other.data)))

    def __or__(self, other: BitMatrix) -> BitMatrix:
        _same_shape(self, other)
        return BitMatrix(self.rows, self.cols, tuple(a | b for a, b in zip(self.data, other.data)))

    def complement(self) -> BitMatrix:
        m = _mask(self.cols)
        return BitMatrix(self.rows, self.cols, tuple(r ^ m for r in self.data))

    def __str__(self) -> str:
        return format_bmx(self)


def _same_shape(A: BitMatrix, B: BitMatrix) -> None:
    if A.shape != B.shape:
        raise DimensionError(f"shape mismatch {A.shape} vs {B.shape}")


def make(d: int, n: int, entries: Sequence[int]) -> BitMatrix:
    """Build a ``d x n`` matrix from row-major 0/1 entries."""
    if d < 1 or n < 1:
        raise DimensionError(f"zero-dimension matrix {d}x{n}")
    if len(entries) != d * n:
        raise DimensionError(f"expected {d * n} entries, got {len(entries)}")
    data = []
    for i in range(d):
        r = 0
        for j in range(n):
            x = entries[i * n + j]
            if x not in (0, 1):
                raise ValueError(f"entry ({i},{j}) is {x!r}, expected 0 or 1")
            r |= int(x) << j
        data.append(r)
    return BitMatrix(d, n, tuple(data))


def from_rows(rows: Sequence[Sequence[int]]) -> BitMatrix:
    if not rows:
        raise DimensionError("no rows")
    n = len(rows[0])
    if any(len(r) != n for r in rows):
        raise DimensionError("ragged rows")
    return make(len(rows), n, [x for r in rows for x in r])


def from_columns(d: int, columns: Sequence[int]) -> BitMatrix:
    """Assemble a matrix from column bitsets (bit ``i`` = row ``i``)."""
    n = len(columns)
    if d < 1 or n < 1:
        raise DimensionError(f"zero-dimension matrix {d}x{n}")
    limit = 1 << d
    data = [0] * d
    for j, c in enumerate(columns):
        if c < 0 or c >= limit:
            raise DimensionError(f"column {j} has bits beyond row {d}")
        while c:
            low = c & -c
            data[low.bit_length() - 1] |= 1 << j
            c ^= low
    return BitMatrix(d, n, tuple(data))


def zeros(d: int, n: int) -> BitMatrix:
    return BitMatrix(d, n, (0,) * d)


def ones(d: int, n: int) -> BitMatrix:
    return BitMatrix(d, n, (_mask(n),) * d)


def identity(n: int) -> BitMatrix:
    return BitMatrix(n, n, tuple(1 << i for i in range(n)))


def select_columns(A: BitMatrix, indices: Sequence[int]) -> BitMatrix:
    for j in indices:
        if not 0 <= j < A.cols:
            raise IndexError(f"column index {j} out of range for {A.cols} columns")
    cols = A.columns
    return from_columns(A.rows, [cols[j] for j in indices])


def _check_inner(A: BitMatrix, B: BitMatrix) -> None:
    if A.cols != B.rows:
        raise DimensionError(f"inner dimensions differ: {A.shape} x {B.shape}")


def gf2_mul(A: BitMatrix, B: BitMatrix) -> BitMatrix:
    """Matrix product over GF(2): each output row XORs the rows of ``B`` picked by a row of ``A``."""
    _check_inner(A, B)
    out = []
    for r in A.data:
        acc = 0
        while r:
            low = r & -r
            acc ^= B.data[low.bit_length() - 1]
            r ^= low
        out.append(acc)
    return BitMatrix(A.rows, B.cols, tuple(out))


def bool_mul(A: BitMatrix, B: BitMatrix) -> BitMatrix:
    """Matrix product over the Boolean semiring (OR of ANDs)."""
    _check_inner(A, B)
    out = []
    for r in A.data:
        acc = 0
        while r:
            low = r & -r
            acc |= B.data[low.bit_length() - 1]
            r ^= low
        out.append(acc)
    return BitMatrix(A.rows, B.cols, tuple(out))


def hamming_dist(A: BitMatrix, B: BitMatrix) -> int:
    _same_shape(A, B)
    return sum((a ^ b).bit_count() for a, b in zip(A.data, B.data))


def gf2_rank(A: BitMatrix) -> int:
    """Rank over GF(2) by elimination on the packed rows."""
    pivots: dict[int, int] = {}  # leading bit -> reduced row
    for r in A.data:
        while r:
            top = r.bit_length() - 1
            if top not in pivots:
                pivots[top] = r
                break
            r ^= pivots[top]
    return len(pivots)


def gray_code(k: int) -> Iterable[tuple[int, int]]:
    """Yield ``(code, flipped_bit)`` over all ``2**k`` codes; the first flip is ``-1``."""
    yield 0, -1
    prev = 0
    for i in range(1, 1 << k):
        g = i ^ (i >> 1)
        yield g, (g ^ prev).bit_length() - 1
        prev = g


def gf2_span_table(columns: Sequence[int]) -> list[int]:
    """All ``2**k`` XOR-combinations; entry ``c`` combines the columns at the set bits of ``c``.

    Walks the Gray code, so each entry costs a single XOR.
    """
    table = [0] * (1 << len(columns))
    acc = 0
    for g, bit in gray_code(len(columns)):
        if bit >= 0:
            acc ^= columns[bit]
        table[g] = acc
    return table


def bool_union_table(columns: Sequence[int]) -> list[int]:
    """All ``2**k`` OR-combinations, indexed like :func:`gf2_span_table`.

    OR has no inverse, so each entry extends the cached union of its subset
    without the lowest member.
    """
    table = [0] * (1 << len(columns))
    for c in range(1, len(table)):
        low = c & -c
        table[c] = table[c ^ low] | columns[low.bit_length() - 1]
    return table


def _check_coeff(P: BitMatrix, c: BitColumn) -> None:
    if c.length != P.cols:
        raise DimensionError(f"coefficient length {c.length} != {P.cols} columns")


def gf2_combine_columns(P: BitMatrix, c: BitColumn) -> BitColumn:
    _check_coeff(P, c)
    acc = 0
    for i, col in enumerate(P.columns):
        if (c.bits >> i) & 1:
            acc ^= col
    return BitColumn(P.rows, acc)


def bool_union_columns(P: BitMatrix, c: BitColumn) -> BitColumn:
    _check_coeff(P, c)
    acc = 0
    for i, col in enumerate(P.columns):
        if (c.bits >> i) & 1:
            acc |= col
    return BitColumn(P.rows, acc)


# .bmx text format: "d n" header, then d lines of n characters from {0,1}.


def format_bmx(A: BitMatrix) -> str:
    lines = [f"{A.rows} {A.cols}"]
    for r in A.data:
        lines.append("".join("1" if (r >> j) & 1 else "0" for j in range(A.cols)))
    return "\n".join(lines) + "\n"


def _parse_count(tok: str, what: str) -> int:
    if not tok or not tok.isdigit() or not tok.isascii() or (len(tok) > 1 and tok[0] == "0"):
        raise FormatError(f"bad {what} {tok!r}")
    return int(tok)


def parse_bmx(text: str) -> BitMatrix:
    """Strict parser for the .bmx format; any deviation raises :class:`FormatError`."""
    if not text.endswith("\n"):
        raise FormatError("file must end with a newline")
    lines = text[:-1].split("\n")
    header = lines[0].split(" ")
    if len(header) != 2:
        raise FormatError(f"bad header {lines[0]!r}")
    d = _parse_count(header[0], "row count")
    n = _parse_count(header[1], "column count")
    if d < 1 or n < 1:
        raise FormatError(f"zero-dimension matrix {d}x{n}")
    body = lines[1:]
    if len(body) != d:
        raise FormatError(f"expected {d} rows, found {len(body)}")
    data = []
    for i, line in enumerate(body):
        if len(line) != n or any(ch not in "01" for ch in line):
            raise FormatError(f"row {i} must be exactly {n} characters from {{0,1}}")
        r = 0
        for j, ch in enumerate(line):
            if ch == "1":
                r |= 1 << j
        data.append(r)
    return BitMatrix(d, n, tuple(data))


def read_bmx(path: str | os.PathLike) -> BitMatrix:
    with open(path, encoding="ascii", newline="") as fh:
        try:
            text = fh.read()
        except UnicodeDecodeError as exc:
            raise FormatError(f"{path}: not ASCII") from exc
    return parse_bmx(text)


def write_bmx(path: str | os.PathLike, A: BitMatrix) -> None:
    with open(path, "w", encoding="ascii", newline="") as fh:
        fh.write(format_bmx(A))
