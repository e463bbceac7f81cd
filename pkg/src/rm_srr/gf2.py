"""Bit-packed linear algebra over GF(2).

Vectors and matrix rows are stored as Python integers: coordinate ``j``
(1-based, as used everywhere in the public API) lives in bit ``j - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .exceptions import CapacityError, ValidationError

MAX_ENUMERATION_ROWS = 20


def _parity(x: int) -> int:
    return bin(x).count("1") & 1


@dataclass(frozen=True)
class BitVector:
    """Fixed-length binary vector; coordinate ``j`` is bit ``j - 1`` of ``bits``."""

    length: int
    bits: int = 0

    def __post_init__(self):
        if self.length < 0:
            raise ValidationError("length must be nonnegative")
        if self.bits < 0 or self.bits >> self.length:
            raise ValidationError("payload has bits beyond the vector length")

    @classmethod
    def zeros(cls, length: int) -> "BitVector":
        return cls(length, 0)

    @classmethod
    def ones(cls, length: int) -> "BitVector":
        return cls(length, (1 << length) - 1)

    @classmethod
    def unit(cls, length: int, j: int) -> "BitVector":
        if not 1 <= j <= length:
            raise ValidationError(f"index {j} outside 1..{length}")
        return cls(length, 1 << (j - 1))

    @classmethod
    def from_indices(cls, length: int, indices: Iterable[int]) -> "BitVector":
        bits = 0
        for j in indices:
            if not 1 <= j <= length:
                raise ValidationError(f"index {j} outside 1..{length}")
            bits |= 1 << (j - 1)
        return cls(length, bits)

    @classmethod
    def from_bits(cls, values: str | Sequence[int]) -> "BitVector":
        """Build from a 0/1 string or sequence listing coordinates 1, 2, ... in order."""
        if isinstance(values, str):
            values = [int(c) for c in values if not c.isspace()]
        bits = 0
        for pos, v in enumerate(values):
            if v not in (0, 1):
                raise ValidationError(f"non-binary entry {v!r}")
            if v:
                bits |= 1 << pos
        return cls(len(values), bits)

    def bit(self, j: int) -> int:
        if not 1 <= j <= self.length:
            raise ValidationError(f"index {j} outside 1..{self.length}")
        return (self.bits >> (j - 1)) & 1

    @property
    def weight(self) -> int:
        return bin(self.bits).count("1")

    def support(self) -> tuple[int, ...]:
        out = []
        x = self.bits
        while x:
            low = x & -x
            out.append(low.bit_length())
            x ^= low
        return tuple(out)

    def to_list(self) -> list[int]:
        return [(self.bits >> i) & 1 for i in range(self.length)]

    def dot(self, other: "BitVector") -> int:
        self._check_same(other)
        return _parity(self.bits & other.bits)

    def _check_same(self, other: "BitVector") -> None:
        if self.length != other.length:
            raise ValidationError(f"length mismatch: {self.length} vs {other.length}")

    def __xor__(self, other: "BitVector") -> "BitVector":
        self._check_same(other)
        return BitVector(self.length, self.bits ^ other.bits)

    __add__ = __xor__

    def __and__(self, other: "BitVector") -> "BitVector":
        self._check_same(other)
        return BitVector(self.length, self.bits & other.bits)

    def __or__(self, other: "BitVector") -> "BitVector":
        self._check_same(other)
        return BitVector(self.length, self.bits | other.bits)

    def __invert__(self) -> "BitVector":
        return BitVector(self.length, self.bits ^ ((1 << self.length) - 1))

    def issubset(self, other: "BitVector") -> bool:
        self._check_same(other)
        return self.bits & ~other.bits == 0

    def __str__(self) -> str:
        return "".join(str(b) for b in self.to_list())


@dataclass(frozen=True)
class BitMatrix:
    """Binary matrix stored as packed rows; ``rows[i]`` holds row ``i + 1``."""

    rows: tuple[int, ...]
    ncols: int

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        limit = 1 << self.ncols
        for r in self.rows:
            if r < 0 or r >= limit:
                raise ValidationError("row payload exceeds the column count")

    @classmethod
    def from_rows(cls, rows: Sequence[str | Sequence[int] | BitVector]) -> "BitMatrix":
        vecs = [r if isinstance(r, BitVector) else BitVector.from_bits(r) for r in rows]
        if not vecs:
            raise ValidationError("matrix needs at least one row")
        ncols = vecs[0].length
        if any(v.length != ncols for v in vecs):
            raise ValidationError("rows have unequal lengths")
        return cls(tuple(v.bits for v in vecs), ncols)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(tuple(1 << i for i in range(n)), n)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "BitMatrix":
        return cls((0,) * nrows, ncols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def row(self, i: int) -> BitVector:
        return BitVector(self.ncols, self.rows[i - 1])

    def column(self, j: int) -> BitVector:
        return BitVector(self.nrows, self.column_bits()[j - 1])

    def column_bits(self) -> tuple[int, ...]:
        """Columns packed as integers with row ``i`` in bit ``i - 1``."""
        cols = [0] * self.ncols
        for i, r in enumerate(self.rows):
            x = r
            while x:
                low = x & -x
                cols[low.bit_length() - 1] |= 1 << i
                x ^= low
        return tuple(cols)

    def transpose(self) -> "BitMatrix":
        return BitMatrix(self.column_bits(), self.nrows)

    def apply(self, x: BitVector) -> BitVector:
        """Return ``M @ x`` over GF(2) for ``x`` of length ``ncols``."""
        if x.length != self.ncols:
            raise ValidationError(f"vector length {x.length} != {self.ncols} columns")
        bits = 0
        for i, r in enumerate(self.rows):
            if _parity(r & x.bits):
                bits |= 1 << i
        return BitVector(self.nrows, bits)

    def times_transpose(self, other: "BitMatrix") -> "BitMatrix":
        """Return ``self @ other.T`` over GF(2)."""
        if self.ncols != other.ncols:
            raise ValidationError("column counts differ")
        out = []
        for r in self.rows:
            bits = 0
            for i, s in enumerate(other.rows):
                if _parity(r & s):
                    bits |= 1 << i
            out.append(bits)
        return BitMatrix(tuple(out), other.nrows)

    def to_lists(self) -> list[list[int]]:
        return [BitVector(self.ncols, r).to_list() for r in self.rows]

    def __str__(self) -> str:
        return "\n".join(str(BitVector(self.ncols, r)) for r in self.rows)


def rank(M: BitMatrix) -> int:
    """GF(2) row rank of ``M``."""
    pivots: dict[int, int] = {}  # leading bit -> reduced row
    for r in M.rows:
        while r:
            lead = r.bit_length() - 1
            if lead not in pivots:
                pivots[lead] = r
                break
            r ^= pivots[lead]
    return len(pivots)


def solve_combination(M: BitMatrix, target: BitVector) -> BitVector | None:
    """Find ``x`` with ``M @ x == target``, or ``None`` when no solution exists.

    Gauss-Jordan elimination pivots on the lowest-index column still free;
    free variables are set to zero, so the answer is canonical.
    """
    if target.length != M.nrows:
        raise ValidationError(f"target length {target.length} != {M.nrows} rows")
    aug_bit = 1 << M.ncols
    work = [r | (aug_bit if target.bit(i + 1) else 0) for i, r in enumerate(M.rows)]
    col_mask = aug_bit - 1
    used = [False] * len(work)
    for col in range(M.ncols):
        bit = 1 << col
        pick = next((i for i, r in enumerate(work) if not used[i] and r & bit), None)
        if pick is None:
            continue
        used[pick] = True
        for i in range(len(work)):
            if i != pick and work[i] & bit:
                work[i] ^= work[pick]
    solution = 0
    for r in work:
        if r & col_mask == 0:
            if r & aug_bit:
                return None
            continue
        if r & aug_bit:
            low = r & col_mask & -(r & col_mask)
            solution |= low
    return BitVector(M.ncols, solution)


def enumerate_codewords(M: BitMatrix) -> Iterator[BitVector]:
    """Yield ``a @ M`` for every message ``a``.

    Messages run through 0 .. 2**rows - 1 with ``a_1`` as the most
    significant bit.
    """
    k = M.nrows
    if k > MAX_ENUMERATION_ROWS:
        raise CapacityError(f"{k} message bits exceeds the enumeration limit of {MAX_ENUMERATION_ROWS}")
    # row i (1-based) is driven by bit k - i of the message counter
    weights = [M.rows[k - 1 - b] for b in range(k)]
    for t in range(1 << k):
        word = 0
        x = t
        while x:
            low = x & -x
            word ^= weights[low.bit_length() - 1]
            x ^= low
        yield BitVector(M.ncols, word)


def span_contains(M: BitMatrix, target: BitVector) -> bool:
    return solve_combination(M, target) is not None
