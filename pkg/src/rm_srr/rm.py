"""Binary Reed-Muller codes RM(r, m) in the canonical row/column order.

Columns are indexed by points of EG(m, 2): column ``j`` is the point whose
coordinate vector is the m-bit binary expansion of ``j - 1`` read with the
first coordinate as the most significant bit.  The monomial row ``v_i``
marks the points whose bit ``i - 1`` (counting from the least significant
end) is set, so ``v_1`` alternates 0101... and ``v_m`` is 0...01...1.

Rows are ordered by degree, and within a degree block by descending
colexicographic order of the variable tuple: for m = 4, r = 2 this gives
``1, v4, v3, v2, v1, v3v4, v2v4, v1v4, v2v3, v1v3, v1v2``.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb

from .exceptions import CapacityError, ValidationError
from .gf2 import MAX_ENUMERATION_ROWS, BitMatrix, BitVector, enumerate_codewords


@dataclass(frozen=True, order=True)
class RmParams:
    r: int
    m: int

    def __post_init__(self):
        if not isinstance(self.r, int) or not isinstance(self.m, int):
            raise ValidationError("r and m must be integers")
        if self.m < 1:
            raise ValidationError(f"m must be at least 1, got {self.m}")
        if not 0 <= self.r <= self.m:
            raise ValidationError(f"need 0 <= r <= m, got r={self.r}, m={self.m}")

    @property
    def n(self) -> int:
        return 1 << self.m

    @property
    def k(self) -> int:
        return sum(comb(self.m, i) for i in range(self.r + 1))

    @property
    def d(self) -> int:
        return 1 << (self.m - self.r)

    @property
    def has_dual(self) -> bool:
        return self.m >= self.r + 1

    def require_dual(self) -> None:
        if not self.has_dual:
            raise ValidationError(f"RM({self.r},{self.m}) needs m >= r + 1 for this operation")

    def order_range(self, order: int) -> tuple[int, int]:
        """First and last object index of the given symbol order (inclusive)."""
        if not 0 <= order <= self.r:
            raise ValidationError(f"order {order} outside 0..{self.r}")
        first = sum(comb(self.m, i) for i in range(order)) + 1
        return first, first + comb(self.m, order) - 1

    def __str__(self) -> str:
        return f"RM({self.r},{self.m})"


@dataclass(frozen=True)
class MonomialIndex:
    """Variable tuple of a message symbol; the empty tuple is the constant term."""

    variables: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.variables)

    @property
    def label(self) -> str:
        if not self.variables:
            return "1"
        return "".join(f"v{i}" for i in self.variables)

    @property
    def symbol(self) -> str:
        """Message symbol name such as ``a0`` or ``a12``."""
        if not self.variables:
            return "a0"
        return "a" + "".join(str(i) for i in self.variables)


@dataclass(frozen=True)
class ObjectIndex:
    j: int
    order: int
    monomial: MonomialIndex


def _descending_colex(m: int, degree: int) -> list[tuple[int, ...]]:
    tuples = list(combinations(range(1, m + 1), degree))
    tuples.sort(key=lambda t: tuple(reversed(t)), reverse=True)
    return tuples


@lru_cache(maxsize=None)
def monomials(p: RmParams) -> tuple[MonomialIndex, ...]:
    """Monomials in row order of the generator matrix."""
    out = []
    for degree in range(p.r + 1):
        out.extend(MonomialIndex(t) for t in _descending_colex(p.m, degree))
    return tuple(out)


def variable_row(m: int, i: int) -> int:
    """Packed incidence row of ``v_i`` over the 2**m points."""
    bits = 0
    for j in range(1 << m):
        if (j >> (i - 1)) & 1:
            bits |= 1 << j
    return bits


@lru_cache(maxsize=None)
def generator_matrix(p: RmParams) -> BitMatrix:
    n = p.n
    full = (1 << n) - 1
    var_rows = {i: variable_row(p.m, i) for i in range(1, p.m + 1)}
    rows = []
    for mono in monomials(p):
        row = full
        for i in mono.variables:
            row &= var_rows[i]
        rows.append(row)
    return BitMatrix(tuple(rows), n)


def object_order(p: RmParams, j: int) -> ObjectIndex:
    if not 1 <= j <= p.k:
        raise ValidationError(f"object index {j} outside 1..{p.k}")
    mono = monomials(p)[j - 1]
    return ObjectIndex(j, mono.degree, mono)


def dual_params(p: RmParams) -> RmParams:
    if not p.has_dual:
        raise ValidationError(f"{p} has a trivial dual (m = r)")
    return RmParams(p.m - p.r - 1, p.m)


def min_weight_codewords(p: RmParams) -> list[BitVector]:
    """All weight-2**(m-r) codewords, sorted by support."""
    if p.k > MAX_ENUMERATION_ROWS:
        raise CapacityError(f"{p} has dimension {p.k} > {MAX_ENUMERATION_ROWS}")
    target = p.d
    found = [c for c in enumerate_codewords(generator_matrix(p)) if c.weight == target]
    found.sort(key=lambda c: c.support())
    return found


def matrix_to_csv(p: RmParams) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for row in generator_matrix(p).to_lists():
        writer.writerow(row)
    return buf.getvalue()


def matrix_to_json(p: RmParams) -> dict:
    G = generator_matrix(p)
    return {
        "params": {"r": p.r, "m": p.m, "n": p.n, "k": p.k, "d": p.d},
        "rows": [
            {"label": mono.label, "bits": str(G.row(i))}
            for i, mono in enumerate(monomials(p), start=1)
        ],
    }


def matrix_to_table(p: RmParams) -> str:
    G = generator_matrix(p)
    labels = [mono.label for mono in monomials(p)]
    width = max(len(s) for s in labels)
    lines = []
    for label, row in zip(labels, G.to_lists()):
        lines.append(f"{label:>{width}} | " + " ".join(str(b) for b in row))
    return "\n".join(lines) + "\n"


def dumps_matrix_json(p: RmParams) -> str:
    return json.dumps(matrix_to_json(p), indent=2) + "\n"
