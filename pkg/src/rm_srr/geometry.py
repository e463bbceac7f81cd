"""The binary affine geometry EG(m, 2).

A point is an integer ``0 <= p < 2**m``; its 1-based index is ``p + 1``
and its coordinate tuple is the binary expansion of ``p`` with the first
coordinate most significant (so P_9 = (1, 0, 0, 0) when m = 4).
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product
from typing import Iterator

from .exceptions import CapacityError, ValidationError
from .gf2 import BitVector

DEFAULT_MAX_M = 5


def max_geometry_m() -> int:
    value = os.environ.get("RM_SRR_MAX_M")
    return int(value) if value else DEFAULT_MAX_M


def _check_capacity(m: int) -> None:
    limit = max_geometry_m()
    if m > limit:
        raise CapacityError(f"m={m} exceeds the enumeration ceiling m <= {limit}")


def gaussian_binomial(a: int, b: int) -> int:
    """Number of ``b``-dimensional subspaces of GF(2)^a."""
    if a < 0 or b < 0:
        raise ValidationError("Gaussian binomial arguments must be nonnegative")
    if b > a:
        return 0
    num = den = 1
    for i in range(b):
        num *= (1 << (a - i)) - 1
        den *= (1 << (i + 1)) - 1
    return num // den


@dataclass(frozen=True)
class Point:
    m: int
    value: int

    @property
    def index(self) -> int:
        return self.value + 1

    @property
    def coords(self) -> tuple[int, ...]:
        return tuple((self.value >> (self.m - 1 - i)) & 1 for i in range(self.m))

    @classmethod
    def from_index(cls, m: int, index: int) -> "Point":
        if not 1 <= index <= 1 << m:
            raise ValidationError(f"point index {index} outside 1..{1 << m}")
        return cls(m, index - 1)

    @classmethod
    def from_coords(cls, coords) -> "Point":
        value = 0
        for c in coords:
            value = (value << 1) | int(c)
        return cls(len(coords), value)


def reduced_basis(vectors) -> tuple[int, ...]:
    """Reduced row-echelon basis (descending leading bits) of the span."""
    pivots: dict[int, int] = {}
    for v in vectors:
        for lead in sorted(pivots, reverse=True):
            if v >> lead & 1:
                v ^= pivots[lead]
        if v:
            lead = v.bit_length() - 1
            for other in pivots:
                if pivots[other] >> lead & 1:
                    pivots[other] ^= v
            pivots[lead] = v
    return tuple(pivots[lead] for lead in sorted(pivots, reverse=True))


def span_points(basis) -> list[int]:
    pts = [0]
    for b in basis:
        pts += [p ^ b for p in pts]
    return pts


@dataclass(frozen=True, eq=False)
class Flat:
    """Coset ``basepoint + span(basis)``; equality and hashing use the incidence vector."""

    m: int
    basis: tuple[int, ...]
    basepoint: int
    incidence: BitVector = field(init=False, repr=False)

    def __post_init__(self):
        basis = reduced_basis(self.basis)
        if len(basis) != len(self.basis):
            raise ValidationError("flat directions are linearly dependent")
        object.__setattr__(self, "basis", basis)
        base = self.basepoint
        for b in basis:
            if base >> (b.bit_length() - 1) & 1:
                base ^= b
        object.__setattr__(self, "basepoint", base)
        bits = 0
        for p in span_points(basis):
            bits |= 1 << (p ^ base)
        object.__setattr__(self, "incidence", BitVector(1 << self.m, bits))

    @classmethod
    def from_points(cls, m: int, points) -> "Flat":
        """Build from point values; raises if they do not form a flat."""
        pts = sorted(set(points))
        if not pts:
            raise ValidationError("a flat needs at least one point")
        base = pts[0]
        basis = reduced_basis(p ^ base for p in pts)
        flat = cls(m, basis, base)
        if flat.size != len(pts) or flat.point_values() != pts:
            raise ValidationError("points are not closed under the affine structure")
        return flat

    @classmethod
    def from_indices(cls, m: int, indices) -> "Flat":
        return cls.from_points(m, (j - 1 for j in indices))

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def size(self) -> int:
        return 1 << len(self.basis)

    @property
    def is_subspace(self) -> bool:
        return self.basepoint == 0

    def point_values(self) -> list[int]:
        return sorted(p ^ self.basepoint for p in span_points(self.basis))

    def point_indices(self) -> tuple[int, ...]:
        return self.incidence.support()

    def contains(self, other: "Flat") -> bool:
        return other.incidence.issubset(self.incidence)

    def translate(self, shift: int) -> "Flat":
        return Flat(self.m, self.basis, self.basepoint ^ shift)

    def sort_key(self):
        return self.point_indices()

    def to_json(self) -> dict:
        return {
            "dimension": self.dimension,
            "pointIndices": list(self.point_indices()),
            "incidenceBits": str(self.incidence),
        }

    def __eq__(self, other):
        if not isinstance(other, Flat):
            return NotImplemented
        return self.incidence == other.incidence

    def __hash__(self):
        return hash(self.incidence)

    def __repr__(self):
        return f"Flat(dim={self.dimension}, points={list(self.point_indices())})"


def is_flat(m: int, points) -> bool:
    """Affine closure test: p + q + s stays inside for all members."""
    pts = set(points)
    if not pts or len(pts) & (len(pts) - 1):
        return False
    return all(p ^ q ^ s in pts for p, q, s in product(pts, repeat=3))


def intersect_flats(H: Flat, N: Flat) -> Flat | None:
    """Flat whose incidence is the elementwise product, or None if disjoint."""
    if H.m != N.m:
        raise ValidationError("flats live in different geometries")
    common = H.incidence & N.incidence
    if common.bits == 0:
        return None
    return Flat.from_indices(H.m, common.support())


def _rref_bases(m: int, t: int) -> Iterator[tuple[int, ...]]:
    """Every reduced echelon basis of a t-dimensional subspace, one per subspace."""
    for leads in combinations(range(m - 1, -1, -1), t):
        lead_set = set(leads)
        free_slots = [
            [pos for pos in range(lead) if pos not in lead_set] for lead in leads
        ]
        choices = [product((0, 1), repeat=len(slots)) for slots in free_slots]
        for picks in product(*[list(c) for c in choices]):
            basis = []
            for lead, slots, bits in zip(leads, free_slots, picks):
                v = 1 << lead
                for pos, b in zip(slots, bits):
                    if b:
                        v |= 1 << pos
                basis.append(v)
            yield tuple(basis)


@lru_cache(maxsize=None)
def _subspaces(m: int, t: int) -> tuple[Flat, ...]:
    flats = [Flat(m, basis, 0) for basis in _rref_bases(m, t)]
    flats.sort(key=Flat.sort_key)
    return tuple(flats)


def subspaces_of_dim(m: int, t: int) -> Iterator[Flat]:
    if not 0 <= t <= m:
        raise ValidationError(f"dimension {t} outside 0..{m}")
    _check_capacity(m)
    yield from _subspaces(m, t)


def superspaces_containing(S: Flat, t: int) -> Iterator[Flat]:
    if not S.is_subspace:
        raise ValidationError("superspace enumeration needs a subspace through the origin")
    if not S.dimension <= t <= S.m:
        raise ValidationError(f"target dimension {t} outside {S.dimension}..{S.m}")
    for F in subspaces_of_dim(S.m, t):
        if F.contains(S):
            yield F


@lru_cache(maxsize=None)
def _flats(m: int, t: int) -> tuple[Flat, ...]:
    out = []
    for V in _subspaces(m, t):
        covered = 0
        for p in range(1 << m):
            if covered >> p & 1:
                continue
            F = V.translate(p)
            covered |= F.incidence.bits
            out.append(F)
    out.sort(key=Flat.sort_key)
    return tuple(out)


def flats_of_dim(m: int, t: int) -> Iterator[Flat]:
    if not 0 <= t <= m:
        raise ValidationError(f"dimension {t} outside 0..{m}")
    _check_capacity(m)
    yield from _flats(m, t)


def cosets(V: Flat) -> list[Flat]:
    """All translates of the subspace ``V``, the subspace itself first."""
    out = []
    covered = 0
    for p in range(1 << V.m):
        if covered >> p & 1:
            continue
        F = V.translate(p)
        covered |= F.incidence.bits
        out.append(F)
    return out
