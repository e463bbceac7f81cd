"""Recovery sets of RM(r, m) message symbols.

A recovery set for object ``j`` is an inclusion-minimal set of generator
columns whose GF(2) sum is the unit vector ``e_j``.  The geometric
constructions here produce the smallest set and the family of
second-smallest sets; ``oracle_all_recovery_sets`` is an exhaustive
subset scan used to cross-check them on short codes.
"""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache

from .exceptions import CapacityError, InternalCheckError, ValidationError
from .geometry import Flat, cosets, gaussian_binomial, superspaces_containing
from .gf2 import BitVector
from .rm import (
    ObjectIndex,
    RmParams,
    dual_params,
    generator_matrix,
    min_weight_codewords,
    object_order,
    variable_row,
)

DEFAULT_ORACLE_MAX_M = 4

SMALLEST = "smallest"
SECOND_SMALLEST = "second-smallest"
ORACLE = "oracle"


def max_oracle_m() -> int:
    value = os.environ.get("RM_SRR_MAX_M")
    return int(value) if value else DEFAULT_ORACLE_MAX_M


@dataclass(frozen=True)
class RecoverySet:
    object: ObjectIndex
    columns: tuple[int, ...]
    kind: str
    witness: Flat | None = None

    @property
    def size(self) -> int:
        return len(self.columns)

    def sort_key(self):
        return (len(self.columns), self.columns)


def column_sum(p: RmParams, columns) -> int:
    """Packed GF(2) sum of the named columns; row ``i`` sits in bit ``i - 1``."""
    cols = generator_matrix(p).column_bits()
    acc = 0
    for j in columns:
        acc ^= cols[j - 1]
    return acc


def recovers(p: RmParams, columns, j: int) -> bool:
    return column_sum(p, columns) == 1 << (j - 1)


def _check_object(p: RmParams, j: int) -> ObjectIndex:
    return object_order(p, j)


def smallest_subspace(p: RmParams, j: int) -> Flat:
    """The order-l subspace whose points sum to ``e_j``.

    Points where every variable outside the monomial vanishes: the
    translate by the all-ones vector of the flat cut out by those variables.
    """
    obj = _check_object(p, j)
    outside = [i for i in range(1, p.m + 1) if i not in obj.monomial.variables]
    full = (1 << p.n) - 1
    cut = full
    for i in outside:
        cut &= variable_row(p.m, i) ^ full
    return Flat.from_indices(p.m, BitVector(p.n, cut).support())


def smallest_recovery_set(p: RmParams, j: int) -> RecoverySet:
    obj = _check_object(p, j)
    S = smallest_subspace(p, j)
    cols = S.point_indices()
    if 1 not in cols or len(cols) != 1 << obj.order or not recovers(p, cols, j):
        raise InternalCheckError(f"smallest set for object {j} of {p} failed verification")
    return RecoverySet(obj, cols, SMALLEST, S)


def second_smallest_recovery_sets(p: RmParams, j: int, via: str = "auto") -> list[RecoverySet]:
    """Recovery sets of size 2**(r+1) - 2**l.

    For ``l < r`` these are F minus S over the (r+1)-subspaces F containing
    the smallest subspace S.  For ``l == r`` they are the nontrivial
    translates of S; ``via="superspace"`` forces the superspace construction
    in that case too.
    """
    p.require_dual()
    obj = _check_object(p, j)
    S = smallest_subspace(p, j)
    out = []
    if obj.order == p.r and via != "superspace":
        for F in cosets(S)[1:]:
            out.append(RecoverySet(obj, F.point_indices(), SECOND_SMALLEST, F))
    else:
        for F in superspaces_containing(S, p.r + 1):
            cols = BitVector(p.n, F.incidence.bits & ~S.incidence.bits).support()
            out.append(RecoverySet(obj, cols, SECOND_SMALLEST, F))
    expected_size = (1 << (p.r + 1)) - (1 << obj.order)
    for R in out:
        if R.size != expected_size or not recovers(p, R.columns, j):
            raise InternalCheckError(f"second-smallest set {R.columns} of {p} failed verification")
    out.sort(key=RecoverySet.sort_key)
    return out


@lru_cache(maxsize=None)
def _subset_syndromes(p: RmParams) -> tuple[int, ...]:
    cols = generator_matrix(p).column_bits()
    syn = [0] * (1 << p.n)
    for mask in range(1, 1 << p.n):
        low = mask & -mask
        syn[mask] = syn[mask ^ low] ^ cols[low.bit_length() - 1]
    return tuple(syn)


def _mask_to_columns(mask: int) -> tuple[int, ...]:
    return BitVector(mask.bit_length(), mask).support() if mask else ()


@lru_cache(maxsize=None)
def _oracle_masks(p: RmParams, j: int) -> tuple[int, ...]:
    target = 1 << (j - 1)
    candidates = [mask for mask, s in enumerate(_subset_syndromes(p)) if s == target]
    candidates.sort(key=lambda mask: (bin(mask).count("1"), _mask_to_columns(mask)))
    minimal: list[int] = []
    for mask in candidates:
        if not any(kept & mask == kept for kept in minimal):
            minimal.append(mask)
    return tuple(minimal)


def oracle_all_recovery_sets(p: RmParams, j: int) -> list[RecoverySet]:
    """Every minimal recovery set for ``e_j``, by scanning all 2**n column subsets."""
    limit = max_oracle_m()
    if p.m > limit:
        raise CapacityError(f"oracle enumeration needs m <= {limit}, got m={p.m}")
    obj = _check_object(p, j)
    return [RecoverySet(obj, _mask_to_columns(mask), ORACLE) for mask in _oracle_masks(p, j)]


@dataclass(frozen=True)
class DesignReport:
    points: int
    block_size: int
    replication: int
    blocks: int
    holds: bool
    counts: dict

    def to_json(self) -> dict:
        return {"v": self.points, "k": self.block_size, "lambda": self.replication}


def verify_design_property(p: RmParams, j: int) -> DesignReport:
    """Check the 1-design structure of the second-smallest sets on the columns outside S."""
    obj = _check_object(p, j)
    ell = obj.order
    S = set(smallest_recovery_set(p, j).columns)
    blocks = second_smallest_recovery_sets(p, j)
    counts = Counter(c for R in blocks for c in R.columns)
    replication = gaussian_binomial(p.m - ell - 1, p.r - ell)
    outside = [c for c in range(1, p.n + 1) if c not in S]
    holds = all(counts[c] == replication for c in outside) and not any(c in S for c in counts)
    holds = holds and len(blocks) == gaussian_binomial(p.m - ell, p.r + 1 - ell)
    return DesignReport(
        points=p.n - (1 << ell),
        block_size=(1 << (p.r + 1)) - (1 << ell),
        replication=replication,
        blocks=len(blocks),
        holds=holds,
        counts={c: counts[c] for c in outside},
    )


def constrained_min_weight_codewords(p: RmParams, required) -> list[BitVector]:
    """Minimum-weight codewords of RM(r, m) whose support contains ``required``."""
    need = BitVector.from_indices(p.n, required)
    return [c for c in min_weight_codewords(p) if need.issubset(c)]


def dual_support_correspondence(p: RmParams, j: int) -> list[BitVector]:
    """Minimum-weight dual codewords whose support contains the smallest set S.

    Each one is S together with exactly one second-smallest recovery set.
    """
    p.require_dual()
    S = smallest_recovery_set(p, j)
    words = constrained_min_weight_codewords(dual_params(p), S.columns)
    unions = {
        BitVector.from_indices(p.n, S.columns + R.columns)
        for R in second_smallest_recovery_sets(p, j)
    }
    if set(words) != unions or len(words) != len(unions):
        raise InternalCheckError(f"dual codewords and recovery sets disagree for object {j} of {p}")
    return words


def recovery_to_json(p: RmParams, j: int) -> dict:
    obj = object_order(p, j)
    S = smallest_recovery_set(p, j)
    second = second_smallest_recovery_sets(p, j)
    design = verify_design_property(p, j)
    return {
        "objectIndex": j,
        "order": obj.order,
        "symbol": obj.monomial.symbol,
        "smallest": list(S.columns),
        "secondSmallest": [list(R.columns) for R in second],
        "design": design.to_json(),
    }


def check_object_index(p: RmParams, j: int) -> None:
    if not 1 <= j <= p.k:
        raise ValidationError(f"object index {j} outside 1..{p.k}")
