"""Exact sector dimensions for N copies of the local space.

The group-character integrals that define these dimensions are Fourier
coefficient extractions, so they are evaluated here as exact integer
convolutions over the doubled-charge lattice. Python big integers are
mandatory: k^N overflows machine words at desk scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .models import ChargeModel, GroupKind, weight_multiplicities


class EmptySectorError(ValueError):
    pass


@dataclass(frozen=True)
class SectorTable:
    """Dimensions D_q of the fixed-charge sectors for n bodies, keyed by 2q.

    Charges outside the table are unreachable (dimension 0).
    """

    model: ChargeModel
    n: int
    dims: dict[int, int]

    def total_dimension(self) -> int:
        """Recombine sectors: equals k^n exactly."""
        if self.model.group is GroupKind.U1:
            return sum(self.dims.values())
        return sum((j2 + 1) * d for j2, d in self.dims.items())


@dataclass(frozen=True)
class BlockTable:
    """Block decomposition of one total-charge sector across a bipartition.

    ``blocks`` lists (2*q_a, d, b) with d = dim of the A-side charge sector
    and b = dim of the complement factor, sorted by q_a ascending. Only
    blocks with d >= 1 and b >= 1 appear, and sum(d*b) == D_{q_total}.
    """

    model: ChargeModel
    n_total: int
    n_a: int
    q_total: int
    blocks: tuple[tuple[int, int, int], ...]

    @property
    def sector_dimension(self) -> int:
        return sum(d * b for _, d, b in self.blocks)


def weight_counts(model: ChargeModel, n: int) -> dict[int, int]:
    """Counts of each doubled total weight over n bodies (n-fold convolution)."""
    if n < 0:
        raise ValueError(f"n = {n} must be >= 0")
    return dict(_weight_counts_cached(model, n))


@lru_cache(maxsize=4096)
def _weight_counts_cached(model: ChargeModel, n: int) -> tuple[tuple[int, int], ...]:
    if n == 0:
        return ((0, 1),)
    local = weight_multiplicities(model)
    prev = dict(_weight_counts_cached(model, n - 1))
    out: dict[int, int] = {}
    for m2, c in prev.items():
        for w2, a in local.items():
            key = m2 + w2
            out[key] = out.get(key, 0) + c * a
    return tuple(sorted(out.items()))


def sector_dims(model: ChargeModel, n: int) -> SectorTable:
    """Exact dimension of every fixed-charge sector for n bodies.

    U1: the sector dimension at charge m is the weight count itself.
    SU2: the spin-j multiplicity is the adjacent weight-count difference
    D_j = W(j) - W(j+1), so one convolution serves both groups.
    """
    if n < 1:
        raise ValueError(f"n = {n} must be >= 1")
    counts = weight_counts(model, n)
    if model.group is GroupKind.U1:
        return SectorTable(model, n, counts)
    dims = {}
    for j2, w in counts.items():
        if j2 < 0:
            continue
        d = w - counts.get(j2 + 2, 0)
        if d > 0:
            dims[j2] = d
    return SectorTable(model, n, dims)


def triangle_allowed(ja2: int, jb2: int, jc2: int) -> bool:
    """SU(2) coupling rule: triangle inequality plus integer total spin."""
    if (ja2 + jb2 + jc2) % 2 != 0:
        return False
    return abs(ja2 - jb2) <= jc2 <= ja2 + jb2


def block_table(model: ChargeModel, n_total: int, n_a: int, q_total: int) -> BlockTable:
    """Exact block dimensions (d, b) of one total-charge sector.

    U1: b is the complement sector dimension at charge q - q_A.
    SU2: b_{j,j_A} sums the complement spin sectors over the triangle rule.
    """
    if not 1 <= n_a <= n_total - 1:
        raise ValueError(f"n_a = {n_a} must satisfy 1 <= n_a <= {n_total - 1}")
    full = sector_dims(model, n_total)
    if full.dims.get(q_total, 0) < 1:
        raise EmptySectorError(
            f"charge {q_total}/2 (doubled {q_total}) is not realizable for "
            f"{model.name or model.group.value} with n = {n_total}"
        )
    a_dims = sector_dims(model, n_a).dims
    b_dims = sector_dims(model, n_total - n_a).dims
    blocks = []
    if model.group is GroupKind.U1:
        for qa2, d in a_dims.items():
            b = b_dims.get(q_total - qa2, 0)
            if b >= 1:
                blocks.append((qa2, d, b))
    else:
        for qa2, d in a_dims.items():
            b = 0
            for qb2, db in b_dims.items():
                if triangle_allowed(qa2, qb2, q_total):
                    b += db
            if b >= 1:
                blocks.append((qa2, d, b))
    table = BlockTable(model, n_total, n_a, q_total, tuple(sorted(blocks)))
    if table.sector_dimension != full.dims[q_total]:
        raise RuntimeError(
            f"block normalization broken: sum d*b = {table.sector_dimension} "
            f"!= D_q = {full.dims[q_total]}"
        )
    return table


def realizable_charges(model: ChargeModel, n: int) -> list[int]:
    """Doubled charges with a nonzero sector dimension, ascending."""
    return sorted(sector_dims(model, n).dims)
