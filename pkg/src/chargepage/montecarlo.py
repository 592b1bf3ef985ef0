"""Monte Carlo over Haar-random pure states of fixed charge.

States are sampled directly in the abstract block decomposition of the
sector: i.i.d. complex Gaussian amplitudes of total length D_q, normalized
globally, with the Schmidt spectrum read off blockwise from singular
values. No spin or occupation basis is ever constructed, which makes SU(2)
sampling exactly as cheap as U(1).

Each sample is keyed by (seed, sample index) through numpy's seed-sequence
mechanism, so results are reproducible and independent of evaluation order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .models import ChargeModel, SystemGeometry
from .sectors import BlockTable, block_table

#: refuse to allocate any single block larger than this many amplitudes
MAX_BLOCK_ENTRIES = 10**7

#: complex amplitudes per batched chunk
_CHUNK_ENTRY_BUDGET = 2_000_000


class SectorSizeError(ValueError):
    pass


@dataclass(frozen=True)
class McConfig:
    model: ChargeModel
    n_total: int
    n_a: int
    q_total: int
    samples: int
    seed: int

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError(f"samples = {self.samples} must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit an unsigned 64-bit integer")


@dataclass(frozen=True)
class McRun:
    config: McConfig
    entropies: np.ndarray
    mean: float
    std_error: float
    sample_variance: float


def _check_budget(table: BlockTable):
    for qa2, d, b in table.blocks:
        if d * b > MAX_BLOCK_ENTRIES:
            raise SectorSizeError(
                f"block q_A = {qa2}/2 has d*b = {d * b} amplitudes, over the "
                f"{MAX_BLOCK_ENTRIES} budget"
            )


def _entropies_from_amplitudes(table: BlockTable, amps: np.ndarray) -> np.ndarray:
    """Entropy of each row of amplitudes (shape (chunk, D), complex)."""
    schmidt_sq = []
    offset = 0
    for _, d, b in table.blocks:
        block = amps[:, offset:offset + d * b].reshape(amps.shape[0], d, b)
        offset += d * b
        if min(d, b) == 1:
            # rank-1 block: a single Schmidt weight, the block norm
            sq = np.sum(block.real**2 + block.imag**2, axis=(1, 2), keepdims=False)
            schmidt_sq.append(sq[:, None])
        else:
            sv = np.linalg.svd(block, compute_uv=False)
            schmidt_sq.append(sv**2)
    p = np.concatenate(schmidt_sq, axis=1)
    p /= p.sum(axis=1, keepdims=True)
    plogp = np.where(p > 0, p * np.log(np.where(p > 0, p, 1.0)), 0.0)
    return -plogp.sum(axis=1)


def _draw(seed: int, index: int, dim: int) -> np.ndarray:
    rng = np.random.default_rng((seed, index))
    return rng.standard_normal(2 * dim).view(np.complex128)


def sample_entropy(model: ChargeModel, geometry: SystemGeometry, q_total: int,
                   rng: np.random.Generator) -> float:
    """Entanglement entropy of one Haar-random fixed-charge state."""
    table = block_table(model, geometry.n_total, geometry.n_a, q_total)
    _check_budget(table)
    dim = table.sector_dimension
    amps = rng.standard_normal(2 * dim).view(np.complex128)
    return float(_entropies_from_amplitudes(table, amps[None, :])[0])


def run(config: McConfig) -> McRun:
    """Sample the configured sector and summarize the entropy statistics."""
    table = block_table(config.model, config.n_total, config.n_a, config.q_total)
    _check_budget(table)
    dim = table.sector_dimension
    chunk = max(1, min(4096, _CHUNK_ENTRY_BUDGET // dim))
    entropies = np.empty(config.samples)
    for start in range(0, config.samples, chunk):
        stop = min(start + chunk, config.samples)
        amps = np.empty((stop - start, dim), dtype=np.complex128)
        for i in range(start, stop):
            amps[i - start] = _draw(config.seed, i, dim)
        entropies[start:stop] = _entropies_from_amplitudes(table, amps)
    mean = float(np.mean(entropies))
    var = float(np.var(entropies, ddof=1)) if config.samples > 1 else 0.0
    std_error = math.sqrt(var / config.samples)
    return McRun(config, entropies, mean, std_error, var)
