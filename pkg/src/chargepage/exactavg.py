"""Exact ensemble-average entanglement entropy over one charge sector.

The average over Haar-random fixed-charge states is a closed digamma
formula over the exact block dimensions. Dimensions routinely exceed
anything a float can hold, so digamma arguments and weights are handled
through exact big-integer logarithms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .models import ChargeModel, SystemGeometry
from .sectors import EmptySectorError, block_table, sector_dims

# asymptotic tail: psi(x) = log x - 1/(2x) - sum c_k / x^(2k), valid for x >= 10
_TAIL_COEFFS = (
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
)


def _digamma_tail(x: float) -> float:
    # caller guarantees x >= 10
    inv2 = 1.0 / (x * x)
    acc = 0.0
    for c in reversed(_TAIL_COEFFS):
        acc = (acc + c) * inv2
    return math.log(x) - 0.5 / x - acc


def digamma(x: float) -> float:
    """Digamma function for x > 0.

    Upward recurrence pushes the argument to >= 10, where the asymptotic
    series is accurate to full double precision. Below x = 1 the recurrence
    subtraction 1/x dominates the result, so it is assembled in exact
    rational arithmetic and rounded once.
    """
    if not x > 0:
        raise ValueError(f"digamma requires x > 0, got {x}")
    if x < 1.0:
        return float(Fraction(digamma(x + 1.0)) - Fraction(1) / Fraction(x))
    if x >= 10.0:
        return _digamma_tail(x)
    m = math.ceil(10.0 - x)
    terms = [_digamma_tail(x + m)]
    terms.extend(-1.0 / (x + k) for k in range(m))
    return math.fsum(terms)


def digamma_of_big_plus_one(d: int) -> float:
    """psi(d + 1) for a positive integer of any size."""
    if d < 1:
        raise ValueError(f"expected a positive integer, got {d}")
    if d <= 10**12:
        return digamma(float(d + 1))
    # psi(d+1) = log d + 1/(2d) - 1/(12 d^2) + ...; beyond 1e12 only the
    # first correction is representable
    corr = 0.5 / float(d) if d.bit_length() < 1000 else 0.0
    return math.log(d) + corr


@dataclass(frozen=True)
class ExactAverage:
    """Exact average entropy of one sector, split into its three pieces."""

    value: float
    y1: float
    y2: float
    y3: float
    q_total: int
    geometry: SystemGeometry
    degenerate: bool = False


def exact_average_entropy(model: ChargeModel, n_total: int, n_a: int,
                          q_total: int) -> ExactAverage:
    """Ensemble-average entanglement entropy at fixed total charge.

    Evaluates psi(D+1) minus the weighted digamma and min-ratio sums over
    the block decomposition. Block weights d*b/D are exp(log d + log b -
    log D); max/min comparisons stay in exact integers.
    """
    geometry = SystemGeometry(n_total, n_a)
    if n_a in (0, n_total):
        if sector_dims(model, n_total).dims.get(q_total, 0) < 1:
            raise EmptySectorError(
                f"charge {q_total}/2 (doubled {q_total}) is not realizable "
                f"for n = {n_total}"
            )
        return ExactAverage(0.0, 0.0, 0.0, 0.0, q_total, geometry, degenerate=True)

    table = block_table(model, n_total, n_a, q_total)
    dim = table.sector_dimension
    log_dim = math.log(dim)

    y1 = digamma_of_big_plus_one(dim)
    y2_terms = []
    y3_terms = []
    for _, d, b in table.blocks:
        weight = math.exp(math.log(d) + math.log(b) - log_dim)
        big = d if d >= b else b
        inv_corr = 0.5 / big if big.bit_length() < 1000 else 0.0
        y2_terms.append(-(digamma_of_big_plus_one(big) - inv_corr) * weight)
        ratio = 1.0 if d == b else math.exp(-abs(math.log(d) - math.log(b)))
        y3_terms.append(-0.5 * ratio * weight)
    y2 = math.fsum(y2_terms)
    y3 = math.fsum(y3_terms)
    return ExactAverage(y1 + y2 + y3, y1, y2, y3, q_total, geometry)
