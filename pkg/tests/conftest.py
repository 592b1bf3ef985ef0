"""Shared independent oracles for the test suite.

These deliberately avoid the library's convolution/difference code paths:
U(1) counts come from enumerating basis strings, SU(2) multiplicities from
an explicit angular-momentum ladder recursion, and complement blocks from a
weight-space invariant count.
"""

from __future__ import annotations

import itertools
from collections import Counter

from chargepage.models import ChargeModel, GroupKind, weight_multiplicities


def body_weight_list(model: ChargeModel) -> list[int]:
    """One doubled weight per one-body basis state (multiplicities expanded)."""
    out = []
    for m2, a in sorted(weight_multiplicities(model).items()):
        out.extend([m2] * a)
    return out


def brute_force_u1_counts(model: ChargeModel, n: int) -> dict[int, int]:
    """Charge histogram over all k^n basis strings."""
    weights = body_weight_list(model)
    return dict(Counter(map(sum, itertools.product(weights, repeat=n))))


def ladder_su2_dims(model: ChargeModel, n: int) -> dict[int, int]:
    """Spin multiplicities from coupling one body at a time (CG ladder)."""
    assert model.group is GroupKind.SU2
    local = dict(model.multiplicities)
    current = {0: 1}
    for _ in range(n):
        nxt: dict[int, int] = {}
        for j2, count in current.items():
            for jl2, a in local.items():
                for jtot2 in range(abs(j2 - jl2), j2 + jl2 + 1, 2):
                    nxt[jtot2] = nxt.get(jtot2, 0) + count * a
        current = nxt
    return current


def brute_force_u1_blocks(model: ChargeModel, n: int, n_a: int,
                          q2: int) -> list[tuple[int, int, int]]:
    """(q_a, d, b) triples by enumerating A-side and B-side strings."""
    a_counts = brute_force_u1_counts(model, n_a)
    b_counts = brute_force_u1_counts(model, n - n_a)
    blocks = []
    for qa2, d in sorted(a_counts.items()):
        b = b_counts.get(q2 - qa2, 0)
        if b:
            blocks.append((qa2, d, b))
    return blocks


def su2_weight_space_b(model: ChargeModel, n_b: int, q2: int, qa2: int) -> int:
    """Complement block dimension as an invariant count in weight space.

    dim Inv(j* x j_A x loc^(N_B)) = W_tot(0) - W_tot(1), where W_tot is the
    weight histogram of the triple tensor product.
    """
    counts = Counter(dict(brute_force_su2_weight_counts(model, n_b)))
    for j2 in (q2, qa2):
        nxt: Counter = Counter()
        for m2, c in counts.items():
            for mj2 in range(-j2, j2 + 1, 2):
                nxt[m2 + mj2] += c
        counts = nxt
    return counts.get(0, 0) - counts.get(2, 0)


def brute_force_su2_weight_counts(model: ChargeModel, n: int) -> dict[int, int]:
    weights = body_weight_list(model)
    if n == 0:
        return {0: 1}
    return dict(Counter(map(sum, itertools.product(weights, repeat=n))))
