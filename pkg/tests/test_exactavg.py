import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from chargepage.models import catalog, catalog_names
from chargepage.sectors import EmptySectorError, realizable_charges, sector_dims
from chargepage.exactavg import digamma, digamma_of_big_plus_one, \
    exact_average_entropy
from chargepage.montecarlo import McConfig, run

EULER_GAMMA = 0.5772156649015328606


def test_digamma_standard_values():
    assert abs(digamma(1.0) + EULER_GAMMA) < 1e-14
    assert abs(digamma(2.0) - (1 - EULER_GAMMA)) < 1e-14
    assert abs(digamma(0.5) + EULER_GAMMA + 2 * math.log(2)) < 1e-13


def test_digamma_asymptotic_tail():
    assert abs(digamma(1e6 + 1) - math.log(1e6) - 1 / (2e6)) < 1e-12


def test_digamma_against_reference_grid():
    mpmath.mp.dps = 30
    xs = np.logspace(-3, 12, 300)
    for x in xs:
        x = float(x)
        assert abs(digamma(x) - float(mpmath.digamma(x))) < 1e-13


def test_digamma_domain():
    for bad in (0.0, -1.0, -0.5):
        with pytest.raises(ValueError):
            digamma(bad)


@settings(max_examples=60, deadline=None)
@given(x=st.floats(min_value=1e-2, max_value=1e6))
def test_digamma_recurrence(x):
    assert abs(digamma(x + 1.0) - digamma(x) - 1.0 / x) < 1e-11 * max(1, digamma(x + 1))


def test_digamma_big_argument_paths():
    mpmath.mp.dps = 40
    for d in (10**6, 10**12, 10**12 + 7, 2**200, 10**500):
        got = digamma_of_big_plus_one(d)
        ref = float(mpmath.digamma(d + 1))
        assert abs(got - ref) < 1e-12 * max(1.0, abs(ref))


def test_single_state_sector_has_zero_entropy():
    res = exact_average_entropy(catalog("u1-qubit"), 4, 2, 4)
    assert res.value == 0.0
    assert res.y3 == -0.5


def test_rank_one_block_structure_gives_zero():
    # one qubit against three at total spin 1: a single d=1 block
    res = exact_average_entropy(catalog("su2-qubit"), 4, 1, 2)
    assert abs(res.value) < 1e-12


def test_su2_exchange_asymmetry_counterexample():
    # swapping N_A <-> N_B regroups the SU(2) blocks: {(1,3)} vs {(2,1),(1,1)},
    # and the 3-dimensional sector averages differ (0 vs exactly 1/2)
    small = exact_average_entropy(catalog("su2-qubit"), 4, 1, 2)
    swapped = exact_average_entropy(catalog("su2-qubit"), 4, 3, 2)
    assert abs(small.value) < 1e-12
    assert abs(swapped.value - 0.5) < 1e-12


def test_u1_exchange_symmetry_is_exact():
    for name in ("u1-qubit", "u1-qutrit", "u1-2bosons"):
        model = catalog(name)
        for n, n_a in ((7, 2), (8, 3), (9, 4)):
            for q2 in realizable_charges(model, n):
                a = exact_average_entropy(model, n, n_a, q2)
                b = exact_average_entropy(model, n, n - n_a, q2)
                assert a.value == b.value
                assert (a.y1, a.y2, a.y3) == (b.y1, b.y2, b.y3)


def test_degenerate_geometries_flagged():
    model = catalog("u1-qubit")
    for n_a in (0, 6):
        res = exact_average_entropy(model, 6, n_a, 0)
        assert res.degenerate
        assert res.value == 0.0
    with pytest.raises(EmptySectorError):
        exact_average_entropy(model, 6, 0, 7)


def test_decomposition_and_bounds():
    for name in catalog_names():
        model = catalog(name)
        k = model.local_dim
        n, n_a = 8, 3
        for q2 in realizable_charges(model, n):
            res = exact_average_entropy(model, n, n_a, q2)
            assert res.value == res.y1 + res.y2 + res.y3
            assert -0.5 - 1e-12 <= res.y3 <= 0.0
            assert res.value >= -1e-12
            bound = min(n_a, n - n_a) * math.log(k)
            assert res.value <= bound + 1e-9


def test_value_bounded_by_sector_log_dimension():
    model = catalog("u1-qutrit")
    n, n_a = 10, 5
    dims = sector_dims(model, n).dims
    for q2 in realizable_charges(model, n):
        res = exact_average_entropy(model, n, n_a, q2)
        assert res.value <= math.log(dims[q2]) + 1e-9


def test_monotone_in_subsystem_sanity():
    model = catalog("su2-trimer")
    logk = math.log(model.local_dim)
    values = [exact_average_entropy(model, 6, n_a, 4).value for n_a in range(1, 6)]
    for small, big in zip(values, values[1:]):
        assert small <= big + logk


def test_big_dimension_path():
    # N = 64 qubits: D_0 = binom(64, 32) ~ 1.8e18 exceeds float precision
    model = catalog("u1-qubit")
    res = exact_average_entropy(model, 64, 16, 0)
    assert math.isfinite(res.value)
    assert 0 < res.value < 16 * math.log(2)
    exchange = exact_average_entropy(model, 64, 48, 0)
    assert res.value == exchange.value


def test_mean_matches_monte_carlo_on_small_sectors():
    # sectors with D <= 50: direct ensemble sampling at one million draws
    cases = [("u1-qubit", 4, 2, 0, 6), ("u1-qubit", 6, 3, 2, 15)]
    for name, n, n_a, q2, dim in cases:
        model = catalog(name)
        assert sector_dims(model, n).dims[q2] == dim
        exact = exact_average_entropy(model, n, n_a, q2).value
        mc = run(McConfig(model, n, n_a, q2, 10**6, 314159))
        assert abs(mc.mean - exact) < 4 * mc.std_error
