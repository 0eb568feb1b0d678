import math

import numpy as np
import pytest

from sqperc import kernels
from sqperc.cluster import boundary_cycle_of, external_boundary, cluster_of
from sqperc.errors import CycleTouchesFrame, InvalidConcentration
from sqperc.lattice import Window, sample_configuration
from sqperc.montecarlo import (crossing_probability, cycle_mask, estimate_b_gamma_frequency,
                               estimate_origin_stats, estimate_threshold, origin_statistics,
                               simulate, sweep)
from sqperc.series import p_gamma

import oracles

DIAMOND = boundary_cycle_of([(0, 0)])
DOMINO = boundary_cycle_of([(0, 0), (1, 0)])
try:
    kernels.get_backend("numba")
    BACKENDS = ["numpy", "numba"]
except ImportError:
    BACKENDS = ["numpy"]


def within(est, p, sigmas=5):
    sd = math.sqrt(p * (1 - p) / est.samples)
    return abs(est.value - p) <= sigmas * sd + 1e-12


@pytest.mark.parametrize("c", [0.0, 1.0])
def test_origin_stats_degenerate(c):
    st = origin_statistics(c, 8, 500, seed=1)
    assert st.p_fin.successes == 0
    assert st.p_inf.successes == (500 if c == 1.0 else 0)
    assert st.p_occ.successes == (500 if c == 1.0 else 0)


def test_origin_stats_low_density():
    p_fin, p_inf = estimate_origin_stats(0.3, 32, 100_000, seed=3)
    assert p_fin.value + p_inf.value == pytest.approx(
        origin_statistics(0.3, 32, 100_000, seed=3).p_occ.value)
    assert abs(p_fin.value - 0.3) < 0.01
    assert p_inf.value < 1e-3


def test_origin_stats_match_python_path():
    """Count by explicit cluster extraction on sampled configurations."""
    w = Window(6)
    fin = inf = 0
    for r in range(200):
        cfg = sample_configuration(w, 0.55, seed=9, replica_index=r)
        if cfg.is_occupied((0, 0)):
            cells = next(comp for comp in oracles.bfs_components(set(cfg.occupied_vertices()))
                         if (0, 0) in comp)
            if any(max(abs(x), abs(y)) == 6 for x, y in cells):
                inf += 1
            else:
                fin += 1
    st = origin_statistics(0.55, 6, 200, seed=9)
    assert (st.p_fin.successes, st.p_inf.successes) == (fin, inf)


def test_p_fin_monotone_in_window():
    counts = [origin_statistics(0.6, h, 2000, seed=5).p_fin.successes for h in (4, 8, 16, 32)]
    assert counts == sorted(counts)


def test_crossing_separates_phases():
    hi = crossing_probability(0.7, 64, 10_000, seed=11)
    lo = crossing_probability(0.5, 64, 10_000, seed=11)
    sd = math.hypot(hi.std_error, lo.std_error)
    assert hi.value - lo.value > 6 * sd


def test_crossing_monotone_in_concentration():
    hits = [crossing_probability(c, 16, 500, seed=2).successes for c in np.linspace(0, 1, 11)]
    assert hits == sorted(hits)
    assert hits[0] == 0 and hits[-1] == 500


def test_threshold_intervals_nested():
    wide = estimate_threshold(16, 300, 0.1, seed=4)
    narrow = estimate_threshold(16, 300, 0.01, seed=4)
    assert wide.c_lo <= narrow.c_lo < narrow.c_hi <= wide.c_hi
    assert narrow.c_hi - narrow.c_lo <= 0.01
    with pytest.raises(ValueError):
        estimate_threshold(16, 300, 0.0, seed=4)


def test_b_gamma_diamond():
    est = estimate_b_gamma_frequency(DIAMOND, 0.5, 8, 20_000, seed=6)
    assert within(est, 0.03125)


def test_b_gamma_domino():
    est = estimate_b_gamma_frequency(DOMINO, 0.4, 8, 20_000, seed=6)
    assert within(est, p_gamma(DOMINO, 0.4))


def test_b_gamma_matches_python_path():
    w = Window(6)
    hits = 0
    for r in range(300):
        cfg = sample_configuration(w, 0.3, seed=8, replica_index=r)
        if cfg.is_occupied((0, 0)):
            cl = cluster_of(cfg, (0, 0))
            if not cl.touches_frame and external_boundary(cl, cfg) == DOMINO:
                hits += 1
    assert estimate_b_gamma_frequency(DOMINO, 0.3, 6, 300, seed=8).successes == hits


def test_b_gamma_zero_density():
    assert estimate_b_gamma_frequency(DIAMOND, 0.0, 8, 100, seed=0).successes == 0


def test_cycle_mask():
    m = cycle_mask(DIAMOND, Window(4))
    assert m.sum() == 4 and m[5, 4] and m[4, 5]
    with pytest.raises(CycleTouchesFrame):
        cycle_mask(DIAMOND, Window(2))
    with pytest.raises(CycleTouchesFrame):
        estimate_b_gamma_frequency(DIAMOND, 0.5, 2, 10, seed=0)


def test_argument_errors():
    with pytest.raises(InvalidConcentration):
        simulate(1.5, 8, 10, seed=0)
    with pytest.raises(ValueError):
        simulate(0.5, 8, 0, seed=0)
    with pytest.raises(ValueError):
        simulate(0.5, 0, 10, seed=0)


def test_sweep_partition_and_shape():
    rows = sweep(np.linspace(0, 1, 11), 16, 2000, seed=7)
    assert [r.concentration for r in rows] == pytest.approx(np.linspace(0, 1, 11))
    for r in rows:
        assert r.p_fin.successes + r.p_inf.successes == r.origin_occupied
        p = r.concentration
        assert abs(r.origin_occupied / 2000 - p) <= 5 * math.sqrt(p * (1 - p) / 2000) + 1e-12


def test_sweep_rows_use_disjoint_replicas():
    a, b = sweep([0.5, 0.5], 8, 1000, seed=1)
    assert (a.p_fin.successes, a.crossing.successes) != (b.p_fin.successes, b.crossing.successes)


def test_p_inf_monotone_on_grid():
    rows = sweep(np.arange(0, 1.0001, 0.05), 16, 2000, seed=12)
    for a, b in zip(rows, rows[1:]):
        assert b.p_inf.value >= a.p_inf.value - 3 * math.hypot(a.p_inf.std_error, b.p_inf.std_error)


@pytest.mark.parametrize("workers", [2, 3, 8])
def test_worker_invariance(workers):
    base = simulate(0.6, 16, 997, seed=21)
    assert simulate(0.6, 16, 997, seed=21, workers=workers) == base
    t1 = estimate_b_gamma_frequency(DOMINO, 0.4, 8, 1001, seed=2)
    assert estimate_b_gamma_frequency(DOMINO, 0.4, 8, 1001, seed=2, workers=workers) == t1


@pytest.mark.parametrize("backend", BACKENDS)
def test_backend_invariance(backend):
    ref = simulate(0.59, 16, 500, seed=13, backend="numpy")
    assert simulate(0.59, 16, 500, seed=13, backend=backend) == ref
    ref_b = estimate_b_gamma_frequency(DIAMOND, 0.5, 8, 500, seed=1, backend="numpy")
    assert estimate_b_gamma_frequency(DIAMOND, 0.5, 8, 500, seed=1, backend=backend) == ref_b


def test_seed_changes_results():
    assert simulate(0.5, 16, 500, seed=1) != simulate(0.5, 16, 500, seed=2)
