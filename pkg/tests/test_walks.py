import math
from decimal import Decimal, getcontext

import pytest
from hypothesis import given, strategies as st

from sqperc.animals import connected_sets
from sqperc.cluster import boundary_cycle_of, interior_set
from sqperc.errors import CapExceeded, NotAdjacent
from sqperc.lattice import PHIBAR_STEPS, Vertex, is_phi_adjacent
from sqperc.walks import (TransferVector, bound_holds_exact, count_walks_dfs, cycle_count_bound,
                          enumerate_cycles, enumerate_cycles_by_subsets,
                          enumerate_cycles_of_length, growth_rate, observed_successor_steps,
                          successor_candidates, transfer_step, walk_count_bound, walk_counts)

SQRT5 = math.sqrt(5)
SYMMETRIES = [lambda x, y: (x, y), lambda x, y: (-y, x), lambda x, y: (-x, -y),
              lambda x, y: (y, -x), lambda x, y: (x, -y), lambda x, y: (-x, y),
              lambda x, y: (y, x), lambda x, y: (-y, -x)]


def test_successors_after_straight_step():
    assert successor_candidates((0, 0), (1, 0)) == {(2, 0), (2, 1), (2, -1)}


def test_successors_after_diagonal_step():
    cands = successor_candidates((0, 0), (1, 1))
    assert len(cands) == 5
    assert sum(is_phi_adjacent(w, (1, 1)) for w in cands) == 2
    assert cands == {(2, 1), (1, 2), (2, 2), (0, 2), (2, 0)}


@pytest.mark.parametrize("step", PHIBAR_STEPS)
def test_successor_counts(step):
    cands = successor_candidates((0, 0), step)
    straight = sum(is_phi_adjacent(w, step) for w in cands)
    if is_phi_adjacent((0, 0), step):
        assert (len(cands), straight) == (3, 1)
    else:
        assert (len(cands), straight) == (5, 2)


def test_successor_not_adjacent():
    with pytest.raises(NotAdjacent):
        successor_candidates((0, 0), (2, 1))


@given(st.integers(-50, 50), st.integers(-50, 50), st.sampled_from(PHIBAR_STEPS),
       st.sampled_from(SYMMETRIES))
def test_successors_equivariant(x, y, step, g):
    u = (x, y)
    v = (x + step[0], y + step[1])
    base = {(w[0] - v[0], w[1] - v[1]) for w in successor_candidates(u, v)}
    gs = g(*step)
    image = {(w[0] - gs[0], w[1] - gs[1]) for w in successor_candidates((0, 0), gs)}
    assert {g(*d) for d in base} == image


def test_successor_rule_matches_polyomino_boundaries():
    """The diagonal-step rule is fixed by what external boundaries do."""
    seen = observed_successor_steps(8)
    for step, nxt in seen.items():
        rule = {(w[0] - step[0], w[1] - step[1]) for w in successor_candidates((0, 0), step)}
        assert nxt == rule


def test_transfer_step():
    assert transfer_step(TransferVector(2, 2, 1)) == TransferVector(6, 10, 2)
    assert transfer_step(TransferVector(6, 10, 2)) == TransferVector(26, 42, 3)
    assert transfer_step(TransferVector(0, 0, 5)) == TransferVector(0, 0, 6)


@given(st.integers(0, 10**30), st.integers(0, 10**30), st.integers(0, 10**30), st.integers(0, 10**30))
def test_transfer_linear(a, b, c, d):
    s = transfer_step(TransferVector(a + c, b + d))
    p, q = transfer_step(TransferVector(a, b)), transfer_step(TransferVector(c, d))
    assert (s.s_plus, s.s_times) == (p.s_plus + q.s_plus, p.s_times + q.s_times)


def test_walk_counts_examples():
    assert walk_counts(1) == (2, 2, 4)
    assert walk_counts(3) == (26, 42, 68)
    with pytest.raises(ValueError):
        walk_counts(0)


@pytest.mark.parametrize("n", range(1, 9))
def test_walk_counts_match_dfs(n):
    assert walk_counts(n)[:2] == count_walks_dfs(n)


def test_walk_counts_exact_beyond_int64():
    s = walk_counts(40)[2]
    assert isinstance(s, int) and s > 2**63


def test_closed_form_counts():
    g_plus, g_minus = 1 + SQRT5 / 5, 1 - SQRT5 / 5
    lp, lm = growth_rate()
    for n in range(1, 21):
        a, b = g_plus * lp ** (n - 1), g_minus * lm ** (n - 1)
        closed = a + b + 0.5 * (a * (1 + SQRT5) + b * (1 - SQRT5))
        assert closed == pytest.approx(walk_counts(n)[2], rel=1e-12)


def test_walk_count_bound_values():
    assert walk_count_bound(1) == 4.0 == walk_counts(1)[2]
    assert walk_count_bound(3) == pytest.approx(36 + 16 * SQRT5, rel=1e-12)
    assert walk_count_bound(3) == pytest.approx(71.7770876, rel=1e-9)


def test_walk_count_bound_holds():
    for n in range(1, 31):
        le, eq = bound_holds_exact(n)
        assert le and eq == (n == 1)
        assert walk_counts(n)[2] <= walk_count_bound(n) * (1 + 1e-15)


def test_growth_rate():
    lp, lm = growth_rate()
    assert lp == pytest.approx(4.2360679775, rel=1e-10)
    assert lp * lm == pytest.approx(-1, rel=1e-12)
    assert lp + lm == pytest.approx(4, rel=1e-12)
    assert abs(walk_counts(20)[2] / walk_counts(19)[2] - lp) < 1e-6


def test_ratio_converges_monotonically():
    getcontext().prec = 120
    lam = 2 + Decimal(5).sqrt()
    s = [walk_counts(n)[2] for n in range(1, 32)]
    assert all(b > a for a, b in zip(s, s[1:]))
    err = [abs(Decimal(s[n]) / Decimal(s[n - 1]) - lam) for n in range(2, 31)]
    assert all(b < a for a, b in zip(err, err[1:]))


def test_census_k2_is_the_diamond():
    cen = enumerate_cycles(2)
    assert cen.r_k == 1
    assert set(cen.cycles[0].vertices) == {(1, 0), (0, 1), (-1, 0), (0, -1)}


def test_census_k3_has_domino_rings():
    rings = {boundary_cycle_of(d) for d in
             ([(0, 0), (1, 0)], [(0, 0), (-1, 0)], [(0, 0), (0, 1)], [(0, 0), (0, -1)])}
    cen = enumerate_cycles(3)
    assert rings <= set(cen.cycles)
    assert cen.r_k == 4


@pytest.mark.parametrize("length", range(4, 11))
def test_census_soundness(length):
    from sqperc.cluster import validate_cycle
    cen = enumerate_cycles_of_length(length)
    assert len(set(cen.cycles)) == cen.r_k
    for cyc in cen.cycles:
        validate_cycle(cyc.vertices)
        assert cyc.vertices[0] == min(cyc.vertices)
        assert (0, 0) in interior_set(cyc.vertices)
        for u, v, w in cyc.triples():
            assert w in successor_candidates(u, v)


@pytest.mark.parametrize("length", range(4, 8))
def test_census_matches_subset_enumerator(length):
    assert enumerate_cycles_by_subsets(length) == list(enumerate_cycles_of_length(length).cycles)


def test_census_matches_cluster_boundaries():
    """For short lengths every census cycle is the external boundary of a
    small cluster at the origin, and vice versa."""
    found = {n: set() for n in range(4, 9)}
    for w in connected_sets((0, 0), 6):
        cyc = boundary_cycle_of(w)
        if len(cyc) in found:
            found[len(cyc)].add(cyc)
    for n, cycles in found.items():
        assert cycles == set(enumerate_cycles_of_length(n).cycles)


def test_polyomino_boundaries_appear_in_census():
    for w in connected_sets((0, 0), 6):
        cyc = boundary_cycle_of(w)
        if len(cyc) <= 10:
            assert cyc in set(enumerate_cycles_of_length(len(cyc)).cycles)


def test_odd_lengths_reported():
    assert enumerate_cycles_of_length(5).r_k == 0
    # L-tromino boundaries have 7 vertices
    assert enumerate_cycles_of_length(7).r_k == 12
    assert boundary_cycle_of([(0, 0), (1, 0), (1, 1)]) in enumerate_cycles_of_length(7).cycles


def test_cycle_count_bound():
    assert cycle_count_bound(2) == 272
    assert cycle_count_bound(3) == 8 * walk_counts(5)[2]
    for k in range(2, 6):
        assert enumerate_cycles(k).r_k <= cycle_count_bound(k)


def test_cap():
    with pytest.raises(CapExceeded):
        enumerate_cycles(6)
    with pytest.raises(CapExceeded):
        enumerate_cycles(3, cap=2)
