import math
import sys

import pytest
from hypothesis import given, settings, strategies as st

from sqperc.cluster import Cycle, boundary_cycle_of
from sqperc.errors import InteriorTooLarge
from sqperc.series import (census_cycles, finite_cluster_probability_bracket, p_gamma,
                           p_gamma_upper, partial_sum, perimeter_terms, tail_bound,
                           threshold_upper_bound)
from sqperc.walks import cycle_count_bound, enumerate_cycles, enumerate_cycles_of_length, walk_count_bound

import oracles

C0 = 3 - math.sqrt(5)
DIAMOND = boundary_cycle_of([(0, 0)])
DOMINOES = [boundary_cycle_of(d) for d in
            ([(0, 0), (1, 0)], [(0, 0), (-1, 0)], [(0, 0), (0, 1)], [(0, 0), (0, -1)])]
unit = st.floats(0, 1)


def direct_tail(c, m, terms=4000):
    xi = ((2 + math.sqrt(5)) * (1 - c)) ** 2
    return 16 * (1 - c) ** 2 * math.fsum((k - 1) * xi ** (k - 1) for k in range(m + 1, m + terms))


def test_p_gamma_diamond():
    assert p_gamma(DIAMOND, 0.5) == 0.03125
    assert perimeter_terms(DIAMOND) == {(1, 4): 1}


@pytest.mark.parametrize("c", [0.1, 0.4, 0.77])
def test_p_gamma_dominoes(c):
    for cyc in DOMINOES:
        assert p_gamma(cyc, c) == pytest.approx(c ** 2 * (1 - c) ** 6, rel=1e-14)


@pytest.mark.parametrize("c", [0.0, 1.0])
def test_p_gamma_degenerate(c):
    for cyc in census_cycles(4):
        assert p_gamma(cyc, c) == 0.0


@pytest.mark.parametrize("length", [4, 6, 7, 8])
def test_p_gamma_matches_bruteforce(length):
    for cyc in enumerate_cycles_of_length(length).cycles:
        expect = oracles.p_gamma_bruteforce(set(cyc.vertices), 0.37)
        assert p_gamma(cyc, 0.37) == pytest.approx(expect, rel=1e-12)


def test_p_gamma_upper():
    assert p_gamma_upper(DIAMOND, 0.5) == 0.0625
    assert p_gamma_upper(DIAMOND, 1.0) == 0.0
    assert p_gamma_upper(DIAMOND, 0.0) == 1.0


def test_elementary_estimate():
    for cyc in census_cycles(5):
        for c in [i / 10 for i in range(1, 10)]:
            assert p_gamma(cyc, c) <= p_gamma_upper(cyc, c)


def test_interior_cap():
    ring = Cycle.from_vertices([(x, y) for x, y in
                                [(4 - i, i) for i in range(4)] + [(-i, 4 - i) for i in range(4)]
                                + [(-4 + i, -i) for i in range(4)] + [(i, -4 + i) for i in range(4)]])
    with pytest.raises(InteriorTooLarge):
        p_gamma(ring, 0.5)
    assert p_gamma(ring, 0.5, interior_cap=25) > 0


def test_partial_sum_examples():
    for c in (0.2, 0.5, 0.9):
        assert partial_sum(c, 2).partial_sum == pytest.approx(c * (1 - c) ** 4, rel=1e-15)
    assert partial_sum(0.5, 3).partial_sum == 0.03125 + 4 * 0.25 * 0.5 ** 6
    assert all(partial_sum(0.0, k).partial_sum == 0 for k in range(2, 6))


@settings(max_examples=40, deadline=None)
@given(unit)
def test_partial_sum_bounded_and_monotone(c):
    sums = [partial_sum(c, k).partial_sum for k in range(2, 6)]
    # at tiny c the exact sum sits within 1e-26 of c, below float resolution
    assert all(s <= c * (1 + 4 * sys.float_info.epsilon) for s in sums)
    assert all(b >= a for a, b in zip(sums, sums[1:]))


def test_majorant_chain():
    for k in range(2, 5):
        for c in (0.3, 0.7, 0.9):
            q = (1 - c) ** (2 * k)
            upper_sum = math.fsum(p_gamma_upper(cyc, c) for cyc in enumerate_cycles(k).cycles)
            assert upper_sum == pytest.approx(enumerate_cycles(k).r_k * q)
            assert upper_sum <= q * cycle_count_bound(k)


def test_tail_bound_values():
    assert math.isinf(tail_bound(C0, 5))
    assert math.isinf(tail_bound(0.5, 2))
    assert tail_bound(0.85, 5) == pytest.approx(0.0368, abs=5e-5)
    assert tail_bound(1.0, 3) == 0.0


@pytest.mark.parametrize("c", [0.77, 0.8, 0.85, 0.95])
@pytest.mark.parametrize("m", [2, 3, 5, 10])
def test_tail_bound_matches_direct_sum(c, m):
    assert tail_bound(c, m) == pytest.approx(direct_tail(c, m), rel=1e-10)


@settings(deadline=None)
@given(st.floats(C0 + 1e-3, 0.999), st.integers(2, 40))
def test_tail_decays_in_m(c, m):
    assert tail_bound(c, m + 1) < tail_bound(c, m)


def test_tail_divergence_boundary():
    for m in range(2, 11):
        assert math.isfinite(tail_bound(0.764, m))
        assert math.isinf(tail_bound(0.763, m))


def test_bracket():
    br = finite_cluster_probability_bracket(0.85, 5)
    assert br.width == pytest.approx(0.0368, abs=5e-5)
    assert br.lower == partial_sum(0.85, 5).partial_sum
    low = finite_cluster_probability_bracket(0.5, 3)
    assert math.isfinite(low.lower) and math.isinf(low.upper)
    widths = [finite_cluster_probability_bracket(0.85, k).width for k in range(2, 6)]
    assert all(b <= a for a, b in zip(widths, widths[1:]))


def test_threshold_upper_bound():
    c0 = threshold_upper_bound()
    assert c0 == pytest.approx(0.7639320225, rel=1e-10)
    assert abs(c0 - C0) <= 1e-12 * C0
    assert c0 == pytest.approx(1 - 1 / (2 + math.sqrt(5)), rel=1e-12)
    assert 1 / 3 < c0 < 6 / 7
    n = 400
    log_term = lambda c: math.log(walk_count_bound(n)) + n * math.log(1 - c)
    assert log_term(c0 + 0.01) < -10
    assert log_term(c0 - 0.01) > 10
