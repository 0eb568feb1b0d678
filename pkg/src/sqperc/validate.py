"""Cross-validation checks shared by ``sqperc validate`` and the test suite.

Each check returns a :class:`CheckResult`; ``quick=True`` shrinks sample
counts so the whole suite runs in well under a minute.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from . import cluster, montecarlo, series, walks
from .errors import CycleValidation
from .lattice import ORIGIN, Window, sample_configuration


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def domino_cycles() -> list:
    dominoes = [[(0, 0), (1, 0)], [(0, 0), (-1, 0)], [(0, 0), (0, 1)], [(0, 0), (0, -1)]]
    return [cluster.boundary_cycle_of(d) for d in dominoes]


def diamond_cycle():
    return cluster.boundary_cycle_of([(0, 0)])


def check_transfer_oracle(quick=True) -> CheckResult:
    bad = [n for n in range(1, 9) if walks.walk_counts(n)[:2] != walks.count_walks_dfs(n)]
    return CheckResult("transfer_matrix_vs_dfs", not bad,
                       "n=1..8 exact" if not bad else f"mismatch at n={bad}")


def check_growth_bound(quick=True) -> CheckResult:
    res = [walks.bound_holds_exact(n) for n in range(1, 31)]
    ok = all(le for le, _ in res) and res[0][1] and not any(eq for _, eq in res[1:])
    return CheckResult("walk_count_bound", ok, "s_n <= 4(2+sqrt5)^(n-1), n=1..30, equality only at n=1")


def check_successor_rule(quick=True) -> CheckResult:
    size = 6 if quick else 8
    seen = walks.observed_successor_steps(size)
    bad = []
    for step, nxt in seen.items():
        rule = {(w[0] - step[0], w[1] - step[1]) for w in walks.successor_candidates((0, 0), step)}
        if nxt != rule:
            bad.append(step)
    return CheckResult("successor_rule_vs_polyominoes", not bad,
                       f"polyominoes up to size {size}" if not bad else f"differs after steps {bad}")


def census_problems(length: int) -> list:
    problems = []
    cen = walks.enumerate_cycles_of_length(length)
    for cyc in cen.cycles:
        try:
            cluster.validate_cycle(cyc.vertices)
        except CycleValidation as exc:
            problems.append(f"{cyc.vertices[0]}: {exc}")
        if (0, 0) not in cluster.interior_set(cyc.vertices):
            problems.append(f"{cyc.vertices[0]}: origin not enclosed")
        for u, v, w in cyc.triples():
            if w not in walks.successor_candidates(u, v):
                problems.append(f"{cyc.vertices[0]}: inadmissible triple {u, v, w}")
    if length % 2 == 0 and cen.r_k > walks.cycle_count_bound(length // 2):
        problems.append(f"r_{length // 2} exceeds 4(k-1) s_(2k-1)")
    return problems


def check_census(quick=True) -> CheckResult:
    top = 8
    problems = []
    if walks.enumerate_cycles(2).r_k != 1:
        problems.append("r_2 != 1")
    for length in range(4, top + 1):
        problems += census_problems(length)
    sub_top = 6 if quick else 7
    for length in range(4, sub_top + 1):
        if walks.enumerate_cycles_by_subsets(length) != list(walks.enumerate_cycles_of_length(length).cycles):
            problems.append(f"subset enumerator disagrees at length {length}")
    counts = ", ".join(f"{n}:{walks.enumerate_cycles_of_length(n).r_k}" for n in range(4, top + 1))
    return CheckResult("cycle_census", not problems, problems[0] if problems else f"lengths {counts}")


def check_boundary_extraction(quick=True, configs=None, seed=0) -> CheckResult:
    n_cfg = configs or (300 if quick else 10_000)
    cs = (0.3, 0.5, 0.7)
    window = Window(15)
    # boundaries of clusters next to the frame lie on it; enclosure is purely
    # geometric, so test it in a window one step larger
    wider = Window(16)
    n_clusters = 0
    failures = []
    for r in range(n_cfg):
        cfg = sample_configuration(window, cs[r % 3], seed, r)
        for cl in cluster.label_clusters(cfg).clusters():
            if cl.touches_frame:
                continue
            n_clusters += 1
            try:
                cyc = cluster.external_boundary(cl, cfg)
            except CycleValidation as exc:
                failures.append(str(exc))
                continue
            if cl.anchor not in cluster.interior(cyc, wider):
                failures.append(f"anchor {cl.anchor} not enclosed")
    return CheckResult("boundary_extraction", not failures,
                       f"{n_cfg} configurations, {n_clusters} clusters, {len(failures)} failures")


def check_b_gamma_agreement(quick=True, samples=None, seed=0) -> CheckResult:
    n = samples or (20_000 if quick else 100_000)
    worst = 0.0
    for cyc in [diamond_cycle()] + domino_cycles():
        for c in (0.3, 0.5, 0.7):
            exact = series.p_gamma(cyc, c)
            est = montecarlo.estimate_b_gamma_frequency(cyc, c, 8, n, seed)
            sigma = math.sqrt(exact * (1 - exact) / n)
            worst = max(worst, abs(est.value - exact) / sigma)
    return CheckResult("b_gamma_vs_exact", worst <= 3.0,
                       f"N={n}, worst deviation {worst:.2f} sigma")


def check_bracket(quick=True, samples=None, seed=0) -> CheckResult:
    n = samples or (20_000 if quick else 100_000)
    br = series.finite_cluster_probability_bracket(0.85, 5)
    p_fin, _ = montecarlo.estimate_origin_stats(0.85, 64, n, seed)
    sigma = math.sqrt(max(p_fin.value * (1 - p_fin.value), br.lower * (1 - br.lower)) / n)
    ok = abs(br.width - 0.0368) < 5e-5 and br.lower - 3 * sigma <= p_fin.value <= br.upper + 3 * sigma
    return CheckResult("bracket_c085", ok,
                       f"[{br.lower:.6g}, {br.upper:.6g}] width {br.width:.6g}, MC {p_fin.value:.6g}")


def check_threshold(quick=True, seed=0) -> CheckResult:
    c0 = series.threshold_upper_bound()
    size, n = (32, 500) if quick else (64, 2000)
    iv = montecarlo.estimate_threshold(size, n, 0.01, seed)
    ok = (abs(c0 - (3 - math.sqrt(5))) <= 1e-12 * c0 and 1 / 3 < iv.c_lo
          and iv.c_hi < 6 / 7 and iv.c_hi < c0)
    return CheckResult("threshold", ok, f"c0={c0:.12g}, pseudo-threshold [{iv.c_lo:.6g}, {iv.c_hi:.6g}] at L_h={size}")


def check_partition(quick=True, seed=0) -> CheckResult:
    rows = montecarlo.sweep([0.0, 0.3, 0.55, 0.6, 0.8, 1.0], 16, 2000, seed)
    ok = all(r.p_fin.successes + r.p_inf.successes == r.origin_occupied for r in rows)
    return CheckResult("partition_identity", ok, f"{len(rows)} sweep rows")


def check_tail_divergence(quick=True) -> CheckResult:
    ok = all(math.isfinite(series.tail_bound(0.764, m)) and math.isinf(series.tail_bound(0.763, m))
             for m in range(2, 11))
    return CheckResult("tail_divergence_boundary", ok, "finite at c=0.764, infinite at c=0.763, m=2..10")


CHECKS: list[Callable[..., CheckResult]] = [
    check_transfer_oracle,
    check_growth_bound,
    check_successor_rule,
    check_census,
    check_boundary_extraction,
    check_b_gamma_agreement,
    check_bracket,
    check_threshold,
    check_partition,
    check_tail_divergence,
]


def run_all(quick=True) -> list[CheckResult]:
    return [chk(quick=quick) for chk in CHECKS]
