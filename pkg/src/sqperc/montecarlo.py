"""Monte Carlo estimators on finite windows.

Replica ``r`` of a run with seed ``s`` is the configuration drawn from the
counter-based stream keyed by ``(s, r)``; estimators only count events, and
counts from any split of the replica range add up to the same integers, so
results do not depend on the number of workers.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from . import _rng, kernels
from .cluster import Cycle
from .errors import CycleTouchesFrame
from .lattice import Window, check_concentration


@dataclass(frozen=True)
class SimEstimate:
    value: float
    std_error: float
    samples: int
    successes: int
    concentration: float
    half_width: int
    seed: int

    @classmethod
    def from_count(cls, successes, samples, concentration, half_width, seed):
        p = successes / samples
        return cls(p, math.sqrt(p * (1.0 - p) / samples), samples, int(successes),
                   concentration, half_width, seed)


@dataclass(frozen=True)
class OriginStats:
    p_fin: SimEstimate
    p_inf: SimEstimate
    p_occ: SimEstimate


@dataclass(frozen=True)
class SweepRow:
    concentration: float
    p_fin: SimEstimate
    p_inf: SimEstimate
    crossing: SimEstimate
    origin_occupied: int


class ThresholdInterval(NamedTuple):
    c_lo: float
    c_hi: float
    iterations: int


def _check_run(samples, half_width):
    if int(samples) != samples or samples < 1:
        raise ValueError(f"samples must be a positive integer, got {samples!r}")
    if int(half_width) != half_width or half_width < 1:
        raise ValueError(f"half_width must be a positive integer, got {half_width!r}")


def _split(start, stop, parts):
    parts = max(1, min(int(parts), stop - start))
    edges = np.linspace(start, stop, parts + 1).round().astype(np.int64)
    return [(int(a), int(b)) for a, b in zip(edges[:-1], edges[1:]) if b > a]


def _counts(fn, args, start, stop, workers, extra=()):
    """Run ``fn(*args, lo, hi, *extra)`` over chunks and add the results."""
    chunks = _split(start, stop, workers)
    if len(chunks) == 1:
        results = [fn(*args, *chunks[0], *extra)]
    else:
        with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
            results = list(pool.map(lambda ch: fn(*args, *ch, *extra), chunks))
    first = results[0]
    if isinstance(first, tuple):
        return tuple(sum(int(r[i]) for r in results) for i in range(len(first)))
    return sum(int(r) for r in results)


def _stream(seed, concentration):
    return _rng.seed_to_u64(seed), _rng.occupancy_threshold(concentration)


def origin_statistics(concentration, half_width, samples, seed, *, first_replica=0,
                      workers=1, backend=None) -> OriginStats:
    c = check_concentration(concentration)
    _check_run(samples, half_width)
    k = kernels.get_backend(backend)
    n_occ, n_fin, n_inf = _counts(k.origin_counts, (*_stream(seed, c), int(half_width)),
                                  first_replica, first_replica + samples, workers)
    est = lambda n: SimEstimate.from_count(n, samples, c, half_width, seed)
    return OriginStats(est(n_fin), est(n_inf), est(n_occ))


def estimate_origin_stats(concentration, half_width, samples, seed, *, workers=1,
                          backend=None) -> tuple[SimEstimate, SimEstimate]:
    """Frequencies of (origin occupied, cluster clear of the frame) and
    (origin occupied, cluster reaches the frame)."""
    st = origin_statistics(concentration, half_width, samples, seed,
                           workers=workers, backend=backend)
    return st.p_fin, st.p_inf


def crossing_probability(concentration, half_width, samples, seed, *, first_replica=0,
                         workers=1, backend=None) -> SimEstimate:
    """Frequency of an occupied 4-path joining the columns x = -L and x = +L."""
    c = check_concentration(concentration)
    _check_run(samples, half_width)
    k = kernels.get_backend(backend)
    hits = _counts(k.crossing_count, (*_stream(seed, c), int(half_width)),
                   first_replica, first_replica + samples, workers)
    return SimEstimate.from_count(hits, samples, c, half_width, seed)


def estimate_threshold(half_width, samples_per_point, tolerance, seed, *, workers=1,
                       backend=None) -> ThresholdInterval:
    """Bisect for the concentration where the crossing frequency is 1/2.

    Every evaluation reuses replicas ``0 .. samples_per_point - 1``; since a
    site is occupied iff its uniform draw falls below ``c``, the crossing
    count is monotone in ``c`` and the bisection is consistent.
    """
    if not tolerance > 0:
        raise ValueError(f"tolerance must be positive, got {tolerance!r}")
    lo, hi, it = 0.0, 1.0, 0
    while hi - lo > tolerance:
        mid = 0.5 * (lo + hi)
        est = crossing_probability(mid, half_width, samples_per_point, seed,
                                   workers=workers, backend=backend)
        if 2 * est.successes < samples_per_point:
            lo = mid
        else:
            hi = mid
        it += 1
    return ThresholdInterval(lo, hi, it)


def cycle_mask(cycle: Cycle, window: Window, margin: int = 2) -> np.ndarray:
    h = window.half_width
    if any(max(abs(x), abs(y)) > h - margin for x, y in cycle.vertices):
        raise CycleTouchesFrame(f"cycle needs a margin of {margin} inside |x|,|y| <= {h}")
    mask = np.zeros((window.side, window.side), dtype=bool)
    for x, y in cycle.vertices:
        mask[x + h, y + h] = True
    return mask


def estimate_b_gamma_frequency(cycle: Cycle, concentration, half_width, samples, seed, *,
                               workers=1, backend=None) -> SimEstimate:
    """Frequency of: origin occupied, its cluster clear of the frame, and the
    cluster's external boundary equal to ``cycle``."""
    c = check_concentration(concentration)
    _check_run(samples, half_width)
    target = cycle_mask(cycle, Window(int(half_width)))
    k = kernels.get_backend(backend)
    hits = _counts(k.b_gamma_count, (*_stream(seed, c), int(half_width)),
                   0, samples, workers, extra=(target,))
    return SimEstimate.from_count(hits, samples, c, half_width, seed)


def _row(c, half_width, samples, seed, first, workers, backend) -> SweepRow:
    st = origin_statistics(c, half_width, samples, seed, first_replica=first,
                           workers=workers, backend=backend)
    cr = crossing_probability(c, half_width, samples, seed, first_replica=first,
                              workers=workers, backend=backend)
    return SweepRow(c, st.p_fin, st.p_inf, cr, st.p_occ.successes)


def simulate(concentration, half_width, samples, seed, *, workers=1, backend=None) -> SweepRow:
    return _row(check_concentration(concentration), half_width, samples, seed, 0,
                workers, backend)


def sweep(c_values: Sequence[float], half_width, samples, seed, *, workers=1,
          backend=None) -> list[SweepRow]:
    """One row per concentration; row ``i`` uses replicas
    ``i*samples .. (i+1)*samples - 1`` so rows are independent."""
    cs = [check_concentration(c) for c in c_values]
    _check_run(samples, half_width)
    return [_row(c, half_width, samples, seed, i * samples, workers, backend)
            for i, c in enumerate(cs)]
