"""Time the numba and numpy kernel backends on the same workloads.

    python benchmarks/bench_kernels.py [--repeat 3]

Both backends return identical counts; the script checks that too.
"""
import argparse
import time

import numpy as np

from sqperc import _rng, kernels
from sqperc.cluster import boundary_cycle_of
from sqperc.montecarlo import cycle_mask
from sqperc.lattice import Window

WORKLOADS = [
    ("origin_counts c=0.85 L=64 N=20000", "origin_counts", 0.85, 64, 20_000),
    ("origin_counts c=0.59 L=64 N=2000", "origin_counts", 0.59, 64, 2_000),
    ("crossing_count c=0.59 L=64 N=2000", "crossing_count", 0.59, 64, 2_000),
    ("b_gamma_count c=0.5 L=8 N=100000", "b_gamma_count", 0.5, 8, 100_000),
]


def run(backend, fn_name, c, h, n, repeat):
    fn = getattr(backend, fn_name)
    args = [_rng.seed_to_u64(0), _rng.occupancy_threshold(c), h, 0, n]
    if fn_name == "b_gamma_count":
        args.append(cycle_mask(boundary_cycle_of([(0, 0)]), Window(h)))
    fn(*args[:3], 0, min(n, 10), *args[5:])  # compile / warm caches
    best, out = np.inf, None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = {"numpy": kernels.get_backend("numpy")}
    try:
        backends["numba"] = kernels.get_backend("numba")
    except ImportError:
        print("numba not installed; timing numpy only")
    print(f"{'workload':40s} " + " ".join(f"{b:>10s}" for b in backends) + "   speedup")
    for label, fn_name, c, h, n in WORKLOADS:
        times, outs = {}, []
        for name, be in backends.items():
            times[name], out = run(be, fn_name, c, h, n, args.repeat)
            outs.append(np.asarray(out).tolist())
        assert all(o == outs[0] for o in outs), f"backends disagree on {label}"
        speed = times["numpy"] / times["numba"] if "numba" in times else float("nan")
        print(f"{label:40s} " + " ".join(f"{t:9.3f}s" for t in times.values()) + f"   {speed:6.1f}x")


if __name__ == "__main__":
    main()
