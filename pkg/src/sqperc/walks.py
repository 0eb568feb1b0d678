"""Boundary-walk counting: successor rule, transfer matrix, cycle census.

A boundary walk moves between 8-adjacent vertices and never returns next to
the vertex it left one step earlier.  That local rule leaves 3 continuations
after a straight step (1 straight, 2 diagonal) and 5 after a diagonal step
(2 straight, 3 diagonal), which is exactly the transfer matrix [[1, 2], [2, 3]].
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

from .cluster import Cycle, enclosed, signed_area2
from .errors import CapExceeded, NotAdjacent
from .lattice import PHIBAR_STEPS, StepType, Vertex, is_phibar_adjacent

DEFAULT_CAP = 5

SQRT5 = math.sqrt(5.0)
LAMBDA_PLUS = 2.0 + SQRT5
LAMBDA_MINUS = 2.0 - SQRT5

TRANSFER_MATRIX = ((1, 2), (2, 3))

# first steps leaving the crossing vertex on the positive x axis
FIRST_STEPS = ((1, 0), (1, 1), (0, 1), (-1, 1))


def _cheb(a, b) -> int:
    return max(abs(a[0] - b[0]), abs(a[1] - b[1]))


def successor_candidates(u, v) -> set:
    """Admissible next vertices ``w`` after the oriented step ``u -> v``."""
    if not is_phibar_adjacent(u, v):
        raise NotAdjacent(f"{tuple(u)} and {tuple(v)} are not 8-adjacent")
    out = set()
    for dx, dy in PHIBAR_STEPS:
        w = (v[0] + dx, v[1] + dy)
        if _cheb(w, u) >= 2:
            out.add(Vertex(*w))
    return out


def _successor_steps(step):
    a, b = step
    return [(dx, dy) for dx, dy in PHIBAR_STEPS if max(abs(a + dx), abs(b + dy)) >= 2]


_NEXT = {s: _successor_steps(s) for s in PHIBAR_STEPS}


@dataclass(frozen=True)
class TransferVector:
    s_plus: int
    s_times: int
    n: int = 1

    @property
    def total(self) -> int:
        return self.s_plus + self.s_times


INITIAL = TransferVector(2, 2, 1)


def transfer_step(tv: TransferVector) -> TransferVector:
    (a, b), (c, d) = TRANSFER_MATRIX
    return TransferVector(a * tv.s_plus + b * tv.s_times,
                          c * tv.s_plus + d * tv.s_times, tv.n + 1)


@lru_cache(maxsize=None)
def _vector(n: int) -> TransferVector:
    if n == 1:
        return INITIAL
    return transfer_step(_vector(n - 1))


def walk_counts(n: int) -> tuple[int, int, int]:
    """``(s_plus, s_times, s_n)`` for walks of ``n`` steps, exact integers."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    for m in range(1, n):  # warm the cache bottom-up, avoids deep recursion
        _vector(m)
    tv = _vector(n)
    return tv.s_plus, tv.s_times, tv.total


def count_walks_dfs(n: int) -> tuple[int, int]:
    """Brute-force ``(s_plus, s_times)`` by depth-first search over
    :func:`successor_candidates`, starting from the four first steps."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    plus = times = 0
    z = Vertex(0, 0)
    stack = [(z, z + s, 1) for s in FIRST_STEPS]
    while stack:
        u, v, depth = stack.pop()
        if depth == n:
            if step_kind(u, v) is StepType.STRAIGHT:
                plus += 1
            else:
                times += 1
            continue
        for w in successor_candidates(u, v):
            stack.append((v, w, depth + 1))
    return plus, times


def step_kind(u, v) -> StepType:
    return StepType.STRAIGHT if abs(u[0] - v[0]) + abs(u[1] - v[1]) == 1 else StepType.DIAGONAL


def walk_count_bound(n: int) -> float:
    """The growth bound ``4 (2 + sqrt 5)**(n - 1)``."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    return 4.0 * LAMBDA_PLUS ** (n - 1)


def _lambda_power(m: int) -> tuple[int, int]:
    """``(a, b)`` with ``(2 + sqrt 5)**m = a + b sqrt 5``."""
    a, b = 1, 0
    for _ in range(m):
        a, b = 2 * a + 5 * b, a + 2 * b
    return a, b


def bound_holds_exact(n: int) -> tuple[bool, bool]:
    """Decide ``s_n <= bound`` and ``s_n == bound`` in exact arithmetic."""
    s = walk_counts(n)[2]
    a, b = _lambda_power(n - 1)
    lhs, rhs = s - 4 * a, 4 * b  # s <= 4a + 4b sqrt5  <=>  lhs <= rhs sqrt5
    if b == 0:
        return lhs <= 0, lhs == 0
    if lhs <= 0:
        return True, False
    return lhs * lhs <= 5 * rhs * rhs, False


def growth_rate() -> tuple[float, float]:
    return LAMBDA_PLUS, LAMBDA_MINUS


def cycle_count_bound(k: int) -> int:
    """``4 (k - 1) s_{2k-1}``, an upper bound on the number of enclosing
    cycles of length ``2k``."""
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    return 4 * (k - 1) * walk_counts(2 * k - 1)[2]


# -- cycle census ------------------------------------------------------------

@dataclass(frozen=True)
class CycleCensus:
    length: int
    cycles: tuple

    @property
    def k(self) -> float:
        return self.length / 2 if self.length % 2 else self.length // 2

    @property
    def r_k(self) -> int:
        return len(self.cycles)


def _check_cap(length: int, cap: int):
    if length > 2 * cap:
        raise CapExceeded(f"cycle length {length} exceeds the census cap 2*{cap}")


def enumerate_cycles(k: int, cap: int = DEFAULT_CAP) -> CycleCensus:
    """All canonical cycles of length ``2k`` whose interior holds the origin."""
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    return enumerate_cycles_of_length(2 * k, cap)


def enumerate_cycles_of_length(length: int, cap: int = DEFAULT_CAP) -> CycleCensus:
    """Census of origin-enclosing induced 8-cycles with ``length`` vertices.

    Odd lengths are allowed (they do occur).  Cycles are grown as boundary
    walks from their smallest vertex; a vertex may touch the walk only at its
    predecessor, and at the start when it closes the cycle.
    """
    if length < 3:
        raise ValueError(f"length must be >= 3, got {length}")
    _check_cap(length, cap)
    return CycleCensus(length, tuple(_census(length)))


@lru_cache(maxsize=None)
def _census(n: int) -> list:
    # every vertex of an enclosing n-cycle has |x|, |y| <= (n - 2) // 2
    reach = (n - 2) // 2
    found = []
    for sx in range(-reach, 0):
        for sy in range(-reach, reach + 1):
            found.extend(_cycles_from((sx, sy), n, reach))
    found.sort(key=lambda c: c.vertices)
    return found


def _cycles_from(start, n, reach):
    sx, sy = start
    path = [start]
    on_path = {start}
    out = []

    def lower_bound(w):
        # steps still needed to touch x >= 1, y >= 1 and y <= -1, then return
        need = 0
        if max_x < 1:
            need = max(need, max(0, 1 - w[0]) + (1 - sx))
        if max_y < 1:
            need = max(need, max(0, 1 - w[1]) + max(0, 1 - sy))
        if min_y > -1:
            need = max(need, max(0, w[1] + 1) + max(0, sy + 1))
        return need

    max_x, max_y, min_y = sx, sy, sy

    def grow(step):
        nonlocal max_x, max_y, min_y
        v = path[-1]
        j = len(path)  # index of the vertex about to be placed
        remaining = n - j
        for dx, dy in _NEXT[step] if step is not None else PHIBAR_STEPS:
            w = (v[0] + dx, v[1] + dy)
            if w <= start or w in on_path or abs(w[0]) > reach or abs(w[1]) > reach:
                continue
            if _cheb(w, start) > remaining:
                continue
            closing = j == n - 1
            touches = [p for p in path[:-1]
                       if max(abs(p[0] - w[0]), abs(p[1] - w[1])) == 1]
            if closing:
                if touches != [start]:
                    continue
            elif touches:
                continue
            saved = max_x, max_y, min_y
            max_x, max_y, min_y = max(max_x, w[0]), max(max_y, w[1]), min(min_y, w[1])
            if lower_bound(w) <= remaining:
                path.append(w)
                on_path.add(w)
                if closing:
                    if signed_area2(path) > 0 and enclosed(on_path, (0, 0)):
                        out.append(Cycle.from_vertices(path))
                else:
                    grow((dx, dy))
                path.pop()
                on_path.discard(w)
            max_x, max_y, min_y = saved

    grow(None)
    return out


def enumerate_cycles_by_subsets(length: int) -> list:
    """Independent census: filter every ``length``-subset of the box.

    Exponential in the box size; intended for ``length <= 7``.
    """
    reach = (length - 2) // 2
    box = [(x, y) for x in range(-reach, reach + 1) for y in range(-reach, reach + 1)
           if (x, y) != (0, 0)]
    out = []
    for combo in itertools.combinations(box, length):
        vset = set(combo)
        if any(sum(1 for dx, dy in PHIBAR_STEPS if (p[0] + dx, p[1] + dy) in vset) != 2
               for p in combo):
            continue
        seq = _walk_around(vset)
        if seq is None or not enclosed(vset, (0, 0)):
            continue
        out.append(Cycle.from_vertices(seq))
    out.sort(key=lambda c: c.vertices)
    return out


def _walk_around(vset):
    start = min(vset)
    seq = [start]
    prev = None
    cur = start
    while True:
        nxt = [(cur[0] + dx, cur[1] + dy) for dx, dy in PHIBAR_STEPS]
        nxt = [p for p in nxt if p in vset and p != prev]
        step = nxt[0] if prev is None else nxt[0]
        if step == start:
            break
        prev, cur = cur, step
        seq.append(cur)
        if len(seq) > len(vset):
            return None
    return seq if len(seq) == len(vset) else None


def observed_successor_steps(max_size: int = 8) -> dict:
    """Step pairs seen along the external boundaries of all polyominoes of up
    to ``max_size`` cells: maps a step ``v - u`` to the set of next steps
    ``w - v``."""
    from .animals import fixed_polyominoes
    from .cluster import boundary_cycle_of

    seen = {s: set() for s in PHIBAR_STEPS}
    for size in range(1, max_size + 1):
        for poly in fixed_polyominoes(size):
            for u, v, w in boundary_cycle_of(poly).triples():
                seen[(v[0] - u[0], v[1] - u[1])].add((w[0] - v[0], w[1] - v[1]))
    return seen
