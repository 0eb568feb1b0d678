"""Exhaustive enumeration of 4-connected vertex sets (lattice animals).

Redelmeier's method: every connected set containing the root is produced
exactly once, without a duplicate check.
"""
from __future__ import annotations

from typing import Callable, Iterator, Optional

from .lattice import PHI_STEPS


def connected_sets(root, max_size: int,
                   allowed: Optional[Callable] = None) -> Iterator[frozenset]:
    """Yield every 4-connected set of at most ``max_size`` vertices that
    contains ``root`` and lies inside ``allowed`` (a predicate)."""
    root = (root[0], root[1])
    if max_size < 1 or (allowed is not None and not allowed(root)):
        return
    ok = allowed if allowed is not None else (lambda p: True)

    def extend(current, untried, seen):
        while untried:
            v = untried.pop()
            grown = current + (v,)
            yield frozenset(grown)
            if len(grown) == max_size:
                continue
            fresh = []
            for dx, dy in PHI_STEPS:
                p = (v[0] + dx, v[1] + dy)
                if p not in seen and ok(p):
                    fresh.append(p)
            yield from extend(grown, untried + fresh, seen | set(fresh))

    yield from extend((), [root], {root})


def fixed_polyominoes(size: int) -> list[frozenset]:
    """All fixed polyominoes of exactly ``size`` cells, each translated so its
    lexicographically smallest cell is the origin, in sorted order."""
    out = [s for s in connected_sets((0, 0), size, allowed=lambda p: p >= (0, 0))
           if len(s) == size]
    return sorted(out, key=sorted)
