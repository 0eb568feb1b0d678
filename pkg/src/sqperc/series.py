"""Cluster decomposition of the finite-cluster probability at the origin.

The probability that the origin is occupied and its cluster is finite splits
over the cluster's external boundary cycle.  Each cycle's share is an exact
polynomial in the concentration; summing the shares of all cycles up to a
given length and adding a majorant for the rest brackets the total.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from . import walks
from .animals import connected_sets
from .cluster import Cycle, _external_set, _phi_boundary, interior_set
from .errors import InteriorTooLarge
from .lattice import check_concentration

DEFAULT_INTERIOR_CAP = 24

THRESHOLD_UPPER_BOUND = 3.0 - math.sqrt(5.0)


def threshold_upper_bound() -> float:
    return THRESHOLD_UPPER_BOUND


@dataclass(frozen=True)
class SeriesBracket:
    concentration: float
    max_k: int
    partial_sum: float
    tail: Optional[float] = None

    @property
    def lower(self) -> float:
        return self.partial_sum

    @property
    def upper(self) -> float:
        if self.tail is None:
            raise ValueError("tail bound not computed for this bracket")
        return self.partial_sum + self.tail

    @property
    def width(self) -> float:
        return self.upper - self.lower

    @property
    def divergent(self) -> bool:
        return self.tail is not None and math.isinf(self.tail)


def perimeter_terms(cycle: Cycle, interior_cap: int = DEFAULT_INTERIOR_CAP) -> dict:
    """``{(|W|, |dW|): count}`` over clusters ``W`` at the origin whose
    external boundary is ``cycle``."""
    return dict(_terms(cycle.vertices, interior_cap))


@lru_cache(maxsize=None)
def _terms(vertices: tuple, interior_cap: int) -> tuple:
    gset = frozenset(vertices)
    inside = interior_set(gset)
    if (0, 0) not in inside:
        raise ValueError("the origin is not enclosed by this cycle")
    if len(inside) > interior_cap:
        raise InteriorTooLarge(f"|Int| = {len(inside)} exceeds the cap {interior_cap}")
    terms = Counter()
    for w in connected_sets((0, 0), len(inside), allowed=inside.__contains__):
        dw = _phi_boundary(w)
        if gset <= dw and _external_set(set(w), dw) == gset:
            terms[(len(w), len(dw))] += 1
    return tuple(sorted(terms.items()))


def _evaluate(terms, c: float) -> float:
    return math.fsum(n * c ** a * (1.0 - c) ** b for (a, b), n in terms)


def p_gamma(cycle: Cycle, concentration: float,
            interior_cap: int = DEFAULT_INTERIOR_CAP) -> float:
    """Probability that the origin is occupied and its cluster's external
    boundary is exactly ``cycle``."""
    c = check_concentration(concentration)
    return _evaluate(_terms(cycle.vertices, interior_cap), c)


def p_gamma_upper(cycle: Cycle, concentration: float) -> float:
    c = check_concentration(concentration)
    return (1.0 - c) ** len(cycle)


def census_cycles(max_k: int, cap: int = walks.DEFAULT_CAP) -> list:
    """All enclosing cycles with at most ``2 max_k`` vertices, ascending
    length then canonical order (the fixed summation order)."""
    out = []
    for length in range(4, 2 * max_k + 1):
        out.extend(walks.enumerate_cycles_of_length(length, cap).cycles)
    return out


def partial_sum(concentration: float, max_k: int,
                cap: int = walks.DEFAULT_CAP) -> SeriesBracket:
    """Sum of ``p_gamma`` over every cycle of length ``<= 2 max_k``."""
    c = check_concentration(concentration)
    if max_k < 2:
        raise ValueError(f"max_k must be >= 2, got {max_k}")
    # fsum is exactly rounded, so the result is independent of term order
    total = math.fsum(p_gamma(cyc, c) for cyc in census_cycles(max_k, cap))
    return SeriesBracket(c, max_k, total)


def tail_bound(concentration: float, m: int) -> float:
    """Majorant for the contribution of cycles longer than ``2m``.

    ``16 (1-c)^2 xi^m (m (1 - xi) + xi) / (1 - xi)^2`` with
    ``xi = ((2 + sqrt 5)(1 - c))^2``; infinite when ``c <= 3 - sqrt 5``.
    """
    c = check_concentration(concentration)
    if m < 2:
        raise ValueError(f"m must be >= 2, got {m}")
    if c <= THRESHOLD_UPPER_BOUND:
        return math.inf
    q = 1.0 - c
    xi = (walks.LAMBDA_PLUS * q) ** 2
    if xi >= 1.0:
        return math.inf
    return 16.0 * q * q * xi ** m * (m * (1.0 - xi) + xi) / (1.0 - xi) ** 2


def finite_cluster_probability_bracket(concentration: float, max_k: int,
                                       cap: int = walks.DEFAULT_CAP) -> SeriesBracket:
    low = partial_sum(concentration, max_k, cap)
    return SeriesBracket(low.concentration, max_k, low.partial_sum,
                         tail_bound(low.concentration, max_k))
