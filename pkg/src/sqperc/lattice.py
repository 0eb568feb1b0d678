"""Square-lattice geometry and the Bernoulli site field."""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Optional

import numpy as np

from . import _rng
from .errors import InvalidConcentration, NotAdjacent, OutOfWindow


class Vertex(NamedTuple):
    x: int
    y: int

    def __add__(self, other):  # type: ignore[override]
        return Vertex(self.x + other[0], self.y + other[1])

    def __sub__(self, other):
        return Vertex(self.x - other[0], self.y - other[1])


E1 = Vertex(1, 0)
E2 = Vertex(0, 1)
ORIGIN = Vertex(0, 0)

# E, N, W, S then NE, NW, SE, SW
PHI_STEPS = ((1, 0), (0, 1), (-1, 0), (0, -1))
DIAGONAL_STEPS = ((1, 1), (-1, 1), (1, -1), (-1, -1))
PHIBAR_STEPS = PHI_STEPS + DIAGONAL_STEPS


class StepType(enum.Enum):
    STRAIGHT = "straight"
    DIAGONAL = "diagonal"


def phi_neighbors(v) -> list[Vertex]:
    x, y = v
    return [Vertex(x + dx, y + dy) for dx, dy in PHI_STEPS]


def phibar_neighbors(v) -> list[Vertex]:
    x, y = v
    return [Vertex(x + dx, y + dy) for dx, dy in PHIBAR_STEPS]


def is_phi_adjacent(u, v) -> bool:
    return abs(u[0] - v[0]) + abs(u[1] - v[1]) == 1


def is_phibar_adjacent(u, v) -> bool:
    dx, dy = abs(u[0] - v[0]), abs(u[1] - v[1])
    return max(dx, dy) == 1


def step_type(u, v) -> StepType:
    if not is_phibar_adjacent(u, v):
        raise NotAdjacent(f"{tuple(u)} and {tuple(v)} are not 8-adjacent")
    if is_phi_adjacent(u, v):
        return StepType.STRAIGHT
    return StepType.DIAGONAL


@dataclass(frozen=True)
class Window:
    """Origin-centred box ``|x|, |y| <= half_width``."""

    half_width: int

    def __post_init__(self):
        if int(self.half_width) != self.half_width or self.half_width < 1:
            raise ValueError(f"half_width must be a positive integer, got {self.half_width!r}")

    @property
    def side(self) -> int:
        return 2 * self.half_width + 1

    def contains(self, v) -> bool:
        h = self.half_width
        return -h <= v[0] <= h and -h <= v[1] <= h

    def on_frame(self, v) -> bool:
        h = self.half_width
        return self.contains(v) and (abs(v[0]) == h or abs(v[1]) == h)

    def frame(self) -> list[Vertex]:
        h = self.half_width
        return [Vertex(x, y) for x in range(-h, h + 1) for y in range(-h, h + 1)
                if abs(x) == h or abs(y) == h]

    def vertices(self) -> list[Vertex]:
        h = self.half_width
        return [Vertex(x, y) for x in range(-h, h + 1) for y in range(-h, h + 1)]

    def index(self, v) -> tuple[int, int]:
        if not self.contains(v):
            raise OutOfWindow(f"{tuple(v)} lies outside |x|,|y| <= {self.half_width}")
        return v[0] + self.half_width, v[1] + self.half_width

    def vertex(self, i: int, j: int) -> Vertex:
        return Vertex(int(i) - self.half_width, int(j) - self.half_width)


@dataclass(frozen=True, eq=False)
class SiteConfiguration:
    """Occupancy of every window vertex.

    ``occupied[i, j]`` is the state of ``Vertex(i - h, j - h)``; scan order of
    the array is lexicographic vertex order.
    """

    window: Window
    occupied: np.ndarray = field(repr=False)
    concentration: Optional[float] = None
    seed: Optional[int] = None
    replica_index: Optional[int] = None

    def __post_init__(self):
        occ = np.asarray(self.occupied, dtype=bool)
        if occ.shape != (self.window.side, self.window.side):
            raise ValueError(f"occupancy shape {occ.shape} does not match window side {self.window.side}")
        occ.setflags(write=False)
        object.__setattr__(self, "occupied", occ)

    @classmethod
    def from_vertices(cls, window: Window, vertices: Iterable) -> "SiteConfiguration":
        occ = np.zeros((window.side, window.side), dtype=bool)
        for v in vertices:
            occ[window.index(v)] = True
        return cls(window, occ)

    def is_occupied(self, v) -> bool:
        return bool(self.occupied[self.window.index(v)])

    def occupied_vertices(self) -> list[Vertex]:
        return [self.window.vertex(i, j) for i, j in np.argwhere(self.occupied)]

    def __eq__(self, other):
        if not isinstance(other, SiteConfiguration):
            return NotImplemented
        return (self.window == other.window
                and np.array_equal(self.occupied, other.occupied)
                and self.concentration == other.concentration
                and self.seed == other.seed
                and self.replica_index == other.replica_index)

    __hash__ = None  # type: ignore[assignment]


def check_concentration(concentration: float) -> float:
    c = float(concentration)
    if not 0.0 <= c <= 1.0:
        raise InvalidConcentration(f"concentration must lie in [0, 1], got {concentration!r}")
    return c


def sample_configuration(window: Window, concentration: float, seed: int,
                         replica_index: int) -> SiteConfiguration:
    """Draw one replica of the Bernoulli field on ``window``.

    Each vertex's bit depends only on ``(seed, replica_index, x, y)``, so the
    same vertex keeps its state when the window grows, and replicas may be
    drawn in any order or in parallel.
    """
    c = check_concentration(concentration)
    if replica_index < 0:
        raise ValueError("replica_index must be nonnegative")
    thr = _rng.occupancy_threshold(c)
    occ = _rng.occupancy_grid(seed, [replica_index], window.half_width, thr)[0]
    return SiteConfiguration(window, occ, c, int(seed), int(replica_index))
