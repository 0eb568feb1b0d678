"""Clusters, their boundaries, external boundary cycles and enclosed regions.

Geometry here works on plain ``(x, y)`` tuples internally; ``Vertex`` is a
NamedTuple, so the two compare and hash identically.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np
from scipy import ndimage

_CROSS = ndimage.generate_binary_structure(2, 1)

from . import kernels
from .errors import CycleTouchesFrame, CycleValidation, FrameContact
from .lattice import (PHI_STEPS, PHIBAR_STEPS, SiteConfiguration, StepType, Vertex,
                      Window, step_type)


@dataclass(frozen=True)
class Cluster:
    vertices: frozenset
    anchor: Vertex
    touches_frame: bool

    def __len__(self):
        return len(self.vertices)


def signed_area2(vertices) -> int:
    """Twice the signed area of the closed polyline (shoelace)."""
    n = len(vertices)
    total = 0
    for i in range(n):
        x0, y0 = vertices[i]
        x1, y1 = vertices[(i + 1) % n]
        total += x0 * y1 - x1 * y0
    return total


def _phibar_degree(v, vset) -> int:
    x, y = v
    return sum((x + dx, y + dy) in vset for dx, dy in PHIBAR_STEPS)


@dataclass(frozen=True)
class Cycle:
    """Counter-clockwise 8-adjacent cycle, starting at its smallest vertex.

    Build with :meth:`from_vertices`, which canonicalises and validates.
    """

    vertices: tuple

    @classmethod
    def from_vertices(cls, vertices: Iterable, validate: bool = True) -> "Cycle":
        """Canonicalise; ``validate=False`` admits closed 8-adjacent loops that
        are not induced cycles, e.g. the unit square, for region queries."""
        vs = [Vertex(int(v[0]), int(v[1])) for v in vertices]
        if len(vs) < 3:
            raise CycleValidation(f"a cycle needs at least 3 vertices, got {len(vs)}")
        i = vs.index(min(vs))
        vs = vs[i:] + vs[:i]
        if signed_area2(vs) < 0:
            vs = [vs[0]] + vs[:0:-1]
        cyc = cls(tuple(vs))
        if validate:
            validate_cycle(cyc.vertices)
        return cyc

    def __len__(self):
        return len(self.vertices)

    @property
    def orientation(self) -> str:
        return "counter-clockwise"

    @property
    def step_types(self) -> tuple:
        vs = self.vertices
        n = len(vs)
        return tuple(step_type(vs[i], vs[(i + 1) % n]) for i in range(n))

    @property
    def vertex_set(self) -> frozenset:
        return frozenset(self.vertices)

    def triples(self):
        """Consecutive oriented triples ``(u, v, w)``, cyclically."""
        vs = self.vertices
        n = len(vs)
        return [(vs[i], vs[(i + 1) % n], vs[(i + 2) % n]) for i in range(n)]


def validate_cycle(vertices) -> None:
    """Raise :class:`CycleValidation` unless ``vertices`` (in order) form an
    induced counter-clockwise cycle of the 8-neighbour graph."""
    n = len(vertices)
    vset = set(vertices)
    if len(vset) != n:
        raise CycleValidation("cycle repeats a vertex")
    for i in range(n):
        u, v = vertices[i], vertices[(i + 1) % n]
        if max(abs(u[0] - v[0]), abs(u[1] - v[1])) != 1:
            raise CycleValidation(f"consecutive vertices {tuple(u)}, {tuple(v)} are not 8-adjacent")
    for v in vertices:
        d = _phibar_degree(v, vset)
        if d != 2:
            raise CycleValidation(f"vertex {tuple(v)} has {d} 8-neighbours on the cycle, expected 2")
    if signed_area2(vertices) <= 0:
        raise CycleValidation("cycle is not counter-clockwise")


# -- labelling ---------------------------------------------------------------

@dataclass(frozen=True)
class Labeling:
    """Cluster labels of one configuration.

    ``labels[i, j]`` is the id of the cluster holding the site, or -1.  A
    cluster's id is the flat (row-major) index of its smallest member, so ids
    follow lexicographic vertex order.  ``ids``, ``sizes`` and
    ``touches_frame`` are aligned arrays sorted by id.
    """

    window: Window
    labels: np.ndarray
    ids: np.ndarray
    sizes: np.ndarray
    touches_frame: np.ndarray

    def __len__(self):
        return len(self.ids)

    def anchor(self, cluster_id: int) -> Vertex:
        i, j = divmod(int(cluster_id), self.window.side)
        return self.window.vertex(i, j)

    def members(self) -> dict:
        """Map id -> list of member vertices (scan order)."""
        flat = self.labels.ravel()
        idx = np.flatnonzero(flat >= 0)
        order = np.argsort(flat[idx], kind="stable")
        idx = idx[order]
        groups = np.split(idx, np.cumsum(self.sizes)[:-1]) if len(self.ids) else []
        side, h = self.window.side, self.window.half_width
        return {int(cid): [Vertex(int(k) // side - h, int(k) % side - h) for k in g]
                for cid, g in zip(self.ids, groups)}

    def clusters(self) -> list:
        touching = dict(zip(self.ids.tolist(), self.touches_frame.tolist()))
        return [Cluster(frozenset(vs), self.anchor(cid), bool(touching[cid]))
                for cid, vs in self.members().items()]


def label_clusters(config: SiteConfiguration) -> Labeling:
    labels = kernels.label_grid(config.occupied)
    flat = labels.ravel()
    ids, sizes = np.unique(flat[flat >= 0], return_counts=True)
    rim = np.concatenate([labels[0, :], labels[-1, :], labels[:, 0], labels[:, -1]])
    touches = np.isin(ids, rim[rim >= 0])
    return Labeling(config.window, labels, ids, sizes.astype(np.int64), touches)


def cluster_of(config: SiteConfiguration, v) -> Optional[Cluster]:
    window = config.window
    i, j = window.index(v)
    occ = config.occupied
    if not occ[i, j]:
        return None
    side = window.side
    seen = {(i, j)}
    todo = [(i, j)]
    touches = False
    while todo:
        a, b = todo.pop()
        if a == 0 or b == 0 or a == side - 1 or b == side - 1:
            touches = True
        for dx, dy in PHI_STEPS:
            p = (a + dx, b + dy)
            if 0 <= p[0] < side and 0 <= p[1] < side and p not in seen and occ[p]:
                seen.add(p)
                todo.append(p)
    h = window.half_width
    verts = frozenset(Vertex(a - h, b - h) for a, b in seen)
    return Cluster(verts, Vertex(v[0], v[1]), touches)


# -- boundaries --------------------------------------------------------------

def _phi_boundary(vset) -> set:
    out = set()
    for x, y in vset:
        for dx, dy in PHI_STEPS:
            p = (x + dx, y + dy)
            if p not in vset:
                out.add(p)
    return out


def _box(vset, margin):
    xs = [p[0] for p in vset]
    ys = [p[1] for p in vset]
    return min(xs) - margin, max(xs) + margin, min(ys) - margin, max(ys) + margin


def _outside_mask(blocked):
    """Mask of vertices joined to infinity by 4-paths avoiding ``blocked``.

    Only the bounding box of ``blocked`` grown by one is represented: its rim
    misses ``blocked`` and everything beyond it is outside, so this equals
    flooding from the frame of any larger window.  Returns ``(mask, x0, y0)``.
    """
    x0, x1, y0, y1 = _box(blocked, 1)
    grid = np.zeros((x1 - x0 + 1, y1 - y0 + 1), dtype=bool)
    pts = np.array(list(blocked), dtype=np.int64)
    grid[pts[:, 0] - x0, pts[:, 1] - y0] = True
    # default structuring element is the 4-neighbour cross; the rim is one
    # component because it surrounds everything blocked
    comp, _ = ndimage.label(~grid, structure=_CROSS)
    return comp == comp[0, 0], x0, y0


def _external_set(cluster_set, boundary_set) -> set:
    mask, x0, y0 = _outside_mask(cluster_set | boundary_set)
    return {u for u in boundary_set
            if any(mask[u[0] + dx - x0, u[1] + dy - y0] for dx, dy in PHI_STEPS)}


def boundary(cluster: Cluster, config: Optional[SiteConfiguration] = None) -> set:
    """Unoccupied 4-neighbours of the cluster."""
    if cluster.touches_frame:
        raise FrameContact("cluster touches the window frame; its boundary is truncated")
    return {Vertex(*p) for p in _phi_boundary(cluster.vertices)}


def order_cycle(vset) -> Cycle:
    """Arrange an 8-connected, 2-regular vertex set into its canonical cycle."""
    vset = set(vset)
    if len(vset) < 3:
        raise CycleValidation(f"{len(vset)} vertices cannot form a cycle")
    start = min(vset)
    nbrs = [(start[0] + dx, start[1] + dy) for dx, dy in PHIBAR_STEPS]
    nbrs = [p for p in nbrs if p in vset]
    if len(nbrs) != 2:
        raise CycleValidation(f"vertex {tuple(start)} has {len(nbrs)} 8-neighbours in the set")
    seq = [start, nbrs[0]]
    while len(seq) <= len(vset):
        prev, cur = seq[-2], seq[-1]
        nxt = [(cur[0] + dx, cur[1] + dy) for dx, dy in PHIBAR_STEPS]
        nxt = [p for p in nxt if p in vset and p != prev]
        if len(nxt) != 1:
            raise CycleValidation(f"vertex {tuple(cur)} does not continue the cycle uniquely")
        if nxt[0] == start:
            break
        seq.append(nxt[0])
    if len(seq) != len(vset):
        raise CycleValidation("vertex set splits into more than one cycle")
    return Cycle.from_vertices(seq)


def external_boundary(cluster: Cluster, config: Optional[SiteConfiguration] = None) -> Cycle:
    """External boundary of a frame-free cluster as a canonical cycle.

    A boundary vertex is external when some 4-path from it to infinity meets
    the cluster and its boundary only at that vertex.
    """
    if cluster.touches_frame:
        raise FrameContact("external boundary needs a cluster clear of the frame")
    dw = _phi_boundary(cluster.vertices)
    return order_cycle(_external_set(set(cluster.vertices), dw))


def enclosed(vset, point) -> bool:
    """Whether every infinite 4-path from ``point`` meets ``vset``."""
    if point in vset:
        return False
    xs = [p[0] for p in vset]
    ys = [p[1] for p in vset]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    seen = {tuple(point)}
    todo = deque(seen)
    while todo:
        x, y = todo.popleft()
        if not (x0 < x < x1 and y0 < y < y1):
            return False
        for dx, dy in PHI_STEPS:
            p = (x + dx, y + dy)
            if p not in seen and p not in vset:
                seen.add(p)
                todo.append(p)
    return True


def interior_set(vset) -> set:
    """Int of a vertex set, as plain tuples (no window needed)."""
    vset = set(vset)
    mask, x0, y0 = _outside_mask(vset)
    return {(int(i) + x0, int(j) + y0) for i, j in np.argwhere(~mask)} - vset


def interior(cycle: Cycle, window: Window) -> set:
    """Vertices of ``window`` cut off from the frame by ``cycle`` (4-paths)."""
    if any(not window.contains(v) or window.on_frame(v) for v in cycle.vertices):
        raise CycleTouchesFrame("cycle must lie strictly inside the window")
    return {Vertex(*p) for p in interior_set(cycle.vertices)}


def boundary_cycle_of(vertices) -> Cycle:
    """External boundary of an arbitrary finite 4-connected vertex set."""
    vs = set(map(tuple, vertices))
    return order_cycle(_external_set(vs, _phi_boundary(vs)))
