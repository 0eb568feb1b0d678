"""Pure-numpy implementations, vectorised over batches of replicas.

Same signatures and results as ``_numba_kernels``; much slower on large
windows because cluster growth is iterated one lattice step at a time.
"""
import numpy as np

from . import _rng

_BATCH_CELLS = 1 << 22


def _dilate(mask):
    """4-neighbour dilation over the last two axes (no wraparound)."""
    out = mask.copy()
    out[..., 1:, :] |= mask[..., :-1, :]
    out[..., :-1, :] |= mask[..., 1:, :]
    out[..., :, 1:] |= mask[..., :, :-1]
    out[..., :, :-1] |= mask[..., :, 1:]
    return out


def _grow(seed_mask, allowed):
    reached = seed_mask & allowed
    while True:
        nxt = _dilate(reached) & allowed
        if np.array_equal(nxt, reached):
            return reached
        reached = nxt


def _frame_mask(side):
    f = np.zeros((side, side), dtype=bool)
    f[0, :] = f[-1, :] = f[:, 0] = f[:, -1] = True
    return f


def _batches(start, stop, side):
    b = max(1, _BATCH_CELLS // (side * side))
    for lo in range(start, stop, b):
        yield np.arange(lo, min(stop, lo + b), dtype=np.int64)


def label_grid(occ):
    occ = np.asarray(occ, dtype=bool)
    n0, n1 = occ.shape
    big = np.int64(n0 * n1)
    labels = np.where(occ, np.arange(n0 * n1, dtype=np.int64).reshape(n0, n1), big)
    while True:
        nxt = labels.copy()
        np.minimum(nxt[1:, :], labels[:-1, :], out=nxt[1:, :])
        np.minimum(nxt[:-1, :], labels[1:, :], out=nxt[:-1, :])
        np.minimum(nxt[:, 1:], labels[:, :-1], out=nxt[:, 1:])
        np.minimum(nxt[:, :-1], labels[:, 1:], out=nxt[:, :-1])
        nxt = np.where(occ, nxt, big)
        if np.array_equal(nxt, labels):
            break
        labels = nxt
    return np.where(occ, labels, -1)


def _origin_cluster(occ, h):
    seed = np.zeros_like(occ)
    seed[:, h, h] = True
    return _grow(seed, occ)


def origin_counts(seed_u, threshold, half_width, start, stop):
    h = half_width
    side = 2 * h + 1
    frame = _frame_mask(side)
    n_occ = n_fin = n_inf = 0
    for reps in _batches(start, stop, side):
        occ = _rng.occupancy_grid(int(seed_u), reps, h, threshold)
        origin = occ[:, h, h]
        touches = (_origin_cluster(occ, h) & frame).any(axis=(1, 2))
        n_occ += int(origin.sum())
        n_inf += int((origin & touches).sum())
        n_fin += int((origin & ~touches).sum())
    return n_occ, n_fin, n_inf


def crossing_count(seed_u, threshold, half_width, start, stop):
    h = half_width
    side = 2 * h + 1
    hits = 0
    for reps in _batches(start, stop, side):
        occ = _rng.occupancy_grid(int(seed_u), reps, h, threshold)
        left = np.zeros_like(occ)
        left[:, 0, :] = True
        reached = _grow(left, occ)
        hits += int(reached[:, -1, :].any(axis=1).sum())
    return hits


def b_gamma_count(seed_u, threshold, half_width, start, stop, target):
    h = half_width
    side = 2 * h + 1
    frame = _frame_mask(side)
    target = np.asarray(target, dtype=bool)
    hits = 0
    for reps in _batches(start, stop, side):
        occ = _rng.occupancy_grid(int(seed_u), reps, h, threshold)
        w = _origin_cluster(occ, h)
        free = occ[:, h, h] & ~(w & frame).any(axis=(1, 2))
        dw = _dilate(w) & ~w
        open_ = ~(w | dw)
        outside = _grow(open_ & frame, open_)
        ext = dw & (frame | _dilate(outside))
        same = (ext == target).all(axis=(1, 2))
        hits += int((free & same).sum())
    return hits
