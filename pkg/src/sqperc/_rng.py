"""Counter-based site randomness.

Every occupancy bit is a pure function of ``(seed, replica, x, y)``: a
SplitMix64 finalizer is applied to a per-replica key and to the packed vertex
coordinates.  The helpers below operate on ``uint64`` numpy arrays and are
also compiled unchanged by numba for scalar use, so both kernel backends draw
identical bits.
"""
import math

import numpy as np

GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_S11 = np.uint64(11)
_S27 = np.uint64(27)
_S30 = np.uint64(30)
_S31 = np.uint64(31)
_S32 = np.uint64(32)
_ONE = np.uint64(1)
_LOW32 = np.uint64(0xFFFFFFFF)

#: Occupancy thresholds live in [0, 2**53].
THRESHOLD_BITS = 53


def mix64(z):
    z = (z ^ (z >> _S30)) * _M1
    z = (z ^ (z >> _S27)) * _M2
    return z ^ (z >> _S31)


def replica_key(seed_u, replica_u):
    return mix64(mix64(seed_u + GOLDEN) + (replica_u + _ONE) * GOLDEN)


def vertex_word(xu, yu):
    # xu, yu are the two's-complement bit patterns of the coordinates
    return ((xu & _LOW32) << _S32) | (yu & _LOW32)


def site_draw(key, word):
    """53-bit uniform integer for one site."""
    return mix64(mix64(word + GOLDEN) ^ key) >> _S11


def seed_to_u64(seed: int) -> np.uint64:
    return np.uint64(int(seed) % 2**64)


def occupancy_threshold(concentration: float) -> np.uint64:
    """Integer cut so that ``draw < threshold`` has probability ``concentration``."""
    return np.uint64(math.ceil(concentration * 2.0**THRESHOLD_BITS))


def occupancy_grid(seed: int, replicas, half_width: int, threshold) -> np.ndarray:
    """Occupancy for a batch of replicas, shape ``(len(replicas), S, S)``.

    Axis 1 is x, axis 2 is y, both offset by ``half_width``.
    """
    replicas = np.asarray(replicas, dtype=np.int64).reshape(-1)
    coords = np.arange(-half_width, half_width + 1, dtype=np.int64).astype(np.uint64)
    words = vertex_word(coords[:, None], coords[None, :])
    seeds = np.full(replicas.shape, seed_to_u64(seed), dtype=np.uint64)
    keys = replica_key(seeds, replicas.astype(np.uint64))
    draws = site_draw(keys[:, None, None], words[None, :, :])
    return draws < np.uint64(threshold)
