"""numba implementations of the hot loops.

Every kernel here has a counterpart with the same signature and the same
results in ``_numpy_kernels``.  Monte Carlo kernels draw sites lazily from the
counter-based stream and stop searching as soon as the answer is known.
"""
import numba as nb
import numpy as np

from . import _rng

_jit = nb.njit(cache=True, nogil=True)

mix64 = _jit(_rng.mix64)
_vertex_word = _jit(_rng.vertex_word)
_GOLDEN = _rng.GOLDEN
_ONE = np.uint64(1)
_S11 = np.uint64(11)


# the two compositions below restate _rng.replica_key / _rng.site_draw with
# the compiled mixer; parity tests pin them to the numpy path
@_jit
def _replica_key(seed_u, replica_u):
    return mix64(mix64(seed_u + _GOLDEN) + (replica_u + _ONE) * _GOLDEN)


@_jit
def _site_draw(key, word):
    return mix64(mix64(word + _GOLDEN) ^ key) >> _S11

_DX = np.array([1, 0, -1, 0], dtype=np.int64)
_DY = np.array([0, 1, 0, -1], dtype=np.int64)


@_jit
def _draw(key, x, y):
    return _site_draw(key, _vertex_word(np.uint64(x), np.uint64(y)))


@_jit
def _find(parent, a):
    while parent[a] != a:
        parent[a] = parent[parent[a]]
        a = parent[a]
    return a


@_jit
def label_grid(occ):
    """Union-find labelling; each site gets the flat index of its cluster's
    smallest member (row-major), empty sites get -1."""
    n0, n1 = occ.shape
    parent = np.arange(n0 * n1, dtype=np.int64)
    for i in range(n0):
        for j in range(n1):
            if not occ[i, j]:
                continue
            a = i * n1 + j
            if i > 0 and occ[i - 1, j]:
                ra, rb = _find(parent, a), _find(parent, a - n1)
                if ra != rb:
                    # smaller root wins so roots stay minimal
                    if ra < rb:
                        parent[rb] = ra
                    else:
                        parent[ra] = rb
            if j > 0 and occ[i, j - 1]:
                ra, rb = _find(parent, a), _find(parent, a - 1)
                if ra != rb:
                    if ra < rb:
                        parent[rb] = ra
                    else:
                        parent[ra] = rb
    labels = np.full((n0, n1), -1, dtype=np.int64)
    for i in range(n0):
        for j in range(n1):
            if occ[i, j]:
                labels[i, j] = _find(parent, i * n1 + j)
    return labels


@_jit
def origin_counts(seed_u, threshold, half_width, start, stop):
    """Counts of (origin occupied, origin cluster frame-free, frame contact)."""
    h = half_width
    side = 2 * h + 1
    stamp = np.full((side, side), -1, dtype=np.int64)
    stack = np.empty(side * side, dtype=np.int64)
    n_occ = 0
    n_fin = 0
    n_inf = 0
    for r in range(start, stop):
        key = _replica_key(seed_u, np.uint64(r))
        if _draw(key, 0, 0) >= threshold:
            continue
        n_occ += 1
        if h == 0:
            n_inf += 1
            continue
        top = 0
        stack[0] = h * side + h
        stamp[h, h] = r
        hit = False
        while top >= 0 and not hit:
            cell = stack[top]
            top -= 1
            ci = cell // side
            cj = cell - ci * side
            for d in range(4):
                ni = ci + _DX[d]
                nj = cj + _DY[d]
                if stamp[ni, nj] == r:
                    continue
                stamp[ni, nj] = r
                if _draw(key, ni - h, nj - h) >= threshold:
                    continue
                if ni == 0 or nj == 0 or ni == side - 1 or nj == side - 1:
                    hit = True
                    break
                top += 1
                stack[top] = ni * side + nj
        if hit:
            n_inf += 1
        else:
            n_fin += 1
    return n_occ, n_fin, n_inf


@_jit
def crossing_count(seed_u, threshold, half_width, start, stop):
    """Number of replicas with an occupied path from column x=-h to x=+h."""
    h = half_width
    side = 2 * h + 1
    stamp = np.full((side, side), -1, dtype=np.int64)
    stack = np.empty(side * side, dtype=np.int64)
    hits = 0
    for r in range(start, stop):
        key = _replica_key(seed_u, np.uint64(r))
        top = -1
        hit = False
        for j in range(side):
            if stamp[0, j] == r:
                continue
            stamp[0, j] = r
            if _draw(key, -h, j - h) >= threshold:
                continue
            if side == 1:
                hit = True
                break
            top = 0
            stack[0] = j
            while top >= 0 and not hit:
                cell = stack[top]
                top -= 1
                ci = cell // side
                cj = cell - ci * side
                for d in range(4):
                    ni = ci + _DX[d]
                    nj = cj + _DY[d]
                    if ni < 0 or nj < 0 or ni >= side or nj >= side:
                        continue
                    if stamp[ni, nj] == r:
                        continue
                    stamp[ni, nj] = r
                    if _draw(key, ni - h, nj - h) >= threshold:
                        continue
                    if ni == side - 1:
                        hit = True
                        break
                    top += 1
                    stack[top] = ni * side + nj
            if hit:
                break
        if hit:
            hits += 1
    return hits


@_jit
def b_gamma_count(seed_u, threshold, half_width, start, stop, target):
    """Replicas whose origin cluster is frame-free with external boundary
    equal to the vertex set marked in ``target`` (a side x side bool grid)."""
    h = half_width
    side = 2 * h + 1
    n_target = 0
    for i in range(side):
        for j in range(side):
            if target[i, j]:
                n_target += 1
    # 0 unknown, 1 cluster, 2 boundary, 3 outside region
    state = np.zeros((side, side), dtype=np.int8)
    stack = np.empty(side * side, dtype=np.int64)
    members = np.empty(side * side, dtype=np.int64)
    hits = 0
    for r in range(start, stop):
        key = _replica_key(seed_u, np.uint64(r))
        if _draw(key, 0, 0) >= threshold:
            continue
        state[:, :] = 0
        state[h, h] = 1
        members[0] = h * side + h
        n_members = 1
        top = 0
        stack[0] = h * side + h
        frame = h == 0
        while top >= 0 and not frame:
            cell = stack[top]
            top -= 1
            ci = cell // side
            cj = cell - ci * side
            for d in range(4):
                ni = ci + _DX[d]
                nj = cj + _DY[d]
                if state[ni, nj] != 0:
                    continue
                if _draw(key, ni - h, nj - h) >= threshold:
                    state[ni, nj] = 2
                    continue
                if ni == 0 or nj == 0 or ni == side - 1 or nj == side - 1:
                    frame = True
                    break
                state[ni, nj] = 1
                members[n_members] = ni * side + nj
                n_members += 1
                top += 1
                stack[top] = ni * side + nj
        if frame:
            continue
        # flood the outside from the frame through cells not in W or dW
        top = -1
        for i in range(side):
            for j in range(side):
                if (i == 0 or j == 0 or i == side - 1 or j == side - 1) and state[i, j] == 0:
                    state[i, j] = 3
                    top += 1
                    stack[top] = i * side + j
        while top >= 0:
            cell = stack[top]
            top -= 1
            ci = cell // side
            cj = cell - ci * side
            for d in range(4):
                ni = ci + _DX[d]
                nj = cj + _DY[d]
                if ni < 0 or nj < 0 or ni >= side or nj >= side:
                    continue
                if state[ni, nj] != 0:
                    continue
                state[ni, nj] = 3
                top += 1
                stack[top] = ni * side + nj
        n_ext = 0
        ok = True
        for i in range(side):
            for j in range(side):
                if state[i, j] != 2:
                    continue
                ext = i == 0 or j == 0 or i == side - 1 or j == side - 1
                if not ext:
                    for d in range(4):
                        if state[i + _DX[d], j + _DY[d]] == 3:
                            ext = True
                            break
                if ext:
                    n_ext += 1
                    if not target[i, j]:
                        ok = False
        if ok and n_ext == n_target:
            hits += 1
    return hits
