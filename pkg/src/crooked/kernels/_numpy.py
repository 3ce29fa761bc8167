"""Vectorized numpy implementations of the hot loops.

Every function here has a twin with the same signature in ``_numba``; the
test suite checks that the two agree.
"""

import numpy as np

NAME = "numpy"


def derivative_table(table):
    q = table.shape[0]
    idx = np.arange(q, dtype=np.int64)
    return table[None, :] ^ table[idx[:, None] ^ idx[None, :]]


def max_row_multiplicity(D):
    """Largest number of repeats of any value in each row of ``D``."""
    q = D.shape[1]
    rows = np.arange(D.shape[0], dtype=np.int64)[:, None]
    counts = np.zeros((D.shape[0], q), dtype=np.int64)
    np.add.at(counts, (np.broadcast_to(rows, D.shape), D), 1)
    return counts.max(axis=1)


def image_masks(D):
    """Boolean matrix ``M[a, h]``: does value ``h`` occur in row ``a``."""
    q = D.shape[1]
    M = np.zeros((D.shape[0], q), dtype=bool)
    M[np.arange(D.shape[0])[:, None], D] = True
    return M


def hyperplane_functionals(D, m):
    """For each row a, the functional lam with <lam, h> = 1 on every h of the row image.

    Returns 0 for rows where the image is not the complement of a linear
    hyperplane (wrong size or no such functional). Row 0 is always 0.
    """
    q = 1 << m
    M = image_masks(D).astype(np.float64)
    lam = np.arange(q, dtype=np.int64)
    par = (np.bitwise_count(lam[:, None] & lam[None, :]) & 1).astype(np.float64)
    # misses[a, lam] = number of h in image(a) with <lam, h> = 0
    misses = M @ (1.0 - par).T
    ok = misses == 0
    ok[:, 0] = False
    sizes = M.sum(axis=1)
    out = np.zeros(D.shape[0], dtype=np.int64)
    has = ok.any(axis=1) & (sizes == q // 2)
    out[has] = ok[has].argmax(axis=1)
    out[0] = 0
    return out


def triple_sum_rows(D):
    """Rows a >= 1 whose image contains h1, h2, h3 (repeats allowed) with h1^h2^h3 = 0."""
    M = image_masks(D)
    bad = np.zeros(D.shape[0], dtype=bool)
    for a in range(1, D.shape[0]):
        h = np.flatnonzero(M[a])
        bad[a] = M[a][h[:, None] ^ h[None, :]].any()
    return bad


def subset_xor(values):
    """XOR of ``values[i]`` over the set bits i of every mask in [0, 2^len)."""
    out = np.zeros(1, dtype=np.int64)
    for v in np.asarray(values, dtype=np.int64):
        out = np.concatenate([out, out ^ v])
    return out


def preparata_scan(s_sum, s_target, t_sum, t_fsum, t_even):
    """Indices (s, t) with t_even[t], s_sum[s] == t_sum[t], s_target[s] == t_fsum[t]."""
    hit = (
        t_even[None, :]
        & (s_sum[:, None] == t_sum[None, :])
        & (s_target[:, None] == t_fsum[None, :])
    )
    s_idx, t_idx = np.nonzero(hit)
    return s_idx.astype(np.int64), t_idx.astype(np.int64)


def min_pairwise_distance(words, chunk=1024):
    """Minimum Hamming distance over distinct pairs; -1 if fewer than two words."""
    w = np.asarray(words, dtype=np.uint64)
    if w.shape[0] < 2:
        return -1
    best = 64
    for start in range(0, w.shape[0], chunk):
        block = w[start:start + chunk]
        d = np.bitwise_count(block[:, None] ^ w[None, :]).astype(np.int64)
        rows = np.arange(block.shape[0])
        d[rows, rows + start] = 64
        best = min(best, int(d.min()))
    return best


def bfs_distances(bits, nbr, src):
    """Distances from ``src`` by bitset frontier sweeps; -1 where unreachable."""
    N = nbr.shape[0]
    dist = np.full(N, -1, dtype=np.int64)
    dist[src] = 0
    words = bits.shape[1]
    visited = np.zeros(words, dtype=np.uint64)
    visited[src >> 6] |= np.uint64(1) << np.uint64(src & 63)
    frontier = np.array([src], dtype=np.int64)
    d = 0
    while frontier.size:
        d += 1
        reach = np.bitwise_or.reduce(bits[frontier], axis=0) & ~visited
        visited |= reach
        frontier = _decode_bitset(reach, N)
        dist[frontier] = d
    return dist


def _decode_bitset(row, N):
    as_bytes = row.astype("<u8").view(np.uint8)
    return np.flatnonzero(np.unpackbits(as_bytes, bitorder="little")[:N])


def layer_counts(nbr, dist):
    """Per-vertex counts of neighbours one layer in, same layer, one layer out."""
    nd = dist[nbr]
    d = dist[:, None]
    c = (nd == d - 1).sum(axis=1)
    a = (nd == d).sum(axis=1)
    b = (nd == d + 1).sum(axis=1)
    return c, a, b


def first_irregular(bits, nbr, ref_c, ref_a, ref_b):
    """Scan every source for a vertex whose layer counts differ from the reference arrays.

    Returns ``(v, u, d, c, a, b)`` for the smallest source v (then smallest u),
    with d = -1 when u is unreachable and d = len(ref_c) when u lies beyond the
    reference diameter. Returns None if every source matches.
    """
    N = nbr.shape[0]
    D = ref_c.shape[0]
    for v in range(N):
        dist = bfs_distances(bits, nbr, v)
        if (dist < 0).any() or dist.max() >= D:
            u = int(np.flatnonzero((dist < 0) | (dist >= D))[0])
            return (v, u, int(dist[u]) if dist[u] >= 0 else -1, -1, -1, -1)
        c, a, b = layer_counts(nbr, dist)
        bad = (c != ref_c[dist]) | (a != ref_a[dist]) | (b != ref_b[dist])
        if bad.any():
            u = int(np.flatnonzero(bad)[0])
            return (v, u, int(dist[u]), int(c[u]), int(a[u]), int(b[u]))
    return None


def common_neighbour_counts(bits):
    N = bits.shape[0]
    out = np.empty((N, N), dtype=np.int64)
    for v in range(N):
        out[v] = np.bitwise_count(bits[v][None, :] & bits).sum(axis=1)
    return out
