"""numba-compiled loop implementations; signatures mirror ``_numpy``."""

import numpy as np
from numba import njit

NAME = "numba"


@njit(cache=True)
def _popcount64(x):
    x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
    x = (x & np.uint64(0x3333333333333333)) + ((x >> np.uint64(2)) & np.uint64(0x3333333333333333))
    x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    return int((x * np.uint64(0x0101010101010101)) >> np.uint64(56))


@njit(cache=True)
def derivative_table(table):
    q = table.shape[0]
    D = np.empty((q, q), dtype=np.int64)
    for a in range(q):
        for x in range(q):
            D[a, x] = table[x] ^ table[x ^ a]
    return D


@njit(cache=True)
def max_row_multiplicity(D):
    rows, q = D.shape
    out = np.zeros(rows, dtype=np.int64)
    counts = np.zeros(q, dtype=np.int64)
    for a in range(rows):
        counts[:] = 0
        best = 0
        for x in range(q):
            v = D[a, x]
            counts[v] += 1
            if counts[v] > best:
                best = counts[v]
        out[a] = best
    return out


@njit(cache=True)
def image_masks(D):
    rows, q = D.shape
    M = np.zeros((rows, q), dtype=np.bool_)
    for a in range(rows):
        for x in range(q):
            M[a, D[a, x]] = True
    return M


@njit(cache=True)
def _functional_for_row(mask, m):
    # basis of span{h ^ h0}, reduced on leading bits
    q = 1 << m
    h0 = -1
    size = 0
    for h in range(q):
        if mask[h]:
            size += 1
            if h0 < 0:
                h0 = h
    if size != q // 2 or h0 < 0:
        return 0
    basis = np.zeros(m, dtype=np.int64)  # basis[bit] has leading bit `bit`
    rank = 0
    for h in range(q):
        if not mask[h]:
            continue
        v = h ^ h0
        for bit in range(m - 1, -1, -1):
            if not (v >> bit) & 1:
                continue
            if basis[bit] == 0:
                basis[bit] = v
                rank += 1
                break
            v ^= basis[bit]
    if rank != m - 1:
        return 0
    # the annihilator of an (m-1)-dim subspace is a single nonzero functional
    for lam in range(1, q):
        ok = True
        for bit in range(m):
            b = basis[bit]
            if b != 0:
                x = lam & b
                p = 0
                while x:
                    p ^= 1
                    x &= x - 1
                if p:
                    ok = False
                    break
        if ok:
            x = lam & h0
            p = 0
            while x:
                p ^= 1
                x &= x - 1
            return lam if p == 1 else 0
    return 0


@njit(cache=True)
def hyperplane_functionals(D, m):
    M = image_masks(D)
    out = np.zeros(D.shape[0], dtype=np.int64)
    for a in range(1, D.shape[0]):
        out[a] = _functional_for_row(M[a], m)
    return out


@njit(cache=True)
def triple_sum_rows(D):
    M = image_masks(D)
    rows, q = D.shape
    bad = np.zeros(rows, dtype=np.bool_)
    h = np.empty(q, dtype=np.int64)
    for a in range(1, rows):
        k = 0
        for v in range(q):
            if M[a, v]:
                h[k] = v
                k += 1
        found = False
        for i in range(k):
            for j in range(i, k):
                if M[a, h[i] ^ h[j]]:
                    found = True
                    break
            if found:
                break
        bad[a] = found
    return bad


@njit(cache=True)
def subset_xor(values):
    k = values.shape[0]
    out = np.zeros(1 << k, dtype=np.int64)
    for mask in range(1, 1 << k):
        low = mask & -mask
        i = 0
        while (low >> i) != 1:
            i += 1
        out[mask] = out[mask ^ low] ^ values[i]
    return out


@njit(cache=True)
def preparata_scan(s_sum, s_target, t_sum, t_fsum, t_even):
    ns = s_sum.shape[0]
    nt = t_sum.shape[0]
    cap = 1024
    s_idx = np.empty(cap, dtype=np.int64)
    t_idx = np.empty(cap, dtype=np.int64)
    k = 0
    for s in range(ns):
        for t in range(nt):
            if t_even[t] and s_sum[s] == t_sum[t] and s_target[s] == t_fsum[t]:
                if k == cap:
                    cap *= 2
                    s_new = np.empty(cap, dtype=np.int64)
                    t_new = np.empty(cap, dtype=np.int64)
                    s_new[:k] = s_idx[:k]
                    t_new[:k] = t_idx[:k]
                    s_idx = s_new
                    t_idx = t_new
                s_idx[k] = s
                t_idx[k] = t
                k += 1
    return s_idx[:k], t_idx[:k]


@njit(cache=True)
def _min_pairwise(w):
    n = w.shape[0]
    best = 64
    for i in range(n):
        for j in range(i + 1, n):
            d = _popcount64(w[i] ^ w[j])
            if d < best:
                best = d
    return best


def min_pairwise_distance(words):
    w = np.asarray(words, dtype=np.uint64)
    if w.shape[0] < 2:
        return -1
    return int(_min_pairwise(w))


@njit(cache=True)
def _bfs(nbr, src, dist, queue):
    dist[:] = -1
    dist[src] = 0
    queue[0] = src
    head = 0
    tail = 1
    deg = nbr.shape[1]
    while head < tail:
        v = queue[head]
        head += 1
        dv = dist[v] + 1
        for k in range(deg):
            u = nbr[v, k]
            if dist[u] < 0:
                dist[u] = dv
                queue[tail] = u
                tail += 1


def bfs_distances(bits, nbr, src):
    N = nbr.shape[0]
    dist = np.empty(N, dtype=np.int64)
    queue = np.empty(N, dtype=np.int64)
    _bfs(nbr, src, dist, queue)
    return dist


@njit(cache=True)
def _layer_counts(nbr, dist, c, a, b):
    N, deg = nbr.shape
    for u in range(N):
        du = dist[u]
        cc = 0
        aa = 0
        bb = 0
        for k in range(deg):
            dw = dist[nbr[u, k]]
            if dw == du - 1:
                cc += 1
            elif dw == du:
                aa += 1
            elif dw == du + 1:
                bb += 1
        c[u] = cc
        a[u] = aa
        b[u] = bb


def layer_counts(nbr, dist):
    N = nbr.shape[0]
    c = np.empty(N, dtype=np.int64)
    a = np.empty(N, dtype=np.int64)
    b = np.empty(N, dtype=np.int64)
    _layer_counts(nbr, dist, c, a, b)
    return c, a, b


@njit(cache=True)
def _first_irregular(nbr, ref_c, ref_a, ref_b, out):
    N = nbr.shape[0]
    D = ref_c.shape[0]
    dist = np.empty(N, dtype=np.int64)
    queue = np.empty(N, dtype=np.int64)
    c = np.empty(N, dtype=np.int64)
    a = np.empty(N, dtype=np.int64)
    b = np.empty(N, dtype=np.int64)
    for v in range(N):
        _bfs(nbr, v, dist, queue)
        for u in range(N):
            if dist[u] < 0 or dist[u] >= D:
                out[0] = v
                out[1] = u
                out[2] = dist[u] if dist[u] >= 0 else -1
                out[3] = -1
                out[4] = -1
                out[5] = -1
                return True
        _layer_counts(nbr, dist, c, a, b)
        for u in range(N):
            d = dist[u]
            if c[u] != ref_c[d] or a[u] != ref_a[d] or b[u] != ref_b[d]:
                out[0] = v
                out[1] = u
                out[2] = d
                out[3] = c[u]
                out[4] = a[u]
                out[5] = b[u]
                return True
    return False


def first_irregular(bits, nbr, ref_c, ref_a, ref_b):
    out = np.zeros(6, dtype=np.int64)
    if _first_irregular(nbr, ref_c, ref_a, ref_b, out):
        return tuple(int(x) for x in out)
    return None


@njit(cache=True)
def common_neighbour_counts(bits):
    N, words = bits.shape
    out = np.empty((N, N), dtype=np.int64)
    for v in range(N):
        for u in range(v, N):
            s = 0
            for w in range(words):
                s += _popcount64(bits[v, w] & bits[u, w])
            out[v, u] = s
            out[u, v] = s
    return out
