"""Crooked graphs G_f and distance-regularity checks.

Vertices of G_f are triples (a, i, alpha) in V x F_2 x V, encoded as
``a * 2^(m+1) + i * 2^m + alpha``; the block of 2^m consecutive indices
sharing (a, i) is the fibre F_ai. Distinct vertices (a, i, alpha) and
(b, j, beta) are adjacent iff

    alpha + beta = f(a + b) + (i + j + 1)(f(a) + f(b)).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, TextIO

import numpy as np

from . import kernels
from .errors import Disconnected, PreconditionFailed, TooLarge
from .vbf import VectorialFunction

GRAPH_MAX_M = 7
# all-pairs work (antipodality, fibre distances, common neighbours) is N^2
ALL_PAIRS_MAX_VERTICES = 1 << 11


class Graph:
    """Simple undirected graph with padded neighbour lists and bitset adjacency rows."""

    def __init__(self, nbr: np.ndarray, degrees: np.ndarray):
        self.nbr = nbr
        self.degrees = degrees
        nbr.flags.writeable = False
        degrees.flags.writeable = False

    @classmethod
    def from_edges(cls, N: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj: list[set[int]] = [set() for _ in range(N)]
        for u, v in edges:
            if u == v:
                raise ValueError("loops are not allowed")
            adj[u].add(v)
            adj[v].add(u)
        width = max((len(s) for s in adj), default=0)
        # pad with the vertex itself; BFS ignores it, degree-aware code uses ``degrees``
        nbr = np.array([sorted(s) + [v] * (width - len(s)) for v, s in enumerate(adj)], dtype=np.int64)
        nbr = nbr.reshape(N, width)
        degrees = np.array([len(s) for s in adj], dtype=np.int64)
        return cls(nbr, degrees)

    @property
    def N(self) -> int:
        return self.nbr.shape[0]

    @property
    def is_regular(self) -> bool:
        return bool((self.degrees == self.nbr.shape[1]).all())

    @cached_property
    def bits(self) -> np.ndarray:
        """Adjacency as N rows of ceil(N/64) uint64 words; bit u of row v set iff v ~ u."""
        N = self.N
        words = (N + 63) // 64
        bits = np.zeros((N, words), dtype=np.uint64)
        rows = np.repeat(np.arange(N), self.nbr.shape[1])
        cols = self.nbr.ravel()
        keep = rows != cols
        rows, cols = rows[keep], cols[keep]
        np.bitwise_or.at(bits, (rows, cols >> 6), np.left_shift(np.uint64(1), (cols & 63).astype(np.uint64)))
        bits.flags.writeable = False
        return bits

    def adjacent(self, u: int, v: int) -> bool:
        return bool((int(self.bits[u, v >> 6]) >> (v & 63)) & 1)

    def neighbours(self, v: int) -> np.ndarray:
        return self.nbr[v, : self.degrees[v]]

    def edges(self):
        for v in range(self.N):
            for u in self.neighbours(v):
                if v < u:
                    yield v, int(u)


class CoverGraph(Graph):
    def __init__(self, f: VectorialFunction, nbr: np.ndarray):
        super().__init__(nbr, np.full(nbr.shape[0], nbr.shape[1], dtype=np.int64))
        self.f = f

    @property
    def m(self) -> int:
        return self.f.m

    @property
    def fibre_size(self) -> int:
        return 1 << self.m

    @property
    def fibre_count(self) -> int:
        return 2 << self.m

    def index(self, a: int, i: int, alpha: int) -> int:
        m = self.m
        return (a << (m + 1)) | (i << m) | alpha

    def decode(self, v: int) -> tuple[int, int, int]:
        m = self.m
        return v >> (m + 1), (v >> m) & 1, v & ((1 << m) - 1)

    def fibre(self, a: int, i: int) -> np.ndarray:
        start = self.index(a, i, 0)
        return np.arange(start, start + self.fibre_size)

    def fibre_of(self, v) -> np.ndarray:
        return np.asarray(v) >> self.m


def build_crooked_graph(f: VectorialFunction) -> CoverGraph:
    m = f.m
    if m > GRAPH_MAX_M:
        raise TooLarge(f"G_f has 2^{2 * m + 1} vertices; guard is m <= {GRAPH_MAX_M}")
    q = 1 << m
    t = f.table
    phi = np.arange(2 * q)
    a, i = phi >> 1, phi & 1
    # shift[phi, psi]: partner of (fibre phi, alpha) in fibre psi is alpha ^ shift
    shift = t[a[:, None] ^ a[None, :]] ^ (((i[:, None] ^ i[None, :] ^ 1) & 1) * (t[a][:, None] ^ t[a][None, :]))
    others = np.array([[psi for psi in range(2 * q) if psi != p] for p in range(2 * q)])
    alpha = np.arange(q)
    # nbr[p * q + alpha, k] = others[p, k] * q + (alpha ^ shift[p, others[p, k]])
    sh = shift[phi[:, None], others]
    nbr = others[:, None, :] * q + (alpha[None, :, None] ^ sh[:, None, :])
    return CoverGraph(f, nbr.reshape(2 * q * q, 2 * q - 1).astype(np.int64))


# -- cover structure --------------------------------------------------------


@dataclass(frozen=True)
class CoverReport:
    fibres_independent: bool
    perfect_matchings: bool
    fibre_distance_at_least_3: bool

    @property
    def ok(self) -> bool:
        return self.fibres_independent and self.perfect_matchings and self.fibre_distance_at_least_3

    def to_dict(self) -> dict:
        return {
            "fibres_independent": self.fibres_independent,
            "perfect_matchings": self.perfect_matchings,
            "fibre_distance_at_least_3": self.fibre_distance_at_least_3,
        }


def check_cover_structure(G: CoverGraph) -> CoverReport:
    """Check fibre independence, perfect matchings between fibres, and within-fibre distance >= 3."""
    N = G.N
    own = G.fibre_of(np.arange(N))
    nf = G.fibre_of(G.nbr)
    v = np.arange(N)[:, None]
    back = (G.bits[G.nbr, v >> 6] >> (v & 63).astype(np.uint64)) & np.uint64(1)
    symmetric = bool(back.all())

    independent = bool((nf != own[:, None]).all())

    counts = np.zeros((N, G.fibre_count), dtype=np.int64)
    np.add.at(counts, (np.repeat(np.arange(N), nf.shape[1]), nf.ravel()), 1)
    expected = np.ones_like(counts)
    expected[np.arange(N), own] = 0
    matched = symmetric and bool((counts == expected).all())

    # distance 1 is excluded by independence; distance 2 means some vertex
    # has two neighbours in one fibre
    srt = np.sort(nf, axis=1)
    no_two_paths = bool((srt[:, 1:] != srt[:, :-1]).all())
    return CoverReport(independent, matched, independent and no_two_paths)


def fibre_distances(G: CoverGraph) -> set[int]:
    """All distances between distinct vertices of a common fibre (-1 for unreachable), by BFS."""
    _guard_all_pairs(G)
    out: set[int] = set()
    q = G.fibre_size
    for v in range(G.N):
        dist = kernels.bfs_distances(G.bits, G.nbr, v)
        start = (v // q) * q
        mates = dist[start:start + q]
        out.update(int(d) for k, d in enumerate(mates) if start + k != v)
    return out


# -- distances --------------------------------------------------------------


@dataclass(frozen=True)
class Layers:
    layers: list[np.ndarray]
    unreachable: np.ndarray

    @property
    def sizes(self) -> list[int]:
        return [len(x) for x in self.layers]

    @property
    def eccentricity(self) -> int:
        return len(self.layers) - 1


def distance_partition(G: Graph, v: int) -> Layers:
    dist = kernels.bfs_distances(G.bits, G.nbr, v)
    ecc = int(dist.max())
    layers = [np.flatnonzero(dist == d) for d in range(ecc + 1)]
    return Layers(layers, np.flatnonzero(dist < 0))


def distance_matrix(G: Graph) -> np.ndarray:
    _guard_all_pairs(G)
    return np.stack([kernels.bfs_distances(G.bits, G.nbr, v) for v in range(G.N)])


def _guard_all_pairs(G: Graph) -> None:
    if G.N > ALL_PAIRS_MAX_VERTICES:
        raise TooLarge(f"all-pairs check on {G.N} vertices; guard is N <= {ALL_PAIRS_MAX_VERTICES}")


# -- distance-regularity ----------------------------------------------------


@dataclass(frozen=True)
class IntersectionArray:
    b: tuple[int, ...]
    c: tuple[int, ...]

    @property
    def diameter(self) -> int:
        return len(self.b)

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.b)) + ";" + ",".join(map(str, self.c)) + "}"

    def to_list(self) -> list[list[int]]:
        return [list(self.b), list(self.c)]


def crooked_array(m: int) -> IntersectionArray:
    k = (2 << m) - 1
    return IntersectionArray((k, k - 1, 1), (1, 2, k))


@dataclass(frozen=True)
class Counterexample:
    """Vertex u at distance d from v whose (c, a, b) neighbour counts differ from ``expected``.

    d = -1 means u is unreachable from v; counts are (-1, -1, -1) when u lies
    outside the layers seen from the reference vertex.
    """

    v: int
    u: int
    d: int
    counts: tuple[int, int, int]
    expected: tuple[int, int, int] | None

    def recheck(self, G: Graph) -> bool:
        dist = kernels.bfs_distances(G.bits, G.nbr, self.v)
        if int(dist[self.u]) != self.d:
            return False
        if self.expected is None:
            return True
        c = a = b = 0
        for w in G.neighbours(self.u):
            dw = int(dist[w])
            c += dw == self.d - 1
            a += dw == self.d
            b += dw == self.d + 1
        return (c, a, b) == self.counts and self.counts != self.expected

    def to_dict(self) -> dict:
        return {
            "v": self.v,
            "u": self.u,
            "d": self.d,
            "counts": list(self.counts),
            "expected": None if self.expected is None else list(self.expected),
        }


def distance_regularity(G: Graph) -> tuple[IntersectionArray | None, Counterexample | None]:
    """Intersection array if G is distance-regular, else the first (smallest v, then u) counterexample."""
    dist0 = kernels.bfs_distances(G.bits, G.nbr, 0)
    if (dist0 < 0).any():
        raise Disconnected(f"vertex {int(np.flatnonzero(dist0 < 0)[0])} is unreachable from 0")
    if not G.is_regular:
        v = int(np.flatnonzero(G.degrees != G.degrees[0])[0])
        return None, Counterexample(v, v, 0, (0, 0, int(G.degrees[v])), (0, 0, int(G.degrees[0])))

    D = int(dist0.max())
    c0, a0, b0 = kernels.layer_counts(G.nbr, dist0)
    ref_c = np.zeros(D + 1, dtype=np.int64)
    ref_a = np.zeros(D + 1, dtype=np.int64)
    ref_b = np.zeros(D + 1, dtype=np.int64)
    for d in range(D + 1):
        first = int(np.flatnonzero(dist0 == d)[0])
        ref_c[d], ref_a[d], ref_b[d] = c0[first], a0[first], b0[first]

    hit = kernels.first_irregular(G.bits, G.nbr, ref_c, ref_a, ref_b)
    if hit is not None:
        v, u, d, c, a, b = hit
        expected = (int(ref_c[d]), int(ref_a[d]), int(ref_b[d])) if 0 <= d <= D else None
        return None, Counterexample(v, u, d, (c, a, b), expected)
    return IntersectionArray(tuple(int(x) for x in ref_b[:D]), tuple(int(x) for x in ref_c[1:])), None


def intersection_array(G: Graph) -> IntersectionArray | None:
    return distance_regularity(G)[0]


def antipodal_classes(G: Graph) -> list[tuple[int, ...]] | None:
    """Classes of "distance 0 or 3" when that relation is an equivalence, else None.

    Requires eccentricity 3 from every vertex.
    """
    dist = distance_matrix(G)
    ecc = dist.max(axis=1)
    if (dist < 0).any() or (ecc != 3).any():
        v = int(np.flatnonzero((ecc != 3) | (dist < 0).any(axis=1))[0])
        raise PreconditionFailed(f"vertex {v} has eccentricity {int(ecc[v])}, need 3")
    rel = (dist == 0) | (dist == 3)
    classes = {}
    for v in range(G.N):
        members = np.flatnonzero(rel[v])
        if not (rel[members][:, members].all() and (rel[members] == rel[v]).all()):
            return None
        classes.setdefault(int(members[0]), tuple(int(x) for x in members))
    return sorted(classes.values())


def is_antipodal(G: Graph) -> bool:
    return antipodal_classes(G) is not None


def classes_are_fibres(G: CoverGraph) -> bool:
    classes = antipodal_classes(G)
    fibres = [tuple(range(s, s + G.fibre_size)) for s in range(0, G.N, G.fibre_size)]
    return classes == fibres


def loop_common_neighbours(G: Graph) -> np.ndarray:
    """Common-neighbour counts in G with a loop added at every vertex (diagonal left as degree + 1)."""
    _guard_all_pairs(G)
    cn = kernels.common_neighbour_counts(G.bits)
    adj = np.zeros((G.N, G.N), dtype=np.int64)
    rows = np.repeat(np.arange(G.N), G.nbr.shape[1])
    cols = G.nbr.ravel()
    keep = rows != cols
    adj[rows[keep], cols[keep]] = 1
    out = cn + 2 * adj
    out[np.arange(G.N), np.arange(G.N)] = G.degrees + 1
    return out


def two_common_neighbours(G: CoverGraph) -> bool:
    """In G with loops, do all pairs from different fibres share exactly two neighbours."""
    cn = loop_common_neighbours(G)
    fib = G.fibre_of(np.arange(G.N))
    other = fib[:, None] != fib[None, :]
    return bool((cn[other] == 2).all())


# -- export -------------------------------------------------------------------


def graph_header(G: CoverGraph) -> dict:
    f = G.f
    return {
        "schema": 1,
        "m": G.m,
        "modulus": f.ctx.modulus,
        "exponent": f.exponent,
        "N": G.N,
        "degree": int(G.degrees[0]),
    }


def write_edge_list(G: CoverGraph, out: TextIO) -> int:
    """Write ``# {json header}`` followed by one "u v" line per edge (u < v). Returns the edge count."""
    out.write("# " + json.dumps(graph_header(G), sort_keys=True) + "\n")
    count = 0
    for u, v in G.edges():
        out.write(f"{u} {v}\n")
        count += 1
    return count


def read_edge_list(src: TextIO) -> tuple[dict, Graph]:
    header = None
    edges = []
    for line in src:
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            if header is None:
                header = json.loads(line[1:])
            continue
        u, v = line.split()
        edges.append((int(u), int(v)))
    if header is None:
        raise ValueError("missing JSON header line")
    return header, Graph.from_edges(header["N"], edges)
