"""The linear code C_f and the Preparata-like code P_f of a function f.

C_f is the binary kernel of the 2m x n matrix H_f whose column i is
(alpha^i, f(alpha^i)). P_f consists of pairs (S, T), S a subset of the
nonzero elements and T a subset of all elements, with |T| even, equal XOR
sums, and f(sum S) = sum f(S) + sum f(T).

Coordinates of a P_f word: S-block first (position i is alpha^i), then the
T-block (position n + x is element x).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations

import numpy as np

from . import gf2, kernels
from .errors import NoSolution, NotAViolation, RequiresApn, TooLarge
from .vbf import Crooked, VectorialFunction, Violation2, Violation3

DISTANCE_CAP = 6
PREPARATA_MAX_M = 3


# -- C_f ----------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ParityCheck:
    f: VectorialFunction
    columns: tuple[int, ...]

    @property
    def m(self) -> int:
        return self.f.m

    @property
    def n(self) -> int:
        return len(self.columns)

    @property
    def height(self) -> int:
        return 2 * self.m

    @property
    def rows(self) -> list[int]:
        """Rows as bitmasks over column index; rows 0..m-1 hold alpha^i, rows m..2m-1 hold f(alpha^i)."""
        return gf2.columns_to_rows(self.columns, self.height)

    def matrix(self) -> np.ndarray:
        cols = np.array(self.columns, dtype=np.int64)
        return ((cols[None, :] >> np.arange(self.height)[:, None]) & 1).astype(np.uint8)

    def syndrome(self, support) -> int:
        s = 0
        for i in support:
            s ^= self.columns[i]
        return s


def build_parity_check(f: VectorialFunction) -> ParityCheck:
    m = f.m
    cols = tuple(int(x) | (f(int(x)) << m) for x in f.ctx.exp_table)
    return ParityCheck(f, cols)


def parity_rank(H: ParityCheck) -> int:
    return gf2.rank(H.rows, H.n)


def code_dimension(H: ParityCheck) -> int:
    return H.n - parity_rank(H)


def _pair_index(columns) -> dict[int, list[tuple[int, int]]]:
    pairs: dict[int, list[tuple[int, int]]] = {}
    for i, j in combinations(range(len(columns)), 2):
        pairs.setdefault(columns[i] ^ columns[j], []).append((i, j))
    return pairs


def min_weight_at_most(H: ParityCheck, w: int) -> tuple[int, ...] | None:
    """Support of a nonzero codeword of weight <= w, smallest weight first, then lexicographic.

    Weights 3-5 are found by matching syndromes against a table of column-pair
    sums (meet in the middle).
    """
    if not 1 <= w <= 5:
        raise ValueError(f"w must lie in [1, 5], got {w}")
    cols = H.columns
    n = len(cols)
    index = {c: i for i, c in enumerate(cols)}
    if 0 in index:
        return (index[0],)
    if len(index) < n:
        seen: dict[int, int] = {}
        for i, c in enumerate(cols):
            if c in seen:
                return (seen[c], i)
            seen[c] = i
    if w < 3:
        return None

    for i, j in combinations(range(n), 2):
        k = index.get(cols[i] ^ cols[j])
        if k is not None and k > j:
            return (i, j, k)
    if w < 4:
        return None

    pairs = _pair_index(cols)
    for i, j in combinations(range(n), 2):
        for k, l in pairs.get(cols[i] ^ cols[j], ()):
            if k > j:
                return (i, j, k, l)
    if w < 5:
        return None

    for i, j, k in combinations(range(n), 3):
        for l, p in pairs.get(cols[i] ^ cols[j] ^ cols[k], ()):
            if l > k:
                return (i, j, k, l, p)
    return None


def min_distance_linear(H: ParityCheck) -> int:
    """Exact minimum distance when it is at most 5, otherwise ``DISTANCE_CAP`` (meaning >= 6)."""
    for w in range(1, 6):
        if min_weight_at_most(H, w) is not None:
            return len(min_weight_at_most(H, w))
    return DISTANCE_CAP


def solve_subset(H: ParityCheck, a: int, b: int) -> int:
    """Subset S of nonzero elements (bitmask over discrete logs) with sum S = a, sum f(S) = b."""
    target = a | (b << H.m)
    s = gf2.solve(H.rows, H.n, target)
    if s is None:
        raise NoSolution(f"({a}, {b}) is outside the column space of H_f")
    return s


# -- P_f ----------------------------------------------------------------------


@dataclass(frozen=True)
class PreparataWord:
    """A pair (S, T): S a bitmask over discrete logs 0..n-1, T a bitmask over elements 0..2^m-1."""

    m: int
    S: int
    T: int

    @property
    def n(self) -> int:
        return (1 << self.m) - 1

    @property
    def length(self) -> int:
        return 2 * self.n + 1

    @property
    def vector(self) -> int:
        """Characteristic vector as an int; coordinate p is bit p."""
        return self.S | (self.T << self.n)

    @classmethod
    def from_vector(cls, m: int, v: int) -> "PreparataWord":
        n = (1 << m) - 1
        return cls(m, v & ((1 << n) - 1), v >> n)

    def distance(self, other: "PreparataWord") -> int:
        return (self.vector ^ other.vector).bit_count()

    def to_hex(self) -> str:
        """Hex of the coordinate string c_0 c_1 ... (S-block first), read MSB-first, zero-padded on the right."""
        L = self.length
        bits = "".join(str((self.vector >> p) & 1) for p in range(L))
        bits += "0" * (-L % 4)
        return f"{int(bits, 2):0{len(bits) // 4}x}"

    @classmethod
    def from_hex(cls, m: int, text: str) -> "PreparataWord":
        n = (1 << m) - 1
        L = 2 * n + 1
        bits = bin(int(text, 16))[2:].zfill(4 * len(text))
        if bits[L:].strip("0"):
            raise ValueError("padding bits must be zero")
        v = sum(1 << p for p in range(L) if bits[p] == "1")
        return cls.from_vector(m, v)

    def elements(self, f: VectorialFunction) -> tuple[list[int], list[int]]:
        exp = f.ctx.exp_table
        S = [int(exp[i]) for i in range(self.n) if (self.S >> i) & 1]
        T = [x for x in range(1 << self.m) if (self.T >> x) & 1]
        return S, T


def preparata_member(f: VectorialFunction, S: int, T: int) -> bool:
    """Membership of (S, T) in P_f; S is a bitmask over discrete logs, T over elements."""
    exp = f.ctx.exp_table
    n = f.ctx.n
    s_sum = s_f = t_sum = t_f = 0
    for i in range(n):
        if (S >> i) & 1:
            x = int(exp[i])
            s_sum ^= x
            s_f ^= f(x)
    for x in range(f.ctx.q):
        if (T >> x) & 1:
            t_sum ^= x
            t_f ^= f(x)
    return T.bit_count() % 2 == 0 and s_sum == t_sum and f(s_sum) == s_f ^ t_f


def word_member(f: VectorialFunction, word: PreparataWord) -> bool:
    return preparata_member(f, word.S, word.T)


@dataclass(frozen=True, eq=False)
class PreparataCode:
    f: VectorialFunction
    vectors: np.ndarray | None

    @property
    def m(self) -> int:
        return self.f.m

    @property
    def size(self) -> int | None:
        return None if self.vectors is None else int(self.vectors.shape[0])

    def words(self) -> list[PreparataWord]:
        if self.vectors is None:
            raise TooLarge("code is not materialized at this m")
        return [PreparataWord.from_vector(self.m, int(v)) for v in self.vectors]

    def contains(self, S: int, T: int) -> bool:
        return preparata_member(self.f, S, T)


def expected_preparata_size(m: int) -> int:
    return 1 << ((1 << (m + 1)) - 2 * m - 2)


def preparata_code(f: VectorialFunction) -> PreparataCode:
    """Membership-only code for any m; materialized when enumeration is feasible."""
    if f.m <= PREPARATA_MAX_M:
        return preparata_enumerate(f)
    return PreparataCode(f, None)


def preparata_enumerate(f: VectorialFunction) -> PreparataCode:
    """All words of P_f, by scanning every (S, T) pair. Only for m <= 3."""
    if f.m > PREPARATA_MAX_M:
        raise TooLarge(
            f"P_f enumeration scans 2^{2 * f.ctx.n + 1} pairs; guard is m <= {PREPARATA_MAX_M}"
        )
    ctx = f.ctx
    exp = np.asarray(ctx.exp_table, dtype=np.int64)
    elems = np.arange(ctx.q, dtype=np.int64)
    s_sum = kernels.subset_xor(exp)
    s_fsum = kernels.subset_xor(f.table[exp])
    s_target = f.table[s_sum] ^ s_fsum
    t_sum = kernels.subset_xor(elems)
    t_fsum = kernels.subset_xor(f.table)
    t_even = _even_masks(ctx.q)
    s_idx, t_idx = kernels.preparata_scan(s_sum, s_target, t_sum, t_fsum, t_even)
    vectors = s_idx | (t_idx << ctx.n)
    vectors.flags.writeable = False
    return PreparataCode(f, vectors)


def _even_masks(bits: int) -> np.ndarray:
    masks = np.arange(1 << bits, dtype=np.uint64)
    return (np.bitwise_count(masks) % 2 == 0)


def preparata_min_distance(code: PreparataCode) -> int | None:
    """Minimum distance over distinct pairs of words; None when the code has fewer than two words."""
    if code.vectors is None:
        raise TooLarge("code is not materialized at this m")
    d = kernels.min_pairwise_distance(code.vectors)
    return None if d < 0 else d


def close_pair_witness(f: VectorialFunction, verdict) -> tuple[PreparataWord, PreparataWord]:
    """Two distinct words of P_f at distance <= 4, built from a crookedness violation."""
    m = f.m
    if isinstance(verdict, Crooked):
        raise NotAViolation("function is crooked; P_f has minimum distance 5")
    if isinstance(verdict, Violation2):
        w = verdict.x ^ verdict.y ^ verdict.z
        T = 0
        for e in (verdict.x, verdict.y, verdict.z, w):
            T |= 1 << e
        pair = (PreparataWord(m, 0, 0), PreparataWord(m, 0, T))
    elif isinstance(verdict, Violation3):
        pair = _pair_from_violation3(f, verdict)
    else:
        raise TypeError(f"not a crookedness verdict: {verdict!r}")

    u, v = pair
    if not (word_member(f, u) and word_member(f, v) and 0 < u.distance(v) <= 4):
        raise AssertionError(f"constructed pair failed re-verification: {u}, {v}")
    return pair


def _pair_from_violation3(f: VectorialFunction, v: Violation3) -> tuple[PreparataWord, PreparataWord]:
    H = build_parity_check(f)
    if parity_rank(H) != 2 * f.m:
        raise RequiresApn("H_f does not have rank 2m")
    a = v.a
    t = f.table

    def h(u: int) -> int:
        return int(t[u] ^ t[u ^ a])

    # need h(x0) = h(y0) + h(z0) with y0 outside {0, a} so that S stays inside V*
    choice = None
    for x0, y0, z0 in permutations((v.x, v.y, v.z)):
        for y1 in (y0, y0 ^ a):
            if y1 not in (0, a):
                choice = (x0, y1, z0)
                break
        if choice:
            break
    if choice is None:
        # x, y, z all in {0, a}: then h(0) = 0, and any y1 = z1 outside {0, a} works
        y1 = next(u for u in range(1, f.ctx.q) if u != a)
        choice = (0, y1, y1)
    x0, y1, z1 = choice
    if h(x0) != h(y1) ^ h(z1):
        raise AssertionError("violation does not satisfy h(x) + h(y) + h(z) = 0")

    log = f.ctx.log_table
    S = solve_subset(H, x0, 0)
    T = (1 << x0) | 1
    if x0 == 0:
        T = 0
    S2 = S ^ (1 << int(log[y1])) ^ (1 << int(log[y1 ^ a]))
    T2 = T ^ (1 << z1) ^ (1 << (z1 ^ a))
    return PreparataWord(f.m, S, T), PreparataWord(f.m, S2, T2)
