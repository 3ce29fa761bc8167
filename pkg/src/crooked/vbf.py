"""Vectorial Boolean functions f: GF(2^m) -> GF(2^m) with f(0) = 0.

Covers derivative sets H_a(f) = {f(x) + f(x+a)}, the APN test, the two
crookedness tests (definitional and hyperplane-complement), the double-cover
multiset check on pairs of points, and the Gold-type classification of power
exponents.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence, Union

import numpy as np

from . import gf2, kernels
from .errors import (
    EqualPoints,
    ExponentOutOfRange,
    GcdViolation,
    NotNormalized,
    ZeroDirection,
)
from .gf2m import FieldContext, inner, power_table

STRATEGIES = ("hyperplane", "definitional")


@dataclass(frozen=True, eq=False)
class VectorialFunction:
    ctx: FieldContext
    table: np.ndarray
    exponent: int | None = field(default=None)

    @classmethod
    def from_table(
        cls, ctx: FieldContext, values: Sequence[int], normalize: bool = False
    ) -> "VectorialFunction":
        """Wrap a truth table. With ``normalize`` the table is replaced by f(x) + f(0)."""
        table = np.array(values, dtype=np.int64)
        if table.shape != (ctx.q,):
            raise ValueError(f"truth table must have {ctx.q} entries, got {table.shape}")
        if table.min() < 0 or table.max() >= ctx.q:
            raise ValueError(f"truth table entries must lie in [0, {ctx.q})")
        if table[0] != 0:
            if not normalize:
                raise NotNormalized(f"f(0) = {table[0]} != 0; pass normalize=True to use f + f(0)")
            table = table ^ table[0]
        table.flags.writeable = False
        return cls(ctx, table)

    @property
    def m(self) -> int:
        return self.ctx.m

    def __call__(self, x: int) -> int:
        return int(self.table[x])

    @cached_property
    def derivatives(self) -> np.ndarray:
        """``D[a, x] = f(x) + f(x + a)``; row a is the multiset behind H_a(f)."""
        D = kernels.derivative_table(self.table)
        D.flags.writeable = False
        return D

    def __repr__(self) -> str:
        src = f"x^{self.exponent}" if self.exponent is not None else "table"
        return f"VectorialFunction({src}, m={self.m}, modulus={self.ctx.modulus})"


def from_power(ctx: FieldContext, d: int) -> VectorialFunction:
    if not 1 <= d <= ctx.q - 2:
        raise ExponentOutOfRange(f"exponent must lie in [1, {ctx.q - 2}], got {d}")
    table = power_table(ctx, d)
    table.flags.writeable = False
    return VectorialFunction(ctx, table, exponent=d)


def gold(ctx: FieldContext, k: int) -> VectorialFunction:
    """The Gold function x^(2^k + 1); requires gcd(k, m) = 1."""
    if not 1 <= k < ctx.m:
        raise GcdViolation(f"k must satisfy 1 <= k < m = {ctx.m}, got {k}")
    if math.gcd(k, ctx.m) != 1:
        raise GcdViolation(f"gcd({k}, {ctx.m}) != 1")
    return from_power(ctx, (1 << k) + 1)


def derivative_set(f: VectorialFunction, a: int) -> set[int]:
    if a == 0:
        raise ZeroDirection("direction a must be nonzero")
    return set(f.derivatives[a].tolist())


# -- verdicts ---------------------------------------------------------------


@dataclass(frozen=True)
class Apn:
    def to_dict(self) -> dict:
        return {"status": "apn"}


@dataclass(frozen=True)
class ApnWitness:
    """x + y = a, f(x) + f(y) = b has the four solutions (x1, y1), (y1, x1), (x2, y2), (y2, x2)."""

    a: int
    b: int
    x1: int
    y1: int
    x2: int
    y2: int

    @property
    def solutions(self) -> list[tuple[int, int]]:
        return [(self.x1, self.y1), (self.y1, self.x1), (self.x2, self.y2), (self.y2, self.x2)]

    def recheck(self, f: VectorialFunction) -> bool:
        sols = self.solutions
        return (
            len(set(sols)) == 4
            and (self.a, self.b) != (0, 0)
            and all(x ^ y == self.a and f(x) ^ f(y) == self.b for x, y in sols)
        )

    def to_dict(self) -> dict:
        return {"status": "witness", "a": self.a, "b": self.b, "solutions": [list(s) for s in self.solutions]}


ApnVerdict = Union[Apn, ApnWitness]


@dataclass(frozen=True)
class Crooked:
    def to_dict(self) -> dict:
        return {"status": "crooked"}


@dataclass(frozen=True)
class Violation2:
    """Distinct x, y, z with f(x) + f(y) + f(z) = f(x + y + z)."""

    x: int
    y: int
    z: int

    def recheck(self, f: VectorialFunction) -> bool:
        x, y, z = self.x, self.y, self.z
        return len({x, y, z}) == 3 and f(x) ^ f(y) ^ f(z) == f(x ^ y ^ z)

    def to_dict(self) -> dict:
        return {"status": "violation2", "x": self.x, "y": self.y, "z": self.z}


@dataclass(frozen=True)
class Violation3:
    """a != 0 with f(x) + f(y) + f(z) = f(x + a) + f(y + a) + f(z + a)."""

    x: int
    y: int
    z: int
    a: int

    def recheck(self, f: VectorialFunction) -> bool:
        x, y, z, a = self.x, self.y, self.z, self.a
        return a != 0 and f(x) ^ f(y) ^ f(z) == f(x ^ a) ^ f(y ^ a) ^ f(z ^ a)

    def to_dict(self) -> dict:
        return {"status": "violation3", "x": self.x, "y": self.y, "z": self.z, "a": self.a}


CrookedVerdict = Union[Crooked, Violation2, Violation3]


def verdict_from_dict(d: dict):
    """Inverse of the ``to_dict`` methods above."""
    status = d["status"]
    if status == "apn":
        return Apn()
    if status == "witness":
        (x1, y1), _, (x2, y2), _ = d["solutions"]
        return ApnWitness(d["a"], d["b"], x1, y1, x2, y2)
    if status == "crooked":
        return Crooked()
    if status == "violation2":
        return Violation2(d["x"], d["y"], d["z"])
    if status == "violation3":
        return Violation3(d["x"], d["y"], d["z"], d["a"])
    raise ValueError(f"unknown verdict status {status!r}")


# -- APN and crookedness ----------------------------------------------------


def derivative_set_sizes(f: VectorialFunction) -> np.ndarray:
    """``|H_a(f)|`` for every a (entry 0 is 1)."""
    return kernels.image_masks(f.derivatives).sum(axis=1)


def is_apn(f: VectorialFunction) -> ApnVerdict:
    sizes = derivative_set_sizes(f)
    bad = np.flatnonzero(sizes[1:] != f.ctx.q // 2)
    if bad.size == 0:
        return Apn()
    a = int(bad[0]) + 1
    row = f.derivatives[a]
    counts = np.bincount(row, minlength=f.ctx.q)
    b = int(np.flatnonzero(counts >= 4)[0])
    xs = np.flatnonzero(row == b)
    x1 = int(xs[0])
    x2 = int(next(x for x in xs if x not in (x1, x1 ^ a)))
    return ApnWitness(a, b, x1, x1 ^ a, x2, x2 ^ a)


def condition2_holds(f: VectorialFunction) -> bool:
    """No distinct x, y, z with f(x)+f(y)+f(z) = f(x+y+z), via row multiplicities of D."""
    return bool((kernels.max_row_multiplicity(f.derivatives)[1:] <= 2).all())


def is_crooked(f: VectorialFunction, strategy: str = "hyperplane") -> CrookedVerdict:
    """Crookedness verdict with the lexicographically smallest violation witness.

    ``definitional`` counts derivative multisets for condition 2 and searches
    H_a(f) for three values summing to zero for condition 3. ``hyperplane``
    checks that every H_a(f) has size 2^(m-1) and admits a functional equal to
    1 on all of it. Both give the same verdict.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"strategy must be one of {STRATEGIES}, got {strategy!r}")
    if f.table[0] != 0:
        raise NotNormalized("f(0) != 0")
    D = f.derivatives
    if strategy == "definitional":
        if not condition2_holds(f):
            return first_violation2(f)
        bad = kernels.triple_sum_rows(D)
        if bad.any():
            return first_violation3(f, int(np.flatnonzero(bad)[0]))
        return Crooked()

    if (derivative_set_sizes(f)[1:] != f.ctx.q // 2).any():
        return first_violation2(f)
    lam = kernels.hyperplane_functionals(D, f.m)
    missing = np.flatnonzero(lam[1:] == 0)
    if missing.size:
        return first_violation3(f, int(missing[0]) + 1)
    return Crooked()


def first_violation2(f: VectorialFunction) -> Violation2:
    """Lexicographically smallest (x, y, z), distinct, with f(x)+f(y)+f(z) = f(x+y+z)."""
    t = f.table
    q = f.ctx.q
    zs = np.arange(q)
    for x in range(q):
        ys = np.arange(x + 1, q)
        if ys.size == 0:
            break
        # f(z) + f(x+y+z) == f(x) + f(y), z > y
        lhs = t[zs][None, :] ^ t[(x ^ ys)[:, None] ^ zs[None, :]]
        rhs = (t[x] ^ t[ys])[:, None]
        hit = (lhs == rhs) & (zs[None, :] > ys[:, None])
        rows = np.flatnonzero(hit.any(axis=1))
        if rows.size:
            r = int(rows[0])
            return Violation2(x, int(ys[r]), int(np.flatnonzero(hit[r])[0]))
    raise ValueError("condition 2 holds; no violation to report")


def first_violation3(f: VectorialFunction, start: int = 1) -> Violation3:
    """Smallest (a, x, y, z) with a >= ``start`` and f(x)+f(y)+f(z) = f(x+a)+f(y+a)+f(z+a)."""
    q = f.ctx.q
    D = f.derivatives
    for a in range(start, q):
        row = D[a]
        mask = np.zeros(q, dtype=bool)
        mask[row] = True
        h = np.flatnonzero(mask)
        pair_sums = np.zeros(q, dtype=bool)
        pair_sums[(h[:, None] ^ h[None, :]).ravel()] = True
        xs = np.flatnonzero(pair_sums[row])
        if xs.size == 0:
            continue
        x = int(xs[0])
        y = int(np.flatnonzero(mask[row[x] ^ row])[0])
        z = int(np.flatnonzero(row == (row[x] ^ row[y]))[0])
        return Violation3(x, y, z, a)
    raise ValueError("condition 3 holds; no violation to report")


def hyperplane_witness(f: VectorialFunction, a: int) -> int | None:
    """Nonzero lam with <lam, h> = 1 on all of H_a(f) when H_a(f) is a hyperplane complement."""
    H = sorted(derivative_set(f, a))
    if len(H) != f.ctx.q // 2:
        return None
    h0 = H[0]
    ann = gf2.annihilator([h ^ h0 for h in H], f.m)
    if len(ann) != 1:
        return None
    lam = ann[0]
    return lam if inner(lam, h0) == 1 else None


def double_cover_check(f: VectorialFunction, a: int, b: int) -> bool:
    """Does {f(a+c)+f(b+c)} united with {f(a+c)+f(b+c)+f(a)+f(b)} hit every element exactly twice."""
    if a == b:
        raise EqualPoints("a and b must differ")
    t = f.table
    c = np.arange(f.ctx.q)
    base = t[a ^ c] ^ t[b ^ c]
    values = np.concatenate([base, base ^ t[a] ^ t[b]])
    return bool((np.bincount(values, minlength=f.ctx.q) == 2).all())


# -- power exponents --------------------------------------------------------


@dataclass(frozen=True)
class GoldType:
    k: int
    j: int
    member: int


@dataclass(frozen=True)
class NotGoldType:
    pass


def cyclotomic_class(m: int, d: int) -> list[int]:
    """{d * 2^i mod (2^m - 1)} in generation order, without repeats."""
    n = (1 << m) - 1
    out: list[int] = []
    e = d % n
    for _ in range(m):
        if e in out:
            break
        out.append(e)
        e = (e * 2) % n
    return out


def cyclotomic_classes(m: int) -> list[list[int]]:
    """Classes partitioning [1, 2^m - 2], each sorted, ordered by smallest member."""
    seen: set[int] = set()
    classes = []
    for d in range(1, (1 << m) - 1):
        if d not in seen:
            cls = sorted(cyclotomic_class(m, d))
            seen.update(cls)
            classes.append(cls)
    return classes


def classify_power_exponent(m: int, d: int) -> GoldType | NotGoldType:
    """Gold type iff some d * 2^i mod (2^m - 1) equals 2^k + 2^j with gcd(k - j, m) = 1."""
    if not 1 <= d <= (1 << m) - 2:
        raise ExponentOutOfRange(f"exponent must lie in [1, {(1 << m) - 2}], got {d}")
    for e in cyclotomic_class(m, d):
        if e.bit_count() != 2:
            continue
        j = (e & -e).bit_length() - 1
        k = e.bit_length() - 1
        if math.gcd(k - j, m) == 1:
            return GoldType(k, j, e)
    return NotGoldType()
