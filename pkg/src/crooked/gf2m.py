"""Arithmetic in GF(2^m), odd m, via log/antilog tables.

Elements are integers in ``[0, 2^m)`` in the polynomial basis: bit j is the
coefficient of x^j, so addition is XOR. The primitive element is x itself
(the integer 2), which the modulus is required to make primitive.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NonPrimitiveModulus, UnsupportedDegree

MIN_DEGREE = 3
MAX_DEGREE = 15

DEFAULT_MODULI = {
    3: 0b1011,                  # x^3 + x + 1
    5: 0b100101,                # x^5 + x^2 + 1
    7: 0b10001001,              # x^7 + x^3 + 1
    9: 0b1000010001,            # x^9 + x^4 + 1
    11: 0b100000000101,         # x^11 + x^2 + 1
    13: 0b10000000011011,       # x^13 + x^4 + x^3 + x + 1
    15: 0b1000000000000011,     # x^15 + x + 1
}


@dataclass(frozen=True, eq=False)
class FieldContext:
    m: int
    modulus: int
    exp_table: np.ndarray
    log_table: np.ndarray

    @property
    def q(self) -> int:
        """Field size 2^m."""
        return 1 << self.m

    @property
    def n(self) -> int:
        """Order of the multiplicative group, 2^m - 1."""
        return (1 << self.m) - 1

    @property
    def alpha(self) -> int:
        return int(self.exp_table[1])

    def __repr__(self) -> str:
        return f"FieldContext(m={self.m}, modulus={self.modulus:#b})"


def field_new(m: int, modulus: int | None = None) -> FieldContext:
    """Build GF(2^m) with the given (or default) primitive modulus."""
    if m % 2 == 0 or not MIN_DEGREE <= m <= MAX_DEGREE:
        raise UnsupportedDegree(f"m must be odd with {MIN_DEGREE} <= m <= {MAX_DEGREE}, got {m}")
    if modulus is None:
        modulus = DEFAULT_MODULI[m]
    if modulus.bit_length() - 1 != m:
        raise NonPrimitiveModulus(f"modulus {modulus:#b} does not have degree {m}")
    if not modulus & 1:
        raise NonPrimitiveModulus(f"modulus {modulus:#b} is divisible by x")

    q = 1 << m
    n = q - 1
    exp_table = np.empty(n, dtype=np.int64)
    log_table = np.full(q, -1, dtype=np.int64)
    x = 1
    for i in range(n):
        if log_table[x] >= 0:
            raise NonPrimitiveModulus(
                f"x has order {i} < {n} modulo {modulus:#b}; modulus is not primitive"
            )
        exp_table[i] = x
        log_table[x] = i
        x <<= 1
        if x & q:
            x ^= modulus
    if x != 1:
        raise NonPrimitiveModulus(f"x^{n} != 1 modulo {modulus:#b}")

    exp_table.flags.writeable = False
    log_table.flags.writeable = False
    return FieldContext(m, modulus, exp_table, log_table)


def mul(ctx: FieldContext, a: int, b: int) -> int:
    if a == 0 or b == 0:
        return 0
    return int(ctx.exp_table[(ctx.log_table[a] + ctx.log_table[b]) % ctx.n])


def power(ctx: FieldContext, a: int, e: int) -> int:
    """``a**e`` in the field. By convention ``power(ctx, 0, 0) == 1``."""
    if e == 0:
        return 1
    if a == 0:
        return 0
    return int(ctx.exp_table[(int(ctx.log_table[a]) * e) % ctx.n])


def inverse(ctx: FieldContext, a: int) -> int:
    if a == 0:
        raise ZeroDivisionError("0 has no inverse")
    return int(ctx.exp_table[(-int(ctx.log_table[a])) % ctx.n])


def power_table(ctx: FieldContext, e: int) -> np.ndarray:
    """``x**e`` for every field element x, as an array indexed by x (0**e = 0 for e > 0)."""
    out = np.zeros(ctx.q, dtype=np.int64)
    if e == 0:
        out[:] = 1
        return out
    logs = ctx.log_table[1:]
    out[1:] = ctx.exp_table[(logs * e) % ctx.n]
    return out


def inner(u: int, v: int) -> int:
    """Standard GF(2) dot product of the coordinate vectors of u and v."""
    return (u & v).bit_count() & 1


# shadows the builtin only as ``gf2m.pow``
pow = power
