"""Truth-table text format, table digests, and seeded random tables.

Truth-table file: line 1 is m, line 2 the modulus bitmask in decimal,
line 3 the 2^m values f(0) ... f(2^m - 1) separated by spaces.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .gf2m import FieldContext, field_new
from .vbf import VectorialFunction

FNV_OFFSET = 0xCBF29CE484222325
FNV_PRIME = 0x100000001B3


def fnv1a64(data: bytes) -> int:
    h = FNV_OFFSET
    for byte in data:
        h ^= byte
        h = (h * FNV_PRIME) & 0xFFFFFFFFFFFFFFFF
    return h


def table_digest(f: VectorialFunction) -> str:
    """FNV-1a 64 of the table as little-endian uint16 entries, as 16 hex digits."""
    return f"{fnv1a64(np.asarray(f.table, dtype='<u2').tobytes()):016x}"


def parse_truth_table(text: str, normalize: bool = False) -> VectorialFunction:
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if len(lines) != 3:
        raise ValueError(f"truth-table file needs 3 non-empty lines, got {len(lines)}")
    m = int(lines[0])
    modulus = int(lines[1])
    values = [int(tok) for tok in lines[2].split()]
    ctx = field_new(m, modulus)
    return VectorialFunction.from_table(ctx, values, normalize=normalize)


def read_truth_table(path: str | Path, normalize: bool = False) -> VectorialFunction:
    return parse_truth_table(Path(path).read_text(), normalize=normalize)


def format_truth_table(f: VectorialFunction) -> str:
    return f"{f.m}\n{f.ctx.modulus}\n{' '.join(str(int(v)) for v in f.table)}\n"


def random_function(ctx: FieldContext, rng: np.random.Generator) -> VectorialFunction:
    """Uniform random table with f(0) = 0."""
    values = rng.integers(0, ctx.q, size=ctx.q)
    values[0] = 0
    return VectorialFunction.from_table(ctx, values)
