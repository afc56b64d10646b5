"""Brute-force 2-adic Hilbert symbol, used as an independent oracle.

(a, b) = +1 iff a x^2 + b y^2 = z^2 has a nontrivial 2-adic solution, which
for normalized inputs (odd part mod 8, valuation mod 2) is equivalent to a
primitive solution mod 2^6.  The solver enumerates the 64 x 64 grid once per
normalized pair and memoizes; no reciprocity formula is consulted anywhere in
this module, so tests can compare against one independently.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

_ODD_SQUARES = frozenset((z * z) % 64 for z in range(1, 64, 2))
_ALL_SQUARES = frozenset((z * z) % 64 for z in range(64))


@lru_cache(maxsize=None)
def _primitive_solvable(a: int, b: int) -> bool:
    xs = np.arange(64, dtype=np.int64)
    sq = (xs * xs) % 64
    vals = (a * sq[:, None] + b * sq[None, :]) % 64
    odd = (xs % 2).astype(bool)
    xy_prim = odd[:, None] | odd[None, :]
    in_all = np.isin(vals, list(_ALL_SQUARES))
    if bool(np.any(in_all & xy_prim)):
        return True
    # x, y both even: z must be odd for the triple to stay primitive
    in_odd = np.isin(vals, list(_ODD_SQUARES))
    return bool(np.any(in_odd & ~xy_prim))


def _normalize(a: int):
    """(valuation mod 2, odd part mod 8) determines the symbol slot-wise."""
    if a == 0:
        raise ValueError("Hilbert symbol of zero")
    v = 0
    while a % 2 == 0:
        a //= 2
        v += 1
    return (2 ** (v % 2)) * (a % 8)


def hilbert2(a: int, b: int) -> int:
    """Hilbert symbol (a, b) over the 2-adic numbers, +1 or -1."""
    return 1 if _primitive_solvable(_normalize(a) % 64, _normalize(b) % 64) else -1
