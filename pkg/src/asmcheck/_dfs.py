"""Integer DFS kernel that counts Gog/Magog arrays by their border.

Cells are filled in a fixed order.  Every cell has a static range plus up to
three neighbour constraints, all pointing at earlier cells:

    value >= static_lo, value <= static_hi
    value >= cell[lo_nb] + lo_off      (lo_nb >= 0)
    value >= cell[lo_nb2]              (lo_nb2 >= 0)
    value <= cell[hi_nb]               (hi_nb >= 0)

The kernel is compiled with numba unless ASMCHECK_NO_NUMBA is set, in which
case the very same Python function runs uncompiled.
"""
import os

import numpy as np

NUMBA_DISABLED = os.environ.get("ASMCHECK_NO_NUMBA", "") not in ("", "0")

try:
    if NUMBA_DISABLED:
        raise ImportError
    from numba import njit
    HAS_NUMBA = True
except ImportError:
    HAS_NUMBA = False


def _count_by_border(static_lo, static_hi, lo_nb, lo_off, lo_nb2, hi_nb, border, radix):
    ncell = static_lo.shape[0]
    nb = border.shape[0]
    size = 1
    for _ in range(nb):
        size *= radix
    counts = np.zeros(size, dtype=np.int64)
    val = np.zeros(ncell, dtype=np.int64)
    his = np.zeros(ncell, dtype=np.int64)
    if ncell == 0:
        counts[0] = 1
        return counts
    p = 0
    while p >= 0:
        if val[p] == 0 and his[p] == 0:
            lo = static_lo[p]
            hi = static_hi[p]
            if lo_nb[p] >= 0:
                v = val[lo_nb[p]] + lo_off[p]
                if v > lo:
                    lo = v
            if lo_nb2[p] >= 0:
                v = val[lo_nb2[p]]
                if v > lo:
                    lo = v
            if hi_nb[p] >= 0:
                v = val[hi_nb[p]]
                if v < hi:
                    hi = v
            if lo > hi:
                p -= 1
                continue
            val[p] = lo
            his[p] = hi
        else:
            val[p] += 1
            if val[p] > his[p]:
                val[p] = 0
                his[p] = 0
                p -= 1
                continue
        if p == ncell - 1:
            key = 0
            for b in range(nb):
                key = key * radix + val[border[b]]
            counts[key] += 1
            # stay on the last cell: next loop pass increments it
            continue
        p += 1
    return counts


count_by_border_py = _count_by_border
count_by_border = njit(cache=True)(_count_by_border) if HAS_NUMBA else _count_by_border
