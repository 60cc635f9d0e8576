"""Alternating sign matrices, Gog and Magog arrays, border counts and lattice regions."""
from dataclasses import dataclass
from functools import lru_cache
from math import factorial

import numpy as np

from . import _dfs
from .errors import ValidationError


# alternating sign matrices


@dataclass(frozen=True)
class Asm:
    n: int
    entries: tuple

    def format(self):
        return "\n".join(" ".join(str(v) for v in row) for row in self.entries)


def is_asm(rows):
    n = len(rows)
    if any(len(r) != n for r in rows):
        return False
    for line in list(rows) + [tuple(r[j] for r in rows) for j in range(n)]:
        if any(v not in (-1, 0, 1) for v in line):
            return False
        partial = 0
        for v in line:
            partial += v
            if partial not in (0, 1):
                return False
        if partial != 1:
            return False
    return True


def enumerate_asm(n):
    """Every n x n alternating sign matrix once, rows built top to bottom."""
    if n < 1:
        raise ValueError("n must be positive")
    colsum = [0] * n
    rows = []

    def fill_row(j, row, partial):
        if j == n:
            if partial == 1:
                yield tuple(row)
            return
        # entry 0
        row.append(0)
        yield from fill_row(j + 1, row, partial)
        row.pop()
        if partial == 0 and colsum[j] == 0:
            row.append(1)
            colsum[j] += 1
            yield from fill_row(j + 1, row, 1)
            colsum[j] -= 1
            row.pop()
        elif partial == 1 and colsum[j] == 1:
            row.append(-1)
            colsum[j] -= 1
            yield from fill_row(j + 1, row, 0)
            colsum[j] += 1
            row.pop()

    def rec(i):
        if i == n:
            if all(c == 1 for c in colsum):
                yield Asm(n, tuple(rows))
            return
        # the remaining rows can raise each column sum by at most one net unit
        for row in list(fill_row(0, [], 0)):
            for j, v in enumerate(row):
                colsum[j] += v
            rows.append(row)
            yield from rec(i + 1)
            rows.pop()
            for j, v in enumerate(row):
                colsum[j] -= v

    yield from rec(0)


def asm_number(n):
    """Product formula prod_{i<n} (3i+1)!/(n+i)!."""
    num = 1
    den = 1
    for i in range(n):
        num *= factorial(3 * i + 1)
        den *= factorial(n + i)
    return num // den


@dataclass(frozen=True)
class GelfandArray:
    kind: str
    n: int
    k: int
    rows: tuple

    def format(self):
        return "/".join(",".join(str(v) for v in row) for row in self.rows)


def parse_array(text, kind, n, k):
    rows = tuple(tuple(int(v) for v in part.split(",")) for part in text.strip().split("/"))
    return GelfandArray(kind, n, k, rows)


def asm_to_monotone(a):
    rows = a.entries if isinstance(a, Asm) else tuple(map(tuple, a))
    if not is_asm(rows):
        raise ValidationError("not an alternating sign matrix")
    n = len(rows)
    partial = [0] * n
    sums = []
    for row in rows:
        partial = [p + v for p, v in zip(partial, row)]
        sums.append(tuple(j + 1 for j, p in enumerate(partial) if p == 1))
    # triangle row i has length n - i + 1 and comes from the first n - i + 1 rows
    return GelfandArray("gog-triangle", n, n, tuple(reversed(sums)))


def monotone_to_asm(t):
    rows = t.rows if isinstance(t, GelfandArray) else tuple(map(tuple, t))
    n = len(rows)
    if not is_gog_array(rows, n, n):
        raise ValidationError("not a monotone triangle")
    prev = [0] * n
    out = []
    for m in range(1, n + 1):
        cur = [0] * n
        for c in rows[n - m]:
            cur[c - 1] = 1
        out.append(tuple(c - p for c, p in zip(cur, prev)))
        prev = cur
    return Asm(n, tuple(out))


# array validators


def is_gog_array(rows, n, k):
    """Gog trapezoid conditions: strict rows, interleaving, top row 1..k, right-edge bound."""
    if len(rows) != n:
        return False
    for i in range(1, n + 1):
        if len(rows[i - 1]) != min(k, n + 1 - i):
            return False
    d = lambda i, j: rows[i - 1][j - 1]
    for i in range(1, n + 1):
        width = len(rows[i - 1])
        for j in range(1, width + 1):
            if j < width and not d(i, j) < d(i, j + 1):
                return False
            if i < n and j <= len(rows[i]) and not d(i, j) <= d(i + 1, j):
                return False
            if i < n and 2 <= j and j - 1 <= len(rows[i]) and not d(i, j) >= d(i + 1, j - 1):
                return False
            if i == 1 and d(1, j) != j:
                return False
            if j == k and d(i, k) > i + k - 1:
                return False
    return True


def is_magog_array(rows, n, k):
    if len(rows) != k:
        return False
    for i in range(1, k + 1):
        if len(rows[i - 1]) != n - i + 1:
            return False
    for i in range(1, k + 1):
        for j in range(1, n - i + 2):
            c = rows[i - 1][j - 1]
            if not 1 <= c <= j:
                return False
            if i < k and j <= n - i and rows[i][j - 1] > c:
                return False
            if j <= n - i and c > rows[i - 1][j]:
                return False
    return True


# DFS layouts


def _magog_layout(k, n):
    cells = [(i, j) for i in range(1, k + 1) for j in range(1, n - i + 2)]
    index = {c: p for p, c in enumerate(cells)}
    m = len(cells)
    lo = np.ones(m, dtype=np.int64)
    hi = np.zeros(m, dtype=np.int64)
    lo_nb = np.full(m, -1, dtype=np.int64)
    lo_off = np.zeros(m, dtype=np.int64)
    lo_nb2 = np.full(m, -1, dtype=np.int64)
    hi_nb = np.full(m, -1, dtype=np.int64)
    for p, (i, j) in enumerate(cells):
        hi[p] = j
        lo_nb[p] = index.get((i, j - 1), -1)
        hi_nb[p] = index.get((i - 1, j), -1)
    border = np.array([index[(i, n - i + 1)] for i in range(1, k + 1)], dtype=np.int64)
    return cells, (lo, hi, lo_nb, lo_off, lo_nb2, hi_nb, border)


def _gog_layout(k, n):
    cells = [(i, j) for i in range(1, n + 1) for j in range(1, min(k, n + 1 - i) + 1)]
    index = {c: p for p, c in enumerate(cells)}
    m = len(cells)
    lo = np.ones(m, dtype=np.int64)
    hi = np.full(m, n, dtype=np.int64)
    lo_nb = np.full(m, -1, dtype=np.int64)
    lo_off = np.ones(m, dtype=np.int64)
    lo_nb2 = np.full(m, -1, dtype=np.int64)
    hi_nb = np.full(m, -1, dtype=np.int64)
    for p, (i, j) in enumerate(cells):
        if i == 1:
            lo[p] = hi[p] = j
            continue
        if j == k:
            hi[p] = min(n, i + k - 1)
        lo_nb[p] = index.get((i, j - 1), -1)
        lo_nb2[p] = index.get((i - 1, j), -1)
        hi_nb[p] = index.get((i - 1, j + 1), -1)
    border = np.array([index[(n - k + i, k - i + 1)] for i in range(1, k + 1)], dtype=np.int64)
    return cells, (lo, hi, lo_nb, lo_off, lo_nb2, hi_nb, border)


def _decode(counts, k, radix):
    out = {}
    for key in np.nonzero(counts)[0].tolist():
        rest = key
        a = []
        for _ in range(k):
            rest, d = divmod(rest, radix)
            a.append(d)
        out[tuple(reversed(a))] = int(counts[key])
    return out


def _encode(a, radix):
    key = 0
    for v in a:
        key = key * radix + v
    return key


def _check_shape(k, n):
    if not (isinstance(k, int) and isinstance(n, int)) or k < 1 or n < k:
        raise ValueError(f"need n >= k >= 1, got k={k} n={n}")


def _run(layout, k, n, kernel):
    _, arrays = layout
    radix = n + 2
    counts = kernel(*arrays, radix)
    return {a: c for a, c in _decode(counts, k, radix).items()}


@lru_cache(maxsize=None)
def magog_border_counts(k, n, kernel=None):
    """Map right border (c_{i,n-i+1})_i to the number of n x k Magog trapezoids."""
    _check_shape(k, n)
    return _run(_magog_layout(k, n), k, n, kernel or _dfs.count_by_border)


@lru_cache(maxsize=None)
def gog_border_counts(k, n, kernel=None):
    """Map border (d_{n-k+i,k-i+1})_i to the number of n x k Gog trapezoids."""
    _check_shape(k, n)
    return _run(_gog_layout(k, n), k, n, kernel or _dfs.count_by_border)


def b_brute(k, n):
    return sum(magog_border_counts(k, n).values())


def m_brute(k, n):
    return sum(gog_border_counts(k, n).values())


# streaming enumeration (pure Python, shares the layouts with the counter)


def _enumerate_layout(cells, arrays):
    lo, hi, lo_nb, lo_off, lo_nb2, hi_nb, _ = (a.tolist() for a in arrays)
    m = len(cells)
    val = [0] * m

    def rec(p):
        if p == m:
            yield list(val)
            return
        a = lo[p]
        b = hi[p]
        if lo_nb[p] >= 0:
            a = max(a, val[lo_nb[p]] + lo_off[p])
        if lo_nb2[p] >= 0:
            a = max(a, val[lo_nb2[p]])
        if hi_nb[p] >= 0:
            b = min(b, val[hi_nb[p]])
        for v in range(a, b + 1):
            val[p] = v
            yield from rec(p + 1)

    yield from rec(0)


def _shape_rows(cells, values):
    rows = {}
    for (i, _), v in zip(cells, values):
        rows.setdefault(i, []).append(v)
    return tuple(tuple(rows[i]) for i in sorted(rows))


def enumerate_magog(k, n):
    _check_shape(k, n)
    cells, arrays = _magog_layout(k, n)
    kind = "magog-triangle" if k == n else "magog-trapezoid"
    for values in _enumerate_layout(cells, arrays):
        yield GelfandArray(kind, n, k, _shape_rows(cells, values))


def enumerate_gog(k, n):
    _check_shape(k, n)
    cells, arrays = _gog_layout(k, n)
    kind = "gog-triangle" if k == n else "gog-trapezoid"
    for values in _enumerate_layout(cells, arrays):
        yield GelfandArray(kind, n, k, _shape_rows(cells, values))


def enumerate_monotone_triangles(n):
    """Monotone triangles with top row 1..n straight from the interleaving rule."""

    def below(row):
        # next row r with row[j] <= r[j] <= row[j+1], strictly increasing
        m = len(row) - 1
        out = []

        def rec(j, acc):
            if j == m:
                out.append(tuple(acc))
                return
            start = max(row[j], acc[-1] + 1 if acc else row[j])
            for v in range(start, row[j + 1] + 1):
                acc.append(v)
                rec(j + 1, acc)
                acc.pop()

        rec(0, [])
        return out

    def rec(rows):
        if len(rows[-1]) == 1:
            yield tuple(rows)
            return
        for r in below(rows[-1]):
            yield from rec(rows + [r])

    yield from rec([tuple(range(1, n + 1))])


def enumerate_gog_chopped(k, n):
    """Gog trapezoids as the distinct first-k-column truncations of monotone triangles."""
    _check_shape(k, n)
    seen = set()
    for t in enumerate_monotone_triangles(n):
        rows = tuple(row[:k] for row in t)
        if rows not in seen:
            seen.add(rows)
            yield GelfandArray("gog-triangle" if k == n else "gog-trapezoid", n, k, rows)


# lattice regions


def _nonincreasing(a):
    return all(a[i] >= a[i + 1] for i in range(len(a) - 1))


def in_land_of_magog(k, n, a):
    return (len(a) == k and n >= k and n >= a[0] and _nonincreasing(a) and a[-1] >= 1
            and all(a[i - 1] <= n - i + 1 for i in range(1, k + 1)))


def in_extended_land_of_magog(k, n, a):
    """n >= a_1 >= ... >= a_k >= 1 with no per-row cap."""
    return len(a) == k and n >= k and n >= a[0] and _nonincreasing(a) and a[-1] >= 1


def in_bar_land_of_magog(k, n, a):
    if len(a) != k or n < k or k < 1:
        return False
    if n - a[0] < -1 or a[-1] < 0:
        return False
    return all(a[i] - a[i + 1] >= -1 for i in range(k - 1))


def bar_land_of_magog(k, n):
    """All points of the region at this n, in lexicographic order."""
    out = []

    def rec(prefix):
        i = len(prefix)
        if i == k:
            if in_bar_land_of_magog(k, n, prefix):
                out.append(tuple(prefix))
            return
        if i == 0:
            rng = range(-(k - 1), n + 2)
        else:
            rng = range(-(k - 1 - i), prefix[-1] + 2)
        for v in rng:
            rec(prefix + [v])

    rec([])
    return out


def in_land_of_gog(k, n, a):
    return (len(a) == k and n >= k and n >= a[0] and _nonincreasing(a) and a[-1] >= 1
            and all(a[i - 1] >= k - i + 1 for i in range(1, k + 1)))


def in_bar_land_of_gog(k, n, a):
    if len(a) != k or n < k or k < 1:
        return False
    if n - a[0] < -1 or not _nonincreasing(a):
        return False
    if any(a[i - 1] < k - i for i in range(1, k + 1)):
        return False
    if a[0] == n + 1 and k > 1 and a[1] > n:
        return False
    if n == k and a[0] == k and k > 1 and a[1] >= k:
        return False
    return True


def _nonincreasing_points(k, top, floor):
    out = []

    def rec(prefix):
        i = len(prefix)
        if i == k:
            out.append(tuple(prefix))
            return
        hi = top if i == 0 else prefix[-1]
        for v in range(floor(i + 1), hi + 1):
            rec(prefix + [v])

    rec([])
    return out


def land_of_gog(k, n):
    return [a for a in _nonincreasing_points(k, n, lambda i: k - i + 1) if in_land_of_gog(k, n, a)]


def bar_land_of_gog(k, n):
    return [a for a in _nonincreasing_points(k, n + 1, lambda i: k - i) if in_bar_land_of_gog(k, n, a)]


def land_of_magog(k, n):
    return [a for a in _nonincreasing_points(k, n, lambda i: 1) if in_land_of_magog(k, n, a)]


def extended_land_of_magog(k, n):
    return _nonincreasing_points(k, n, lambda i: 1)


# border counts


def border_count_magog(k, n, a):
    """B_k(n; a): zero off the natural domain, including the no-man's-land points."""
    a = tuple(a)
    if not in_land_of_magog(k, n, a):
        return 0
    return magog_border_counts(k, n).get(a, 0)


def border_count_gog(k, n, a):
    """M_k(n; a) by filtered enumeration."""
    a = tuple(a)
    if not in_land_of_gog(k, n, a):
        return 0
    return gog_border_counts(k, n).get(a, 0)


def tilde_set(k, n, a):
    """Vectors b with n-1 >= b_1 >= ... >= b_k >= 1 and k-i+1 <= b_i <= a_i."""
    out = []

    def rec(prefix):
        i = len(prefix) + 1
        if i > k:
            out.append(tuple(prefix))
            return
        hi = min(a[i - 1], n - 1, prefix[-1] if prefix else n - 1)
        for v in range(max(k - i + 1, 1), hi + 1):
            rec(prefix + [v])

    rec([])
    return out


@lru_cache(maxsize=None)
def tilde_m(k, n, a):
    """M~_k(n; a) from its defining sum, the n = k recursion, and zero on the added boundary."""
    a = tuple(a)
    if in_land_of_gog(k, n, a):
        if n > k:
            return sum(border_count_gog(k, n - 1, b) for b in tilde_set(k, n, a))
        if k == 1:
            return 1 if a == (1,) else 0
        # n == k forces a_1 == k
        return tilde_m(k - 1, k, a[1:])
    if in_bar_land_of_gog(k, n, a):
        return 0
    raise ValueError(f"point outside the extended Gog region: n={n} a={a}")
