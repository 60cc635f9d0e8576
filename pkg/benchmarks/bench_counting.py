"""Time the border-count DFS with and without numba.

    python3 benchmarks/bench_counting.py [--max-n 7] [--repeat 3]

The pure kernel is the same function uncompiled, so both columns must
report identical totals; the script exits 1 if they ever differ.
"""
import argparse
import sys
import time

from asmcheck import _dfs, objects


def _time(fn, repeat):
    best = None
    for _ in range(repeat):
        start = time.perf_counter()
        value = fn()
        took = time.perf_counter() - start
        best = took if best is None else min(best, took)
    return value, best


def run(max_n, repeat, out=sys.stdout):
    if not _dfs.HAS_NUMBA:
        print("numba unavailable (or ASMCHECK_NO_NUMBA set); timing the pure kernel only", file=out)
    # compile once outside the timings
    objects._run(objects._magog_layout(1, 1), 1, 1, _dfs.count_by_border)
    print(f"{'family':6} {'k':>2} {'n':>2} {'count':>10} {'numba s':>9} {'pure s':>9} {'speedup':>8}", file=out)
    ok = True
    for family, layout in (("magog", objects._magog_layout), ("gog", objects._gog_layout)):
        for n in range(2, max_n + 1):
            for k in sorted({1, (n + 1) // 2, n}):
                lay = layout(k, n)
                fast, t_fast = _time(lambda: sum(objects._run(lay, k, n, _dfs.count_by_border).values()), repeat)
                slow, t_slow = _time(lambda: sum(objects._run(lay, k, n, _dfs.count_by_border_py).values()), 1)
                ok &= fast == slow
                speed = t_slow / t_fast if t_fast else float("inf")
                print(f"{family:6} {k:>2} {n:>2} {fast:>10} {t_fast:>9.4f} {t_slow:>9.4f} {speed:>7.1f}x", file=out)
    if not ok:
        print("MISMATCH between numba and pure kernels", file=out)
    return ok


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--repeat", type=int, default=3)
    args = p.parse_args(argv)
    return 0 if run(args.max_n, args.repeat) else 1


if __name__ == "__main__":
    sys.exit(main())
