"""Compare the compiled and pure-Python kernels.

    python benchmarks/bench_kernels.py [--hi N] [--memo-cap N] [--repeat N]

Runs ``verify_range(1, hi)`` and a cycle search over the same odd starts on
every available backend, checks that the reports agree, and prints timings.
"""

import argparse
import time

from collatz_tree import _backend
from collatz_tree.verify import cycle_search, verify_range


def best_of(fn, repeat):
    times = []
    result = None
    for _ in range(repeat):
        t = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t)
    return min(times), result


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--hi", type=int, default=10**6 - 1)
    ap.add_argument("--memo-cap", type=int, default=10**5)
    ap.add_argument("--cycle-hi", type=int, default=10**5 - 1)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    hi = args.hi | 1

    rows = []
    reports = {}
    for name in sorted(_backend.available()):
        t_memo, rep = best_of(lambda: verify_range(1, hi, memo_cap=args.memo_cap, backend=name), args.repeat)
        t_nomemo, rep0 = best_of(lambda: verify_range(1, hi, memo_cap=0, backend=name), 1)
        t_cyc, _ = best_of(
            lambda: [cycle_search(x, backend=name) for x in range(1, args.cycle_hi + 1, 2)], 1
        )
        assert rep == rep0, "memo changed the report"
        reports[name] = rep
        rows.append((name, t_memo, t_nomemo, t_cyc))

    assert len({r.to_json() for r in reports.values()}) == 1, "backends disagree"

    print(f"verify_range(1, {hi}), memo_cap={args.memo_cap}; cycle_search over odd x <= {args.cycle_hi}")
    print(f"{'backend':<8} {'verify+memo':>12} {'verify':>10} {'cycles':>10}")
    for name, a, b, c in rows:
        print(f"{name:<8} {a:>11.3f}s {b:>9.3f}s {c:>9.3f}s")
    if len(rows) == 2:
        (_, pa, pb, pc), (_, ca, cb, cc) = rows[1], rows[0]
        print(f"speedup  {pa / ca:>11.1f}x {pb / cb:>9.1f}x {pc / cc:>9.1f}x")


if __name__ == "__main__":
    main()
