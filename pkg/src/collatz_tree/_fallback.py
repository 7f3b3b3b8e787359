"""Pure-Python versions of the hot loops in ``_kernels.pyx``.

Both modules expose the same three functions with the same results; the
compiled one is only faster.  The memo layout is shared: two ``array``
objects indexed by ``v >> 1`` for odd ``v < cap``.  ``steps[i]`` is the
number of odd steps from ``v`` to 1 (``-1`` when unknown) and ``peaks[i]``
the largest odd value on that path.  Entries whose peak does not fit in 64
bits are left unknown.
"""

from __future__ import annotations

from array import array

NAME = "python"

OK = 0
INCONCLUSIVE = 1
OVERFLOW = 2

HIST_SIZE = 128
_U64_MAX = (1 << 64) - 1


def new_memo(cap: int) -> tuple[array, array]:
    size = max(cap, 0) // 2
    return array("q", [-1]) * size, array("Q", [0]) * size


def _walk(x, step_limit, steps, peaks, cap):
    """Return ``(n, peak)`` for the path from x, or ``None`` past the limit."""
    v = x
    peak = x
    n = 0
    while v != 1:
        if v < cap:
            s = steps[v >> 1]
            if s >= 0:
                n += s
                mp = peaks[v >> 1]
                if mp > peak:
                    peak = mp
                break
        if n >= step_limit:
            return None
        y = 3 * v + 1
        v = y >> ((y & -y).bit_length() - 1)
        n += 1
        if v > peak:
            peak = v
    if n > step_limit:
        return None
    return n, peak


def build_memo(cap: int, step_limit: int) -> tuple[array, array]:
    """Fill the memo for odd ``v < cap`` in ascending order."""
    steps, peaks = new_memo(cap)
    for v in range(1, cap, 2):
        res = _walk(v, step_limit, steps, peaks, cap)
        if res is not None and res[1] <= _U64_MAX:
            steps[v >> 1] = res[0]
            peaks[v >> 1] = res[1]
    return steps, peaks


def scan(lo: int, hi: int, step_limit: int, steps: array, peaks: array):
    """Aggregate statistics for odd starts in ``[lo, hi]``.

    Returns ``(count, hist, excursion_start, excursion_peak, steps_start,
    steps_count, deferred)``.  Starts that exceed ``step_limit`` are listed
    in ``deferred`` and counted only in ``count``.
    """
    cap = 2 * len(steps)
    hist = [0] * HIST_SIZE
    count = 0
    ex_start = ex_peak = 0
    st_start = 0
    st_count = -1
    deferred = []
    for x in range(lo, hi + 1, 2):
        count += 1
        y = 3 * x + 1
        p = (y & -y).bit_length() - 1
        res = _walk(x, step_limit, steps, peaks, cap) if p < HIST_SIZE else None
        if res is None:
            deferred.append(x)
            continue
        hist[p] += 1
        n, peak = res
        if peak > ex_peak:
            ex_start, ex_peak = x, peak
        if n > st_count:
            st_start, st_count = x, n
    return count, hist, ex_start, ex_peak, st_start, st_count, deferred


def _f(v):
    y = 3 * v + 1
    return y >> ((y & -y).bit_length() - 1)


def brent(x: int, max_iters: int):
    """Brent cycle detection on the odd map from ``x``.

    Returns ``(status, mu, lam, entry)``: tail length, cycle length and the
    first cycle value reached.
    ``max_iters`` bounds the number of map evaluations spent locating a
    repeat; the later tail measurement is not counted.
    """
    power = lam = 1
    tortoise = x
    hare = _f(x)
    evals = 1
    while tortoise != hare:
        if evals >= max_iters:
            return INCONCLUSIVE, 0, 0, 0
        if power == lam:
            tortoise = hare
            power *= 2
            lam = 0
        hare = _f(hare)
        lam += 1
        evals += 1
    tortoise = hare = x
    for _ in range(lam):
        hare = _f(hare)
    mu = 0
    while tortoise != hare:
        tortoise = _f(tortoise)
        hare = _f(hare)
        mu += 1
    return OK, mu, lam, tortoise
