"""Compiled hot loops for range verification and cycle search.

Mirrors ``_fallback`` exactly, using unsigned 64-bit arithmetic.  A start
whose orbit would overflow ``3x + 1`` is returned to the caller (deferred
from ``scan``, ``OVERFLOW`` from ``brent``) to be finished with Python
integers.
"""

cdef extern from *:
    """
    static inline int ct_ctz64(unsigned long long x) { return __builtin_ctzll(x); }
    """
    int ct_ctz64(unsigned long long x) nogil

from array import array

NAME = "cython"

OK = 0
INCONCLUSIVE = 1
OVERFLOW = 2

HIST_SIZE = 128

# 3x + 1 fits in 64 bits iff x <= (2**64 - 2) // 3
cdef unsigned long long STEP_MAX = 6148914691236517204ULL

cdef enum:
    R_OK = 0
    R_LIMIT = 1
    R_OVERFLOW = 2


def new_memo(cap):
    size = max(cap, 0) // 2
    return array("q", [-1]) * size, array("Q", [0]) * size


cdef inline unsigned long long _f(unsigned long long v) noexcept nogil:
    cdef unsigned long long y = 3 * v + 1
    return y >> ct_ctz64(y)


cdef int _walk(unsigned long long x, long long step_limit,
               long long[::1] steps, unsigned long long[::1] peaks,
               unsigned long long cap,
               long long *out_n, unsigned long long *out_peak) noexcept nogil:
    cdef unsigned long long v = x, peak = x, y, mp
    cdef long long n = 0, s
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
            return R_LIMIT
        if v > STEP_MAX:
            return R_OVERFLOW
        y = 3 * v + 1
        v = y >> ct_ctz64(y)
        n += 1
        if v > peak:
            peak = v
    if n > step_limit:
        return R_LIMIT
    out_n[0] = n
    out_peak[0] = peak
    return R_OK


def build_memo(cap, long long step_limit):
    """Fill the memo for odd ``v < cap`` in ascending order."""
    steps_arr, peaks_arr = new_memo(cap)
    cdef long long[::1] steps = steps_arr
    cdef unsigned long long[::1] peaks = peaks_arr
    cdef unsigned long long ucap = 2 * <unsigned long long>len(steps_arr)
    cdef unsigned long long v
    cdef long long n = 0
    cdef unsigned long long peak = 0
    with nogil:
        v = 1
        while v < ucap:
            if _walk(v, step_limit, steps, peaks, ucap, &n, &peak) == R_OK:
                steps[v >> 1] = n
                peaks[v >> 1] = peak
            v += 2
    return steps_arr, peaks_arr


def scan(unsigned long long lo, unsigned long long hi, long long step_limit,
         steps_arr, peaks_arr):
    """Aggregate statistics for odd starts in ``[lo, hi]``; see ``_fallback.scan``."""
    cdef long long[::1] steps = steps_arr
    cdef unsigned long long[::1] peaks = peaks_arr
    cdef unsigned long long cap = 2 * <unsigned long long>len(steps_arr)
    cdef long long[::1] hist
    cdef unsigned long long x, y, peak = 0
    cdef unsigned long long ex_start = 0, ex_peak = 0, st_start = 0
    cdef long long st_count = -1, n = 0, count = 0
    cdef int p, rc
    hist_arr = array("q", [0]) * HIST_SIZE
    hist = hist_arr
    deferred = []
    x = lo
    while x <= hi:
        count += 1
        if x > STEP_MAX:
            rc = R_OVERFLOW
        else:
            rc = _walk(x, step_limit, steps, peaks, cap, &n, &peak)
        if rc != R_OK:
            deferred.append(x)
        else:
            y = 3 * x + 1
            p = ct_ctz64(y)
            hist[p] += 1
            if peak > ex_peak:
                ex_start = x
                ex_peak = peak
            if n > st_count:
                st_start = x
                st_count = n
        if hi - x < 2:
            break
        x += 2
    return count, list(hist_arr), ex_start, ex_peak, st_start, st_count, deferred


def brent(unsigned long long x, long long max_iters):
    """Brent cycle detection; returns ``(status, mu, lam, entry)`` like ``_fallback.brent``."""
    cdef unsigned long long tortoise = x, hare, power = 1, lam = 1, mu = 0, i
    cdef long long evals = 1
    if x > STEP_MAX:
        return OVERFLOW, 0, 0, 0
    hare = _f(x)
    while tortoise != hare:
        if evals >= max_iters:
            return INCONCLUSIVE, 0, 0, 0
        if power == lam:
            tortoise = hare
            power *= 2
            lam = 0
        if hare > STEP_MAX:
            return OVERFLOW, 0, 0, 0
        hare = _f(hare)
        lam += 1
        evals += 1
    tortoise = x
    hare = x
    for i in range(lam):
        hare = _f(hare)
    while tortoise != hare:
        tortoise = _f(tortoise)
        hare = _f(hare)
        mu += 1
    return OK, mu, lam, tortoise
