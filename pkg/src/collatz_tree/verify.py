"""Range verification, cycle search and the first-step residue classes.

:func:`verify_range` runs every odd start in a range to 1 and reports
aggregate statistics.  The hot loop lives in the compiled kernel (or its
pure-Python twin); a memo of exact ``(steps, peak)`` pairs for small odd
values lets most walks stop early without changing any reported number,
so reports are identical with or without the memo and for any number of
workers.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence, Union

from . import _backend, _fallback
from .core import DEFAULT_LIMIT, Termination, collatz_sequence, collatz_step, odd_sequence, require_odd
from .tree import f_minus, f_plus

DEFAULT_STEP_LIMIT = DEFAULT_LIMIT
DEFAULT_MEMO_CAP = 10**6
DEFAULT_MAX_ITERS = 10**6

#: Odd starts per shard.  Fixed so the shard layout never depends on the
#: worker count.
SHARD_ODDS = 1 << 14


# -- reports ---------------------------------------------------------------


@dataclass(frozen=True)
class Anomaly:
    start: int
    kind: Termination
    cycle: tuple[int, ...] = ()

    def to_dict(self) -> dict:
        d = {"start": self.start, "kind": self.kind.value}
        if self.cycle:
            d["cycle"] = list(self.cycle)
        return d


@dataclass(frozen=True)
class Excursion:
    start: int
    max_odd: int

    @property
    def full_max(self) -> int:
        return 3 * self.max_odd + 1

    def beats(self, other: "Excursion | None") -> bool:
        if other is None:
            return True
        return (self.max_odd, -self.start) > (other.max_odd, -other.start)


@dataclass(frozen=True)
class LongestPath:
    start: int
    count: int

    def beats(self, other: "LongestPath | None") -> bool:
        if other is None:
            return True
        return (self.count, -self.start) > (other.count, -other.start)


@dataclass(frozen=True)
class VerificationReport:
    """Merged statistics for the odd starts in ``range``.

    ``valuation_histogram`` counts the valuation of the first step
    ``3x + 1`` of every start, anomalous ones included.  The two maxima are
    taken over starts that reached 1; ties go to the smaller start.
    """

    range: tuple[int, int]
    verified_count: int
    max_excursion: Excursion | None
    max_odd_steps: LongestPath | None
    valuation_histogram: dict[int, int]
    anomalies: tuple[Anomaly, ...] = field(default=())

    @property
    def all_reached_one(self) -> bool:
        return not self.anomalies

    def to_dict(self) -> dict:
        ex, st = self.max_excursion, self.max_odd_steps
        return {
            "range": list(self.range),
            "verified_count": self.verified_count,
            "all_reached_one": self.all_reached_one,
            "max_excursion": None
            if ex is None
            else {"start": ex.start, "max_odd": ex.max_odd, "full_max": ex.full_max},
            "max_odd_steps": None if st is None else {"start": st.start, "count": st.count},
            "valuation_histogram": {str(p): c for p, c in sorted(self.valuation_histogram.items())},
            "anomalies": [a.to_dict() for a in self.anomalies],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_table(self) -> str:
        lo, hi = self.range
        rows = [
            ("range", f"[{lo}, {hi}]"),
            ("verified_count", str(self.verified_count)),
            ("all_reached_one", str(self.all_reached_one).lower()),
        ]
        if self.max_excursion is not None:
            ex = self.max_excursion
            rows.append(("max_excursion", f"start={ex.start} max_odd={ex.max_odd} full_max={ex.full_max}"))
        if self.max_odd_steps is not None:
            st = self.max_odd_steps
            rows.append(("max_odd_steps", f"start={st.start} count={st.count}"))
        width = max(len(k) for k, _ in rows)
        lines = [f"{k:<{width}}  {v}" for k, v in rows]
        lines.append("")
        lines.append("p    starts")
        for p, c in sorted(self.valuation_histogram.items()):
            lines.append(f"{p:<4} {c}")
        for a in self.anomalies:
            lines.append(f"anomaly start={a.start} kind={a.kind.value}")
        return "\n".join(lines)


def merge_reports(reports: Sequence[VerificationReport]) -> VerificationReport:
    """Combine reports over adjacent ranges.  Associative and commutative."""
    if not reports:
        raise ValueError("nothing to merge")
    ex = st = None
    hist: dict[int, int] = {}
    anomalies: list[Anomaly] = []
    for r in reports:
        if r.max_excursion is not None and r.max_excursion.beats(ex):
            ex = r.max_excursion
        if r.max_odd_steps is not None and r.max_odd_steps.beats(st):
            st = r.max_odd_steps
        for p, c in r.valuation_histogram.items():
            hist[p] = hist.get(p, 0) + c
        anomalies.extend(r.anomalies)
    return VerificationReport(
        range=(min(r.range[0] for r in reports), max(r.range[1] for r in reports)),
        verified_count=sum(r.verified_count for r in reports),
        max_excursion=ex,
        max_odd_steps=st,
        valuation_histogram=dict(sorted(hist.items())),
        anomalies=tuple(sorted(anomalies, key=lambda a: a.start)),
    )


# -- range verification ------------------------------------------------------


def _odd_map(v: int) -> int:
    y = 3 * v + 1
    return y >> ((y & -y).bit_length() - 1)


def _resolve(x: int, step_limit: int, steps, peaks):
    """Exact walk with Python ints, cycle detection and memo lookups.

    Returns ``(termination, n, peak, cycle)``.  Matches
    :func:`collatz_tree.core.odd_sequence` step for step; a memo hit stands
    for the remaining path to 1.
    """
    cap = 2 * len(steps)
    v = peak = x
    n = 0
    order = [x]
    seen = {x: 0}
    while v != 1:
        if v < cap and steps[v >> 1] >= 0:
            n += steps[v >> 1]
            peak = max(peak, peaks[v >> 1])
            break
        if n >= step_limit:
            return Termination.LIMIT_EXHAUSTED, n, peak, ()
        v = _odd_map(v)
        n += 1
        if v in seen:
            return Termination.CYCLE_DETECTED, n, peak, tuple(order[seen[v]:])
        seen[v] = n
        order.append(v)
        peak = max(peak, v)
    if n > step_limit:
        return Termination.LIMIT_EXHAUSTED, n, peak, ()
    return Termination.REACHED_ONE, n, peak, ()


def _scan_shard(kernels, lo: int, hi: int, step_limit: int, steps, peaks) -> VerificationReport:
    if hi > _backend.U64_MAX:
        kernels = _fallback
    count, hist_list, ex_start, ex_peak, st_start, st_count, deferred = kernels.scan(
        lo, hi, step_limit, steps, peaks
    )
    ex = Excursion(ex_start, ex_peak) if ex_start else None
    st = LongestPath(st_start, st_count) if st_start else None
    hist = {p: c for p, c in enumerate(hist_list) if c}
    anomalies = []
    for x in deferred:
        y = 3 * x + 1
        p = (y & -y).bit_length() - 1
        hist[p] = hist.get(p, 0) + 1
        term, n, peak, cycle = _resolve(x, step_limit, steps, peaks)
        if term is not Termination.REACHED_ONE:
            anomalies.append(Anomaly(x, term, cycle))
            continue
        cand = Excursion(x, peak)
        if cand.beats(ex):
            ex = cand
        cand_st = LongestPath(x, n)
        if cand_st.beats(st):
            st = cand_st
    return VerificationReport(
        range=(lo, hi),
        verified_count=count,
        max_excursion=ex,
        max_odd_steps=st,
        valuation_histogram=dict(sorted(hist.items())),
        anomalies=tuple(anomalies),
    )


def _shards(lo: int, hi: int) -> list[tuple[int, int]]:
    span = 2 * SHARD_ODDS
    return [(a, min(a + span - 2, hi)) for a in range(lo, hi + 1, span)]


_worker_state: dict = {}


def _init_worker(backend_name, step_limit, steps, peaks):
    _worker_state.update(
        kernels=_backend.available()[backend_name],
        step_limit=step_limit,
        steps=steps,
        peaks=peaks,
    )


def _run_shard(bounds):
    s = _worker_state
    return _scan_shard(s["kernels"], bounds[0], bounds[1], s["step_limit"], s["steps"], s["peaks"])


def verify_range(
    lo: int,
    hi: int,
    step_limit: int = DEFAULT_STEP_LIMIT,
    memo_cap: int = DEFAULT_MEMO_CAP,
    workers: int = 1,
    backend: str | None = None,
) -> VerificationReport:
    """Run every odd start in ``[lo, hi]`` to 1 and aggregate the results.

    Args:
        lo, hi: odd bounds, inclusive.
        step_limit: odd steps allowed per start before it is reported as
            an anomaly.
        memo_cap: odd values below this get an exact memo entry, built
            ascending before the scan.  ``0`` disables the memo.
        workers: processes to spread shards over.
        backend: ``"cython"`` or ``"python"``; defaults to the import-time
            choice.

    Starts that cycle or exceed ``step_limit`` appear in ``anomalies``;
    they are data, not errors.
    """
    require_odd(lo, "lo")
    require_odd(hi, "hi")
    if lo > hi:
        raise ValueError(f"empty range: lo={lo} > hi={hi}")
    if step_limit < 1:
        raise ValueError(f"step_limit must be >= 1, got {step_limit}")
    if memo_cap < 0:
        raise ValueError(f"memo_cap must be >= 0, got {memo_cap}")
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    kernels = _backend.available()[backend] if backend else _backend.kernels

    cap = min(memo_cap, hi + 1)
    if cap > 1:
        steps, peaks = kernels.build_memo(cap, step_limit)
    else:
        steps, peaks = kernels.new_memo(0)

    shards = _shards(lo, hi)
    if workers == 1 or len(shards) == 1:
        parts = [_scan_shard(kernels, a, b, step_limit, steps, peaks) for a, b in shards]
    else:
        with ProcessPoolExecutor(
            max_workers=min(workers, len(shards)),
            initializer=_init_worker,
            initargs=(kernels.NAME, step_limit, steps, peaks),
        ) as pool:
            parts = list(pool.map(_run_shard, shards))
    return merge_reports(parts)


# -- cycle search ----------------------------------------------------------


@dataclass(frozen=True)
class ReachesOne:
    steps: int
    kind = "reaches-one"


@dataclass(frozen=True)
class TrivialCycle:
    kind = "trivial-cycle"


@dataclass(frozen=True)
class NontrivialCycle:
    """A cycle avoiding 1, rotated to start at its smallest member."""

    values: tuple[int, ...]
    kind = "nontrivial-cycle"

    @property
    def length(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class Inconclusive:
    limit: int
    kind = "inconclusive"


CycleResult = Union[ReachesOne, TrivialCycle, NontrivialCycle, Inconclusive]


def cycle_search(x: int, max_iters: int = DEFAULT_MAX_ITERS, backend: str | None = None) -> CycleResult:
    """Locate the cycle the odd orbit of ``x`` falls into (Brent's method).

    ``max_iters`` bounds the map evaluations spent finding a repeat.
    """
    require_odd(x)
    if max_iters < 1:
        raise ValueError(f"max_iters must be >= 1, got {max_iters}")
    kernels = _backend.available()[backend] if backend else _backend.kernels
    status = _fallback.OVERFLOW
    if x <= _backend.U64_MAX:
        status, mu, lam, v = kernels.brent(x, max_iters)
    if status == _fallback.OVERFLOW:
        status, mu, lam, v = _fallback.brent(x, max_iters)
    if status == _fallback.INCONCLUSIVE:
        return Inconclusive(max_iters)
    if v == 1:
        # 1 is a fixed point, so any cycle through it is {1}
        return TrivialCycle() if x == 1 else ReachesOne(mu)
    cycle = [v]
    for _ in range(lam - 1):
        cycle.append(_odd_map(cycle[-1]))
    i = cycle.index(min(cycle))
    return NontrivialCycle(tuple(cycle[i:] + cycle[:i]))


# -- residue classes ---------------------------------------------------------


@dataclass(frozen=True)
class ResidueRow:
    """Odd starts whose first step ``3x + 1`` has valuation exactly ``p``.

    They form the progression ``x0 + stride * j`` (j >= 0), which is the
    image of one closed form with its second argument fixed.
    """

    p: int
    generator: str
    x0: int
    pattern_bits: str
    stride: int
    progression: str

    def term(self, j: int) -> int:
        return self.x0 + self.stride * j


def residue_table(max_p: int) -> list[ResidueRow]:
    if max_p < 1:
        raise ValueError(f"max_p must be >= 1, got {max_p}")
    rows = []
    for p in range(1, max_p + 1):
        stride = 1 << (p + 1)
        if p % 2:
            n = (p - 1) // 2
            x0 = f_minus(1, n)
            gen = f"f_minus(k, {n})"
            prog = f"{gen} = {x0} + {stride}(k-1)"
        else:
            n = p // 2
            x0 = f_plus(0, n)
            gen = f"f_plus(k, {n})"
            prog = f"{gen} = {x0} + {stride}k"
        rows.append(ResidueRow(p, gen, x0, format(x0, f"0{p + 1}b"), stride, prog))
    return rows


def residue_table_csv(rows: Sequence[ResidueRow]) -> str:
    lines = ["p,x0,binary,stride"]
    lines += [f"{r.p},{r.x0},{r.pattern_bits},{r.stride}" for r in rows]
    return "\n".join(lines) + "\n"


def density_check(p: int, sample_exponent: int) -> tuple[int, int]:
    """Count odd ``x < 2**m`` whose first step has valuation ``p``.

    Returns ``(members, total_odds)``; ``members`` should be ``2**(m-1-p)``.
    """
    m = sample_exponent
    if not 1 <= p <= m - 1:
        raise ValueError(f"need 1 <= p <= m-1, got p={p}, m={m}")
    members = 0
    for x in range(1, 1 << m, 2):
        y = 3 * x + 1
        if (y & -y).bit_length() - 1 == p:
            members += 1
    return members, 1 << (m - 1)


# -- full vs odd maxima --------------------------------------------------------


def full_orbit_max(x: int, limit: int = DEFAULT_LIMIT) -> int | None:
    """Largest term of the Collatz sequence of ``x``, through its first return to 1.

    ``None`` if 1 is not reached within ``limit`` terms.
    """
    seq = collatz_sequence(collatz_step(x), limit)
    if seq[-1] != 1:
        return None
    return max(x, max(seq))


def corollary_check(lo: int, hi: int, limit: int = DEFAULT_LIMIT) -> list[int]:
    """Starts in ``[lo, hi]`` whose full maximum is not ``3 * max_odd + 1``.

    A start whose sequences do not reach 1 within ``limit`` counts as a
    failure, since nothing can be confirmed for it.
    """
    require_odd(lo, "lo")
    require_odd(hi, "hi")
    if lo > hi:
        raise ValueError(f"empty range: lo={lo} > hi={hi}")
    failures = []
    for x in range(lo, hi + 1, 2):
        full = full_orbit_max(x, limit)
        path = odd_sequence(x, limit)
        if full is None or path.termination is not Termination.REACHED_ONE:
            failures.append(x)
        elif full != 3 * max(path.values) + 1:
            failures.append(x)
    return failures


def default_workers() -> int:
    return os.cpu_count() or 1
