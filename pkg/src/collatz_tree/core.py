"""Exact Collatz arithmetic: the original map and the odd-to-odd (modified) map.

Python integers are arbitrary precision, so every function here is exact for
any input size.  The compiled kernels in :mod:`collatz_tree._kernels` use a
64-bit fast path and hand values back to this module when ``3x + 1`` would
overflow.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import NamedTuple

#: Default cap on the number of odd steps taken by sequence operations.
DEFAULT_LIMIT = 10**6


class SequenceNotTerminated(RuntimeError):
    """Raised when a sequence does not reach 1 within the step limit."""

    def __init__(self, start: int, path: "OddPath"):
        self.start = start
        self.path = path
        super().__init__(
            f"odd sequence of {start} did not reach 1 "
            f"({path.termination.value} after {len(path.values) - 1} steps)"
        )


class Termination(enum.Enum):
    REACHED_ONE = "reached-one"
    CYCLE_DETECTED = "cycle-detected"
    LIMIT_EXHAUSTED = "limit-exhausted"


class OddStepResult(NamedTuple):
    next: int
    p: int


@dataclass(frozen=True)
class OddPath:
    """A modified Collatz sequence and the reason it stopped.

    ``cycle`` holds the repeating values (in orbit order) when
    ``termination`` is ``CYCLE_DETECTED`` and is empty otherwise.
    """

    values: tuple[int, ...]
    termination: Termination
    cycle: tuple[int, ...] = field(default=())

    @property
    def steps(self) -> int:
        return len(self.values) - 1


class ExcursionStats(NamedTuple):
    max_odd: int
    full_max: int
    odd_steps: int


def require_odd(x: int, name: str = "x") -> int:
    """Validate that ``x`` is a positive odd integer and return it."""
    if isinstance(x, bool) or not isinstance(x, int):
        raise TypeError(f"{name} must be an int, got {type(x).__name__}")
    if x < 1 or not x & 1:
        raise ValueError(f"{name} must be a positive odd integer, got {x}")
    return x


def _require_positive(n: int, name: str) -> int:
    if isinstance(n, bool) or not isinstance(n, int):
        raise TypeError(f"{name} must be an int, got {type(n).__name__}")
    if n < 1:
        raise ValueError(f"{name} must be >= 1, got {n}")
    return n


def v2(m: int) -> int:
    """Return the 2-adic valuation of ``m`` (number of trailing zero bits).

    >>> v2(28), v2(4), v2(1)
    (2, 2, 0)
    """
    _require_positive(m, "m")
    return (m & -m).bit_length() - 1


def collatz_step(n: int) -> int:
    _require_positive(n, "n")
    return n >> 1 if n & 1 == 0 else 3 * n + 1


def collatz_sequence(n: int, limit: int = DEFAULT_LIMIT) -> list[int]:
    """Original Collatz sequence from ``n``.

    The sequence stops at the first 1 (inclusive) or once it holds ``limit``
    terms, whichever comes first.
    """
    _require_positive(n, "n")
    _require_positive(limit, "limit")
    out = [n]
    while n != 1 and len(out) < limit:
        n = n >> 1 if n & 1 == 0 else 3 * n + 1
        out.append(n)
    return out


def odd_step(x: int) -> OddStepResult:
    """One modified step: ``(3x + 1) / 2**p`` with ``p`` maximal."""
    require_odd(x)
    y = 3 * x + 1
    p = (y & -y).bit_length() - 1
    return OddStepResult(y >> p, p)


def odd_sequence(x: int, limit: int = DEFAULT_LIMIT) -> OddPath:
    """Iterate :func:`odd_step` from ``x`` for at most ``limit`` steps.

    Repeats are detected exactly with a visited set, so a path that enters
    a cycle not containing 1 ends with ``CYCLE_DETECTED``.
    """
    require_odd(x)
    _require_positive(limit, "limit")
    values = [x]
    index = {x: 0}
    while True:
        if x == 1:
            return OddPath(tuple(values), Termination.REACHED_ONE)
        if len(values) - 1 >= limit:
            return OddPath(tuple(values), Termination.LIMIT_EXHAUSTED)
        y = 3 * x + 1
        x = y >> ((y & -y).bit_length() - 1)
        seen_at = index.get(x)
        if seen_at is not None:
            return OddPath(
                tuple(values), Termination.CYCLE_DETECTED, tuple(values[seen_at:])
            )
        index[x] = len(values)
        values.append(x)


def max_excursion(x: int, limit: int = DEFAULT_LIMIT) -> ExcursionStats:
    """Peak of the modified sequence of ``x`` and of its full Collatz sequence.

    The full-sequence maximum is ``3 * max_odd + 1``; for ``x = 1`` that is
    the 4 of the trivial 4, 2, 1 cycle.

    Raises:
        SequenceNotTerminated: the sequence did not reach 1 within ``limit``.
    """
    path = odd_sequence(x, limit)
    if path.termination is not Termination.REACHED_ONE:
        raise SequenceNotTerminated(x, path)
    top = max(path.values)
    return ExcursionStats(top, 3 * top + 1, path.steps)
