"""Command line interface.

Exit codes: 0 success, 1 usage error, 2 anomaly (a verification range with
a start that cycles or exceeds its step limit, or a cycle search that finds
a nontrivial cycle or runs out of iterations).
"""

from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path
from typing import Sequence, TextIO

from . import core, tree, verify

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_ANOMALY = 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


_DIGITS = re.compile(r"[0-9]+\Z")


def _natural(text: str) -> int:
    if not _DIGITS.match(text):
        raise argparse.ArgumentTypeError(f"expected a decimal integer, got {text!r}")
    return int(text)


def _positive(text: str) -> int:
    n = _natural(text)
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return n


def _odd(text: str) -> int:
    n = _natural(text)
    if n < 1 or n % 2 == 0:
        raise argparse.ArgumentTypeError(f"expected a positive odd integer, got {text!r}")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="collatz-tree", description="Odd-number Collatz tree tools.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("seq", help="print a Collatz sequence")
    p.add_argument("n", type=_positive)
    p.add_argument("--modified", action="store_true", help="odd terms only (n must be odd)")
    p.add_argument("--limit", type=_positive, default=core.DEFAULT_LIMIT)

    p = sub.add_parser("decompose", help="branch, k, n and bit split of an odd number")
    p.add_argument("x", type=_odd)

    p = sub.add_parser("children", help="children of a node up to a bound")
    p.add_argument("x", type=_odd)
    p.add_argument("--bound", type=_positive, required=True)

    p = sub.add_parser("parent", help="parent edge of a node")
    p.add_argument("x", type=_odd)

    p = sub.add_parser("tree", help="generate and export the tree from root 1")
    p.add_argument("--bound", type=_positive, required=True)
    p.add_argument("--depth", type=_natural, default=None)
    p.add_argument("--format", choices=tree.EXPORT_FORMATS, default="dot")
    p.add_argument("--output", type=Path, default=None)

    p = sub.add_parser("verify", help="verify that every odd start in a range reaches 1")
    p.add_argument("--from", dest="lo", type=_odd, required=True)
    p.add_argument("--to", dest="hi", type=_odd, required=True)
    p.add_argument("--step-limit", type=_positive, default=verify.DEFAULT_STEP_LIMIT)
    p.add_argument("--memo-cap", type=_natural, default=verify.DEFAULT_MEMO_CAP)
    p.add_argument("--workers", type=_positive, default=None)

    p = sub.add_parser("cycle-search", help="Brent cycle search on the odd map")
    p.add_argument("x", type=_odd)
    p.add_argument("--limit", type=_positive, default=verify.DEFAULT_MAX_ITERS)

    p = sub.add_parser("table", help="first-step residue classes as CSV")
    p.add_argument("--max-p", type=_positive, default=6)

    p = sub.add_parser("density", help="count odd x < 2**M whose first step has valuation P")
    p.add_argument("p", type=_positive)
    p.add_argument("m", type=_positive)
    return parser


def _seq(args, out):
    if args.modified:
        if args.n % 2 == 0:
            raise UsageError(f"seq --modified: expected a positive odd integer, got {args.n}")
        values = core.odd_sequence(args.n, args.limit).values
    else:
        values = core.collatz_sequence(args.n, args.limit)
    out.write(" ".join(map(str, values)) + "\n")
    return EXIT_OK


def _decompose(args, out):
    d = tree.decompose(args.x)
    out.write(
        f"branch={d.branch.value} k={d.k} n={d.n} b={d.b} parent={d.parent} p={d.p}\n"
    )
    return EXIT_OK


def _children(args, out):
    for e in tree.children(args.x, args.bound):
        out.write(f"child={e.child} n={e.n} p={e.p}\n")
    return EXIT_OK


def _parent(args, out):
    e = tree.parent(args.x)
    out.write(f"parent={e.parent} n={e.n} p={e.p}\n")
    return EXIT_OK


def _tree(args, out):
    text = tree.export_tree(tree.generate_tree(args.bound, args.depth), args.format)
    if args.output is not None:
        args.output.write_text(text)
    else:
        out.write(text)
    return EXIT_OK


def _verify(args, out):
    if args.lo > args.hi:
        raise UsageError(f"verify: --from {args.lo} is greater than --to {args.hi}")
    report = verify.verify_range(
        args.lo,
        args.hi,
        step_limit=args.step_limit,
        memo_cap=args.memo_cap,
        workers=args.workers or verify.default_workers(),
    )
    out.write(report.to_json() + "\n")
    return EXIT_OK if report.all_reached_one else EXIT_ANOMALY


def _cycle_search(args, out):
    res = verify.cycle_search(args.x, args.limit)
    if isinstance(res, verify.ReachesOne):
        out.write(f"{res.kind} steps={res.steps}\n")
    elif isinstance(res, verify.NontrivialCycle):
        out.write(f"{res.kind} length={res.length} values={' '.join(map(str, res.values))}\n")
    elif isinstance(res, verify.Inconclusive):
        out.write(f"{res.kind} limit={res.limit}\n")
    else:
        out.write(f"{res.kind}\n")
    if isinstance(res, (verify.NontrivialCycle, verify.Inconclusive)):
        return EXIT_ANOMALY
    return EXIT_OK


def _table(args, out):
    out.write(verify.residue_table_csv(verify.residue_table(args.max_p)))
    return EXIT_OK


def _density(args, out):
    if args.p > args.m - 1:
        raise UsageError(f"density: P must be between 1 and M-1, got P={args.p} M={args.m}")
    members, total = verify.density_check(args.p, args.m)
    out.write(f"members={members} total={total}\n")
    return EXIT_OK


_COMMANDS = {
    "seq": _seq,
    "decompose": _decompose,
    "children": _children,
    "parent": _parent,
    "tree": _tree,
    "verify": _verify,
    "cycle-search": _cycle_search,
    "table": _table,
    "density": _density,
}


def run(argv: Sequence[str], stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    """Parse ``argv``, dispatch, and return the exit code."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
        return _COMMANDS[args.command](args, stdout)
    except UsageError as exc:
        stderr.write(f"{exc}\n")
        return EXIT_USAGE


def main(argv: Sequence[str] | None = None) -> None:
    try:
        code = run(sys.argv[1:] if argv is None else argv)
    except SystemExit as exc:  # --help
        code = exc.code if isinstance(exc.code, int) else EXIT_OK
    sys.exit(code)
