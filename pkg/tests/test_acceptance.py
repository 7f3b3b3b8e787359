"""Exit criteria for the package, one test per criterion.

Each test prints a single ``[PASS]``/``[FAIL]`` line (visible with ``-s``
or in the summary) and asserts its criterion at the stated tolerance.
"""

import io
import time

import pytest

from collatz_tree import verify
from collatz_tree.cli import run
from collatz_tree.core import max_excursion, odd_step
from collatz_tree.tree import decompose, f_minus, f_plus, generate_tree, parent, tree_nodes
from collatz_tree.verify import (
    NontrivialCycle,
    TrivialCycle,
    corollary_check,
    cycle_search,
    density_check,
    full_orbit_max,
    residue_table,
    verify_range,
)

SEQ_9 = "9 28 14 7 22 11 34 17 52 26 13 40 20 10 5 16 8 4 2 1\n"
MOD_9 = "9 7 11 17 13 5 1\n"


@pytest.fixture
def report(capsys):
    def emit(label, ok, detail, seconds):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] {label}: {detail} ({seconds:.2f}s)")
    return emit


def _cli(*argv):
    out = io.StringIO()
    code = run(list(argv), stdout=out, stderr=io.StringIO())
    return code, out.getvalue()


def test_ac01_golden_sequences(report):
    t = time.perf_counter()
    full = _cli("seq", "9")
    mod = _cli("seq", "9", "--modified")
    dt = time.perf_counter() - t
    ok = full == (0, SEQ_9) and mod == (0, MOD_9) and dt < 1.0
    report("AC1 golden sequences", ok, f"seq 9 -> {full[1].strip()!r}; --modified -> {mod[1].strip()!r}", dt)
    assert full == (0, SEQ_9) and len(SEQ_9.split()) == 20
    assert mod == (0, MOD_9)
    assert dt < 1.0


def test_ac02_residue_table(report):
    t = time.perf_counter()
    rows = residue_table(6)
    dt = time.perf_counter() - t
    got = ([r.x0 for r in rows], [r.pattern_bits for r in rows], [r.stride for r in rows])
    want = (
        [3, 1, 13, 5, 53, 21],
        ["11", "001", "1101", "00101", "110101", "0010101"],
        [4, 8, 16, 32, 64, 128],
    )
    report("AC2 residue table", got == want and dt < 1.0, f"x0={got[0]} strides={got[2]}", dt)
    assert got == want
    assert dt < 1.0


def test_ac03_round_trip(report):
    t = time.perf_counter()
    failures = []
    for x in range(1, 1 << 20, 2):
        d = decompose(x)
        e = parent(x)
        if d.value() != x or (e.parent, e.p) != tuple(odd_step(x)):
            failures.append(x)
    dt = time.perf_counter() - t
    report("AC3 decompose/parent round trip", not failures and dt < 10.0,
           f"{1 << 19} odd x < 2^20, {len(failures)} failures", dt)
    assert failures == []
    assert dt < 10.0


def test_ac04_injective_disjoint_leaf_free(report):
    t = time.perf_counter()
    plus = [f_plus(k, n) for k in range(0, 1025) for n in range(1, 9)]
    minus = [f_minus(k, n) for k in range(1, 1025) for n in range(0, 9)]
    dup_plus = len(plus) - len(set(plus))
    dup_minus = len(minus) - len(set(minus))
    shared = len(set(plus) & set(minus))
    multiples_of_3 = sum(1 for v in plus + minus if v % 3 == 0)
    dt = time.perf_counter() - t
    ok = dup_plus == dup_minus == shared == multiples_of_3 == 0 and dt < 5.0
    report(
        "AC4 injectivity/disjointness/leaf lemmas",
        ok,
        f"dup+={dup_plus} dup-={dup_minus} shared={shared} values=0 mod 3: {multiples_of_3}",
        dt,
    )
    assert dup_plus == 0
    assert dup_minus == 0
    assert shared == 0
    assert multiples_of_3 == 0
    assert dt < 5.0


def test_ac05_density(report):
    t = time.perf_counter()
    got = [density_check(p, 16) for p in range(1, 7)]
    dt = time.perf_counter() - t
    want = [(2 ** (15 - p), 32768) for p in range(1, 7)]
    report("AC5 density", got == want and dt < 1.0, f"members={[g[0] for g in got]}", dt)
    assert [g[0] for g in got] == [16384, 8192, 4096, 2048, 1024, 512]
    assert got == want
    assert dt < 1.0


def test_ac06_corollary(report):
    t = time.perf_counter()
    failures = corollary_check(1, 9999)
    spot = full_orbit_max(9)
    dt = time.perf_counter() - t
    ok = failures == [] and spot == 52 == 3 * 17 + 1 and dt < 5.0
    report("AC6 full max = 3*odd max + 1", ok, f"{len(failures)} failures on [1, 9999]; start 9 -> {spot}", dt)
    assert failures == []
    assert spot == 52 and max_excursion(9).max_odd == 17
    assert dt < 5.0


def test_ac07_desk_scale_verification(report):
    t = time.perf_counter()
    r = verify_range(1, 10**7 - 1)
    dt = time.perf_counter() - t
    r27 = verify_range(27, 27)
    e27 = (r27.max_excursion.max_odd, r27.max_excursion.full_max, r27.max_odd_steps.count)
    ok = (
        r.all_reached_one
        and not r.anomalies
        and r.verified_count == 5 * 10**6
        and e27 == (3077, 9232, 41)
        and dt < 60.0
    )
    report("AC7 verify [1, 10^7)", ok,
           f"count={r.verified_count} anomalies={len(r.anomalies)} start 27 -> {e27}", dt)
    assert r.all_reached_one and r.anomalies == ()
    assert r.verified_count == 5 * 10**6
    assert e27 == (3077, 9232, 41)
    assert tuple(max_excursion(27)) == (3077, 9232, 41)
    assert dt < 60.0


def test_ac08_memo_and_worker_transparency(report):
    t = time.perf_counter()
    runs = {
        "memo off": verify_range(1, 99999, memo_cap=0, workers=1),
        "memo on": verify_range(1, 99999, memo_cap=10**6, workers=1),
        "1 worker": verify_range(1, 99999, workers=1),
        "8 workers": verify_range(1, 99999, workers=8),
    }
    dt = time.perf_counter() - t
    base = runs["memo off"]
    same = all(r == base and r.to_json() == base.to_json() for r in runs.values())
    report("AC8 memo/parallel transparency", same, f"{len(runs)} configurations identical: {same}", dt)
    assert same


def test_ac09_bounded_tree(report):
    t = time.perf_counter()
    edges = generate_tree(17)
    nodes = tree_nodes(edges)
    childs = [e.child for e in edges]
    dt = time.perf_counter() - t
    ok = nodes == {1, 3, 5, 7, 9, 11, 13, 17} and len(edges) == 7 and 1 not in childs
    report("AC9 bounded tree", ok, f"nodes={sorted(nodes)} edges={len(edges)}", dt)
    assert nodes == {1, 3, 5, 7, 9, 11, 13, 17}
    assert len(edges) == 7
    assert 1 not in childs


def test_ac10_cycle_search(report):
    t = time.perf_counter()
    nontrivial = []
    for x in range(1, 10**6 + 1, 2):
        res = cycle_search(x)
        if isinstance(res, NontrivialCycle):
            nontrivial.append(res)
    root = cycle_search(1)
    dt = time.perf_counter() - t
    ok = not nontrivial and root == TrivialCycle() and dt < 60.0
    report("AC10 cycle search to 10^6", ok, f"nontrivial={len(nontrivial)} start 1 -> {root.kind}", dt)
    assert nontrivial == []
    assert root == TrivialCycle()
    assert dt < 60.0
