"""Property tests over random and very large inputs."""

from hypothesis import example, given, settings
from hypothesis import strategies as st

from collatz_tree import verify
from collatz_tree.core import odd_sequence, odd_step, v2
from collatz_tree.tree import (
    Branch,
    boundary_bits,
    children,
    classify,
    decompose,
    f_minus,
    f_plus,
    parent,
    remainder_for,
)

odd = st.integers(min_value=0, max_value=2**300).map(lambda i: 2 * i + 1)
small_odd = st.integers(min_value=0, max_value=5000).map(lambda i: 2 * i + 1)


@given(st.integers(min_value=1, max_value=2**400))
def test_v2_divides_exactly(m):
    j = v2(m)
    assert m % (1 << j) == 0 and (m >> j) % 2 == 1


@given(odd)
@example(1)
@example(2**64 - 1)
@example(int("01" * 120, 2))
def test_decompose_round_trip(x):
    d = decompose(x)
    assert d.value() == x
    assert x == d.q * 2**d.b + d.r and d.r == remainder_for(d.b)
    assert (d.branch is Branch.MINUS) == (d.b % 2 == 0)


@given(odd)
def test_parent_agrees_with_odd_step(x):
    e = parent(x)
    assert (e.parent, e.p) == tuple(odd_step(x))


@given(odd)
def test_boundary_bits_definition(x):
    b = boundary_bits(x)
    bit = lambda i: (x >> i) & 1
    assert bit(b - 1) == bit(b - 2)
    assert all(bit(i) != bit(i - 1) for i in range(1, b - 1))
    assert b <= x.bit_length() + 2


@given(odd)
def test_classify_partition(x):
    c = classify(x)
    if x % 3 == 0:
        assert c.is_leaf
    else:
        assert c.value() == x


@given(st.integers(0, 10**6), st.integers(1, 40), st.integers(1, 10**6), st.integers(0, 40))
def test_closed_form_images(kp, n_p, km, n_m):
    a, b = f_plus(kp, n_p), f_minus(km, n_m)
    assert a % 2 == 1 and b % 2 == 1
    assert a != b
    # children may be multiples of 3 (f_minus(1, 0) == 3); their parents never are
    pa, pb = odd_step(a), odd_step(b)
    assert tuple(pa) == (6 * kp + 1, 2 * n_p) and pa.next % 3 != 0
    assert tuple(pb) == (6 * km - 1, 2 * n_m + 1) and pb.next % 3 != 0


@given(st.integers(0, 10**4), st.integers(1, 30))
def test_f_plus_monotone(k, n):
    assert f_plus(k, n) < f_plus(k + 1, n) and f_plus(k, n) < f_plus(k, n + 1)


@given(st.integers(1, 10**4), st.integers(0, 30))
def test_f_minus_monotone(k, n):
    assert f_minus(k, n) < f_minus(k + 1, n) and f_minus(k, n) < f_minus(k, n + 1)


@given(small_odd, st.integers(1, 10**9))
def test_children_invert_odd_step(x, bound):
    kids = children(x, bound)
    assert [e.child for e in kids] == sorted(e.child for e in kids)
    for e in kids:
        assert e.child <= bound and e.parent == x
        assert tuple(odd_step(e.child)) == (x, e.p)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 3000), st.integers(0, 3000), st.integers(0, 5))
def test_split_ranges_merge_to_whole(a, b, pad):
    lo, hi = sorted((2 * a + 1, 2 * b + 1))
    hi += 2 * pad
    whole = verify.verify_range(lo, hi, memo_cap=0)
    mid = lo + 2 * ((hi - lo) // 4)
    if mid < hi:
        parts = [verify.verify_range(lo, mid, memo_cap=0), verify.verify_range(mid + 2, hi, memo_cap=0)]
        assert verify.merge_reports(parts) == whole
    assert verify.verify_range(lo, hi, memo_cap=hi // 2 + 1) == whole


@settings(max_examples=50, deadline=None)
@given(small_odd)
def test_cycle_search_matches_odd_sequence(x):
    res = verify.cycle_search(x)
    path = odd_sequence(x)
    if x == 1:
        assert res == verify.TrivialCycle()
    else:
        assert res == verify.ReachesOne(path.steps)
