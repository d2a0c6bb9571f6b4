import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from maxpattern.rotation import code, fibonacci_spec
from maxpattern.seqcore import constant, from_bits, tau_language
from maxpattern.witnesses import (
    arithmetic_subsequences,
    banach_density_estimate,
    block_doubling,
    doubling_bound,
    doubling_lower_bound,
    finite_complement,
    gap_window_witness,
    indicator,
    long_blocks_witness,
    minimality_defect_code,
    powers,
    powers_plus,
    residue_subsequence,
    runs,
    squares,
)


def doubling_word(k: int) -> str:
    w = "1"
    for j in range(k):
        w = w + "0" * j + w
    return w


def test_block_doubling_prefix():
    x = block_doubling()
    w = doubling_word(8)
    assert x.word(0, len(w)) == w
    assert x.word(0, 13) == "1101100110110"


def test_defect_code_is_complement_for_single_zero():
    x = block_doubling()
    xp = minimality_defect_code(x, {"0"}, 1)
    n = 5000
    assert xp.prefix(n).tolist() == [1 - b for b in x.prefix(n).tolist()]


def test_defect_code_sliding_words():
    x = from_bits("0110100110010110" * 20)
    xp = minimality_defect_code(x, {"11", "00"}, 2, horizon=200)
    bits = x.word(0, 300)
    assert xp.word(0, 200) == "".join("1" if bits[i] == bits[i + 1] else "0" for i in range(200))


def test_defect_code_warns_when_degenerate():
    with pytest.warns(RuntimeWarning):
        minimality_defect_code(constant(0), {"0"}, 1)
    with pytest.raises(ValueError):
        minimality_defect_code(constant(0), {"01"}, 1)
    with pytest.raises(ValueError):
        minimality_defect_code(constant(0), set(), 1)


def test_doubling_bound_values():
    assert [doubling_bound(k) for k in range(6)] == [1, 3, 8, 20, 48, 112]


def test_doubling_trace_on_block_doubling():
    xp = minimality_defect_code(block_doubling(), {"0"}, 1)
    tr = doubling_lower_bound(xp, 4, horizon=1_000_000)
    assert tr.failure is None and len(tr.steps) == 5
    assert all(tr.bound_holds(k) for k in range(5))
    assert all(tr.step_inequality(k) for k in range(4))
    assert not tr.step_inequality(4)
    assert tr.certified_through() == 4
    for s in tr.steps:
        assert s.window.size == 2**s.k
        assert tau_language(xp, s.window, 1_000_000 - s.window.diameter - 1).count == s.count


def test_doubling_reports_short_horizon():
    xp = minimality_defect_code(block_doubling(), {"0"}, 1)
    tr = doubling_lower_bound(xp, 12, horizon=3000)
    assert tr.failure is not None
    assert tr.certified_through() < 12


def test_runs():
    starts, lengths, letters = runs(np.array([0, 0, 1, 1, 1, 0], dtype=np.uint8))
    assert starts.tolist() == [0, 2, 5] and lengths.tolist() == [2, 3, 1] and letters.tolist() == [0, 1, 0]


def test_long_blocks_on_growing_runs():
    x = from_bits("".join("0" * k + "1" * k for k in range(1, 60)))
    w = long_blocks_witness(x, 3000)
    assert w is not None and w.verified and w.count >= 2 * w.n + 1


def test_long_blocks_absent_for_bounded_runs():
    assert long_blocks_witness(code(fibonacci_spec()), 10_000) is None
    assert long_blocks_witness(constant(0), 10_000) is None


def test_gap_window_on_powers_of_two():
    w = gap_window_witness(powers(2), 10_000)
    assert w.tau.offsets == (0, 1, 2) and w.index == 1
    assert w.words_at_shifts == ("110", "101")


def test_gap_window_on_squares():
    w = gap_window_witness(squares(), 10_000)
    assert w.tau.offsets == (0, 1, 3)
    assert w.words_at_shifts == ("110", "101")
    assert w.has_010


def test_gap_window_needs_increase():
    every_fifth = indicator(lambda k: 5 * k)
    assert gap_window_witness(every_fifth, 2000) is None


def test_generators():
    assert powers_plus(2).word(0, 12) == "".join("1" if n in {1, 3, 6, 11} else "0" for n in range(12))
    assert finite_complement([0, 2]).word(0, 5) == "01011"
    assert squares().word(0, 10) == "1100100001"
    sub = residue_subsequence(squares(), 4, 1)
    assert sub.word(0, 8) == "".join(str(int(round((4 * m + 1) ** 0.5) ** 2 == 4 * m + 1)) for m in range(8))
    parts = arithmetic_subsequences(powers(3), 2)
    assert len(parts) == 2 and parts[1].word(0, 5) == "11001"


def test_banach_density():
    assert banach_density_estimate(range(0, 10_000, 2), [10, 100], 10_000) == {10: 0.5, 100: 0.5}
    d = banach_density_estimate(powers(2), [64], 100_000)
    assert d[64] <= 7 / 64
    assert banach_density_estimate(constant(1), [50], 1000) == {50: 1.0}
    with pytest.raises(ValueError):
        banach_density_estimate(range(5), [0], 100)


@settings(max_examples=30, deadline=None)
@given(st.sets(st.integers(0, 500), min_size=1, max_size=60), st.integers(1, 40))
def test_banach_density_matches_brute_force(pos, N):
    got = banach_density_estimate(pos, [N], 600)[N]
    want = max(sum(1 for p in pos if M <= p < M + N) for M in range(600 - N + 1)) / N
    assert got == want
