import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from maxpattern.complexity import (
    SearchBounds,
    check_pattern_sturmian,
    exhaustive_pstar,
    morse_hedlund_check,
    periodicity_scan,
    pstar,
)
from maxpattern.rotation import code, fibonacci_spec
from maxpattern.seqcore import constant, eventually_constant, from_bits, periodic, tau_language
from maxpattern.toeplitz import generate, three_adic_example
from maxpattern.witnesses import finite_complement

FIB = code(fibonacci_spec())


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 4), st.integers(3, 10))
def test_engine_matches_exhaustive(seed, n, D):
    bits = np.random.default_rng(seed).integers(0, 2, 120, dtype=np.uint8)
    x = from_bits(bits)
    D = max(D, n - 1)
    S = 120 - D - 1
    cert = pstar(x, SearchBounds(n, diameter=D, shift_bound=S), ns=[n])
    ref, _ = exhaustive_pstar(x, n, D, S)
    assert cert.rows[0].best_count == ref
    assert cert.rows[0].status in ("exhaustive", "cap_reached")


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_pruning_does_not_change_results(seed):
    x = from_bits(np.random.default_rng(seed).integers(0, 2, 150, dtype=np.uint8))
    b = SearchBounds(4, diameter=9, shift_bound=140)
    assert pstar(x, b).counts() == pstar(x, b, prune=False).counts()


def test_certificate_is_monotone_and_doubling_bounded():
    for x in (FIB, generate(three_adic_example()), finite_complement([0, 1, 2, 3, 5, 9, 10])):
        c = pstar(x, SearchBounds(5, diameter=30, shift_bound=3000)).counts()
        assert all(a <= b <= 2 * a for a, b in zip(c, c[1:]))
        assert c[0] == 2


def test_certificate_rows_are_reproducible_by_tau_language():
    cert = pstar(FIB, SearchBounds(4, diameter=40, shift_bound=5000))
    for r in cert.rows:
        assert tau_language(FIB, r.best_window, 5000).count == r.best_count
        assert r.verdict in ("saturated_lower_bound", "lower_bound")
    assert "n" in cert.table()


def test_constant_sequence_has_one_pattern():
    cert = pstar(constant(1), SearchBounds(4, diameter=10, shift_bound=2000))
    assert cert.counts() == [1, 1, 1, 1]
    assert all(r.status == "cap_reached" for r in cert.rows[1:]) or all(r.best_count == 1 for r in cert.rows)


def test_stop_at_caps_search():
    cert = pstar(FIB, SearchBounds(5, diameter=60, shift_bound=5000), stop_at=lambda n: 2 * n)
    assert cert.counts() == [2, 4, 6, 8, 10]
    assert all(r.status in ("cap_reached", "exhaustive") for r in cert.rows)


def test_shift_bound_beyond_finite_prefix_is_rejected():
    from maxpattern.seqcore import SequenceRangeError

    with pytest.raises(SequenceRangeError):
        pstar(from_bits("0110"), SearchBounds(2, diameter=2, shift_bound=5))


def test_bounds_validation():
    with pytest.raises(ValueError):
        SearchBounds(0)
    with pytest.raises(ValueError):
        SearchBounds(5, diameter=3)


def test_periodicity_scan():
    r = periodicity_scan(periodic("011"), 5000)
    assert r.periodic and r.period == 3
    r = periodicity_scan(eventually_constant("0101101", 1), 5000)
    assert r.periodic and r.period == 1 and r.preperiod <= 6
    assert not periodicity_scan(FIB, 100_000).periodic
    assert not periodicity_scan(generate(three_adic_example()), 100_000).periodic


def test_check_pattern_sturmian():
    chk = check_pattern_sturmian(FIB, SearchBounds(4, diameter=40, shift_bound=5000))
    assert chk.verdict == "consistent" and chk.refuting_n is None
    bad = check_pattern_sturmian(finite_complement([0, 1, 2, 3, 5, 9, 10]), SearchBounds(3))
    assert bad.verdict == "refuted" and bad.refuting_n == 3 and bad.refuting_count > 6


def test_morse_hedlund():
    rep = morse_hedlund_check(FIB, SearchBounds(5, diameter=60, shift_bound=5000))
    assert rep.all_attained and set(rep.flags) == {1, 2, 3, 4, 5}
    skipped = morse_hedlund_check(periodic("0010"), SearchBounds(3))
    assert skipped.skipped and not skipped.all_attained


def test_parallel_workers_agree():
    b = SearchBounds(4, diameter=30, shift_bound=3000)
    x = generate(three_adic_example())
    assert pstar(x, b, workers=2).counts() == pstar(x, b, workers=1).counts()
