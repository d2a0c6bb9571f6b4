import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from maxpattern.seqcore import (
    SequenceRangeError,
    ShiftPartition,
    Window,
    constant,
    eventually_constant,
    from_bits,
    is_saturated,
    pattern_keys,
    periodic,
    recurrence_probe,
    refine,
    shift_partition,
    shifted,
    subsequence,
    tau_language,
    word_complexity,
)

bitstrings = st.text(alphabet="01", min_size=40, max_size=160)


def offsets_strategy(max_size=5, max_diam=12):
    return st.lists(st.integers(1, max_diam), max_size=max_size - 1, unique=True).map(
        lambda rest: Window((0,) + tuple(sorted(rest)))
    )


def brute_language(bits: str, offsets, S):
    return {"".join(bits[m + t] for t in offsets) for m in range(S + 1)}


def test_intro_window_has_four_patterns():
    rep = tau_language(from_bits("010110"), Window((0, 2)), 3)
    assert rep.count == 4
    assert rep.words == {"00", "11", "01", "10"}


def test_cofinite_example_has_all_eight_words():
    x = eventually_constant("00001011100", 1)
    rep = tau_language(x, Window((0, 1, 2)), 8)
    assert rep.count == 8


def test_witness_is_least_shift():
    rep = tau_language(from_bits("0011010"), Window((0, 1)), 5)
    assert {p.bits: p.witness_shift for p in rep.patterns} == {"00": 0, "01": 1, "11": 2, "10": 3}


def test_range_error_names_first_unreadable_index():
    x = from_bits("0101")
    with pytest.raises(SequenceRangeError) as err:
        tau_language(x, Window((0, 2)), 2)
    assert err.value.index == 4
    with pytest.raises(SequenceRangeError):
        x(4)
    with pytest.raises(SequenceRangeError):
        x(-1)


def test_window_validation():
    with pytest.raises(ValueError):
        Window(())
    with pytest.raises(ValueError):
        Window((1, 2))
    with pytest.raises(ValueError):
        Window((0, 3, 3))
    assert Window.of([7, 5, 9]).offsets == (0, 2, 4)
    assert Window.interval(3).offsets == (0, 1, 2)


def test_word_complexity_rejects_zero():
    with pytest.raises(ValueError):
        word_complexity(constant(0), 0, 10)


def test_prefix_cache_is_read_only():
    x = periodic("011")
    arr = x.prefix(10)
    with pytest.raises(ValueError):
        arr[0] = 1
    assert x.word(0, 7) == "0110110"


def test_shift_and_subsequence():
    x = from_bits("0110100110010110")
    assert shifted(x, 3).word(0, 5) == "01001"
    assert subsequence(x, 3, 1).word(0, 5) == "11101"
    assert subsequence(x, 3, 1).valid_up_to == 5


def test_saturation_flag():
    assert tau_language(constant(1), Window((0, 5)), 10_000).saturated
    # Fewer shifts than the minimum stabilization span.
    assert not tau_language(constant(1), Window((0, 5)), 500).saturated
    assert not is_saturated(np.array([0, 9_999]), 10_000)


def test_wide_window_keys_match_strings():
    rng = np.random.default_rng(3)
    bits = rng.integers(0, 2, 400, dtype=np.uint8)
    offs = tuple(range(0, 140, 2))
    rep = tau_language(from_bits(bits), Window(offs), 100)
    s = "".join(map(str, bits.tolist()))
    assert rep.words == brute_language(s, offs, 100)
    assert pattern_keys(bits, offs, 100).shape == (101,)


@settings(max_examples=60, deadline=None)
@given(bitstrings, offsets_strategy())
def test_language_matches_brute_force(bits, tau):
    S = len(bits) - tau.diameter - 1
    if S < 0:
        return
    rep = tau_language(from_bits(bits), tau, S)
    assert rep.words == brute_language(bits, tau.offsets, S)
    for p in rep.patterns:
        assert "".join(bits[p.witness_shift + t] for t in tau.offsets) == p.bits
        assert all(
            "".join(bits[m + t] for t in tau.offsets) != p.bits for m in range(p.witness_shift)
        )


@settings(max_examples=60, deadline=None)
@given(bitstrings, offsets_strategy())
def test_refine_chain_matches_direct_language(bits, tau):
    S = len(bits) - tau.diameter - 1
    if S < 0:
        return
    x = from_bits(bits)
    p = ShiftPartition.initial(x, S)
    for t in tau.offsets[1:]:
        before = p.class_count
        p = refine(p, t)
        assert before <= p.class_count <= 2 * before
    assert p.class_count == tau_language(x, tau, S).count
    assert p.class_count == shift_partition(x, tau, S).class_count
    members = sorted(m for cls in p.members() for m in cls)
    assert members == list(range(S + 1))


def test_refine_requires_offset_beyond_diameter():
    p = shift_partition(from_bits("0110" * 20), Window((0, 3)), 20)
    with pytest.raises(ValueError):
        refine(p, 3)


@settings(max_examples=40, deadline=None)
@given(st.text(alphabet="01", min_size=1, max_size=30), st.integers(0, 1), offsets_strategy(4, 10), st.integers(1, 8))
def test_translation_containment(prefix, tail, tau, t):
    x = eventually_constant(prefix, tail)
    S = 60
    moved = tau_language(x, Window.of(o + t for o in tau.offsets), S)
    # The canonical form of tau + t is tau itself; compare against shifts of tau directly.
    bits = x.word(0, S + t + tau.diameter + 1)
    moved_words = {"".join(bits[m + o + t] for o in tau.offsets) for m in range(S + 1)}
    assert moved_words <= tau_language(x, tau, S + t).words
    assert moved.words == tau_language(x, tau, S).words


@settings(max_examples=40, deadline=None)
@given(bitstrings, offsets_strategy(4, 10), st.integers(1, 12))
def test_monotone_in_window(bits, tau, extra):
    S = len(bits) - max(tau.diameter, extra) - 1
    if S < 0 or extra in tau.offsets:
        return
    x = from_bits(bits)
    bigger = Window(tuple(sorted(tau.offsets + (extra,))))
    assert tau_language(x, tau, S).count <= tau_language(x, bigger, S).count


def test_language_is_deterministic():
    x = from_bits(np.random.default_rng(0).integers(0, 2, 300, dtype=np.uint8))
    assert tau_language(x, Window((0, 3, 7)), 250) == tau_language(x, Window((0, 3, 7)), 250)


def test_recurrence_probe():
    rows = recurrence_probe(periodic("01"), 4, 100)
    assert [r.second_occurrence for r in rows] == [2, 2, 2, 2]
    assert all(r.max_gap_observed == 2 for r in rows)
    rows = recurrence_probe(eventually_constant("1", 0), 2, 50)
    assert rows[0].second_occurrence is None
