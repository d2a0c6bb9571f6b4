from decimal import Decimal, getcontext
from fractions import Fraction
import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from maxpattern.rotation import (
    ExactAngle,
    IntervalSpec,
    IrrationalAngle,
    RotationCodingSpec,
    WindowSearchError,
    code,
    fibonacci_spec,
    find_constant_free_window,
    floor_oracle_bit,
    nonrecurrence_witness,
    oracle_language_bound,
    partition_cell_count,
    two_interval_spec,
)
from maxpattern.seqcore import Window, tau_language

getcontext().prec = 80
GOLDEN = (Decimal(5).sqrt() - 1) / 2
SILVER = Decimal(2).sqrt() - 1  # [0; 2, 2, 2, ...]


@pytest.fixture(scope="module")
def fib():
    spec = fibonacci_spec()
    return spec, code(spec)


def test_convergents_of_golden_are_fibonacci():
    a = IrrationalAngle.golden()
    qs = [a.convergent(k)[1] for k in range(10)]
    assert qs == [1, 1, 2, 3, 5, 8, 13, 21, 34, 55]
    lo, hi = a.enclosure(8)
    assert Decimal(lo.numerator) / lo.denominator < GOLDEN < Decimal(hi.numerator) / hi.denominator


def test_rejects_rational_or_bad_coefficients():
    with pytest.raises(ValueError):
        IrrationalAngle([0, 2, 3])
    with pytest.raises(ValueError):
        IrrationalAngle([1], [1])
    with pytest.raises(ValueError):
        IrrationalAngle([0], [0])


@settings(max_examples=300, deadline=None)
@given(st.integers(-10**9, 10**9), st.integers(-10**6, 10**6))
def test_sign_linear_matches_decimal(u, v):
    for alpha, ref in ((IrrationalAngle.golden(), GOLDEN), (IrrationalAngle([0], [2]), SILVER)):
        val = u + v * ref
        expected = (val > 0) - (val < 0)
        assert alpha.sign_linear(u, v) == expected


@settings(max_examples=200, deadline=None)
@given(st.integers(-10**6, 10**6), st.integers(-10**5, 10**5), st.integers(1, 50))
def test_floor_linear_matches_decimal(u, v, w):
    a = IrrationalAngle.golden()
    assert a.floor_linear(u, v, w) == int(((u + v * GOLDEN) / w).to_integral_value(rounding="ROUND_FLOOR"))


def test_exact_angle_canonical_and_arithmetic():
    a = IrrationalAngle.golden()
    x = ExactAngle(3, 1, a)
    assert x == ExactAngle(0, 1, a)
    assert x.c == Fraction(0) and x.d == 1
    y = ExactAngle(0, 2, a)  # 2*alpha - 1 after reduction
    assert y.c == -1
    assert abs(Decimal(y.approx()) - (2 * GOLDEN - 1)) < Decimal("1e-12")
    assert (x + x) == y
    assert (y - x) == x.rotate(0) - x + x
    assert ExactAngle.zero(a) < x
    assert x.midpoint_to(ExactAngle.zero(a)).approx() == pytest.approx(float((GOLDEN + 1) / 2))


def test_fibonacci_prefix_matches_floor_formula(fib):
    spec, x = fib
    bits = x.prefix(3000)
    ref = [int((n * GOLDEN) % 1 < GOLDEN) for n in range(3000)]
    assert bits.tolist() == ref


def test_code_matches_floor_oracle(fib):
    spec, x = fib
    assert all(floor_oracle_bit(spec, n) == x(n) for n in range(0, 2000))
    assert all(floor_oracle_bit(spec, n) == x(n) for n in range(90_000, 90_200))


def test_oracle_handles_exact_endpoint_hits():
    a = IrrationalAngle.golden()
    # Closed cell [alpha, 2 alpha]: orbit points 1 and 2 land exactly on its endpoints.
    spec = two_interval_spec(a, ExactAngle.multiple(1, a), ExactAngle.multiple(2, a), letter=1, closed_lo=True, closed_hi=True)
    x = code(spec)
    assert x(1) == 1 and x(2) == 1
    assert [floor_oracle_bit(spec, n) for n in range(40)] == [x(n) for n in range(40)]
    open_spec = two_interval_spec(a, ExactAngle.multiple(1, a), ExactAngle.multiple(2, a), letter=1, closed_lo=False, closed_hi=False)
    y = code(open_spec)
    assert y(1) == 0 and y(2) == 0
    assert [floor_oracle_bit(open_spec, n) for n in range(40)] == [y(n) for n in range(40)]


def test_partition_validation():
    a = IrrationalAngle.golden()
    z, one = ExactAngle.zero(a), ExactAngle.multiple(1, a)
    with pytest.raises(ValueError, match="exactly one"):
        RotationCodingSpec(a, [(IntervalSpec(z, one, True, True), 1), (IntervalSpec(one, z, True, False), 0)])
    with pytest.raises(ValueError, match="tile"):
        RotationCodingSpec(a, [(IntervalSpec(z, one), 1), (IntervalSpec(ExactAngle(Fraction(9, 10), 0, a), z), 0)])
    with pytest.raises(ValueError, match="not all be equal"):
        RotationCodingSpec(a, [(IntervalSpec(z, one), 1), (IntervalSpec(one, z), 1)])
    with pytest.raises(ValueError):
        IntervalSpec(z, z)


def test_three_cell_partition_codes_consistently():
    a = IrrationalAngle.golden()
    p0, p1, p2 = ExactAngle.zero(a), ExactAngle(Fraction(1, 3), 0, a), ExactAngle.multiple(1, a)
    spec = RotationCodingSpec(a, [(IntervalSpec(p0, p1), 0), (IntervalSpec(p1, p2), 1), (IntervalSpec(p2, p0), 0)])
    x = code(spec)
    ref = [int(Decimal(1) / 3 <= (n * GOLDEN) % 1 < GOLDEN) for n in range(500)]
    assert x.prefix(500).tolist() == ref
    assert [floor_oracle_bit(spec, n) for n in range(500)] == ref


def test_json_round_trip(fib):
    spec, x = fib
    again = RotationCodingSpec.from_dict(json.loads(json.dumps(spec.to_dict())))
    assert code(again).prefix(500).tolist() == x.prefix(500).tolist()


def test_interval_windows_have_n_plus_one_cells(fib):
    spec, x = fib
    for n in range(1, 8):
        cc = partition_cell_count(spec, Window.interval(n))
        assert cc.cell_count == n + 1 == tau_language(x, Window.interval(n), 5000).count


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(1, 200), min_size=1, max_size=6, unique=True))
def test_cell_count_ceiling_and_equality(rest):
    spec = fibonacci_spec()
    tau = Window((0,) + tuple(sorted(rest)))
    cmp = oracle_language_bound(spec, tau, 20_000, _FIB)
    assert cmp.consistent
    assert cmp.cell_count <= 2 * tau.size
    assert cmp.equality_reached  # half-open cells: every atom is an arc with an orbit point


_FIB = code(fibonacci_spec())


def test_singleton_cells_for_closed_intervals():
    # alpha < 1/2: [0, alpha] meets [0, alpha] - alpha only at the point 0.
    a = IrrationalAngle([0, 2], [1])
    spec = two_interval_spec(a, ExactAngle.zero(a), ExactAngle.multiple(1, a), letter=0, closed_lo=True, closed_hi=True)
    cc = partition_cell_count(spec, Window((0, 1)))
    assert cc.singleton_cells >= 1
    cmp = oracle_language_bound(spec, Window((0, 1)), 5000)
    assert cmp.consistent and cmp.equality_reached is None


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_constant_free_window(fib, n):
    spec, x = fib
    res = find_constant_free_window(spec, n, x=x)
    assert res.verified and res.language_size == 2 * n and not res.has_constant_words
    assert res.window.offsets == tuple(j * res.k for j in range(n))


def test_constant_free_window_reports_bounds(fib):
    spec, x = fib
    with pytest.raises(ValueError):
        find_constant_free_window(spec, 1, x=x)
    # |I_0| > 1/2, so every window {0, k} reads 00 somewhere.
    with pytest.raises(WindowSearchError) as err:
        find_constant_free_window(spec, 2, k_max=50, S=2000, x=x)
    assert err.value.bounds["k_max"] == 50
    with pytest.raises(WindowSearchError):
        find_constant_free_window(spec, 30, k_max=1, S=2000, x=x)


def test_nonrecurrence_small_alpha_gives_window_01():
    a = IrrationalAngle([0, 2], [1])  # (3 - sqrt 5)/2
    spec = two_interval_spec(a, ExactAngle.zero(a), ExactAngle.multiple(1, a), letter=0, closed_lo=True, closed_hi=True)
    w = nonrecurrence_witness(spec, 100_000)
    assert w.window.offsets == (0, 1) and w.unique_shift == 0 and w.confirmed


def test_nonrecurrence_golden_needs_three_points():
    a = IrrationalAngle.golden()
    spec = two_interval_spec(a, ExactAngle.zero(a), ExactAngle.multiple(1, a), letter=0, closed_lo=True, closed_hi=True)
    w = nonrecurrence_witness(spec, 100_000)
    # |I_0| = alpha > 1/2, so M = floor(1/(1 - alpha)) = 2.
    assert w.window.offsets == (0, 1, 2) and w.confirmed


def test_nonrecurrence_shifted_cell():
    a = IrrationalAngle([0, 2], [1])
    spec = two_interval_spec(a, ExactAngle.multiple(3, a), ExactAngle.multiple(5, a), letter=1, closed_lo=True, closed_hi=True)
    w = nonrecurrence_witness(spec, 50_000)
    # |I_1| = 2 alpha > 1/2 and 3 >= 2: shift 1 reads 1s on {0,2,..,8} too.
    assert w.unique_shift == 1 and w.letter == 1 and w.confirmed
    assert w.window.offsets == (0, 2, 4, 6, 8, 10)
    assert nonrecurrence_witness(fibonacci_spec()) is None


def test_code_speed_is_reasonable():
    x = code(fibonacci_spec())
    assert np.asarray(x.prefix(20_000)).sum() > 0
