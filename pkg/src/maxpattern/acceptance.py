"""Reproduction suite: one check per acceptance criterion, with timings."""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import catalog, rotation, toeplitz, witnesses
from .complexity import SearchBounds, check_pattern_sturmian, exhaustive_pstar, morse_hedlund_check, pstar
from .seqcore import Window, from_bits, tau_language


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    seconds: float
    time_limit: float | None = None

    @property
    def within_time(self) -> bool:
        return self.time_limit is None or self.seconds <= self.time_limit

    @property
    def ok(self) -> bool:
        return self.passed and self.within_time

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        limit = f" (limit {self.time_limit:g}s)" if self.time_limit else ""
        return f"criterion {self.number:2d} {status} [{self.seconds:7.2f}s{limit}] {self.title}: {self.detail}"

    def to_dict(self) -> dict:
        return {
            "criterion": self.number,
            "title": self.title,
            "passed": self.ok,
            "detail": self.detail,
            "seconds": round(self.seconds, 3),
            "time_limit": self.time_limit,
        }


def c1_intro(seed: int) -> tuple[bool, str]:
    x = from_bits("010110")
    cert = pstar(x, SearchBounds(2, diameter=2, shift_bound=3))
    row = cert.row(2)
    ok = row.best_count == 4 and row.best_window.offsets == (0, 2)
    return ok, f"p*(2) >= {row.best_count} via {row.best_window} (expected 4 via {{0,2}})"


def c2_non_sturmian(seed: int) -> tuple[bool, str]:
    x = catalog.BUILTINS["cofinite-7"].make_source()
    chk = check_pattern_sturmian(x, SearchBounds(3))
    rep = tau_language(x, Window((0, 1, 2)), SearchBounds(3).shift_bound)
    ok = chk.verdict == "refuted" and chk.refuting_n == 3 and rep.count == 8
    return ok, f"verdict {chk.verdict} at n={chk.refuting_n} via {chk.refuting_window}; |L({{0,1,2}})| = {rep.count}"


TOEPLITZ_PREFIX = "010011010010011010010011011"


def c3_toeplitz_prefix(seed: int) -> tuple[bool, str]:
    got = toeplitz.generate(toeplitz.three_adic_example()).word(0, 27)
    diff = [i for i, (a, b) in enumerate(zip(got, TOEPLITZ_PREFIX)) if a != b]
    return got == TOEPLITZ_PREFIX, f"generated {got}; expected {TOEPLITZ_PREFIX}; differing positions {diff}"


def c4_three_window(seed: int) -> tuple[bool, str]:
    r = toeplitz.three_window(toeplitz.alternating_dyadic(), (1, 2, 3, 4, 5, 6))
    expected_words = ("000", "111", "010", "001", "100", "101")
    ok = r.tau.offsets == (0, 8, 16) and r.matches_lemma and r.witness_words == expected_words
    return ok, f"tau {r.tau}, language {sorted(r.language)}, shifts {list(r.witness_shifts)} -> {list(r.witness_words)}"


def c5_sturmian_ceiling(seed: int) -> tuple[bool, str]:
    spec = rotation.fibonacci_spec()
    x = rotation.code(spec)
    bounds = SearchBounds(7, diameter=500, shift_bound=100_000, node_budget=200_000)
    cert = pstar(x, bounds, stop_at=lambda n: 2 * n)
    bad = []
    for r in cert.rows:
        cells = rotation.partition_cell_count(spec, r.best_window).cell_count
        if r.best_count != 2 * r.n or cells != 2 * r.n:
            bad.append((r.n, r.best_count, cells))
    # Sampled windows never exceed the interval-partition ceiling.
    rng = np.random.default_rng(seed)
    over = 0
    for _ in range(40):
        n = int(rng.integers(2, 8))
        offs = (0,) + tuple(sorted(rng.choice(np.arange(1, 501), n - 1, replace=False).tolist()))
        cmp = rotation.oracle_language_bound(spec, offs, 100_000, x)
        if not cmp.consistent or cmp.cell_count > 2 * n:
            over += 1
    detail = f"counts {cert.counts()}, cell mismatches {bad}, sampled windows over ceiling {over}/40"
    return not bad and over == 0, detail


def c6_doubling(seed: int) -> tuple[bool, str]:
    xp = witnesses.minimality_defect_code(witnesses.block_doubling(), {"0"}, 1)
    tr = witnesses.doubling_lower_bound(xp, 5)
    targets = {1: 6, 2: 16, 3: 40, 4: 96, 5: 224}
    counts = {s.k: s.count for s in tr.steps}
    literal = all(counts.get(k, -1) >= v for k, v in targets.items())
    formula = all(tr.bound_holds(k) for k in range(len(tr.steps))) and len(tr.steps) == 6
    steps = all(tr.step_inequality(k) for k in range(5))
    detail = (
        f"counts {tr.counts}; >= 6,16,40,96,224: {literal}; "
        f">= (k+2)2^(k-1) = {[s.bound for s in tr.steps]}: {formula}; step inequality: {steps}"
    )
    return literal and formula and steps, detail


def c7_morse_hedlund(seed: int) -> tuple[bool, str]:
    failed = []
    for b in catalog.nonperiodic_builtins():
        rep = morse_hedlund_check(b.make_source(), SearchBounds(5))
        if not rep.all_attained:
            failed.append((b.name, rep.skipped or rep.flags))
    n = len(catalog.nonperiodic_builtins())
    return not failed, f"{n - len(failed)}/{n} generators attain 2n for n <= 5; failures {failed}"


def c8_round_trips(seed: int) -> tuple[bool, str]:
    rng = np.random.default_rng(seed)
    mef_bad = 0
    for _ in range(10):
        spec = toeplitz.random_spec(rng)
        g = toeplitz.generate(spec, toeplitz.HolePolicy.constant(0)).prefix(10_000)
        part = toeplitz.build_mef_partition(spec)
        m = toeplitz.mef_code(part, boundary_bits={i: 0 for i in range(len(part.boundary))})
        if any(int(g[n]) != m(n) for n in range(10_000)):
            mef_bad += 1
    eng_bad = 0
    for _ in range(100):
        x = from_bits(rng.integers(0, 2, 200, dtype=np.uint8))
        n = int(rng.integers(1, 5))
        D = int(rng.integers(max(n - 1, 1), 13))
        S = 200 - D - 1
        cert = pstar(x, SearchBounds(n, diameter=D, shift_bound=S), ns=[n])
        ref, _ = exhaustive_pstar(x, n, D, S)
        if cert.rows[0].best_count != ref:
            eng_bad += 1
    return mef_bad == 0 and eng_bad == 0, f"MEF mismatches {mef_bad}/10, engine mismatches {eng_bad}/100"


def c9_nonrecurrence(seed: int) -> tuple[bool, str]:
    spec = catalog.BUILTINS["rotation-closed-golden"].make_spec()
    w = rotation.nonrecurrence_witness(spec, 100_000)
    x = rotation.code(spec)
    bits = x.prefix(100_000)
    zz = np.flatnonzero((bits[:-1] == 0) & (bits[1:] == 0))
    ok = w is not None and w.window.offsets == (0, 1) and w.confirmed and zz.tolist() == [0]
    got = f"window {w.window}, occurrences {list(w.occurrences[:5])}" if w else "no witness"
    return ok, f"{got}; '00' occurs at shifts {zz[:6].tolist()}{' ...' if zz.size > 6 else ''} ({zz.size} total)"


def c10_almost_constant(seed: int) -> tuple[bool, str]:
    x = catalog.BUILTINS["powers-plus-2"].make_source()
    chk = check_pattern_sturmian(x, SearchBounds(5))
    detail = f"verdict {chk.verdict}"
    if chk.verdict == "refuted":
        detail += f" at n={chk.refuting_n} via {chk.refuting_window} ({chk.refuting_count} patterns)"
    return chk.verdict == "consistent", detail


CRITERIA: list[tuple[int, str, Callable[[int], tuple[bool, str]], float | None]] = [
    (1, "intro example p*(2) = 4", c1_intro, 1.0),
    (2, "non-Sturmian witness {0,1,2}", c2_non_sturmian, 1.0),
    (3, "Toeplitz 3^k prefix", c3_toeplitz_prefix, None),
    (4, "three-window language", c4_three_window, 1.0),
    (5, "Sturmian ceiling 2n", c5_sturmian_ceiling, 300.0),
    (6, "doubling lower bound", c6_doubling, 120.0),
    (7, "Morse-Hedlund floor", c7_morse_hedlund, None),
    (8, "round trips", c8_round_trips, None),
    (9, "nonrecurrence witness", c9_nonrecurrence, None),
    (10, "almost-constant consistency", c10_almost_constant, None),
]


def run_criterion(number: int, seed: int = 0) -> CriterionResult:
    for num, title, fn, limit in CRITERIA:
        if num == number:
            t0 = time.perf_counter()
            try:
                passed, detail = fn(seed)
            except Exception as exc:  # reported, not fatal
                passed, detail = False, f"error: {type(exc).__name__}: {exc}"
            return CriterionResult(num, title, passed, detail, time.perf_counter() - t0, limit)
    raise KeyError(f"no criterion {number}")


def run_all(numbers=None, seed: int = 0) -> list[CriterionResult]:
    numbers = numbers or [c[0] for c in CRITERIA]
    return [run_criterion(n, seed) for n in numbers]
