"""Search for maximal pattern complexity lower bounds.

For each n the engine runs a best-first branch and bound over canonical
windows {0 < t_1 < ... < t_{n-1} <= D}, scoring a window by the number of
classes in its shift partition over shifts 0..S. A partial window with c
classes and r offsets still to place can reach at most c * 2^r classes; that
is the only bound used for pruning.
"""

from __future__ import annotations

import heapq
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Mapping, Optional, Sequence, Union

import numpy as np

from .seqcore import SequenceSource, Window, bitset, split, split_count, tau_language

DEFAULT_DIAMETER = 64
DEFAULT_SHIFTS = 20_000
DEFAULT_BUDGET = 100_000


@dataclass(frozen=True)
class SearchBounds:
    max_n: int
    diameter: int = DEFAULT_DIAMETER
    shift_bound: int = DEFAULT_SHIFTS
    node_budget: int = DEFAULT_BUDGET

    def __post_init__(self):
        if self.max_n < 1:
            raise ValueError("max_n must be at least 1")
        if self.diameter < self.max_n - 1:
            raise ValueError(f"diameter {self.diameter} cannot hold {self.max_n} distinct offsets")
        if self.shift_bound < 0 or self.node_budget < 1:
            raise ValueError("shift bound must be >= 0 and node budget >= 1")

    @property
    def span(self) -> int:
        """Number of bits read: S + D + 1."""
        return self.shift_bound + self.diameter + 1

    def to_dict(self) -> dict:
        return {"max_n": self.max_n, "D": self.diameter, "S": self.shift_bound, "node_budget": self.node_budget}


@dataclass
class CertificateRow:
    n: int
    best_window: Window
    best_count: int
    explored_nodes: int
    status: str  # exhaustive | cap_reached | budget_exhausted
    saturated: bool
    adjusted: bool = False

    @property
    def verdict(self) -> str:
        return "saturated_lower_bound" if self.saturated else "lower_bound"

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "pstar_lb": self.best_count,
            "window": list(self.best_window.offsets),
            "verdict": self.verdict,
            "status": self.status,
            "explored_nodes": self.explored_nodes,
            "adjusted": self.adjusted,
        }


@dataclass
class ComplexityCertificate:
    bounds: SearchBounds
    rows: list[CertificateRow]
    pruning: bool = True

    def row(self, n: int) -> CertificateRow:
        return self.rows[n - 1]

    def counts(self) -> list[int]:
        return [r.best_count for r in self.rows]

    def to_dict(self) -> dict:
        return {"bounds": self.bounds.to_dict(), "pruning": self.pruning, "rows": [r.to_dict() for r in self.rows]}

    def table(self) -> str:
        head = ("n", "pstar_lb", "verdict", "status", "nodes", "window")
        body = [
            (str(r.n), str(r.best_count), r.verdict, r.status, str(r.explored_nodes), str(r.best_window))
            for r in self.rows
        ]
        return render_table(head, body) + f"\nbounds: D={self.bounds.diameter} S={self.bounds.shift_bound} budget={self.bounds.node_budget}"


def render_table(head: Sequence[str], body: Sequence[Sequence[str]]) -> str:
    widths = [max(len(h), *(len(row[i]) for row in body)) if body else len(h) for i, h in enumerate(head)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(head, widths))]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(c.ljust(w) for c, w in zip(row, widths)) for row in body]
    return "\n".join(lines)


class _Columns:
    def __init__(self, bits: np.ndarray, S: int):
        self.bits = bits
        self.S = S
        self.full = (1 << (S + 1)) - 1
        self._cache: dict[int, int] = {}

    def __getitem__(self, t: int) -> int:
        col = self._cache.get(t)
        if col is None:
            col = bitset(self.bits[t : t + self.S + 1])
            self._cache[t] = col
        return col

    def partition(self, offsets: Sequence[int]) -> tuple[int, ...]:
        c0 = self[0]
        classes = tuple(c for c in (c0, self.full & ~c0) if c)
        for t in offsets[1:]:
            classes = split(classes, self[t])
        return classes


def _search(
    cols: _Columns, n: int, D: int, budget: int, prune: bool, stop_at: Optional[int]
) -> tuple[tuple[int, ...], int, int, str]:
    """Best window of size n: (offsets, count, explored, status)."""
    root = cols.partition((0,))
    cap = min(2**n, cols.S + 1)
    if stop_at is not None:
        cap = min(cap, stop_at)
    if n == 1:
        return (0,), len(root), 1, "cap_reached" if len(root) >= cap else "exhaustive"
    best_count, best = 0, None
    explored = 0
    heap = [(-len(root), 0, (0,))]
    while heap:
        negc, diam, offs = heapq.heappop(heap)
        rem = n - len(offs)
        if prune and -negc * (1 << rem) <= best_count:
            continue
        classes = cols.partition(offs)
        for t in range(diam + 1, D - rem + 2):
            if explored >= budget:
                return best, best_count, explored, "budget_exhausted"
            explored += 1
            cc = split_count(classes, cols[t])
            child = offs + (t,)
            if rem == 1:
                if cc > best_count:
                    best_count, best = cc, child
                    if best_count >= cap:
                        return best, best_count, explored, "cap_reached"
            elif not prune or cc * (1 << (rem - 1)) > best_count:
                heapq.heappush(heap, (-cc, t, child))
    return best, best_count, explored, "exhaustive"


def _search_job(args):
    bits, S, n, D, budget, prune, stop_at = args
    return _search(_Columns(bits, S), n, D, budget, prune, stop_at)


def _resolve_stop(stop_at, n: int) -> Optional[int]:
    if stop_at is None:
        return None
    if callable(stop_at):
        return stop_at(n)
    if isinstance(stop_at, Mapping):
        return stop_at.get(n)
    return int(stop_at)


def _monotone_pass(rows: list[CertificateRow], cols: _Columns, D: int) -> None:
    """Repair best(n) <= best(n+1) <= 2 best(n) using single-offset moves."""
    changed = True
    while changed:
        changed = False
        for i in range(len(rows) - 1):
            lo, hi = rows[i], rows[i + 1]
            if hi.best_count < lo.best_count:
                win, cnt = _best_insert(lo.best_window, cols, D)
                if cnt > hi.best_count:
                    rows[i + 1] = CertificateRow(hi.n, win, cnt, hi.explored_nodes, hi.status, False, True)
                    changed = True
            if hi.best_count > 2 * lo.best_count:
                win, cnt = _best_drop(hi.best_window, cols)
                if cnt > lo.best_count:
                    rows[i] = CertificateRow(lo.n, win, cnt, lo.explored_nodes, lo.status, False, True)
                    changed = True


def _best_insert(win: Window, cols: _Columns, D: int) -> tuple[Window, int]:
    classes = cols.partition(win.offsets)
    best = (None, -1)
    for t in range(1, D + 1):
        if t in win.offsets:
            continue
        cc = split_count(classes, cols[t])
        if cc > best[1]:
            best = (t, cc)
    return Window(tuple(sorted(win.offsets + (best[0],)))), best[1]


def _best_drop(win: Window, cols: _Columns) -> tuple[Window, int]:
    best = (None, -1)
    for t in win.offsets[1:]:
        offs = tuple(o for o in win.offsets if o != t)
        cc = len(cols.partition(offs))
        if cc > best[1]:
            best = (offs, cc)
    return Window(best[0]), best[1]


def pstar(
    x: SequenceSource,
    bounds: SearchBounds,
    *,
    prune: bool = True,
    stop_at: Union[None, int, Mapping[int, int], Callable[[int], int]] = None,
    workers: int = 1,
    ns: Optional[Sequence[int]] = None,
) -> ComplexityCertificate:
    """Lower bounds for p*_x(n), n = 1..max_n, within ``bounds``.

    ``stop_at`` gives a per-n count at which the search may stop (a known
    ceiling, or 2n + 1 when only a refutation is wanted).
    """
    S, D = bounds.shift_bound, bounds.diameter
    x.check_readable(S + D)
    bits = x.prefix(bounds.span)
    ns = list(ns) if ns is not None else list(range(1, bounds.max_n + 1))
    jobs = [(bits, S, n, D, bounds.node_budget, prune, _resolve_stop(stop_at, n)) for n in ns]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=min(workers, len(jobs))) as pool:
            results = list(pool.map(_search_job, jobs))
    else:
        cols = _Columns(bits, S)
        results = [_search(cols, n, D, bounds.node_budget, prune, job[-1]) for n, job in zip(ns, jobs)]
    cols = _Columns(bits, S)
    rows = []
    for n, (offs, count, explored, status) in zip(ns, results):
        rows.append(CertificateRow(n, Window(offs), count, explored, status, False))
    if ns == list(range(1, len(ns) + 1)):
        _monotone_pass(rows, cols, D)
    for r in rows:
        rep = tau_language(x, r.best_window, S)
        if rep.count != r.best_count:
            raise AssertionError(f"engine count {r.best_count} disagrees with tau_language {rep.count} on {r.best_window}")
        r.saturated = rep.saturated
    return ComplexityCertificate(bounds, rows, prune)


def exhaustive_pstar(x: SequenceSource, n: int, D: int, S: int) -> tuple[int, Window]:
    """Reference maximum by enumerating every canonical window (small D only)."""
    from itertools import combinations

    best, arg = 0, None
    for rest in combinations(range(1, D + 1), n - 1):
        w = Window((0,) + rest)
        c = tau_language(x, w, S).count
        if c > best:
            best, arg = c, w
    return best, arg


# -- periodicity and verdicts --------------------------------------------------


@dataclass(frozen=True)
class PeriodicityResult:
    periodic: bool
    period: Optional[int] = None
    preperiod: Optional[int] = None
    horizon: int = 0

    def to_dict(self) -> dict:
        return asdict(self)


def periodicity_scan(x: SequenceSource, horizon: int) -> PeriodicityResult:
    """Least period t with x(n) = x(n+t) for s < n <= horizon - t.

    s is the last observed mismatch (0 if none). The relation only counts as
    established when t <= horizon/16, s < horizon/2, and the clean stretch
    after s spans at least 8 periods; Sturmian and Toeplitz sequences agree
    with their shift by a convergent denominator or a level period over
    stretches of a few periods, and must not be flagged.
    """
    bits = x.prefix(horizon)
    H = bits.size
    for t in range(1, H // 16 + 1):
        a, b = bits[: H - t], bits[t:]
        tail = max(H // 2, a.size - 1024)
        if (a[tail:] != b[tail:]).any():
            continue
        mism = np.flatnonzero(a != b)
        s = int(mism[-1]) if mism.size else 0
        if s < H // 2 and (H - t) - s >= 8 * t:
            return PeriodicityResult(True, t, s, H)
    return PeriodicityResult(False, horizon=H)


@dataclass
class SturmianCheck:
    verdict: str  # consistent | refuted
    refuting_n: Optional[int]
    refuting_window: Optional[Window]
    refuting_count: Optional[int]
    eventually_periodic: bool
    certificate: ComplexityCertificate

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "refuting_n": self.refuting_n,
            "refuting_window": list(self.refuting_window.offsets) if self.refuting_window else None,
            "refuting_count": self.refuting_count,
            "eventually_periodic": self.eventually_periodic,
            "bounds": self.certificate.bounds.to_dict(),
        }


def check_pattern_sturmian(x: SequenceSource, bounds: SearchBounds, *, workers: int = 1) -> SturmianCheck:
    """Refuted with a window when some n has more than 2n patterns, else consistent within bounds."""
    periodic = periodicity_scan(x, bounds.span).periodic
    cert = pstar(x, bounds, stop_at=lambda n: 2 * n + 1, workers=workers)
    for r in cert.rows:
        if r.best_count > 2 * r.n:
            return SturmianCheck("refuted", r.n, r.best_window, r.best_count, periodic, cert)
    return SturmianCheck("consistent", None, None, None, periodic, cert)


@dataclass
class MorseHedlundReport:
    skipped: Optional[str]
    flags: dict[int, str] = field(default_factory=dict)  # attained | inconclusive
    certificate: Optional[ComplexityCertificate] = None

    @property
    def all_attained(self) -> bool:
        return self.skipped is None and all(v == "attained" for v in self.flags.values())

    def to_dict(self) -> dict:
        return {"skipped": self.skipped, "flags": {str(k): v for k, v in self.flags.items()}}


def morse_hedlund_check(x: SequenceSource, bounds: SearchBounds, *, workers: int = 1) -> MorseHedlundReport:
    """Per-n flag whether the search reaches 2n patterns."""
    scan = periodicity_scan(x, bounds.span)
    if scan.periodic:
        return MorseHedlundReport(f"eventually periodic (t={scan.period}, s={scan.preperiod})")
    cert = pstar(x, bounds, stop_at=lambda n: 2 * n, workers=workers)
    flags = {r.n: "attained" if r.best_count >= 2 * r.n else "inconclusive" for r in cert.rows}
    return MorseHedlundReport(None, flags, cert)


def default_workers() -> int:
    return max(1, os.cpu_count() or 1)
