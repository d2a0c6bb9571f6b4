"""Constructive witnesses: window doubling on a recurrent carrier, long-run and
gap windows for sparse sequences, and the generators they run on."""

from __future__ import annotations

import threading
import warnings
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

from .seqcore import (
    SequenceSource,
    Window,
    pattern_keys,
    subsequence,
    tau_language,
)

# -- generators ------------------------------------------------------------------


class _GrowingPrefix:
    """Thread-safe prefix built by repeatedly applying ``grow`` until long enough."""

    def __init__(self, seed: np.ndarray, grow: Callable[[np.ndarray, int], np.ndarray]):
        self.bits = seed
        self.step = 0
        self.grow = grow
        self.lock = threading.Lock()

    def upto(self, b: int) -> np.ndarray:
        if self.bits.size < b:
            with self.lock:
                while self.bits.size < b:
                    self.step += 1
                    self.bits = self.grow(self.bits, self.step)
        return self.bits


def block_doubling() -> SequenceSource:
    """Limit of w_{k+1} = w_k 0^k w_k with w_0 = 1: 11 0 11 00 11011 000 ...

    Every prefix recurs, and 0-blocks grow without bound, so the sequence is
    recurrent but not uniformly recurrent.
    """
    state = _GrowingPrefix(
        np.ones(1, dtype=np.uint8),
        lambda w, k: np.concatenate([w, np.zeros(k - 1, dtype=np.uint8), w]),
    )

    def bulk(a: int, b: int) -> np.ndarray:
        return state.upto(b)[a:b].copy()

    return SequenceSource(bulk=bulk, kind="block-doubling", meta={"generator": "block-doubling"})


def indicator(term: Callable[[int], int], *, start: int = 0, complement: bool = False, name: str = "custom") -> SequenceSource:
    """Indicator of {term(k) : k >= start}; ``term`` must be strictly increasing."""
    lock = threading.Lock()
    terms: list[int] = []
    k_next = [start]

    def ensure(b: int) -> None:
        with lock:
            while not terms or terms[-1] < b:
                v = int(term(k_next[0]))
                if terms and v <= terms[-1]:
                    raise ValueError(f"terms must increase strictly: s_{k_next[0]} = {v} after {terms[-1]}")
                if v < 0:
                    raise ValueError("positions must be non-negative")
                terms.append(v)
                k_next[0] += 1

    def bulk(a: int, b: int) -> np.ndarray:
        ensure(b)
        out = np.zeros(b - a, dtype=np.uint8)
        pos = np.asarray(terms, dtype=np.int64)
        pos = pos[(pos >= a) & (pos < b)] - a
        out[pos] = 1
        return out ^ 1 if complement else out

    return SequenceSource(
        bulk=bulk,
        kind="almost-constant",
        meta={"generator": name, "complement": complement},
    )


def finite_complement(missing: Iterable[int]) -> SequenceSource:
    """Indicator of N_0 minus a finite set."""
    miss = sorted(set(int(m) for m in missing))
    prefix = "".join("0" if i in miss else "1" for i in range((miss[-1] + 1) if miss else 0))
    from .seqcore import eventually_constant

    return eventually_constant(prefix, 1, kind="almost-constant", meta={"generator": "finite-complement", "missing": miss})


def powers_plus(base: int = 2) -> SequenceSource:
    """Indicator of s_k = base^k + k, k >= 0."""
    return indicator(lambda k: base**k + k, name=f"{base}^k+k")


def powers(base: int = 2, start: int = 0) -> SequenceSource:
    return indicator(lambda k: base**k, start=start, name=f"{base}^k")


def squares() -> SequenceSource:
    return indicator(lambda k: k * k, name="squares")


def residue_subsequence(x: SequenceSource, modulus: int, residue: int) -> SequenceSource:
    """n -> x(residue + modulus * n)."""
    if not 0 <= residue < modulus:
        raise ValueError("residue must lie in 0..modulus-1")
    return subsequence(x, modulus, residue)


def arithmetic_subsequences(x: SequenceSource, modulus: int) -> list[SequenceSource]:
    return [residue_subsequence(x, modulus, i) for i in range(modulus)]


# -- sliding block code and window doubling -----------------------------------------


def minimality_defect_code(
    x: SequenceSource,
    y_language: Iterable[str],
    N: int,
    *,
    horizon: int = 100_000,
) -> SequenceSource:
    """x'(i) = 1 iff x([i, i+N)) lies in ``y_language``."""
    words = {str(w) for w in y_language}
    if not words:
        raise ValueError("y_language must be nonempty")
    if any(len(w) != N or set(w) - {"0", "1"} for w in words):
        raise ValueError(f"y_language must contain binary words of length {N}")
    window = Window.interval(N)
    keyset = np.array(sorted(int(w, 2) for w in words), dtype=np.uint64)
    if N > 63:
        raise ValueError("block length above 63 is not supported")
    if horizon > N:
        seen = tau_language(x, window, horizon - N).words
        if seen <= words:
            warnings.warn(
                "y_language covers every observed N-word; the code is constant 1 on the horizon",
                RuntimeWarning,
                stacklevel=2,
            )

    def bulk(a: int, b: int) -> np.ndarray:
        bits = x.prefix(b + N - 1)
        keys = pattern_keys(bits[a:], window.offsets, b - a - 1)
        return np.isin(keys, keyset).astype(np.uint8)

    return SequenceSource(bulk=bulk, kind="custom", meta={"generator": "sliding-block", "N": N, "y_language": sorted(words)})


@dataclass
class DoublingStep:
    k: int
    window: Window
    count: int
    bound: int  # (k+2) 2^(k-1), rounded up
    K: Optional[int]  # offset used to build the next window
    M: Optional[int]

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "size": self.window.size,
            "diameter": self.window.diameter,
            "count": self.count,
            "bound": self.bound,
            "K": self.K,
            "M": self.M,
            "window": list(self.window.offsets),
        }


@dataclass
class DoublingTrace:
    steps: list[DoublingStep]
    horizon: int
    cover: int
    failure: Optional[str] = None

    @property
    def counts(self) -> list[int]:
        return [s.count for s in self.steps]

    def bound_holds(self, k: int) -> bool:
        return self.steps[k].count >= self.steps[k].bound

    def step_inequality(self, k: int) -> bool:
        """count_{k+1} >= 2 count_k + 2^k - 1 (False when step k+1 is missing)."""
        if k + 1 >= len(self.steps):
            return False
        return self.steps[k + 1].count >= 2 * self.steps[k].count + 2**k - 1

    def certified_through(self) -> int:
        """Largest k such that the closed-form and step checks hold for 0..k."""
        last = -1
        for i, st in enumerate(self.steps):
            if st.count < st.bound or (i > 0 and not self.step_inequality(i - 1)):
                break
            last = i
        return last

    def to_dict(self) -> dict:
        return {
            "horizon": self.horizon,
            "cover": self.cover,
            "failure": self.failure,
            "certified_through": self.certified_through(),
            "steps": [s.to_dict() for s in self.steps],
        }


def doubling_bound(k: int) -> int:
    """ceil((k+2) 2^(k-1))."""
    return (k + 2) * 2 ** (k - 1) if k >= 1 else 1


def doubling_lower_bound(
    xprime: SequenceSource,
    k_max: int,
    horizon: int = 4_000_000,
    cover: int = 2048,
) -> DoublingTrace:
    """tau_0 = {0}, tau_{k+1} = tau_k u (K + tau_k) with K > max tau_k.

    K is the first recurrence of the prefix x'[0 : M+1], where M covers a
    witness of every tau_k-word first seen at a shift <= ``cover``; then
    each such word w yields the word ww for tau_{k+1}. Counts are taken over
    all shifts that fit in the horizon.
    """
    bits = xprime.prefix(horizon)
    raw = bits.tobytes()
    tau = Window((0,))
    steps: list[DoublingStep] = []
    for k in range(k_max + 1):
        S = horizon - tau.diameter - 1
        if S < 0:
            return DoublingTrace(steps, horizon, cover, f"step {k}: window diameter exceeds horizon")
        rep = tau_language(xprime, tau, S)
        step = DoublingStep(k, tau, rep.count, doubling_bound(k), None, None)
        steps.append(step)
        if k == k_max:
            break
        M = max(p.witness_shift for p in rep.patterns if p.witness_shift <= cover) + tau.diameter
        K = raw.find(raw[: M + 1], tau.diameter + 1)
        if K < 0:
            return DoublingTrace(steps, horizon, cover, f"step {k}: prefix of length {M + 1} does not recur within horizon")
        step.K, step.M = K, M
        tau = Window(tau.offsets + tuple(K + t for t in tau.offsets))
    return DoublingTrace(steps, horizon, cover)


# -- long blocks and gap windows --------------------------------------------------------


def runs(bits: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(starts, lengths, letters) of maximal constant runs."""
    if bits.size == 0:
        return (np.zeros(0, dtype=np.int64),) * 3
    change = np.flatnonzero(np.diff(bits.astype(np.int8))) + 1
    starts = np.concatenate([[0], change])
    ends = np.concatenate([change, [bits.size]])
    return starts, ends - starts, bits[starts]


@dataclass(frozen=True)
class LongBlocksWitness:
    window: Window
    n: int
    count: int
    run_length: int
    letter: int
    threshold: int
    horizon: int

    @property
    def verified(self) -> bool:
        return self.count >= 2 * self.n + 1

    def to_dict(self) -> dict:
        return {
            "window": list(self.window.offsets),
            "n": self.n,
            "count": self.count,
            "run_length": self.run_length,
            "letter": self.letter,
            "threshold": self.threshold,
            "horizon": self.horizon,
            "verified": self.verified,
        }


def long_blocks_witness(x: SequenceSource, horizon: int = 100_000) -> Optional[LongBlocksWitness]:
    """Interval window with at least 2n + 1 words when both letters have long runs.

    With 0-runs and 1-runs of length >= n and an interior run c^l bounded by
    the other letter, l = n - 2, the n-words contain c^n, d^n, the 2(n-1)
    one-switch words and d c^l d.
    """
    bits = x.prefix(horizon)
    starts, lengths, letters = runs(bits)
    if letters.size < 3:
        return None
    threshold = min(int(lengths[letters == 0].max()), int(lengths[letters == 1].max()))
    interior = np.ones(lengths.size, dtype=bool)
    interior[0] = interior[-1] = False
    cands = [
        (int(ln), int(c))
        for ln, c, ok in zip(lengths, letters, interior)
        if ok and ln + 2 <= threshold
    ]
    if not cands:
        return None
    ell, letter = min(cands)
    n = ell + 2
    window = Window.interval(n)
    count = tau_language(x, window, horizon - n).count
    return LongBlocksWitness(window, n, count, ell, letter, threshold, horizon)


@dataclass(frozen=True)
class GapProfile:
    positions: tuple[int, ...]

    def __post_init__(self):
        if any(b <= a for a, b in zip(self.positions, self.positions[1:])):
            raise ValueError("positions must increase strictly")

    @classmethod
    def of(cls, x: SequenceSource, horizon: int) -> "GapProfile":
        return cls(tuple(int(i) for i in np.flatnonzero(x.prefix(horizon))))

    @property
    def gaps(self) -> tuple[int, ...]:
        return tuple(b - a for a, b in zip(self.positions, self.positions[1:]))


@dataclass(frozen=True)
class GapWindowWitness:
    tau: Window
    index: int  # 1-based n with g_n < g_{n+1}
    shifts: tuple[int, int]
    words_at_shifts: tuple[str, str]
    words_found: frozenset
    has_010: bool
    horizon: int

    def to_dict(self) -> dict:
        return {
            "tau": list(self.tau.offsets),
            "n": self.index,
            "shifts": list(self.shifts),
            "words_at_shifts": list(self.words_at_shifts),
            "words_found": sorted(self.words_found),
            "has_010": self.has_010,
            "horizon": self.horizon,
        }


def gap_window_witness(x_sparse: SequenceSource, horizon: int = 100_000) -> Optional[GapWindowWitness]:
    """tau = {0, g_n, g_{n+1}} at the first gap increase; reads 110 at s_n and 101 at s_{n+1}."""
    prof = GapProfile.of(x_sparse, horizon)
    g = prof.gaps
    s = prof.positions
    for i in range(len(g) - 1):
        if g[i] < g[i + 1]:
            tau = Window((0, g[i], g[i + 1]))
            S = horizon - tau.diameter - 1
            if s[i + 1] > S:
                return None
            rep = tau_language(x_sparse, tau, S)
            read = tuple("".join(str(x_sparse(m + t)) for t in tau.offsets) for m in (s[i], s[i + 1]))
            if not set(read) <= rep.words:
                raise AssertionError("witness words not confirmed by tau_language")
            return GapWindowWitness(tau, i + 1, (s[i], s[i + 1]), read, frozenset(rep.words), "010" in rep.words, horizon)
    return None


def banach_density_estimate(positions, N_list: Sequence[int], horizon: int) -> dict[int, float]:
    """max_M |S n [M, M+N)| / N over windows inside [0, horizon)."""
    if isinstance(positions, SequenceSource):
        ind = positions.prefix(horizon).astype(np.int64)
    else:
        ind = np.zeros(horizon, dtype=np.int64)
        pos = np.asarray(sorted(positions), dtype=np.int64)
        ind[pos[(pos >= 0) & (pos < horizon)]] = 1
    cs = np.concatenate([[0], np.cumsum(ind)])
    out = {}
    for N in N_list:
        if not 1 <= N <= horizon:
            raise ValueError(f"window length {N} outside 1..{horizon}")
        out[N] = float((cs[N:] - cs[:-N]).max()) / N
    return out
