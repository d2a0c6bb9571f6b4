"""Sequences, windows, tau-languages and the shift-partition engine.

Everything downstream consumes a :class:`SequenceSource`: a random-access
rule ``n -> x(n)`` over ``{0, 1}`` together with a materialization cache.
Language computations read a finite prefix of the source and are therefore
lower bounds for the language over all of N_0.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Sequence

import numpy as np

KINDS = (
    "file-prefix",
    "rotation-coding",
    "toeplitz",
    "almost-constant",
    "block-doubling",
    "custom",
)

# Stabilization rule for LanguageReport.saturated.
SATURATION_FRACTION = 0.25
SATURATION_MIN_SPAN = 1000


class SequenceRangeError(IndexError):
    """Raised when a computation needs a position the source cannot produce."""

    def __init__(self, index: int, valid_up_to: int):
        super().__init__(
            f"position {index} is unreadable (source valid up to {valid_up_to})"
        )
        self.index = index
        self.valid_up_to = valid_up_to


class SequenceSource:
    """Random-access binary sequence with a lazily extended prefix cache.

    ``rule`` maps a position to a bit. ``bulk``, when given, maps a half-open
    range ``(start, stop)`` to a uint8 array and is used for materialization.
    ``valid_up_to`` is ``None`` for unbounded generators.
    """

    def __init__(
        self,
        rule: Optional[Callable[[int], int]] = None,
        *,
        bulk: Optional[Callable[[int, int], np.ndarray]] = None,
        valid_up_to: Optional[int] = None,
        kind: str = "custom",
        meta: Optional[dict] = None,
    ):
        if rule is None and bulk is None:
            raise ValueError("a sequence source needs a rule or a bulk generator")
        if kind not in KINDS:
            raise ValueError(f"unknown sequence kind {kind!r}")
        self._rule = rule
        self._bulk = bulk
        self.valid_up_to = valid_up_to
        self.kind = kind
        self.meta = dict(meta or {})
        self._cache = np.zeros(0, dtype=np.uint8)
        self._lock = threading.Lock()

    def __repr__(self) -> str:
        bound = "unbounded" if self.valid_up_to is None else self.valid_up_to
        return f"SequenceSource(kind={self.kind!r}, valid_up_to={bound})"

    @property
    def unbounded(self) -> bool:
        return self.valid_up_to is None

    def check_readable(self, last_index: int) -> None:
        if last_index < 0:
            return
        if self.valid_up_to is not None and last_index >= self.valid_up_to:
            raise SequenceRangeError(self.valid_up_to, self.valid_up_to)

    def eval(self, n: int) -> int:
        if n < 0:
            raise SequenceRangeError(n, 0 if self.valid_up_to is None else self.valid_up_to)
        self.check_readable(n)
        if n < len(self._cache):
            return int(self._cache[n])
        if self._rule is not None:
            return int(self._rule(n))
        return int(self.prefix(n + 1)[n])

    def __call__(self, n: int) -> int:
        return self.eval(n)

    def prefix(self, length: int) -> np.ndarray:
        """First ``length`` bits as a read-only uint8 array."""
        self.check_readable(length - 1)
        if length > len(self._cache):
            with self._lock:
                if length > len(self._cache):
                    target = max(length, 2 * len(self._cache))
                    if self.valid_up_to is not None:
                        target = min(target, self.valid_up_to)
                    start = len(self._cache)
                    fresh = self._materialize(start, target)
                    cache = np.concatenate([self._cache, fresh])
                    cache.setflags(write=False)
                    self._cache = cache
        return self._cache[:length]

    def _materialize(self, start: int, stop: int) -> np.ndarray:
        if self._bulk is not None:
            out = np.asarray(self._bulk(start, stop), dtype=np.uint8)
        else:
            out = np.fromiter(
                (self._rule(n) for n in range(start, stop)), dtype=np.uint8, count=stop - start
            )
        if out.shape != (stop - start,):
            raise ValueError("bulk generator returned the wrong number of bits")
        if out.size and out.max() > 1:
            raise ValueError("sequence values must lie in {0, 1}")
        return out

    def word(self, start: int, stop: int) -> str:
        return "".join(map(str, self.prefix(stop)[start:stop].tolist()))


def from_bits(bits: Iterable[int] | str, *, kind: str = "file-prefix", meta=None) -> SequenceSource:
    """A finite prefix source; positions past the prefix are unreadable."""
    if isinstance(bits, str):
        arr = np.frombuffer(bits.encode("ascii"), dtype=np.uint8) - ord("0")
    else:
        arr = np.asarray(list(bits), dtype=np.uint8)
    if arr.size and arr.max() > 1:
        raise ValueError("bit prefix may only contain 0 and 1")
    arr = arr.copy()
    arr.setflags(write=False)
    return SequenceSource(
        bulk=lambda a, b: arr[a:b], valid_up_to=int(arr.size), kind=kind, meta=meta
    )


def eventually_constant(prefix: str, tail_bit: int, *, kind: str = "custom", meta=None) -> SequenceSource:
    """``prefix`` followed by ``tail_bit`` forever."""
    head = np.frombuffer(prefix.encode("ascii"), dtype=np.uint8) - ord("0")

    def bulk(a, b):
        out = np.full(b - a, tail_bit, dtype=np.uint8)
        lo, hi = a, min(b, head.size)
        if lo < hi:
            out[: hi - lo] = head[lo:hi]
        return out

    return SequenceSource(bulk=bulk, kind=kind, meta=dict(meta or {}, prefix=prefix, tail=tail_bit))


def constant(bit: int) -> SequenceSource:
    return SequenceSource(
        bulk=lambda a, b: np.full(b - a, bit, dtype=np.uint8),
        kind="custom",
        meta={"generator": "constant", "bit": bit},
    )


def periodic(word: str, *, preperiod: str = "") -> SequenceSource:
    """``preperiod`` followed by ``word`` repeated forever."""
    if not word:
        raise ValueError("period word must be nonempty")
    head = np.frombuffer(preperiod.encode("ascii"), dtype=np.uint8) - ord("0")
    body = np.frombuffer(word.encode("ascii"), dtype=np.uint8) - ord("0")

    def bulk(a, b):
        idx = np.arange(a, b)
        out = body[(idx - head.size) % body.size]
        pre = idx < head.size
        out[pre] = head[idx[pre]]
        return out.astype(np.uint8)

    return SequenceSource(
        bulk=bulk, kind="custom", meta={"generator": "periodic", "word": word, "preperiod": preperiod}
    )


def shifted(x: SequenceSource, t: int) -> SequenceSource:
    """The shift sigma^t x."""
    if t < 0:
        raise ValueError("shift must be non-negative")
    valid = None if x.valid_up_to is None else max(0, x.valid_up_to - t)
    return SequenceSource(
        bulk=lambda a, b: x.prefix(b + t)[a + t : b + t],
        valid_up_to=valid,
        kind=x.kind,
        meta=dict(x.meta, shift=x.meta.get("shift", 0) + t),
    )


def subsequence(x: SequenceSource, step: int, start: int = 0) -> SequenceSource:
    """The arithmetic subsequence n -> x(start + step * n)."""
    if step < 1 or start < 0:
        raise ValueError("need step >= 1 and start >= 0")
    valid = None
    if x.valid_up_to is not None:
        valid = max(0, -(-(x.valid_up_to - start) // step))

    def bulk(a, b):
        last = start + step * (b - 1)
        return x.prefix(last + 1)[start + step * a : last + 1 : step]

    return SequenceSource(
        bulk=bulk, valid_up_to=valid, kind=x.kind, meta=dict(x.meta, subsequence=[start, step])
    )


@dataclass(frozen=True)
class Window:
    """Canonical window: strictly increasing non-negative offsets starting at 0."""

    offsets: tuple[int, ...]

    def __post_init__(self):
        offs = tuple(int(t) for t in self.offsets)
        object.__setattr__(self, "offsets", offs)
        if not offs:
            raise ValueError("empty window")
        if offs[0] != 0:
            raise ValueError(f"window must start at 0, got {offs}")
        if any(b <= a for a, b in zip(offs, offs[1:])):
            raise ValueError(f"window offsets must be strictly increasing, got {offs}")

    @classmethod
    def of(cls, offsets: Iterable[int]) -> "Window":
        """Canonical form of an arbitrary finite offset set (sorted, translated to 0)."""
        offs = sorted(set(int(t) for t in offsets))
        if not offs:
            raise ValueError("empty window")
        return cls(tuple(t - offs[0] for t in offs))

    @classmethod
    def interval(cls, n: int) -> "Window":
        if n < 1:
            raise ValueError("window size must be at least 1")
        return cls(tuple(range(n)))

    @property
    def size(self) -> int:
        return len(self.offsets)

    @property
    def diameter(self) -> int:
        return self.offsets[-1]

    def extend(self, offset: int) -> "Window":
        return Window(self.offsets + (offset,))

    def to_dict(self) -> dict:
        return {"offsets": list(self.offsets)}

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.offsets)) + "}"


@dataclass(frozen=True)
class Pattern:
    bits: str
    witness_shift: int


@dataclass(frozen=True)
class LanguageReport:
    window: Window
    shift_bound: int
    patterns: tuple[Pattern, ...]
    saturated: bool

    @property
    def count(self) -> int:
        return len(self.patterns)

    @property
    def words(self) -> frozenset[str]:
        return frozenset(p.bits for p in self.patterns)

    def witness(self, word: str) -> Optional[int]:
        for p in self.patterns:
            if p.bits == word:
                return p.witness_shift
        return None

    def to_dict(self) -> dict:
        return {
            "window": self.window.to_dict(),
            "shift_bound": self.shift_bound,
            "patterns": [{"bits": p.bits, "witness_shift": p.witness_shift} for p in self.patterns],
            "class_count": self.count,
            "saturated": self.saturated,
        }


def _coerce_window(tau) -> Window:
    return tau if isinstance(tau, Window) else Window(tuple(tau))


def _read_prefix(x: SequenceSource, tau: Window, S: int) -> np.ndarray:
    if S < 0:
        raise ValueError("shift bound must be non-negative")
    return x.prefix(S + tau.diameter + 1)


def is_saturated(first_witnesses: Sequence[int] | np.ndarray, S: int) -> bool:
    """True when no pattern first appeared in the final stabilization span."""
    total = S + 1
    span = max(math.ceil(SATURATION_FRACTION * total), SATURATION_MIN_SPAN)
    if span > total:
        return False
    return int(np.max(first_witnesses)) < total - span


def pattern_keys(bits: np.ndarray, offsets: Sequence[int], S: int) -> np.ndarray:
    """Per-shift pattern keys for shifts 0..S (uint64 when the window fits, else bytes)."""
    n = len(offsets)
    if n <= 63:
        keys = np.zeros(S + 1, dtype=np.uint64)
        for t in offsets:
            keys <<= np.uint64(1)
            keys |= bits[t : t + S + 1].astype(np.uint64)
        return keys
    cols = np.stack([bits[t : t + S + 1] for t in offsets], axis=1)
    packed = np.packbits(cols, axis=1)
    return packed.view(np.dtype((np.void, packed.shape[1]))).ravel()


def _key_to_word(key, n: int) -> str:
    if isinstance(key, (np.integer, int)):
        return format(int(key), f"0{n}b")
    raw = np.frombuffer(bytes(key), dtype=np.uint8)
    return "".join(map(str, np.unpackbits(raw)[:n].tolist()))


def tau_language(x: SequenceSource, tau, S: int) -> LanguageReport:
    """Patterns x(m + tau) for 0 <= m <= S, each with its least witness shift."""
    tau = _coerce_window(tau)
    bits = _read_prefix(x, tau, S)
    keys = pattern_keys(bits, tau.offsets, S)
    uniq, first = np.unique(keys, return_index=True)
    order = np.argsort(first, kind="stable")
    patterns = tuple(
        Pattern(_key_to_word(uniq[i], tau.size), int(first[i])) for i in order
    )
    return LanguageReport(tau, S, patterns, is_saturated(first, S))


def word_complexity(x: SequenceSource, n: int, S: int) -> int:
    """Number of distinct length-n factors starting at shifts 0..S."""
    if n < 1:
        raise ValueError("complexity is defined for n >= 1")
    return tau_language(x, Window.interval(n), S).count


# -- bit-vector partition engine --------------------------------------------


def bitset(bits: np.ndarray) -> int:
    """Little-endian integer whose bit i is ``bits[i]``."""
    return int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little")


@dataclass(frozen=True)
class ShiftPartition:
    """Shifts 0..shift_bound grouped by their window pattern.

    Each class is an int bit-vector over shift positions.
    """

    window: Window
    shift_bound: int
    classes: tuple[int, ...]
    source: SequenceSource = field(repr=False, compare=False)

    @property
    def class_count(self) -> int:
        return len(self.classes)

    @classmethod
    def initial(cls, x: SequenceSource, S: int) -> "ShiftPartition":
        col = column(x, 0, S)
        full = (1 << (S + 1)) - 1
        classes = tuple(c for c in (col, full & ~col) if c)
        return cls(Window((0,)), S, classes, x)

    def members(self) -> list[list[int]]:
        out = []
        for c in self.classes:
            idx, m = [], c
            while m:
                low = m & -m
                idx.append(low.bit_length() - 1)
                m ^= low
            out.append(idx)
        return out


def column(x: SequenceSource, t: int, S: int) -> int:
    """Bit-vector with bit m set iff x(m + t) = 1, for 0 <= m <= S."""
    return bitset(x.prefix(t + S + 1)[t : t + S + 1])


def split_count(classes: Sequence[int], col: int) -> int:
    """Class count after splitting every class by ``col`` (no allocation of the split)."""
    total = 0
    for c in classes:
        hit = c & col
        total += (hit != 0) + (hit != c)
    return total


def split(classes: Sequence[int], col: int) -> tuple[int, ...]:
    out = []
    for c in classes:
        hit = c & col
        if hit:
            out.append(hit)
        if hit != c:
            out.append(c ^ hit)
    return tuple(out)


def refine(p: ShiftPartition, new_offset: int) -> ShiftPartition:
    """Split each class of ``p`` by the bit at ``new_offset``."""
    if new_offset <= p.window.diameter:
        raise ValueError(
            f"new offset {new_offset} must exceed the window diameter {p.window.diameter}"
        )
    col = column(p.source, new_offset, p.shift_bound)
    return ShiftPartition(
        p.window.extend(new_offset), p.shift_bound, split(p.classes, col), p.source
    )


def shift_partition(x: SequenceSource, tau, S: int) -> ShiftPartition:
    tau = _coerce_window(tau)
    x.check_readable(S + tau.diameter)
    p = ShiftPartition.initial(x, S)
    for t in tau.offsets[1:]:
        p = refine(p, t)
    return p


# -- recurrence ---------------------------------------------------------------


@dataclass(frozen=True)
class RecurrenceRow:
    length: int
    second_occurrence: Optional[int]
    max_gap_observed: Optional[int]

    def to_dict(self) -> dict:
        return {
            "L": self.length,
            "second_occurrence": self.second_occurrence,
            "max_gap_observed": self.max_gap_observed,
        }


def prefix_occurrences(bits: np.ndarray, L: int) -> np.ndarray:
    """Start positions M with bits[M:M+L] equal to bits[0:L]."""
    count = bits.size - L + 1
    if count <= 0:
        return np.zeros(0, dtype=np.int64)
    hit = np.ones(count, dtype=bool)
    for i in range(L):
        hit &= bits[i : i + count] == bits[i]
    return np.flatnonzero(hit)


def recurrence_probe(x: SequenceSource, L_max: int, horizon: int) -> list[RecurrenceRow]:
    """Return, for each prefix length, its first repeat and widest observed gap.

    Only occurrences that end before ``horizon`` are counted. The widest gap
    is a finite-scale proxy for uniform recurrence, not a proof of it.
    """
    bits = x.prefix(horizon)
    rows = []
    for L in range(1, L_max + 1):
        occ = prefix_occurrences(bits, L)
        second = int(occ[1]) if occ.size > 1 else None
        gap = int(np.diff(occ).max()) if occ.size > 1 else None
        rows.append(RecurrenceRow(L, second, gap))
    return rows
