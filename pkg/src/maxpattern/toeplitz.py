"""Toeplitz sequences: period structures, fills, odometer codings.

Levels are numbered from 1. Level k has period n_k and fills a set of residues
mod n_k; a position m is filled at level k when ``m mod n_k`` is one of them.
Residues mod n_k not filled at any level <= k are the holes of level k.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Optional, Sequence, Union

import numpy as np

from .seqcore import SequenceSource, Window, shifted, tau_language


class ToeplitzSpecError(ValueError):
    pass


class UnfilledPositionError(LookupError):
    """A position has no fill at any materialized level."""

    def __init__(self, position: int, trace: list[tuple[int, int, int]]):
        self.position = position
        self.trace = trace
        shown = ", ".join(f"k={k}: {position} mod {n} = {r}" for k, n, r in trace[:6])
        more = " ..." if len(trace) > 6 else ""
        super().__init__(f"position {position} is unfilled through level {len(trace)} ({shown}{more})")


class BoundaryHitError(LookupError):
    def __init__(self, n: int, boundary_index: int):
        self.n = n
        self.boundary_index = boundary_index
        super().__init__(f"orbit hits boundary point #{boundary_index} at n = {n} with no assigned bit")


class _Stream:
    """Finite prefix followed by a repeating block or a rule, 1-indexed."""

    def __init__(self, prefix: Sequence[int] = (), period: Sequence[int] = (), rule: Optional[Callable[[int], int]] = None):
        self.prefix = tuple(prefix)
        self.period = tuple(period)
        self.rule = rule

    @property
    def finite(self) -> Optional[int]:
        if self.period or self.rule is not None:
            return None
        return len(self.prefix)

    def __getitem__(self, k: int) -> int:
        if k < 1:
            raise IndexError(k)
        i = k - 1
        if i < len(self.prefix):
            return self.prefix[i]
        if self.period:
            return self.period[(i - len(self.prefix)) % len(self.period)]
        if self.rule is not None:
            return self.rule(k)
        raise IndexError(f"stream has only {len(self.prefix)} terms")

    def to_dict(self) -> dict:
        if self.rule is not None:
            raise ToeplitzSpecError("rule-defined streams have no file representation")
        return {"prefix": list(self.prefix), "period": list(self.period)}

    @classmethod
    def from_obj(cls, obj) -> "_Stream":
        if isinstance(obj, _Stream):
            return obj
        if isinstance(obj, Mapping):
            return cls(obj.get("prefix", ()), obj.get("period", ()))
        if callable(obj):
            return cls(rule=obj)
        return cls(tuple(obj))


class PeriodStructure:
    """Periods n_1 < n_2 < ... with n_k properly dividing n_{k+1}.

    ``periods`` is a finite list; ``ratio`` (if given) continues it
    geometrically, and ``rule(k)`` continues it arbitrarily.
    """

    def __init__(self, periods: Sequence[int], ratio: Optional[int] = None, rule: Optional[Callable[[int], int]] = None):
        self.listed = tuple(int(p) for p in periods)
        self.ratio = ratio
        self.rule = rule
        if not self.listed:
            raise ToeplitzSpecError("period structure needs at least n_1")
        if self.listed[0] < 2:
            raise ToeplitzSpecError("n_1 must be at least 2")
        if ratio is not None and ratio < 2:
            raise ToeplitzSpecError("geometric ratio must be at least 2")
        self._cache = list(self.listed)
        for k in range(1, len(self._cache)):
            self._check(k)

    @classmethod
    def geometric(cls, base: int, first: Optional[int] = None) -> "PeriodStructure":
        return cls([first if first is not None else base], ratio=base)

    @property
    def depth(self) -> Optional[int]:
        """Number of levels, or None when unbounded."""
        if self.ratio is None and self.rule is None:
            return len(self.listed)
        return None

    def _check(self, i: int) -> None:
        a, b = self._cache[i - 1], self._cache[i]
        if b <= a or b % a:
            raise ToeplitzSpecError(f"n_{i} = {a} does not properly divide n_{i + 1} = {b}")

    def __getitem__(self, k: int) -> int:
        if k < 1:
            raise IndexError(k)
        while len(self._cache) < k:
            i = len(self._cache)
            if self.ratio is not None:
                self._cache.append(self._cache[-1] * self.ratio)
            elif self.rule is not None:
                self._cache.append(int(self.rule(i + 1)))
            else:
                raise IndexError(f"period structure has only {i} levels")
            self._check(i)
        return self._cache[k - 1]

    def levels_below(self, bound: int, cap: int = 4096) -> int:
        """Least k with n_k > bound (limited by depth and cap)."""
        k = 1
        depth = self.depth
        while self[k] <= bound:
            if (depth is not None and k >= depth) or k >= cap:
                break
            k += 1
        return k

    def to_dict(self) -> dict:
        if self.rule is not None:
            raise ToeplitzSpecError("rule-defined periods have no file representation")
        out = {"list": list(self.listed)}
        if self.ratio is not None:
            out["ratio"] = self.ratio
        return out

    @classmethod
    def from_obj(cls, obj) -> "PeriodStructure":
        if isinstance(obj, PeriodStructure):
            return obj
        if isinstance(obj, Mapping):
            return cls(obj["list"], obj.get("ratio"))
        return cls(obj)


Fills = Union[Sequence[Mapping[int, int]], Callable[[int], Mapping[int, int]]]


class ToeplitzSpec:
    """Period structure plus, per level, a map residue -> bit."""

    def __init__(self, periods: PeriodStructure, fills: Fills, depth: Optional[int] = None, validate_to: int = 8):
        self.periods = PeriodStructure.from_obj(periods)
        if callable(fills):
            self._rule = fills
            self._fills: list[dict[int, int]] = []
            limit = None
        else:
            self._rule = None
            self._fills = [{int(r): int(b) for r, b in f.items()} for f in fills]
            limit = len(self._fills)
        pd = self.periods.depth
        bounds = [d for d in (depth, limit, pd) if d is not None]
        self.depth = min(bounds) if bounds else None
        self._holes: list[list[int]] = []
        self._lock = threading.Lock()
        upto = validate_to if self.depth is None else min(self.depth, validate_to)
        for k in range(1, upto + 1):
            self.fills_at(k)

    def __repr__(self) -> str:
        return f"ToeplitzSpec(n_1={self.periods[1]}, depth={self.depth})"

    def _level_ok(self, k: int) -> bool:
        return self.depth is None or k <= self.depth

    def fills_at(self, k: int) -> dict[int, int]:
        """Residue -> bit map of level k; validated when first materialized."""
        if not self._level_ok(k):
            raise IndexError(f"spec materialized only to depth {self.depth}")
        if k <= len(self._holes):
            return self._fills[k - 1]
        with self._lock:
            while len(self._holes) < k:
                i = len(self._holes) + 1
                if self._rule is not None and len(self._fills) < i:
                    self._fills.append({int(r): int(b) for r, b in self._rule(i).items()})
                self._validate_level(i)
        return self._fills[k - 1]

    def _validate_level(self, k: int) -> None:
        n = self.periods[k]
        fills = self._fills[k - 1]
        prev_holes = self._holes[k - 2] if k > 1 else [0]
        prev_n = self.periods[k - 1] if k > 1 else 1
        allowed = {h + prev_n * j for h in prev_holes for j in range(n // prev_n)}
        for r, b in fills.items():
            if not 0 <= r < n:
                raise ToeplitzSpecError(f"level {k}: residue {r} outside 0..{n - 1}")
            if b not in (0, 1):
                raise ToeplitzSpecError(f"level {k}: fill bit must be 0 or 1, got {b}")
            if r not in allowed:
                j = next(j for j in range(1, k) if (r % self.periods[j]) in self._fills[j - 1])
                raise ToeplitzSpecError(
                    f"level {k}: residue {r} overlaps level {j} fill {r % self.periods[j]} mod {self.periods[j]}"
                )
        holes = sorted(allowed - fills.keys())
        # Independent check of the count formula.
        expected = n * (1 - sum(Fraction(len(self._fills[j - 1]), self.periods[j]) for j in range(1, k + 1)))
        if expected != len(holes) or expected < 0:
            raise ToeplitzSpecError(f"level {k}: hole count {expected} is not a non-negative integer")
        self._holes.append(holes)

    def holes_at(self, k: int) -> list[int]:
        self.fills_at(k)
        return self._holes[k - 1]

    def to_dict(self) -> dict:
        if self.depth is None:
            raise ToeplitzSpecError("unbounded spec; materialize a depth first")
        return {
            "kind": "toeplitz",
            "periods": {"list": [self.periods[k] for k in range(1, self.depth + 1)]},
            "fills": [{str(r): b for r, b in sorted(self.fills_at(k).items())} for k in range(1, self.depth + 1)],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ToeplitzSpec":
        fills = [{int(r): int(b) for r, b in f.items()} for f in data["fills"]]
        return cls(PeriodStructure.from_obj(data["periods"]), fills, data.get("depth"))


class SimpleToeplitzSpec:
    """One hole per level; every level-k fill carries letter a_k.

    ``holes[k]`` is the level-k hole residue i_k; negative values count from
    n_k (so -1 means n_k - 1). Compatibility i_{k+1} = i_k mod n_k is checked.
    """

    def __init__(self, periods, letters, holes=(0,)):
        self.periods = PeriodStructure.from_obj(periods)
        self.letters = _Stream.from_obj(letters)
        if isinstance(holes, (list, tuple)) and not isinstance(holes, _Stream):
            holes = _Stream((), tuple(holes))
        self._holes_raw = _Stream.from_obj(holes)
        depths = [d for d in (self.letters.finite, self._holes_raw.finite, self.periods.depth) if d is not None]
        self.depth = min(depths) if depths else None
        for k in range(1, min(self.depth or 8, 8) + 1):
            self.hole(k)

    def letter(self, k: int) -> int:
        a = self.letters[k]
        if a not in (0, 1):
            raise ToeplitzSpecError(f"letter a_{k} = {a} is not a bit")
        return a

    def hole(self, k: int) -> int:
        n = self.periods[k]
        h = self._holes_raw[k] % n
        if k > 1 and h % self.periods[k - 1] != self.hole(k - 1):
            raise ToeplitzSpecError(f"hole i_{k} = {h} is not congruent to i_{k - 1} mod n_{k - 1}")
        return h

    def level_fills(self, k: int) -> dict[int, int]:
        n = self.periods[k]
        prev_n = self.periods[k - 1] if k > 1 else 1
        prev_h = self.hole(k - 1) if k > 1 else 0
        a, h = self.letter(k), self.hole(k)
        return {prev_h + prev_n * j: a for j in range(n // prev_n) if prev_h + prev_n * j != h}

    def to_toeplitz(self) -> ToeplitzSpec:
        return ToeplitzSpec(self.periods, self.level_fills, self.depth)

    def flipped(self) -> "SimpleToeplitzSpec":
        return SimpleToeplitzSpec(self.periods, lambda k: 1 - self.letter(k), _Stream(rule=self.hole))

    def valuation_letter(self, k: int) -> int:
        """Letter on multiples of n_k that are not multiples of n_{k+1} (holes at 0)."""
        return self.letter(k + 1)

    def to_dict(self) -> dict:
        return {
            "kind": "simple-toeplitz",
            "periods": self.periods.to_dict(),
            "letters": self.letters.to_dict(),
            "holes": self._holes_raw.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SimpleToeplitzSpec":
        return cls(PeriodStructure.from_obj(data["periods"]), _Stream.from_obj(data["letters"]), _Stream.from_obj(data.get("holes", {"period": [0]})))


@dataclass(frozen=True)
class HolePolicy:
    """How to resolve positions not filled at any materialized level.

    mode "deeper": search deeper levels (up to ``max_depth``), then use
    ``fallback`` if set or raise. mode "bit": use ``bit`` right after the
    materialized depth. mode "error": raise.
    """

    mode: str = "deeper"
    bit: Optional[int] = None
    fallback: Optional[int] = None
    max_depth: int = 256

    @classmethod
    def deeper(cls, fallback: Optional[int] = None, max_depth: int = 256) -> "HolePolicy":
        return cls("deeper", None, fallback, max_depth)

    @classmethod
    def constant(cls, bit: int) -> "HolePolicy":
        return cls("bit", bit)

    @classmethod
    def error(cls) -> "HolePolicy":
        return cls("error")


def _level_limit(spec: ToeplitzSpec, policy: HolePolicy) -> int:
    if spec.depth is not None:
        return min(spec.depth, policy.max_depth)
    return policy.max_depth


def _resolve(spec: ToeplitzSpec, policy: HolePolicy, n: int) -> int:
    limit = _level_limit(spec, policy)
    trace = []
    for k in range(1, limit + 1):
        nk = spec.periods[k]
        r = n % nk
        b = spec.fills_at(k).get(r)
        if b is not None:
            return b
        trace.append((k, nk, r))
    if policy.mode == "bit":
        return policy.bit
    if policy.mode == "deeper" and policy.fallback is not None:
        return policy.fallback
    raise UnfilledPositionError(n, trace)


def generate(spec: ToeplitzSpec, hole_policy: Optional[HolePolicy] = None) -> SequenceSource:
    """The Toeplitz sequence of ``spec``; holes resolved by ``hole_policy``."""
    policy = hole_policy or HolePolicy.deeper()
    if isinstance(spec, SimpleToeplitzSpec):
        spec = spec.to_toeplitz()

    def rule(n: int) -> int:
        return _resolve(spec, policy, n)

    def bulk(a: int, b: int) -> np.ndarray:
        out = np.full(b - a, 255, dtype=np.uint8)
        limit = _level_limit(spec, policy)
        for k in range(1, limit + 1):
            nk = spec.periods[k]
            for r, bit in spec.fills_at(k).items():
                start = a + (r - a) % nk
                if start < b:
                    out[start - a :: nk] = bit
            if nk > b:
                # Deeper levels fill each remaining position at most once; go pointwise.
                break
        left = np.flatnonzero(out == 255)
        for i in left:
            out[i] = rule(a + int(i))
        return out

    return SequenceSource(rule, bulk=bulk, kind="toeplitz", meta={"spec": spec, "hole_policy": policy})


def hole_count(spec, k: int) -> int:
    """n_k (1 - sum_{j<=k} |fills_j| / n_j)."""
    if isinstance(spec, SimpleToeplitzSpec):
        spec = spec.to_toeplitz()
    val = spec.periods[k] * (1 - sum(Fraction(len(spec.fills_at(j)), spec.periods[j]) for j in range(1, k + 1)))
    if val.denominator != 1 or val < 0:
        raise ToeplitzSpecError(f"hole count at level {k} is {val}")
    return int(val)


# -- odometer ------------------------------------------------------------------


@dataclass(frozen=True)
class OdometerPoint:
    """Element of the inverse limit of Z/n_k Z, materialized to len(residues) levels."""

    periods: PeriodStructure = field(repr=False, compare=False)
    residues: tuple[int, ...]

    def __post_init__(self):
        for k, y in enumerate(self.residues, start=1):
            nk = self.periods[k]
            if not 0 <= y < nk:
                raise ValueError(f"residue y_{k} = {y} outside Z/{nk}")
            if k > 1 and y % self.periods[k - 1] != self.residues[k - 2]:
                raise ValueError(f"y_{k} = {y} is not compatible with y_{k - 1} = {self.residues[k - 2]}")

    @property
    def depth(self) -> int:
        return len(self.residues)

    @classmethod
    def of_integer(cls, periods: PeriodStructure, m: int, depth: int) -> "OdometerPoint":
        return cls(periods, tuple(m % periods[k] for k in range(1, depth + 1)))

    @classmethod
    def minus_one(cls, periods: PeriodStructure, depth: int) -> "OdometerPoint":
        return cls.of_integer(periods, -1, depth)

    def __str__(self) -> str:
        return "(" + ", ".join(map(str, self.residues)) + ", ...)"


def odometer_add(y: OdometerPoint, t: int, depth: Optional[int] = None) -> OdometerPoint:
    depth = y.depth if depth is None else depth
    if depth > y.depth:
        raise ValueError(f"point materialized only to depth {y.depth}")
    p = y.periods
    return OdometerPoint(p, tuple((y.residues[k - 1] + t) % p[k] for k in range(1, depth + 1)))


@dataclass(frozen=True)
class OdometerMEFPartition:
    """Per-level cylinder assignments {residue: letter} and the boundary points."""

    periods: PeriodStructure
    assignment: tuple[dict[int, int], ...]
    boundary: tuple[OdometerPoint, ...]

    @property
    def depth(self) -> int:
        return len(self.assignment)

    def describe(self) -> dict:
        return {
            "levels": [
                {"period": self.periods[k], "U0": sorted(r for r, b in a.items() if b == 0), "U1": sorted(r for r, b in a.items() if b == 1)}
                for k, a in enumerate(self.assignment, start=1)
            ],
            "boundary": [list(b.residues) for b in self.boundary],
        }

    def locate(self, y: OdometerPoint) -> tuple[str, int]:
        """("U", letter) for a cylinder hit, ("B", index) for a boundary point."""
        for k in range(1, min(self.depth, y.depth) + 1):
            b = self.assignment[k - 1].get(y.residues[k - 1])
            if b is not None:
                return ("U", b)
        d = min(self.depth, y.depth)
        for i, pt in enumerate(self.boundary):
            if pt.residues[:d] == y.residues[:d]:
                return ("B", i)
        raise AssertionError(f"point {y} is in no cell")


def build_mef_partition(spec, depth: Optional[int] = None) -> OdometerMEFPartition:
    """U_i = cylinders {y : y_k = r} with r filled by i at level k; boundary = hole chains."""
    if isinstance(spec, SimpleToeplitzSpec):
        spec = spec.to_toeplitz()
    depth = depth if depth is not None else (spec.depth if spec.depth is not None else 12)
    if spec.depth is not None:
        depth = min(depth, spec.depth)
    holes = spec.holes_at(depth)
    if not holes:
        raise ToeplitzSpecError("no holes: the sequence is periodic, not a Toeplitz subshift point")
    p = spec.periods
    boundary = tuple(OdometerPoint.of_integer(p, h, depth) for h in holes)
    return OdometerMEFPartition(p, tuple(dict(spec.fills_at(k)) for k in range(1, depth + 1)), boundary)


def mef_code(
    partition: OdometerMEFPartition,
    start: Optional[OdometerPoint] = None,
    boundary_bits: Optional[Mapping[int, int]] = None,
) -> SequenceSource:
    """x(n) = i when start + n lies in U_i, or boundary_bits[j] on boundary point j."""
    p = partition.periods
    depth = partition.depth
    start = start if start is not None else OdometerPoint.of_integer(p, 0, depth)
    if start.depth < depth:
        raise ValueError("start point must be materialized to the partition depth")
    bits = dict(boundary_bits or {})
    base = start.residues[:depth]

    def rule(n: int) -> int:
        for k in range(1, depth + 1):
            b = partition.assignment[k - 1].get((base[k - 1] + n) % p[k])
            if b is not None:
                return b
        r = (base[-1] + n) % p[depth]
        for i, pt in enumerate(partition.boundary):
            if pt.residues[-1] == r:
                if i in bits:
                    return bits[i]
                raise BoundaryHitError(n, i)
        raise AssertionError(f"n = {n} lies in no cell")

    return SequenceSource(rule, kind="toeplitz", meta={"partition": partition})


def random_spec(rng: np.random.Generator, *, min_period: int = 10_000, max_holes: int = 2) -> ToeplitzSpec:
    """Random finite-depth spec with 1..max_holes holes per level and n_depth > min_period."""
    periods = [int(rng.integers(2, 5))]
    while periods[-1] <= min_period:
        periods.append(periods[-1] * int(rng.integers(2, 5)))
    fills = []
    holes = [0]
    prev = 1
    for n in periods:
        cands = [h + prev * j for h in holes for j in range(n // prev)]
        keep = int(rng.integers(1, min(max_holes, len(cands) - 1) + 1))
        order = rng.permutation(len(cands))
        kept = sorted(cands[i] for i in order[:keep])
        fill = {cands[i]: int(rng.integers(0, 2)) for i in order[keep:]}
        fills.append(fill)
        holes, prev = kept, n
    return ToeplitzSpec(PeriodStructure(periods), fills)


# -- bundled instances and constructions -------------------------------------


def three_adic_example() -> ToeplitzSpec:
    """Periods 3^k; level k fills 3^{k-1}-1 with 0 and 2*3^{k-1}-1 with 1."""
    return ToeplitzSpec(
        PeriodStructure.geometric(3),
        lambda k: {3 ** (k - 1) - 1: 0, 2 * 3 ** (k - 1) - 1: 1},
    )


def two_hole_example() -> ToeplitzSpec:
    """Periods 3^k with hole chains 1, 1, 1, ... and 2, 2, 2, ..."""

    def fills(k: int) -> dict[int, int]:
        if k == 1:
            return {0: 0}
        m = 3 ** (k - 1)
        return {1 + m: 0, 1 + 2 * m: 1, 2 + m: 1, 2 + 2 * m: 0}

    return ToeplitzSpec(PeriodStructure.geometric(3), fills)


def alternating_dyadic() -> SimpleToeplitzSpec:
    """Periods 2^k, holes at residue 0, letter a_k = k mod 2."""
    return SimpleToeplitzSpec(PeriodStructure.geometric(2), _Stream((), (1, 0)), _Stream((), (0,)))


def nearly_simple(spec, w: str, shift: int = 0, hole_policy: Optional[HolePolicy] = None) -> SequenceSource:
    """sigma^shift(theta(y)) with theta: 0 -> w0, 1 -> w1 and y the Toeplitz sequence of spec."""
    if any(ch not in "01" for ch in w):
        raise ValueError("w must be a binary word")
    C = len(w) + 1
    if not 0 <= shift < C:
        raise ValueError(f"shift must lie in 0..{C - 1}")
    y = generate(spec if isinstance(spec, ToeplitzSpec) else spec.to_toeplitz(), hole_policy or HolePolicy.deeper(fallback=0))
    wb = [int(ch) for ch in w]

    def rule(m: int) -> int:
        q, r = divmod(m + shift, C)
        return wb[r] if r < len(wb) else y(q)

    return SequenceSource(rule, kind="toeplitz", meta={"w": w, "shift": shift, "base": y})


LEMMA_WORDS = frozenset({"000", "001", "010", "100", "101", "111"})


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class ThreeWindowResult:
    tau: Window
    language: frozenset
    matches_lemma: bool
    expected: frozenset
    witness_shifts: tuple[int, ...]
    witness_words: tuple[str, ...]
    normalization_shift: int
    shift_bound: int

    def to_dict(self) -> dict:
        return {
            "tau": self.tau.to_dict(),
            "language": sorted(self.language),
            "matches_lemma": self.matches_lemma,
            "witness_shifts": list(self.witness_shifts),
            "witness_words": list(self.witness_words),
            "normalization_shift": self.normalization_shift,
            "shift_bound": self.shift_bound,
        }


def three_window(spec: SimpleToeplitzSpec, indices: Sequence[int], S: Optional[int] = None) -> ThreeWindowResult:
    """tau = {0, n_e, n_f} on the hole-normalized simple Toeplitz sequence.

    ``indices`` = (c, d, e, f, g, h) with c < ... < h, where a_k denotes the
    letter on multiples of n_k that are not multiples of n_{k+1}. Needs
    a_c = a_e = a_g and a_d = a_f = a_h = 1 - a_c; with a_c = 0 the language is
    exactly the six words {000, 001, 010, 100, 101, 111}, and bit-flipped
    otherwise. The never-filled position 0 reads 0 (1 if flipped).
    """
    c, d, e, f, g, h = indices
    if not c < d < e < f < g < h:
        raise PreconditionError("indices must be strictly increasing")
    if c < 1:
        raise PreconditionError("indices start at 1")
    a = spec.valuation_letter
    low = a(c)
    if not (a(e) == low and a(g) == low and a(d) == 1 - low and a(f) == 1 - low and a(h) == 1 - low):
        raise PreconditionError(
            f"need a_c=a_e=a_g != a_d=a_f=a_h; got {[a(k) for k in indices]}"
        )
    n = spec.periods
    shift = spec.hole(h + 1)
    base = generate(spec.to_toeplitz(), HolePolicy.deeper(fallback=low))
    x = base if shift == 0 else shifted(base, shift)
    tau = Window((0, n[e], n[f]))
    S = max(S or 0, n[h] + n[f])
    rep = tau_language(x, tau, S)
    expected = LEMMA_WORDS if low == 0 else frozenset("".join("1" if ch == "0" else "0" for ch in w) for w in LEMMA_WORDS)
    shifts = (n[c], n[d], n[f] - n[e], n[g], n[g] - n[f], n[h] - n[f])
    words = tuple("".join(str(x(s + t)) for t in tau.offsets) for s in shifts)
    return ThreeWindowResult(tau, frozenset(rep.words), frozenset(rep.words) == expected, expected, shifts, words, shift, S)

