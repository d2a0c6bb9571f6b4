"""Exact circle arithmetic and circle-rotation interval codings.

Angles of the form ``c + d*alpha (mod 1)`` with rational ``c, d`` are kept as
integer triples and compared exactly. The irrational ``alpha`` is given by its
continued fraction; consecutive convergents bracket it strictly, which makes
every sign decision on ``u + v*alpha`` (v != 0) terminate.
"""

from __future__ import annotations

import bisect
import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np

from .seqcore import (
    SequenceSource,
    Window,
    shift_partition,
    tau_language,
)

# Convergent search starts where q_k >= _HEADROOM * |v|; one bracket step then
# usually decides the sign.
_HEADROOM = 1 << 10


class IrrationalAngle:
    """An irrational alpha in (0, 1) given by continued-fraction coefficients.

    ``prefix`` holds a_0 = 0, a_1, a_2, ...; after it the coefficients either
    repeat ``period`` (quadratic irrationals) or come from ``rule(i)``.
    """

    def __init__(
        self,
        prefix: Sequence[int],
        period: Sequence[int] = (),
        rule: Optional[Callable[[int], int]] = None,
    ):
        self.prefix = tuple(int(a) for a in prefix)
        self.period = tuple(int(a) for a in period)
        self.rule = rule
        if not self.prefix or self.prefix[0] != 0:
            raise ValueError("continued fraction must start with a_0 = 0")
        if not self.period and rule is None:
            raise ValueError("a finite continued fraction is rational; give a period or a rule")
        if any(a < 1 for a in self.prefix[1:] + self.period):
            raise ValueError("partial quotients a_i (i >= 1) must be positive")
        self._p = [0]
        self._q = [1]
        self._pm, self._qm = 1, 0  # p_{-1}, q_{-1}
        self._lock = threading.Lock()

    @classmethod
    def golden(cls) -> "IrrationalAngle":
        """(sqrt(5) - 1) / 2 = [0; 1, 1, 1, ...]."""
        return cls([0], [1])

    @classmethod
    def quadratic(cls, prefix: Sequence[int], period: Sequence[int]) -> "IrrationalAngle":
        return cls(prefix, period)

    def __repr__(self) -> str:
        per = "(" + ",".join(map(str, self.period)) + ")*" if self.period else "..."
        return f"IrrationalAngle([{';'.join(map(str, self.prefix))}{';' if per else ''}{per}])"

    def to_dict(self) -> dict:
        if self.rule is not None and not self.period:
            raise ValueError("rule-defined angles have no file representation")
        return {"cf": {"prefix": list(self.prefix), "period": list(self.period)}}

    def coefficient(self, i: int) -> int:
        if i < len(self.prefix):
            return self.prefix[i]
        if self.period:
            return self.period[(i - len(self.prefix)) % len(self.period)]
        a = int(self.rule(i))
        if a < 1:
            raise ValueError(f"rule produced non-positive partial quotient at index {i}")
        return a

    def convergent(self, k: int) -> tuple[int, int]:
        """(p_k, q_k)."""
        if k >= len(self._p):
            with self._lock:
                while len(self._p) <= k:
                    i = len(self._p)
                    a = self.coefficient(i)
                    p1, q1 = self._p[-1], self._q[-1]
                    p0, q0 = (self._pm, self._qm) if i == 1 else (self._p[-2], self._q[-2])
                    self._p.append(a * p1 + p0)
                    self._q.append(a * q1 + q0)
        return self._p[k], self._q[k]

    def enclosure(self, k: int) -> tuple[Fraction, Fraction]:
        """Open interval (lo, hi) of width 1/(q_k q_{k+1}) strictly containing alpha."""
        p0, q0 = self.convergent(k)
        p1, q1 = self.convergent(k + 1)
        a, b = Fraction(p0, q0), Fraction(p1, q1)
        return (a, b) if a < b else (b, a)

    def _start(self, size: int) -> int:
        """Least k with q_k >= _HEADROOM * size."""
        target = _HEADROOM * max(size, 1)
        while self._q[-1] < target:
            self.convergent(len(self._q))
        return bisect.bisect_left(self._q, target)

    def sign_linear(self, u: int, v: int) -> int:
        """Exact sign of u + v*alpha for integers u, v."""
        if v == 0:
            return (u > 0) - (u < 0)
        k = max(0, self._start(abs(v)) - 1)
        while True:
            p0, q0 = self.convergent(k)
            p1, q1 = self.convergent(k + 1)
            s0 = u * q0 + v * p0
            s1 = u * q1 + v * p1
            if s0 > 0 and s1 > 0:
                return 1
            if s0 < 0 and s1 < 0:
                return -1
            k += 1

    def floor_linear(self, u: int, v: int, w: int) -> int:
        """Exact floor((u + v*alpha) / w) for integers, w > 0."""
        if v == 0:
            return u // w
        k = max(0, self._start(abs(v)) - 1)
        while True:
            p0, q0 = self.convergent(k)
            p1, q1 = self.convergent(k + 1)
            f0 = (u * q0 + v * p0) // (w * q0)
            f1 = (u * q1 + v * p1) // (w * q1)
            if f0 == f1:
                return f0
            k += 1


class ExactAngle:
    """The circle point c + d*alpha (mod 1), with c, d rational.

    Stored as integers (a, e, b) with c = a/b, d = e/b, b > 0, and a chosen so
    that the real number c + d*alpha lies in [0, 1).
    """

    __slots__ = ("a", "e", "b", "alpha")

    def __init__(self, c, d, alpha: IrrationalAngle):
        c, d = Fraction(c), Fraction(d)
        b = c.denominator * d.denominator // math.gcd(c.denominator, d.denominator)
        self._set(c.numerator * (b // c.denominator), d.numerator * (b // d.denominator), b, alpha)

    @classmethod
    def _raw(cls, a: int, e: int, b: int, alpha: IrrationalAngle) -> "ExactAngle":
        obj = cls.__new__(cls)
        obj._set(a, e, b, alpha)
        return obj

    def _set(self, a: int, e: int, b: int, alpha: IrrationalAngle) -> None:
        g = math.gcd(math.gcd(a, e), b)
        if g > 1:
            a, e, b = a // g, e // g, b // g
        a -= b * alpha.floor_linear(a, e, b)
        self.a, self.e, self.b, self.alpha = a, e, b, alpha

    @classmethod
    def zero(cls, alpha: IrrationalAngle) -> "ExactAngle":
        return cls._raw(0, 0, 1, alpha)

    @classmethod
    def multiple(cls, k: int, alpha: IrrationalAngle, shift=0) -> "ExactAngle":
        """shift + k*alpha (mod 1)."""
        return cls(shift, k, alpha)

    @property
    def c(self) -> Fraction:
        return Fraction(self.a, self.b)

    @property
    def d(self) -> Fraction:
        return Fraction(self.e, self.b)

    def _check(self, other: "ExactAngle") -> None:
        if other.alpha is not self.alpha:
            raise ValueError("angles refer to different irrational rotations")

    def __add__(self, other: "ExactAngle") -> "ExactAngle":
        self._check(other)
        b = self.b * other.b
        return ExactAngle._raw(self.a * other.b + other.a * self.b, self.e * other.b + other.e * self.b, b, self.alpha)

    def __sub__(self, other: "ExactAngle") -> "ExactAngle":
        self._check(other)
        b = self.b * other.b
        return ExactAngle._raw(self.a * other.b - other.a * self.b, self.e * other.b - other.e * self.b, b, self.alpha)

    def __neg__(self) -> "ExactAngle":
        return ExactAngle._raw(-self.a, -self.e, self.b, self.alpha)

    def rotate(self, k: int) -> "ExactAngle":
        """self + k*alpha."""
        return ExactAngle._raw(self.a, self.e + k * self.b, self.b, self.alpha)

    def scale(self, r) -> "ExactAngle":
        """(r * (c + d*alpha)) mod 1 for rational r, applied to the [0,1) representative."""
        r = Fraction(r)
        return ExactAngle._raw(self.a * r.numerator, self.e * r.numerator, self.b * r.denominator, self.alpha)

    def midpoint_to(self, other: "ExactAngle") -> "ExactAngle":
        """Midpoint of the counterclockwise arc from self to other."""
        self._check(other)
        wrap = 0 if self < other else 1
        b = 2 * self.b * other.b
        a = self.a * other.b + other.a * self.b + wrap * self.b * other.b
        e = self.e * other.b + other.e * self.b
        return ExactAngle._raw(a, e, b, self.alpha)

    def is_zero(self) -> bool:
        return self.a == 0 and self.e == 0

    def is_alpha_multiple(self) -> Optional[int]:
        """k when self = k*alpha (mod 1) for an integer k, else None."""
        if self.b == 1:
            return self.e
        return None

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactAngle):
            return NotImplemented
        return (self.a * other.b == other.a * self.b) and (self.e * other.b == other.e * self.b)

    def __hash__(self) -> int:
        return hash((Fraction(self.a, self.b), Fraction(self.e, self.b)))

    def compare(self, other: "ExactAngle") -> int:
        """Sign of (self - other) for the [0, 1) representatives."""
        self._check(other)
        u = self.a * other.b - other.a * self.b
        v = self.e * other.b - other.e * self.b
        return self.alpha.sign_linear(u, v)

    def __lt__(self, other: "ExactAngle") -> bool:
        return self.compare(other) < 0

    def __le__(self, other: "ExactAngle") -> bool:
        return self.compare(other) <= 0

    def __gt__(self, other: "ExactAngle") -> bool:
        return self.compare(other) > 0

    def __ge__(self, other: "ExactAngle") -> bool:
        return self.compare(other) >= 0

    def approx(self, k: int = 30) -> float:
        """Float approximation, for display only."""
        p, q = self.alpha.convergent(k)
        return float((Fraction(self.a) + Fraction(self.e) * Fraction(p, q)) / self.b)

    def to_dict(self) -> dict:
        return {"c": str(self.c), "d": str(self.d)}

    def __repr__(self) -> str:
        return f"ExactAngle(c={self.c}, d={self.d})"


@dataclass(frozen=True, eq=False)
class IntervalSpec:
    """Arc traversed counterclockwise from ``lo`` to ``hi``."""

    lo: ExactAngle
    hi: ExactAngle
    closed_lo: bool = True
    closed_hi: bool = False
    full: bool = False

    def __post_init__(self):
        if not self.full and self.lo == self.hi:
            raise ValueError("degenerate interval: lo == hi without the full-circle flag")

    @property
    def length(self) -> ExactAngle:
        return self.hi - self.lo

    def contains(self, t: ExactAngle) -> bool:
        if self.full:
            return True
        delta = t - self.lo
        if delta.is_zero():
            return self.closed_lo
        cmp = delta.compare(self.length)
        if cmp < 0:
            return True
        if cmp == 0:
            return self.closed_hi
        return False

    def describe(self) -> str:
        if self.full:
            return "T"
        return f"{'[' if self.closed_lo else '('}{self.lo.c}+{self.lo.d}a, {self.hi.c}+{self.hi.d}a{']' if self.closed_hi else ')'}"


class RotationCodingSpec:
    """Cells (interval, letter) partitioning the circle, plus a base point."""

    def __init__(
        self,
        alpha: IrrationalAngle,
        cells: Sequence[tuple[IntervalSpec, int]],
        base_point: Optional[ExactAngle] = None,
    ):
        self.alpha = alpha
        self.cells = tuple((iv, int(letter)) for iv, letter in cells)
        self.base_point = base_point if base_point is not None else ExactAngle.zero(alpha)
        self._validate()

    def _validate(self) -> None:
        letters = {letter for _, letter in self.cells}
        if not letters <= {0, 1}:
            raise ValueError("letters must be 0 or 1")
        if len(letters) < 2:
            raise ValueError("coding letters must not all be equal")
        for iv, _ in self.cells:
            if iv.full:
                raise ValueError("a full-circle cell cannot share the circle with other cells")
            if iv.lo.alpha is not self.alpha or iv.hi.alpha is not self.alpha:
                raise ValueError("cell endpoints refer to a different rotation")
        order = sorted(range(len(self.cells)), key=_SortKey.of(self.cells))
        total_c, total_d = Fraction(0), Fraction(0)
        for pos, i in enumerate(order):
            cur = self.cells[i][0]
            nxt = self.cells[order[(pos + 1) % len(order)]][0]
            if cur.hi != nxt.lo:
                raise ValueError(f"cells do not tile the circle: gap or overlap after {cur.describe()}")
            if cur.closed_hi == nxt.closed_lo:
                raise ValueError(
                    f"endpoint shared by {cur.describe()} and {nxt.describe()} must belong to exactly one cell"
                )
            ln = cur.length
            total_c += ln.c
            total_d += ln.d
        if total_c != 1 or total_d != 0:
            raise ValueError("cell lengths do not sum to 1")

    @property
    def is_simple(self) -> bool:
        return len(self.cells) == 2

    @property
    def half_open(self) -> bool:
        return all(iv.closed_lo != iv.closed_hi for iv, _ in self.cells)

    def cell_index(self, t: ExactAngle) -> int:
        hits = [i for i, (iv, _) in enumerate(self.cells) if iv.contains(t)]
        if len(hits) != 1:
            raise AssertionError(f"point {t!r} lies in {len(hits)} cells")
        return hits[0]

    def letter_at(self, t: ExactAngle) -> int:
        for iv, letter in self.cells:
            if iv.contains(t):
                return letter
        raise AssertionError(f"point {t!r} lies in no cell")

    def point(self, n: int) -> ExactAngle:
        return self.base_point.rotate(n)

    def to_dict(self) -> dict:
        return {
            "kind": "rotation",
            "alpha": self.alpha.to_dict(),
            "cells": [
                {
                    "lo": iv.lo.to_dict(),
                    "hi": iv.hi.to_dict(),
                    "closed_lo": iv.closed_lo,
                    "closed_hi": iv.closed_hi,
                    "letter": letter,
                }
                for iv, letter in self.cells
            ],
            "base_point": self.base_point.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RotationCodingSpec":
        cf = data["alpha"]["cf"]
        alpha = IrrationalAngle(cf["prefix"], cf.get("period", ()))

        def angle(obj):
            return ExactAngle(Fraction(str(obj.get("c", 0))), Fraction(str(obj.get("d", 0))), alpha)

        cells = [
            (
                IntervalSpec(angle(c["lo"]), angle(c["hi"]), bool(c["closed_lo"]), bool(c["closed_hi"])),
                int(c["letter"]),
            )
            for c in data["cells"]
        ]
        base = angle(data["base_point"]) if "base_point" in data else None
        return cls(alpha, cells, base)


class _SortKey:
    """Sort adapter ordering cells by their exact lower endpoint."""

    def __init__(self, angle: ExactAngle):
        self.angle = angle

    def __lt__(self, other: "_SortKey") -> bool:
        return self.angle < other.angle

    @staticmethod
    def of(cells):
        return lambda i: _SortKey(cells[i][0].lo)


def two_interval_spec(
    alpha: IrrationalAngle,
    lo: ExactAngle,
    hi: ExactAngle,
    *,
    letter: int = 1,
    closed_lo: bool = True,
    closed_hi: bool = False,
) -> RotationCodingSpec:
    """Simple coding with ``[lo, hi)`` (closedness configurable) carrying ``letter``."""
    inner = IntervalSpec(lo, hi, closed_lo, closed_hi)
    outer = IntervalSpec(hi, lo, not closed_hi, not closed_lo)
    return RotationCodingSpec(alpha, [(inner, letter), (outer, 1 - letter)])


def fibonacci_spec() -> RotationCodingSpec:
    """alpha = (sqrt 5 - 1)/2, I_1 = [0, alpha), I_0 = [alpha, 1)."""
    alpha = IrrationalAngle.golden()
    return two_interval_spec(alpha, ExactAngle.zero(alpha), ExactAngle.multiple(1, alpha))


def code(spec: RotationCodingSpec) -> SequenceSource:
    """x(n) = letter of the cell containing base_point + n*alpha, decided exactly."""

    def rule(n: int) -> int:
        return spec.letter_at(spec.point(n))

    def bulk(a: int, b: int) -> np.ndarray:
        return np.fromiter((rule(n) for n in range(a, b)), dtype=np.uint8, count=b - a)

    return SequenceSource(rule, bulk=bulk, kind="rotation-coding", meta={"spec": spec})


def floor_oracle_bit(spec: RotationCodingSpec, n: int, *, max_refine: int = 200) -> int:
    """x(n) from rational convergents with an explicit error budget.

    Works with plain ``Fraction`` arithmetic and never calls the ExactAngle
    comparisons, so it can cross-check :func:`code`.
    """
    alpha = spec.alpha
    base = spec.base_point
    bc, bd = Fraction(base.a, base.b), Fraction(base.e, base.b)
    d_point = bd + n
    for iv, letter in spec.cells:
        for ang, closed in ((iv.lo, iv.closed_lo), (iv.hi, iv.closed_hi)):
            c, d = Fraction(ang.a, ang.b), Fraction(ang.e, ang.b)
            # Algebraic coincidence: point == endpoint exactly.
            if d == d_point and (bc - c).denominator == 1:
                if closed:
                    return letter
    k = 2
    for _ in range(max_refine):
        p, q = alpha.convergent(k)
        p1, q1 = alpha.convergent(k + 1)
        width = Fraction(1, q * q1)
        a_q = Fraction(p, q)
        point = (bc + d_point * a_q) % 1
        err_point = abs(d_point) * width
        safe = True
        found = None
        for iv, letter in spec.cells:
            lo_c, lo_d = Fraction(iv.lo.a, iv.lo.b), Fraction(iv.lo.e, iv.lo.b)
            hi_c, hi_d = Fraction(iv.hi.a, iv.hi.b), Fraction(iv.hi.e, iv.hi.b)
            lo = (lo_c + lo_d * a_q) % 1
            hi = (hi_c + hi_d * a_q) % 1
            for end, d in ((lo, lo_d), (hi, hi_d)):
                if d == d_point and (bc - (lo_c if end is lo else hi_c)).denominator == 1:
                    continue  # excluded by the algebraic test above (open endpoint)
                gap = abs(point - end)
                gap = min(gap, 1 - gap)
                if gap <= err_point + abs(d) * width:
                    safe = False
            if (point - lo) % 1 < (hi - lo) % 1 and found is None:
                found = letter
        if safe and found is not None:
            return found
        if safe and found is None:
            raise AssertionError("oracle point fell outside every cell")
        k += 1
    raise RuntimeError(f"floor oracle could not separate x({n}) from a cell endpoint")


# -- Lemma-style oracles on the interval partition ----------------------------


@dataclass(frozen=True)
class CellCount:
    cell_count: int
    interval_cells: int
    singleton_cells: int
    endpoints: int

    def to_dict(self) -> dict:
        return {
            "cell_count": self.cell_count,
            "interval_cells": self.interval_cells,
            "singleton_cells": self.singleton_cells,
            "endpoints": self.endpoints,
        }


def _require_simple(spec: RotationCodingSpec) -> None:
    if not spec.is_simple:
        raise NotImplementedError("interval-partition oracle supports two-cell codings only")


def partition_cell_count(spec: RotationCodingSpec, tau) -> CellCount:
    """Nonempty atoms of the join of (cells - j*alpha) over j in tau, counted exactly.

    The circle is cut at the points y - j*alpha, z - j*alpha. Each open arc
    between consecutive cut points lies in one atom, so atoms are enumerated by
    evaluating the tau-word of every cut point and of one point per arc. Words
    seen only at cut points are singleton atoms.
    """
    _require_simple(spec)
    tau = tau if isinstance(tau, Window) else Window(tuple(tau))
    ends = {iv.lo for iv, _ in spec.cells} | {iv.hi for iv, _ in spec.cells}
    cuts = {e.rotate(-j) for e in ends for j in tau.offsets}
    pts = sorted(cuts, key=_SortKeyAngle)

    def word(t: ExactAngle) -> tuple[int, ...]:
        return tuple(spec.cell_index(t.rotate(j)) for j in tau.offsets)

    arc_words = set()
    for i, p in enumerate(pts):
        nxt = pts[(i + 1) % len(pts)]
        arc_words.add(word(p.midpoint_to(nxt)))
    point_words = {word(p) for p in pts}
    singles = point_words - arc_words
    return CellCount(len(arc_words | point_words), len(arc_words), len(singles), len(pts))


class _SortKeyAngle:
    __slots__ = ("angle",)

    def __init__(self, angle: ExactAngle):
        self.angle = angle

    def __lt__(self, other) -> bool:
        return self.angle < other.angle


@dataclass(frozen=True)
class OracleComparison:
    refinement_count: int
    cell_count: int
    consistent: bool
    half_open: bool
    equality_reached: Optional[bool]

    def to_dict(self) -> dict:
        return dict(self.__dict__)


def oracle_language_bound(spec: RotationCodingSpec, tau, S: int, x: Optional[SequenceSource] = None) -> OracleComparison:
    """Compare the shift-partition count with the interval-partition ceiling."""
    _require_simple(spec)
    tau = tau if isinstance(tau, Window) else Window(tuple(tau))
    x = x if x is not None else code(spec)
    refined = shift_partition(x, tau, S).class_count
    cells = partition_cell_count(spec, tau).cell_count
    half_open = spec.half_open
    return OracleComparison(
        refined, cells, refined <= cells, half_open, (refined == cells) if half_open else None
    )


# -- constructive windows ------------------------------------------------------


class WindowSearchError(RuntimeError):
    def __init__(self, message: str, bounds: dict):
        super().__init__(f"{message} (bounds: {bounds})")
        self.bounds = bounds


@dataclass(frozen=True)
class ConstantFreeWindow:
    k: int
    window: Window
    language_size: int
    has_constant_words: bool
    verified: bool
    candidates_tried: int

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "window": self.window.to_dict(),
            "language_size": self.language_size,
            "has_constant_words": self.has_constant_words,
            "verified": self.verified,
            "candidates_tried": self.candidates_tried,
        }


def _candidate_ks(alpha: IrrationalAngle, k_max: int) -> list[int]:
    seen, out = set(), []
    i = 1
    while True:
        q = alpha.convergent(i)[1]
        if q > k_max:
            break
        if q not in seen:
            seen.add(q)
            out.append(q)
        i += 1
    out.extend(k for k in range(1, k_max + 1) if k not in seen)
    return out


def _max_gap_below(alpha: IrrationalAngle, k: int, n: int, bound: ExactAngle) -> bool:
    """True when consecutive points of {0, theta, ..., (n-1) theta} are < bound apart."""
    pts = sorted({ExactAngle.multiple(j * k, alpha) for j in range(n)}, key=_SortKeyAngle)
    for i, p in enumerate(pts):
        gap = pts[(i + 1) % len(pts)] - p if len(pts) > 1 else None
        if gap is None or gap.is_zero() or not gap < bound:
            return False
    return True


def find_constant_free_window(
    spec: RotationCodingSpec,
    n: int,
    *,
    k_max: int = 2000,
    S: int = 20000,
    x: Optional[SequenceSource] = None,
) -> ConstantFreeWindow:
    """Find k so that {0, k, ..., (n-1)k} has 2n patterns and no constant word.

    Candidate k are convergent denominators first, then 1..k_max. A candidate
    must satisfy theta = k*alpha mod 1 < min(|I_0|, |I_1|), avoid
    |I_1| = m*theta for every integer m, and spread its n multiples of theta
    with gaps below min(|I_0|, |I_1|); survivors are checked by the engine.
    """
    _require_simple(spec)
    if n < 2:
        raise ValueError("a window of size 1 always contains a constant word; need n >= 2")
    if not spec.half_open:
        raise ValueError("constant-free window search expects half-open cells")
    alpha = spec.alpha
    x = x if x is not None else code(spec)
    lengths = [iv.length for iv, _ in spec.cells]
    short = min(lengths, key=_SortKeyAngle)
    one_len = lengths[0]
    tried = 0
    for k in _candidate_ks(alpha, k_max):
        theta = ExactAngle.multiple(k, alpha)
        if not theta < short:
            continue
        # |I_1| = m*theta (mod 1) iff d = m*k with c integral.
        if one_len.b == 1 and one_len.e != 0 and one_len.e % k == 0:
            continue
        if not _max_gap_below(alpha, k, n, short):
            continue
        tried += 1
        tau = Window(tuple(j * k for j in range(n)))
        rep = tau_language(x, tau, S)
        consts = {"0" * n, "1" * n} & rep.words
        verified = rep.count == 2 * n and not consts
        if verified:
            return ConstantFreeWindow(k, tau, rep.count, bool(consts), True, tried)
    raise WindowSearchError("no constant-free window found", {"n": n, "k_max": k_max, "S": S})


@dataclass(frozen=True)
class NonrecurrenceWitness:
    window: Window
    unique_shift: int
    letter: int
    occurrences: tuple[int, ...]
    horizon: int

    @property
    def confirmed(self) -> bool:
        return self.occurrences == (self.unique_shift,)

    def to_dict(self) -> dict:
        return {
            "window": self.window.to_dict(),
            "unique_shift": self.unique_shift,
            "letter": self.letter,
            "occurrences": list(self.occurrences),
            "horizon": self.horizon,
            "confirmed": self.confirmed,
        }


def _alpha_multiple_index(angle: ExactAngle) -> Optional[int]:
    # k*alpha mod 1 with k in N_0 is stored with b == 1, e == k.
    if angle.b == 1 and angle.e >= 0:
        return angle.e
    return None


def nonrecurrence_witness(
    spec: RotationCodingSpec,
    horizon: int = 100_000,
    x: Optional[SequenceSource] = None,
) -> Optional[NonrecurrenceWitness]:
    """Window whose constant pattern occurs at exactly one shift, or None.

    Applies to a closed cell [k_1 alpha, k_2 alpha] (its complement is the open
    cell (k_2 alpha, k_1 alpha)). With L its length and M = floor(1/(1-L)),
    the window {0, D, ..., M*D}, D = |k_2 - k_1|, reads the cell letter
    everywhere only at shift min(k_1, k_2), provided L < 1/2 or min(k_1, k_2) < D.
    Otherwise the window is extended so the earliest such shift is the unique one.
    """
    _require_simple(spec)
    if not spec.base_point.is_zero():
        return None
    for iv, letter in spec.cells:
        if not (iv.closed_lo and iv.closed_hi):
            continue
        k1, k2 = _alpha_multiple_index(iv.lo), _alpha_multiple_index(iv.hi)
        if k1 is None or k2 is None or k1 == k2:
            continue
        length = iv.length
        # M = floor(1/(1-L)): largest i with i*(1-L) <= 1, with 1-L = (b - a - e*alpha)/b.
        comp_u, comp_v, w = length.b - length.a, -length.e, length.b
        m = 1
        while True:
            # (m+1)*(1-L) <= 1  <=>  (m+1)*(comp_u + comp_v*alpha) - w <= 0
            s = spec.alpha.sign_linear((m + 1) * comp_u - w, (m + 1) * comp_v)
            if s > 0:
                break
            m += 1
        step = abs(k2 - k1)
        # Orbit points start + j*step read the letter on a run of 2m consecutive j
        # ending at j = m. Backward shifts start - j*step (j < m) that stay in N_0
        # would also read it, so lengthen the window by that many steps.
        extra = min(m - 1, min(k1, k2) // step)
        tau = Window(tuple(i * step for i in range(m + 1 + extra)))
        shift = min(k1, k2) - extra * step
        x = x if x is not None else code(spec)
        S = horizon - tau.diameter - 1
        bits = x.prefix(horizon)
        hit = np.ones(S + 1, dtype=bool)
        for t in tau.offsets:
            hit &= bits[t : t + S + 1] == letter
        occ = tuple(int(i) for i in np.flatnonzero(hit))
        return NonrecurrenceWitness(tau, shift, letter, occ, horizon)
    return None
