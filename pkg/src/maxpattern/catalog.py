"""Bundled generators, addressable as ``builtin:<name>``."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from . import rotation, toeplitz, witnesses
from .seqcore import SequenceSource, constant, eventually_constant
from .specio import SpecError, load_prefix, load_spec_file, source_of


@dataclass(frozen=True)
class Builtin:
    name: str
    description: str
    make_spec: Optional[Callable[[], object]]
    make_source: Callable[[], SequenceSource]
    nonperiodic: bool


def _golden_closed() -> rotation.RotationCodingSpec:
    a = rotation.IrrationalAngle.golden()
    return rotation.two_interval_spec(
        a, rotation.ExactAngle.zero(a), rotation.ExactAngle.multiple(1, a), letter=0, closed_lo=True, closed_hi=True
    )


def _small_closed() -> rotation.RotationCodingSpec:
    # (3 - sqrt 5)/2 = [0; 2, 1, 1, ...] < 1/2
    a = rotation.IrrationalAngle([0, 2], [1])
    return rotation.two_interval_spec(
        a, rotation.ExactAngle.zero(a), rotation.ExactAngle.multiple(1, a), letter=0, closed_lo=True, closed_hi=True
    )


def _from_spec(make):
    return lambda: source_of(make())


_ENTRIES = [
    Builtin("fibonacci", "golden rotation, I_1 = [0, alpha)", rotation.fibonacci_spec, _from_spec(rotation.fibonacci_spec), True),
    Builtin("rotation-closed-golden", "golden rotation, I_0 = [0, alpha] closed", _golden_closed, _from_spec(_golden_closed), True),
    Builtin("rotation-closed-small", "alpha = (3 - sqrt 5)/2, I_0 = [0, alpha] closed", _small_closed, _from_spec(_small_closed), True),
    Builtin("toeplitz-3k", "periods 3^k, fills 3^(k-1)-1 -> 0, 2*3^(k-1)-1 -> 1", toeplitz.three_adic_example, _from_spec(toeplitz.three_adic_example), True),
    Builtin("toeplitz-2hole", "periods 3^k, two hole chains", toeplitz.two_hole_example, _from_spec(toeplitz.two_hole_example), True),
    Builtin("simple-dyadic", "simple Toeplitz, periods 2^k, holes 0, letters alternate", toeplitz.alternating_dyadic, _from_spec(toeplitz.alternating_dyadic), True),
    Builtin("block-doubling", "w_{k+1} = w_k 0^k w_k, w_0 = 1", None, witnesses.block_doubling, True),
    Builtin("powers-plus-2", "indicator of 2^k + k", None, lambda: witnesses.powers_plus(2), True),
    Builtin("powers-3", "indicator of 3^k", None, lambda: witnesses.powers(3), True),
    Builtin("powers-2", "indicator of 2^k", None, lambda: witnesses.powers(2), True),
    Builtin("squares", "indicator of the squares", None, witnesses.squares, True),
    Builtin(
        "cofinite-7",
        "indicator of N_0 minus {0,1,2,3,5,9,10}",
        None,
        lambda: witnesses.finite_complement([0, 1, 2, 3, 5, 9, 10]),
        False,
    ),
    Builtin("intro-010110", "prefix 010110 followed by 1s", None, lambda: eventually_constant("010110", 1), False),
    Builtin("constant-0", "all zeros", None, lambda: constant(0), False),
    Builtin("constant-1", "all ones", None, lambda: constant(1), False),
]

BUILTINS = {b.name: b for b in _ENTRIES}


def nonperiodic_builtins() -> list[Builtin]:
    return [b for b in _ENTRIES if b.nonperiodic]


def resolve(spec_arg: Optional[str] = None, prefix_file: Optional[str] = None):
    """(source, spec object or None, description dict) from CLI-style arguments."""
    if prefix_file:
        return load_prefix(prefix_file), None, {"prefix_file": prefix_file}
    if not spec_arg:
        raise SpecError("give --spec (file or builtin:<name>) or --prefix-file")
    if spec_arg.startswith("builtin:"):
        name = spec_arg.split(":", 1)[1]
        if name not in BUILTINS:
            raise SpecError(f"unknown builtin {name!r}; choose from {', '.join(BUILTINS)}")
        b = BUILTINS[name]
        spec = b.make_spec() if b.make_spec else None
        return (source_of(spec) if spec is not None else b.make_source()), spec, {"builtin": name}
    spec = load_spec_file(spec_arg)
    return source_of(spec), spec, {"spec_file": spec_arg}
