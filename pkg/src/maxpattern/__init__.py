"""Maximal pattern complexity of binary sequences."""

from .complexity import (
    ComplexityCertificate,
    SearchBounds,
    check_pattern_sturmian,
    morse_hedlund_check,
    periodicity_scan,
    pstar,
)
from .seqcore import (
    LanguageReport,
    SequenceRangeError,
    SequenceSource,
    ShiftPartition,
    Window,
    from_bits,
    refine,
    shift_partition,
    tau_language,
)

__all__ = [
    "ComplexityCertificate",
    "LanguageReport",
    "SearchBounds",
    "SequenceRangeError",
    "SequenceSource",
    "ShiftPartition",
    "Window",
    "check_pattern_sturmian",
    "from_bits",
    "morse_hedlund_check",
    "periodicity_scan",
    "pstar",
    "refine",
    "shift_partition",
    "tau_language",
]
