"""Bit-prefix files and generator spec files."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Optional, Union

from .rotation import RotationCodingSpec, code
from .seqcore import SequenceSource, from_bits
from .toeplitz import HolePolicy, SimpleToeplitzSpec, ToeplitzSpec, generate


class SpecError(ValueError):
    pass


def read_bits(path: Union[str, Path]) -> str:
    """Body of a .bits file: '#' lines are comments, whitespace is ignored."""
    out = []
    for line in Path(path).read_text().splitlines():
        if line.lstrip().startswith("#"):
            continue
        out.append("".join(line.split()))
    body = "".join(out)
    bad = set(body) - {"0", "1"}
    if bad:
        raise SpecError(f"{path}: unexpected characters {sorted(bad)} in bit body")
    return body


def read_header(path: Union[str, Path]) -> dict:
    """Key/value pairs from '# key: value' header lines (JSON values when parseable)."""
    head = {}
    for line in Path(path).read_text().splitlines():
        s = line.strip()
        if not s.startswith("#"):
            continue
        key, sep, val = s[1:].partition(":")
        if not sep:
            continue
        val = val.strip()
        try:
            head[key.strip()] = json.loads(val)
        except json.JSONDecodeError:
            head[key.strip()] = val
    return head


def write_bits(path: Union[str, Path], bits: str, header: Optional[dict] = None) -> None:
    lines = [f"# {k}: {json.dumps(v, sort_keys=True)}" for k, v in (header or {}).items()]
    lines.append(bits)
    Path(path).write_text("\n".join(lines) + "\n")


def load_prefix(path: Union[str, Path]) -> SequenceSource:
    bits = read_bits(path)
    if not bits:
        raise SpecError(f"{path}: empty bit body")
    return from_bits(bits, kind="file-prefix", meta={"path": str(path)})


def spec_from_dict(data: dict):
    kind = data.get("kind")
    try:
        if kind == "rotation":
            return RotationCodingSpec.from_dict(data)
        if kind == "toeplitz":
            return ToeplitzSpec.from_dict(data)
        if kind == "simple-toeplitz":
            return SimpleToeplitzSpec.from_dict(data)
    except (KeyError, TypeError) as exc:
        raise SpecError(f"malformed {kind} spec: missing or bad field {exc}") from exc
    raise SpecError(f"unknown spec kind {kind!r}; expected rotation, toeplitz or simple-toeplitz")


def source_of(spec) -> SequenceSource:
    if isinstance(spec, RotationCodingSpec):
        return code(spec)
    if isinstance(spec, SimpleToeplitzSpec):
        return generate(spec.to_toeplitz(), HolePolicy.deeper(fallback=0))
    if isinstance(spec, ToeplitzSpec):
        return generate(spec, HolePolicy.deeper(fallback=0))
    raise SpecError(f"cannot build a sequence from {type(spec).__name__}")


def load_spec_file(path: Union[str, Path]):
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path}: not valid JSON ({exc})") from exc
    return spec_from_dict(data)
