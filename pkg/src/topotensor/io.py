"""Text formats: DTEN v1 (tensors) and scpx v1 (simplicial complexes).

DTEN::

    dten 1
    <d>
    <n_1> ... <n_d>
    <values, whitespace separated, row-major>

scpx::

    scpx 1
    <num_vertices>
    <one simplex per line as vertex ids>   # maximal simplices suffice
"""

from __future__ import annotations

import math
from pathlib import Path

from .complex import SimplicialComplex
from .errors import FormatError
from .tensor import Tensor

__all__ = [
    "format_dten",
    "parse_dten",
    "read_dten",
    "write_dten",
    "format_scpx",
    "parse_scpx",
    "read_scpx",
    "write_scpx",
    "sniff",
]


def _lines(text: str) -> list[str]:
    return [ln.split("#", 1)[0].strip() for ln in text.splitlines()]


def format_dten(t: Tensor, per_line: int = 8) -> str:
    vals = [format(float(x), ".17g") for x in t.values]
    rows = [" ".join(vals[i : i + per_line]) for i in range(0, len(vals), per_line)]
    head = ["dten 1", str(t.order), " ".join(str(n) for n in t.dims)]
    return "\n".join(head + rows) + "\n"


def parse_dten(text: str) -> Tensor:
    lines = [ln for ln in _lines(text) if ln]
    if len(lines) < 3 or lines[0].split() != ["dten", "1"]:
        raise FormatError("not a DTEN v1 file (expected header 'dten 1')")
    try:
        d = int(lines[1])
        dims = [int(x) for x in lines[2].split()]
    except ValueError as exc:
        raise FormatError(f"bad DTEN order/dims: {exc}") from None
    if d < 1 or len(dims) != d or any(n < 1 for n in dims):
        raise FormatError(f"DTEN order {d} does not match dims {dims}")
    try:
        values = [float(x) for ln in lines[3:] for x in ln.split()]
    except ValueError as exc:
        raise FormatError(f"bad DTEN value: {exc}") from None
    if len(values) != math.prod(dims):
        raise FormatError(f"DTEN holds {len(values)} values, dims {dims} need {math.prod(dims)}")
    if not all(math.isfinite(v) for v in values):
        raise FormatError("DTEN values must be finite")
    return Tensor.from_values(dims, values)


def read_dten(path) -> Tensor:
    return parse_dten(Path(path).read_text())


def write_dten(t: Tensor, path) -> None:
    Path(path).write_text(format_dten(t))


def format_scpx(c: SimplicialComplex, maximal_only: bool = True) -> str:
    simplices = c.maximal_simplices() if maximal_only else list(c.all_simplices())
    simplices = sorted(simplices, key=lambda s: (len(s), s))
    body = [" ".join(str(v) for v in s) for s in simplices]
    return "\n".join(["scpx 1", str(c.num_vertices)] + body) + "\n"


def parse_scpx(text: str) -> SimplicialComplex:
    lines = _lines(text)
    content = [ln for ln in lines if ln]
    if len(content) < 2 or content[0].split() != ["scpx", "1"]:
        raise FormatError("not an scpx v1 file (expected header 'scpx 1')")
    try:
        n = int(content[1])
        simplices = [[int(x) for x in ln.split()] for ln in content[2:]]
    except ValueError as exc:
        raise FormatError(f"bad scpx line: {exc}") from None
    if n < 0:
        raise FormatError("num_vertices must be nonnegative")
    for s in simplices:
        if len(set(s)) != len(s) or any(v < 0 or v >= n for v in s):
            raise FormatError(f"bad simplex {s} for {n} vertices")
    return SimplicialComplex.from_simplices(n, simplices)


def read_scpx(path) -> SimplicialComplex:
    return parse_scpx(Path(path).read_text())


def write_scpx(c: SimplicialComplex, path) -> None:
    Path(path).write_text(format_scpx(c))


def sniff(path) -> str:
    """Return ``"dten"`` or ``"scpx"`` from the file's header line."""
    with open(path) as fh:
        for line in fh:
            words = line.split("#", 1)[0].split()
            if words:
                if words[0] in ("dten", "scpx"):
                    return words[0]
                break
    raise FormatError(f"{path}: unrecognized file (expected a 'dten 1' or 'scpx 1' header)")
