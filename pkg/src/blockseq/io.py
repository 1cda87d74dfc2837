"""Text formats: ``.pdsys`` design files, ``.seq`` sequencing files, JSON run reports.

Design file: the first non-comment line is ``n k t lambda``; every further
non-comment line is one block of k vertex ids. ``#`` comments run to end of
line and blank lines are ignored.
"""
from __future__ import annotations

import json
from pathlib import Path

from .design import Params, PartialSystem
from .errors import InputError
from .verifier import Sequencing


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _ints(line: str, lineno: int) -> list:
    try:
        return [int(tok) for tok in line.split()]
    except ValueError:
        raise InputError(f"line {lineno}: expected integers, got {line!r}") from None


def parse_design(text: str) -> PartialSystem:
    lines = _content_lines(text)
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise InputError("design file has no header line") from None
    fields = _ints(header, lineno)
    if len(fields) != 4:
        raise InputError(f"line {lineno}: header must be 'n k t lambda'")
    params = Params(*fields)
    blocks = [_ints(line, no) for no, line in lines]
    return PartialSystem(params, blocks)


def format_design(sys: PartialSystem) -> str:
    p = sys.params
    out = [f"{p.n} {p.k} {p.t} {p.lam}"]
    out.extend(" ".join(str(int(v)) for v in row) for row in sys.blocks)
    return "\n".join(out) + "\n"


def read_design(path) -> PartialSystem:
    return parse_design(Path(path).read_text(encoding="utf-8"))


def write_design(sys: PartialSystem, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        p = sys.params
        fh.write(f"{p.n} {p.k} {p.t} {p.lam}\n")
        # chunked so multi-million block systems don't build one giant string
        for lo in range(0, sys.num_blocks, 1 << 16):
            chunk = sys.blocks[lo : lo + (1 << 16)]
            fh.write("".join(" ".join(map(str, row)) + "\n" for row in chunk.tolist()))


def parse_sequencing(text: str) -> Sequencing:
    return Sequencing(_ints(text, 0) if text.strip() else [])


def format_sequencing(seq: Sequencing) -> str:
    return "".join(f"{int(v)}\n" for v in seq.order)


def read_sequencing(path) -> Sequencing:
    return parse_sequencing(Path(path).read_text(encoding="utf-8"))


def write_sequencing(seq: Sequencing, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_sequencing(seq))


def write_report(report, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(report.to_dict(), fh, indent=2)
        fh.write("\n")
