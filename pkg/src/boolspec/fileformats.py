"""Point-set and truth-table text formats.

Point-set file::

    n=3
    # comments and blank lines are ignored
    000
    100
    0x4

Points are binary strings of length n with coordinate 1 leftmost, or
``0x``-prefixed hex integers.

Truth-table file::

    n=3
    17

The second line is lowercase hex of the packed table (bit x at byte x//8,
bit x%8).
"""
from __future__ import annotations

from pathlib import Path

from .core import BoolSpecError, BooleanFunction, PointSet, check_dimension, from_points


class ParseError(BoolSpecError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _parse_header(lineno: int, line: str) -> int:
    key, sep, value = line.partition("=")
    if key.strip() != "n" or not sep:
        raise ParseError(f"expected header 'n=<int>', got {line!r}", lineno)
    try:
        n = int(value.strip())
    except ValueError:
        raise ParseError(f"dimension is not an integer: {value.strip()!r}", lineno)
    try:
        return check_dimension(n)
    except BoolSpecError as exc:
        raise ParseError(str(exc), lineno)


def parse_point(token: str, n: int, lineno: int | None = None) -> int:
    if token.lower().startswith("0x"):
        try:
            x = int(token[2:], 16)
        except ValueError:
            raise ParseError(f"bad hex point {token!r}", lineno)
    else:
        if len(token) != n or set(token) - {"0", "1"}:
            raise ParseError(f"bad point {token!r}: expected {n} binary digits", lineno)
        # coordinate 1 is the leftmost character and maps to bit 0
        x = int(token[::-1], 2)
    if x >= 1 << n:
        raise ParseError(f"point {token!r} out of range for n={n}", lineno)
    return x


def format_point(x: int, n: int) -> str:
    return format(x, f"0{n}b")[::-1]


def parse_points(text: str) -> PointSet:
    lines = _content_lines(text)
    try:
        lineno, header = next(lines)
    except StopIteration:
        raise ParseError("empty input")
    n = _parse_header(lineno, header)
    pts = [parse_point(tok, n, ln) for ln, tok in lines]
    return PointSet(n, pts)


def dump_points(points: PointSet) -> str:
    body = "".join(format_point(x, points.n) + "\n" for x in points)
    return f"n={points.n}\n" + body


def parse_table(text: str) -> BooleanFunction:
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty input")
    n = _parse_header(*lines[0])
    if len(lines) != 2:
        raise ParseError("truth-table file needs exactly one hex line after the header",
                         lines[-1][0])
    lineno, hexline = lines[1]
    try:
        raw = bytes.fromhex(hexline)
    except ValueError:
        raise ParseError("truth table is not valid hex", lineno)
    try:
        return BooleanFunction(n, raw)
    except BoolSpecError as exc:
        raise ParseError(str(exc), lineno)


def dump_table(f: BooleanFunction) -> str:
    return f"n={f.n}\n{f.table.hex()}\n"


def sniff_format(text: str) -> str:
    """Guess ``points`` or ``table`` from file contents."""
    lines = [tok for _, tok in _content_lines(text)]
    if len(lines) == 2 and not lines[1].lower().startswith("0x"):
        n_line = lines[0].partition("=")[2].strip()
        if n_line.isdigit():
            n = int(n_line)
            width = 2 * max(1, (1 << n) // 8) if n < 40 else -1
            if len(lines[1]) == width and (len(lines[1]) != n or set(lines[1]) - {"0", "1"}):
                return "table"
    return "points"


def load_function(path, fmt: str | None = None) -> BooleanFunction:
    text = Path(path).read_text(encoding="utf-8")
    return loads_function(text, fmt)


def loads_function(text: str, fmt: str | None = None) -> BooleanFunction:
    fmt = fmt or sniff_format(text)
    if fmt == "table":
        return parse_table(text)
    if fmt == "points":
        pts = parse_points(text)
        return from_points(pts.n, pts)
    raise BoolSpecError(f"unknown format {fmt!r}")
