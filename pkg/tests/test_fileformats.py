import pytest
from hypothesis import given, settings

from boolspec.core import from_points, support
from boolspec.fileformats import (
    ParseError,
    dump_points,
    dump_table,
    loads_function,
    parse_points,
    parse_table,
    sniff_format,
)

from conftest import boolean_functions

BALL = """n=3
# Hamming ball of radius 1
000
100

010
0x4
"""


def test_parse_points_with_comments_and_hex():
    pts = parse_points(BALL)
    assert pts.n == 3
    assert pts.tolist() == [0, 1, 2, 4]


def test_coordinate_one_is_leftmost():
    assert parse_points("n=4\n1000\n").tolist() == [1]
    assert parse_points("n=4\n0001\n").tolist() == [8]


@pytest.mark.parametrize("text, line", [
    ("n=3\n000\n01x\n", 3),
    ("n=3\n0000\n", 2),
    ("m=3\n000\n", 1),
    ("n=3\n0x8\n", 2),
    ("n=three\n", 1),
])
def test_parse_errors_report_line(text, line):
    with pytest.raises(ParseError) as exc:
        parse_points(text)
    assert exc.value.line == line
    assert f"line {line}" in str(exc.value)


def test_table_format_layout(ball3):
    assert dump_table(ball3) == "n=3\n17\n"
    f = from_points(4, [0, 9, 15])
    # bit x at byte x//8, bit x%8
    assert dump_table(f) == "n=4\n0182\n"
    assert parse_table("n=4\n0182\n") == f


@settings(max_examples=100, deadline=None)
@given(boolean_functions(max_n=10))
def test_round_trips(f):
    assert parse_table(dump_table(f)) == f
    assert loads_function(dump_table(f), "table") == f
    pts = support(f)
    assert parse_points(dump_points(pts)) == pts
    assert loads_function(dump_points(pts), "points") == f


def test_sniff():
    assert sniff_format(BALL) == "points"
    assert sniff_format("n=4\n0182\n") == "table"
    assert sniff_format("n=3\n101\n") == "points"


def test_table_wrong_length():
    with pytest.raises(ParseError):
        parse_table("n=4\n01\n")
