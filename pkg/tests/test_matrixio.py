"""Rational parsing and the utility-matrix text format."""

from fractions import Fraction

import pytest

from trustlp.errors import ParseError
from trustlp.matrixio import matrix_to_text, parse_matrix_text
from trustlp.rationals import format_rational, parse_rational


def test_parse_rational_forms():
    assert parse_rational("3/4") == Fraction(3, 4)
    assert parse_rational("-1/2") == Fraction(-1, 2)
    assert parse_rational("2") == Fraction(2)
    assert parse_rational("0.5") == Fraction(1, 2)
    assert parse_rational("-1.25") == Fraction(-5, 4)
    assert parse_rational(".5") == Fraction(1, 2)


@pytest.mark.parametrize("bad", ["", "x", "1/0", "1e3", "1/2/3", "--1", "0x5", "nan"])
def test_parse_rational_rejects(bad):
    with pytest.raises(ValueError):
        parse_rational(bad)


def test_format_rational_lowest_terms():
    assert format_rational(Fraction(6, 4)) == "3/2"
    assert format_rational(Fraction(-4, 2)) == "-2"


def test_parse_example_matrix():
    matrix, shift = parse_matrix_text("2\n0 1\n-1 0\n")
    assert matrix.q == 2
    assert matrix.entries[0][1] == 1
    assert matrix.entries[1][0] == -1
    assert shift == 0


def test_decimal_and_fraction_parse_identically():
    a, _ = parse_matrix_text("2\n0 0.5\n1/4 0\n")
    b, _ = parse_matrix_text("2\n0 1/2\n0.25 0\n")
    assert a.entries == b.entries


def test_blank_lines_are_skipped():
    matrix, _ = parse_matrix_text("2\n\n0 1\n\n-1 0\n\n")
    assert matrix.q == 2


def test_nonzero_diagonal_names_the_cell():
    with pytest.raises(ParseError) as exc:
        parse_matrix_text("2\n1 1\n-1 0\n")
    assert "row 1, column 1" in str(exc.value)


def test_normalize_reports_shift():
    matrix, shift = parse_matrix_text("2\n1 1\n-1 2\n", normalize=True)
    assert shift == Fraction(3)
    assert matrix.entries[0][0] == 0 and matrix.entries[1][1] == 0
    assert matrix.entries[0][1] == Fraction(-1)  # 1 - 2
    assert matrix.entries[1][0] == Fraction(-2)  # -1 - 1


def test_malformed_number_carries_position():
    with pytest.raises(ParseError) as exc:
        parse_matrix_text("2\n0 1\n-1 zz\n")
    assert exc.value.line == 3
    assert exc.value.column == 4


def test_wrong_row_count():
    with pytest.raises(ParseError):
        parse_matrix_text("3\n0 1 1\n1 0 1\n")
    with pytest.raises(ParseError):
        parse_matrix_text("1\n0\n7\n")


def test_wrong_entry_count():
    with pytest.raises(ParseError) as exc:
        parse_matrix_text("2\n0 1 5\n-1 0\n")
    assert exc.value.line == 2


def test_roundtrip():
    matrix, _ = parse_matrix_text("3\n0 1/3 -1\n-1 0 0.5\n2 -1/7 0\n")
    again, _ = parse_matrix_text(matrix_to_text(matrix))
    assert again.entries == matrix.entries
