"""Utility-matrix text format.

Line 1 holds the alphabet size q; the next q lines hold q whitespace-separated
rationals each (``a/b``, integer, or finite decimal). Row i, column j is the
sender's payoff when source symbol j is recovered as symbol i.
"""

from __future__ import annotations

from fractions import Fraction
from pathlib import Path

from .errors import ParseError
from .game import UtilityMatrix
from .rationals import format_rational, parse_rational


def _tokens_with_columns(line: str) -> list[tuple[str, int]]:
    out = []
    col = 0
    for token in line.split():
        col = line.index(token, col)
        out.append((token, col + 1))
        col += len(token)
    return out


def parse_matrix_text(text: str, *, normalize: bool = False) -> tuple[UtilityMatrix, Fraction]:
    """Parse the text format into a UtilityMatrix.

    Returns the matrix and the objective shift (0 unless ``normalize``).
    Without ``normalize`` a nonzero diagonal entry is a ParseError naming the
    cell; with it, each column's diagonal is subtracted and the total shift
    reported.
    """
    lines = text.splitlines()
    if not lines or not lines[0].split():
        raise ParseError("missing alphabet size", 1, 1)
    headers = _tokens_with_columns(lines[0])
    if len(headers) != 1:
        raise ParseError("expected a single integer (alphabet size)", 1, headers[1][1])
    token, col = headers[0]
    if not token.isdigit() or int(token) < 1:
        raise ParseError(f"alphabet size must be a positive integer, got {token!r}", 1, col)
    q = int(token)

    rows: list[list[Fraction]] = []
    filled = 0
    for lineno in range(1, len(lines)):
        tokens = _tokens_with_columns(lines[lineno])
        if not tokens:
            continue
        if filled == q:
            raise ParseError(f"expected {q} matrix rows, found extra content", lineno + 1, tokens[0][1])
        if len(tokens) != q:
            raise ParseError(
                f"expected {q} entries in row {filled + 1}, got {len(tokens)}",
                lineno + 1,
                tokens[0][1],
            )
        row = []
        for token, col in tokens:
            try:
                row.append(parse_rational(token))
            except ValueError as exc:
                raise ParseError(str(exc), lineno + 1, col) from None
        rows.append(row)
        filled += 1
    if filled != q:
        raise ParseError(f"expected {q} matrix rows, got {filled}", len(lines) + 1, 1)

    if normalize:
        return UtilityMatrix.normalized(rows)
    for i in range(q):
        if rows[i][i] != 0:
            raise ParseError(
                f"nonzero diagonal entry at row {i + 1}, column {i + 1} "
                f"(value {format_rational(rows[i][i])}); pass --normalize to shift it out",
                i + 2,
                1,
            )
    return UtilityMatrix(rows), Fraction(0)


def parse_matrix_file(path: str | Path, *, normalize: bool = False) -> tuple[UtilityMatrix, Fraction]:
    return parse_matrix_text(Path(path).read_text(encoding="utf-8"), normalize=normalize)


def matrix_to_text(utility: UtilityMatrix) -> str:
    lines = [str(utility.q)]
    for row in utility.entries:
        lines.append(" ".join(format_rational(v) for v in row))
    return "\n".join(lines) + "\n"
