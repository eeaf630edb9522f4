"""Shared fixtures and random-instance generators for the test suite."""

from __future__ import annotations

from fractions import Fraction
from random import Random

import pytest

from trustlp.game import UtilityMatrix

# Example 1: 2x2, value 1, supremum unattained.
U1_ROWS = [[0, 1], [-1, 0]]
# Example 2: 3x3 cyclic +-1, value 3/2, informativeness 3/2.
U2_ROWS = [[0, 1, -1], [-1, 0, 1], [1, -1, 0]]


@pytest.fixture
def u1() -> UtilityMatrix:
    return UtilityMatrix(U1_ROWS)


@pytest.fixture
def u2() -> UtilityMatrix:
    return UtilityMatrix(U2_ROWS)


def random_utility(
    rng: Random,
    q: int,
    *,
    lo: int = -3,
    hi: int = 3,
    denominators: tuple[int, ...] = (1, 2, 3, 4),
    forbid_zero: bool = False,
) -> UtilityMatrix:
    """Random zero-diagonal payoff table with entries in [lo, hi]."""
    rows = [[Fraction(0)] * q for _ in range(q)]
    for i in range(q):
        for j in range(q):
            if i == j:
                continue
            while True:
                d = rng.choice(denominators)
                value = Fraction(rng.randint(lo * d, hi * d), d)
                if not (forbid_zero and value == 0):
                    rows[i][j] = value
                    break
    return UtilityMatrix(rows)


def all_negative_utility(rng: Random, q: int) -> UtilityMatrix:
    rows = [[Fraction(0)] * q for _ in range(q)]
    for i in range(q):
        for j in range(q):
            if i != j:
                d = rng.choice((1, 2, 3))
                rows[i][j] = Fraction(-rng.randint(1, 3 * d), d)
    return UtilityMatrix(rows)


def cycle_utility(q: int, u: Fraction, *, negative=Fraction(-1)) -> UtilityMatrix:
    """Obfuscation graph = the directed cycle 0 -> 1 -> ... -> q-1 -> 0, weight u."""
    rows = [[negative] * q for _ in range(q)]
    for i in range(q):
        rows[i][i] = Fraction(0)
    for i in range(q):
        rows[(i + 1) % q][i] = u
    return UtilityMatrix(rows)


def chain_utility(q: int, u: Fraction, *, negative=Fraction(-1)) -> UtilityMatrix:
    """Obfuscation graph = the directed path 0 -> 1 -> ... -> q-1, weight u."""
    rows = [[negative] * q for _ in range(q)]
    for i in range(q):
        rows[i][i] = Fraction(0)
    for i in range(q - 1):
        rows[i + 1][i] = u
    return UtilityMatrix(rows)


def star_utility(center: int, weights: dict[int, Fraction], q: int, *, negative=Fraction(-1)) -> UtilityMatrix:
    """Obfuscation graph = all spokes pointing at ``center`` with given weights."""
    rows = [[negative] * q for _ in range(q)]
    for i in range(q):
        rows[i][i] = Fraction(0)
    for x, w in weights.items():
        rows[center][x] = w
    return UtilityMatrix(rows)
