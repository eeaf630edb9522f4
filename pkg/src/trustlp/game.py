"""Core sender-receiver game: strategies, best responses, expected utilities.

Conventions (all indices 0-based internally):
  * ``UtilityMatrix.entries[i][j]`` is the sender's payoff when source symbol
    ``j`` is recovered as symbol ``i``. Diagonals are 0.
  * ``SenderStrategy.matrix[y][x]`` is the probability that source symbol
    ``x`` is encoded as signal ``y`` (columns sum to 1).
  * ``ReceiverStrategy.matrix[xh][y]`` is the probability that signal ``y``
    is decoded as symbol ``xh`` (columns sum to 1).
  * ``RecoveryKernel.matrix[xh][x]`` is the end-to-end probability that
    source symbol ``x`` is recovered as ``xh``.

Everything is exact ``fractions.Fraction`` arithmetic; argmax ties are true
ties, never tolerance artifacts.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .errors import InvalidInstance
from .rationals import RationalLike, as_fraction

Matrix = tuple[tuple[Fraction, ...], ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def _freeze_square(rows: Sequence[Sequence[RationalLike]]) -> Matrix:
    q = len(rows)
    if q == 0:
        raise InvalidInstance("matrix must have at least one row")
    out = []
    for row in rows:
        if len(row) != q:
            raise InvalidInstance(f"expected a {q}x{q} matrix, got a row of length {len(row)}")
        out.append(tuple(as_fraction(v) for v in row))
    return tuple(out)


def _check_column_stochastic(matrix: Matrix, what: str) -> None:
    q = len(matrix)
    for j in range(q):
        total = ZERO
        for i in range(q):
            v = matrix[i][j]
            if v < 0 or v > 1:
                raise InvalidInstance(f"{what}: entry ({i},{j}) = {v} outside [0,1]")
            total += v
        if total != 1:
            raise InvalidInstance(f"{what}: column {j} sums to {total}, expected 1")


@dataclass(frozen=True)
class UtilityMatrix:
    """The q x q payoff table of the sender, zero on the diagonal."""

    entries: Matrix

    def __init__(self, rows: Sequence[Sequence[RationalLike]]):
        entries = _freeze_square(rows)
        for i, value in enumerate(entries[i][i] for i in range(len(entries))):
            if value != 0:
                raise InvalidInstance(
                    f"diagonal entry ({i},{i}) = {value} is nonzero; "
                    "normalize the matrix first (diagonals must be 0)"
                )
        object.__setattr__(self, "entries", entries)

    @property
    def q(self) -> int:
        return len(self.entries)

    def off_diagonal(self) -> Iterator[tuple[int, int, Fraction]]:
        """Yield (recovered, source, payoff) for every ordered pair of distinct symbols."""
        for i in range(self.q):
            for j in range(self.q):
                if i != j:
                    yield i, j, self.entries[i][j]

    @staticmethod
    def normalized(rows: Sequence[Sequence[RationalLike]]) -> tuple["UtilityMatrix", Fraction]:
        """Subtract each column's diagonal entry from that column.

        Returns the normalized matrix and the constant objective shift
        (the sum of the original diagonal entries): any expected-utility
        value of the original game equals the normalized value plus the shift.
        """
        entries = _freeze_square(rows)
        q = len(entries)
        shift = sum((entries[x][x] for x in range(q)), ZERO)
        shifted = [[entries[i][j] - entries[j][j] for j in range(q)] for i in range(q)]
        return UtilityMatrix(shifted), shift


@dataclass(frozen=True)
class SenderStrategy:
    """Column-stochastic signaling rule pi(y|x)."""

    matrix: Matrix

    def __init__(self, rows: Sequence[Sequence[RationalLike]]):
        matrix = _freeze_square(rows)
        _check_column_stochastic(matrix, "sender strategy")
        object.__setattr__(self, "matrix", matrix)

    @property
    def q(self) -> int:
        return len(self.matrix)

    def active_signals(self) -> tuple[int, ...]:
        """Signals used with positive probability by any source symbol."""
        return tuple(y for y in range(self.q) if any(self.matrix[y][x] > 0 for x in range(self.q)))

    def support(self, x: int) -> tuple[int, ...]:
        """Signals assigned positive probability to source symbol x."""
        return tuple(y for y in range(self.q) if self.matrix[y][x] > 0)

    @staticmethod
    def identity(q: int) -> "SenderStrategy":
        return SenderStrategy([[1 if y == x else 0 for x in range(q)] for y in range(q)])


@dataclass(frozen=True)
class ReceiverStrategy:
    """Column-stochastic decoding rule sigma(xh|y)."""

    matrix: Matrix

    def __init__(self, rows: Sequence[Sequence[RationalLike]]):
        matrix = _freeze_square(rows)
        _check_column_stochastic(matrix, "receiver strategy")
        object.__setattr__(self, "matrix", matrix)

    @property
    def q(self) -> int:
        return len(self.matrix)

    def is_deterministic_on(self, signals: Sequence[int]) -> bool:
        return all(any(self.matrix[xh][y] == 1 for xh in range(self.q)) for y in signals)

    @staticmethod
    def identity(q: int) -> "ReceiverStrategy":
        return ReceiverStrategy([[1 if xh == y else 0 for y in range(q)] for xh in range(q)])


@dataclass(frozen=True)
class RecoveryKernel:
    """End-to-end recovery distribution mu(xh|x) induced by a strategy pair."""

    matrix: Matrix

    def __init__(self, rows: Sequence[Sequence[RationalLike]]):
        matrix = _freeze_square(rows)
        _check_column_stochastic(matrix, "recovery kernel")
        object.__setattr__(self, "matrix", matrix)

    @property
    def q(self) -> int:
        return len(self.matrix)

    def recovered_symbols(self) -> tuple[int, ...]:
        """Symbols recovered as themselves with positive probability."""
        return tuple(x for x in range(self.q) if self.matrix[x][x] > 0)

    def is_trust_feasible(self) -> bool:
        """True iff mu(xh|xh) >= mu(xh|x) for every pair of symbols."""
        return self.first_trust_violation() is None

    def first_trust_violation(self) -> tuple[int, int] | None:
        q = self.q
        for xh in range(q):
            for x in range(q):
                if x != xh and self.matrix[xh][xh] < self.matrix[xh][x]:
                    return xh, x
        return None

    def diagonal_mass(self) -> Fraction:
        return sum((self.matrix[x][x] for x in range(self.q)), ZERO)

    @staticmethod
    def identity(q: int) -> "RecoveryKernel":
        return RecoveryKernel([[1 if i == j else 0 for j in range(q)] for i in range(q)])


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of a structural check; lists violations in discovery order."""

    ok: bool
    violations: tuple[str, ...]

    @property
    def first_violation(self) -> str | None:
        return self.violations[0] if self.violations else None


def validate(rows: Sequence[Sequence[RationalLike]], *, check_trust: bool = False) -> ValidationReport:
    """Check a square matrix for exact column-stochasticity.

    With ``check_trust`` the trust constraints mu(xh|xh) >= mu(xh|x) are also
    checked. Never raises; violations are reported in row/column order.
    """
    violations: list[str] = []
    try:
        matrix = _freeze_square(rows)
    except InvalidInstance as exc:
        return ValidationReport(False, (str(exc),))
    q = len(matrix)
    for j in range(q):
        total = ZERO
        for i in range(q):
            v = matrix[i][j]
            if v < 0 or v > 1:
                violations.append(f"entry ({i},{j}) = {v} outside [0,1]")
            total += v
        if total != 1:
            violations.append(f"column {j} sums to {total}, expected 1")
    if check_trust and not violations:
        for xh in range(q):
            for x in range(q):
                if x != xh and matrix[xh][xh] < matrix[xh][x]:
                    violations.append(
                        f"trust violation at (recovered={xh}, source={x}): "
                        f"{matrix[xh][xh]} < {matrix[xh][x]}"
                    )
    return ValidationReport(not violations, tuple(violations))


def _require_same_q(a, b) -> int:
    if a.q != b.q:
        raise InvalidInstance(f"dimension mismatch: {a.q} vs {b.q}")
    return a.q


def recovery_value(sender: SenderStrategy, receiver: ReceiverStrategy) -> Fraction:
    """Expected number of correctly recovered symbols, scaled by q: sum pi(y|x) sigma(x|y)."""
    q = _require_same_q(sender, receiver)
    return sum(
        (sender.matrix[y][x] * receiver.matrix[x][y] for x in range(q) for y in range(q)),
        ZERO,
    )


def expected_utility(utility: UtilityMatrix, sender: SenderStrategy, receiver: ReceiverStrategy) -> Fraction:
    """Sender's expected utility (unscaled by 1/q): sum pi(y|x) sigma(xh|y) U(xh,x)."""
    q = _require_same_q(utility, sender)
    _require_same_q(sender, receiver)
    total = ZERO
    for x in range(q):
        for y in range(q):
            p = sender.matrix[y][x]
            if p == 0:
                continue
            for xh in range(q):
                s = receiver.matrix[xh][y]
                if s != 0:
                    total += p * s * utility.entries[xh][x]
    return total


def kernel_value(utility: UtilityMatrix, kernel: RecoveryKernel) -> Fraction:
    """V(mu) = sum mu(xh|x) U(xh,x); equals expected_utility of any inducing pair."""
    q = _require_same_q(utility, kernel)
    return sum(
        (kernel.matrix[xh][x] * utility.entries[xh][x] for xh in range(q) for x in range(q)),
        ZERO,
    )


def induced_kernel(sender: SenderStrategy, receiver: ReceiverStrategy) -> RecoveryKernel:
    """mu(xh|x) = sum_y pi(y|x) sigma(xh|y)."""
    q = _require_same_q(sender, receiver)
    rows = [
        [
            sum((receiver.matrix[xh][y] * sender.matrix[y][x] for y in range(q)), ZERO)
            for x in range(q)
        ]
        for xh in range(q)
    ]
    return RecoveryKernel(rows)


@dataclass(frozen=True)
class BestResponseStructure:
    """Per-signal argmax sets describing the receiver's best-response set.

    A receiver strategy is a best response iff, for every active signal y,
    its column y is supported inside ``argmax[y]``. Unused signals are
    unconstrained and canonicalized to uniform columns everywhere here.
    """

    q: int
    active_signals: tuple[int, ...]
    argmax: dict[int, tuple[int, ...]]

    @property
    def is_unique(self) -> bool:
        """True iff the best response is unique (all argmax sets are singletons)."""
        return all(len(self.argmax[y]) == 1 for y in self.active_signals)

    def selection_count(self) -> int:
        count = 1
        for y in self.active_signals:
            count *= len(self.argmax[y])
        return count

    def deterministic_selections(self) -> Iterator[dict[int, int]]:
        """Yield every deterministic best response as a map active signal -> symbol."""
        choices = [self.argmax[y] for y in self.active_signals]
        for picks in itertools.product(*choices):
            yield dict(zip(self.active_signals, picks))

    def receiver_from_selection(self, selection: dict[int, int]) -> ReceiverStrategy:
        """Build the canonical deterministic best response for a selection.

        Columns of unused signals are set to uniform.
        """
        uniform = Fraction(1, self.q)
        rows = [[ZERO] * self.q for _ in range(self.q)]
        for y in range(self.q):
            if y in selection:
                rows[selection[y]][y] = ONE
            else:
                for xh in range(self.q):
                    rows[xh][y] = uniform
        return ReceiverStrategy(rows)

    def contains(self, sender: SenderStrategy, receiver: ReceiverStrategy) -> bool:
        """Membership test: supp(sigma(.|y)) inside argmax for every active signal."""
        for y in self.active_signals:
            allowed = set(self.argmax[y])
            for xh in range(self.q):
                if receiver.matrix[xh][y] > 0 and xh not in allowed:
                    return False
        return True


def best_response_structure(sender: SenderStrategy) -> BestResponseStructure:
    """Compute per-signal argmax sets of pi(y|.) with exact comparisons."""
    q = sender.q
    active = sender.active_signals()
    argmax: dict[int, tuple[int, ...]] = {}
    for y in active:
        row = sender.matrix[y]
        best = max(row)
        argmax[y] = tuple(x for x in range(q) if row[x] == best)
    return BestResponseStructure(q=q, active_signals=active, argmax=argmax)


def choice_utility(utility: UtilityMatrix, sender: SenderStrategy, xh: int, y: int) -> Fraction:
    """t(xh, y): the sender's payoff from signal y when it is decoded as xh."""
    q = _require_same_q(utility, sender)
    return sum((sender.matrix[y][x] * utility.entries[xh][x] for x in range(q)), ZERO)


def _choice_utilities(
    utility: UtilityMatrix, sender: SenderStrategy, y: int, candidates: tuple[int, ...]
) -> list[tuple[Fraction, int]]:
    return [(choice_utility(utility, sender, xh, y), xh) for xh in candidates]


def wceu(utility: UtilityMatrix, sender: SenderStrategy) -> tuple[Fraction, ReceiverStrategy]:
    """Worst-case expected utility over best responses, with a witnessing deterministic sigma.

    Decomposes per active signal: sum_y min over argmax(y) of t(xh, y);
    valid because the sender's utility is linear and separable over signals.
    """
    _require_same_q(utility, sender)
    structure = best_response_structure(sender)
    total = ZERO
    selection: dict[int, int] = {}
    for y in structure.active_signals:
        scored = _choice_utilities(utility, sender, y, structure.argmax[y])
        value = min(v for v, _ in scored)
        selection[y] = min(x for v, x in scored if v == value)
        total += value
    return total, structure.receiver_from_selection(selection)


def bceu(utility: UtilityMatrix, sender: SenderStrategy) -> tuple[Fraction, ReceiverStrategy]:
    """Best-case expected utility over best responses, with a witnessing deterministic sigma."""
    _require_same_q(utility, sender)
    structure = best_response_structure(sender)
    total = ZERO
    selection: dict[int, int] = {}
    for y in structure.active_signals:
        scored = _choice_utilities(utility, sender, y, structure.argmax[y])
        value = max(v for v, _ in scored)
        selection[y] = min(x for v, x in scored if v == value)
        total += value
    return total, structure.receiver_from_selection(selection)


def recovered_symbols(sender: SenderStrategy, receiver: ReceiverStrategy) -> tuple[int, ...]:
    """Symbols with positive probability of being recovered under (pi, sigma)."""
    q = _require_same_q(sender, receiver)
    active = sender.active_signals()
    return tuple(
        xh for xh in range(q) if any(receiver.matrix[xh][y] > 0 for y in active)
    )
