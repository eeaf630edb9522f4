"""Top-level game quantities: value, informativeness, near-equilibrium sequences.

``solve_game`` runs the certified game LP, then minimizes the truthful mass
over its optimal face, and converts the minimizing kernel into a witness
strategy pair. ``eps_ses_sequence`` turns an optimal kernel into sender
strategies with unique best responses whose worst-case utility approaches the
game value: ties in the witness strategy are broken by shaving delta/k of
probability off each tied entry and returning it to the column's own signal.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InvalidInstance
from .game import (
    ReceiverStrategy,
    RecoveryKernel,
    SenderStrategy,
    UtilityMatrix,
    best_response_structure,
    kernel_value,
    wceu,
)
from .lp import (
    build_informativeness,
    build_primal,
    certified_solve,
    dual_values_from_certificate,
    kernel_from_certificate,
)

ZERO = Fraction(0)
ONE = Fraction(1)


@dataclass(frozen=True)
class EquilibriumReport:
    """Solved game: value, informativeness, witnesses, and duals.

    ``kernel`` is optimal for both the game LP and the informativeness LP;
    (``sender``, ``receiver``) induce it exactly. ``sgv_attained_exactly``
    says whether the witness strategy itself achieves the value (the supremum
    may be unattained); ``full_disclosure`` flags the identity-only optimum.
    """

    q: int
    sgv: Fraction
    informativeness: Fraction
    kernel: RecoveryKernel
    sender: SenderStrategy
    receiver: ReceiverStrategy
    dual_w: tuple[Fraction, ...]
    dual_v: dict[tuple[int, int], Fraction]
    sgv_attained_exactly: bool
    full_disclosure: bool


@dataclass(frozen=True)
class EpsSesStep:
    """One member of a near-equilibrium sequence.

    ``epsilon`` is the exact shortfall sgv - wceu(strategy); ``unique_br``
    reports whether the strategy has a unique best response (true for every
    perturbed step by construction).
    """

    k: int
    strategy: SenderStrategy
    epsilon: Fraction
    wceu: Fraction
    unique_br: bool


def kernel_to_strategies(kernel: RecoveryKernel) -> tuple[SenderStrategy, ReceiverStrategy]:
    """Split a trust-feasible kernel into an inducing strategy pair.

    Each recovered symbol i gets its own signal (reusing index i); the sender
    plays pi(y_i|x) = mu(i|x) and the receiver decodes y_i deterministically
    to i, which the trust constraints make a best response. Unused signal
    columns of the receiver are canonicalized to uniform.
    """
    violation = kernel.first_trust_violation()
    if violation is not None:
        raise InvalidInstance(
            f"kernel violates the trust constraint at (recovered={violation[0]}, "
            f"source={violation[1]})"
        )
    q = kernel.q
    recovered = kernel.recovered_symbols()
    sender_rows = [[ZERO] * q for _ in range(q)]
    for i in recovered:
        for x in range(q):
            sender_rows[i][x] = kernel.matrix[i][x]
    receiver_rows = [[ZERO] * q for _ in range(q)]
    uniform = Fraction(1, q)
    for y in range(q):
        if y in recovered:
            receiver_rows[y][y] = ONE
        else:
            for xh in range(q):
                receiver_rows[xh][y] = uniform
    return SenderStrategy(sender_rows), ReceiverStrategy(receiver_rows)


def solve_game(utility: UtilityMatrix, *, joint_informativeness: bool = False) -> EquilibriumReport:
    """Certified game value and informativeness with witnesses."""
    q = utility.q
    primal_cert = certified_solve(build_primal(utility))
    sgv = primal_cert.objective
    w, v = dual_values_from_certificate(primal_cert, q)

    info_cert = certified_solve(
        build_informativeness(utility, sgv, joint=joint_informativeness)
    )
    informativeness = info_cert.objective
    kernel = kernel_from_certificate(info_cert, q)
    if kernel_value(utility, kernel) != sgv:
        raise InvalidInstance(
            "informativeness witness is not optimal for the game program"
        )
    sender, receiver = kernel_to_strategies(kernel)
    worst, _ = wceu(utility, sender)
    return EquilibriumReport(
        q=q,
        sgv=sgv,
        informativeness=informativeness,
        kernel=kernel,
        sender=sender,
        receiver=receiver,
        dual_w=w,
        dual_v=v,
        sgv_attained_exactly=worst == sgv,
        full_disclosure=informativeness == q and sgv == 0,
    )


def default_delta(kernel: RecoveryKernel) -> Fraction:
    """Half the smallest recovered diagonal: keeps every perturbed entry in [0,1]."""
    recovered = kernel.recovered_symbols()
    return min(kernel.matrix[i][i] for i in recovered) / 2


def eps_ses_sequence(
    utility: UtilityMatrix,
    kernel: RecoveryKernel,
    ks: list[int],
    *,
    delta: Fraction | None = None,
    sgv: Fraction | None = None,
) -> list[EpsSesStep]:
    """Near-equilibrium strategies built from an optimal kernel.

    When the witness strategy already attains the game value, a single exact
    step (epsilon 0) is returned. Otherwise each requested k yields a
    perturbed strategy: for every source symbol x tied with some recovered
    symbol i's own entry (pi(y_i|i) = pi(y_i|x)), delta/k is subtracted from
    the tied entry and the total returned to x's own signal, opening a fresh
    signal for symbols outside the recovered set. Every perturbed strategy
    has a unique best response and epsilon shrinks proportionally to 1/k.
    """
    if not ks:
        raise InvalidInstance("need at least one sequence index k")
    if any(k < 1 for k in ks):
        raise InvalidInstance("sequence indices must be positive")
    ks = sorted(set(ks))
    if sgv is None:
        sgv = certified_solve(build_primal(utility)).objective
    if kernel_value(utility, kernel) != sgv:
        raise InvalidInstance(
            f"kernel value {kernel_value(utility, kernel)} differs from the "
            f"certified game value {sgv}; not an optimal kernel"
        )

    q = utility.q
    recovered = kernel.recovered_symbols()
    sender, _ = kernel_to_strategies(kernel)

    worst, _ = wceu(utility, sender)
    if worst == sgv:
        unique = best_response_structure(sender).is_unique
        return [EpsSesStep(k=ks[0], strategy=sender, epsilon=ZERO, wceu=worst, unique_br=unique)]

    if delta is None:
        delta = default_delta(kernel)
    tie_cap = min(
        (kernel.matrix[i][i] for i in recovered for x in range(q)
         if x != i and kernel.matrix[i][x] == kernel.matrix[i][i]),
        default=None,
    )
    if delta <= 0 or (tie_cap is not None and delta > tie_cap):
        raise InvalidInstance(
            f"delta must lie in (0, {tie_cap}] to keep perturbed entries in [0,1]"
        )

    # Z(x): recovered symbols whose own entry ties with column x.
    z_sets: dict[int, list[int]] = {}
    for x in range(q):
        ties = [
            i
            for i in recovered
            if i != x and kernel.matrix[i][x] == kernel.matrix[i][i]
        ]
        if ties:
            z_sets[x] = ties

    steps = []
    for k in ks:
        shave = delta / k
        rows = [list(r) for r in sender.matrix]
        for x, ties in z_sets.items():
            for i in ties:
                rows[i][x] -= shave
            rows[x][x] += len(ties) * shave
        strategy = SenderStrategy(rows)
        structure = best_response_structure(strategy)
        if not structure.is_unique:
            raise AssertionError("perturbed strategy must have a unique best response")
        value, _ = wceu(utility, strategy)
        steps.append(
            EpsSesStep(
                k=k,
                strategy=strategy,
                epsilon=sgv - value,
                wceu=value,
                unique_br=True,
            )
        )
    return steps


def full_disclosure_check(utility: UtilityMatrix) -> bool:
    """True iff every misrecovery strictly hurts the sender.

    Equivalent to the informativeness reaching q (identity-only optimum).
    """
    return all(value < 0 for _, _, value in utility.off_diagonal())


def sgv_info_bounds(
    utility: UtilityMatrix, sgv: Fraction | None = None
) -> tuple[Fraction, Fraction] | None:
    """Informativeness bounds from the game value: q - sgv/u- <= J <= q - sgv/u+.

    Applicable only when no off-diagonal payoff is zero; returns None
    otherwise. With no positive payoffs at all the bound degenerates to
    (q, q). The two ends coincide at q - sgv/u when all positive payoffs
    equal u.
    """
    q = utility.q
    positives = []
    for _, _, value in utility.off_diagonal():
        if value == 0:
            return None
        if value > 0:
            positives.append(value)
    if not positives:
        return Fraction(q), Fraction(q)
    if sgv is None:
        sgv = certified_solve(build_primal(utility)).objective
    u_plus = max(positives)
    u_minus = min(positives)
    return q - sgv / u_minus, q - sgv / u_plus
