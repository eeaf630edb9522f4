"""Builders for the three game programs and their certificate plumbing.

Variables and constraints are named so results can be read back:
  * ``mu[i|j]``   recovery probability of symbol i from source j (primal)
  * ``col[j]``    column-stochasticity equality of source j
  * ``trust[i|j]`` trust constraint mu(i|i) - mu(i|j) >= 0
  * ``w[j]``, ``v[i|j]`` dual variables (w free, v nonnegative)
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

from ..errors import CertificationFailure, InvalidInstance
from ..game import RecoveryKernel, UtilityMatrix
from .certify import CertificationReport
from .model import EQ, GEQ, MAX, MIN, Constraint, LinearProgram, LpCertificate, Variable

ZERO = Fraction(0)
ONE = Fraction(1)


def mu_name(recovered: int, source: int) -> str:
    return f"mu[{recovered}|{source}]"


def col_name(source: int) -> str:
    return f"col[{source}]"


def trust_name(recovered: int, source: int) -> str:
    return f"trust[{recovered}|{source}]"


def w_name(source: int) -> str:
    return f"w[{source}]"


def v_name(recovered: int, source: int) -> str:
    return f"v[{recovered}|{source}]"


def _mu_variables(q: int) -> tuple[Variable, ...]:
    return tuple(Variable(mu_name(i, j)) for i in range(q) for j in range(q))


def _primal_constraints(q: int) -> tuple[Constraint, ...]:
    out = []
    for j in range(q):
        out.append(
            Constraint(col_name(j), {mu_name(i, j): ONE for i in range(q)}, EQ, ONE)
        )
    for i in range(q):
        for j in range(q):
            if i != j:
                out.append(
                    Constraint(
                        trust_name(i, j),
                        {mu_name(i, i): ONE, mu_name(i, j): -ONE},
                        GEQ,
                        ZERO,
                    )
                )
    return tuple(out)


def build_primal(utility: UtilityMatrix) -> LinearProgram:
    """The game-value program: maximize sum mu(i|j) U(i,j) over trust-feasible kernels."""
    q = utility.q
    objective = {
        mu_name(i, j): utility.entries[i][j]
        for i, j, value in utility.off_diagonal()
        if value != 0
    }
    return LinearProgram(MAX, objective, _mu_variables(q), _primal_constraints(q))


def build_dual(utility: UtilityMatrix) -> LinearProgram:
    """The dual program: minimize sum w(j) subject to the two reduced-cost families.

    Validated once against the mechanical dual of build_primal (see tests);
    the hand-stated form is easy to corrupt through index-order slips.
    """
    q = utility.q
    variables = [Variable(w_name(j), nonneg=False) for j in range(q)]
    variables += [Variable(v_name(i, j)) for i in range(q) for j in range(q) if i != j]
    constraints = []
    for j in range(q):
        coeffs: dict[str, Fraction] = {w_name(j): ONE}
        for i in range(q):
            if i != j:
                coeffs[v_name(j, i)] = -ONE
        constraints.append(Constraint(f"diag[{j}]", coeffs, GEQ, ZERO))
    for i in range(q):
        for j in range(q):
            if i != j:
                constraints.append(
                    Constraint(
                        f"pair[{i}|{j}]",
                        {w_name(j): ONE, v_name(i, j): ONE},
                        GEQ,
                        utility.entries[i][j],
                    )
                )
    objective = {w_name(j): ONE for j in range(q)}
    return LinearProgram(MIN, objective, tuple(variables), tuple(constraints))


def build_informativeness(
    utility: UtilityMatrix, sgv: Fraction, *, joint: bool = False
) -> LinearProgram:
    """Minimize truthful mass sum mu(j|j) over the optimal face of the game LP.

    Two interchangeable builds. The default two-stage form pins the objective
    of the game LP to the certified value ``sgv``; the joint form couples the
    primal and dual feasible sets with the equality sum w = V(mu) and ignores
    ``sgv``. Both have the same optimal value.
    """
    q = utility.q
    diag_objective = {mu_name(j, j): ONE for j in range(q)}
    value_coeffs = {
        mu_name(i, j): utility.entries[i][j]
        for i, j, value in utility.off_diagonal()
        if value != 0
    }
    if not joint:
        constraints = _primal_constraints(q) + (
            Constraint("value", value_coeffs, EQ, sgv),
        )
        return LinearProgram(MIN, diag_objective, _mu_variables(q), constraints)

    primal = build_primal(utility)
    dual = build_dual(utility)
    coupling = dict(value_coeffs)
    for j in range(q):
        coupling[w_name(j)] = -ONE
    constraints = primal.constraints + dual.constraints + (
        Constraint("value", coupling, EQ, ZERO),
    )
    return LinearProgram(
        MIN, diag_objective, primal.variables + dual.variables, constraints
    )


def kernel_from_certificate(cert: LpCertificate, q: int) -> RecoveryKernel:
    rows = [[cert.primal.get(mu_name(i, j), ZERO) for j in range(q)] for i in range(q)]
    return RecoveryKernel(rows)


def dual_values_from_certificate(
    cert: LpCertificate, q: int
) -> tuple[tuple[Fraction, ...], dict[tuple[int, int], Fraction]]:
    """Read (w, v) off a primal certificate.

    The trust rows are >= constraints of a maximization, so their tableau
    multipliers are nonpositive; v is their negation.
    """
    w = tuple(cert.dual.get(col_name(j), ZERO) for j in range(q))
    v = {
        (i, j): -cert.dual.get(trust_name(i, j), ZERO)
        for i in range(q)
        for j in range(q)
        if i != j
    }
    return w, v


def dual_assignment_from_certificate(cert: LpCertificate, q: int) -> dict[str, Fraction]:
    """Express a primal certificate's multipliers as a point of build_dual."""
    w, v = dual_values_from_certificate(cert, q)
    assignment = {w_name(j): w[j] for j in range(q)}
    assignment.update({v_name(i, j): value for (i, j), value in v.items()})
    return assignment


def certify(
    cert: LpCertificate, primal: LinearProgram, dual: LinearProgram
) -> CertificationReport:
    """Cross-check a solved game LP against the hand-stated dual program.

    Exact checks: primal feasibility, feasibility of the certificate's (w, v)
    in ``dual``, equality of both objectives, and the complementary slackness
    pairs (positive mu forces its dual constraint tight; positive v forces
    its trust constraint tight). Raises CertificationFailure naming the first
    violated condition.
    """
    if cert.status != "optimal":
        raise CertificationFailure(f"certificate status is {cert.status}")
    q = isqrt(len(primal.variables))
    if q * q != len(primal.variables):
        raise InvalidInstance("primal is not a game-value program")

    failures = primal.feasibility_violations(cert.primal)
    primal_feasible = not failures
    if failures:
        raise CertificationFailure(f"primal infeasible: {failures[0]}")

    assignment = dual_assignment_from_certificate(cert, q)
    failures = dual.feasibility_violations(assignment)
    dual_feasible = not failures
    if failures:
        raise CertificationFailure(f"dual infeasible: {failures[0]}")

    dual_value = dual.objective_value(assignment)
    objectives_equal = dual_value == cert.objective
    if not objectives_equal:
        raise CertificationFailure(
            f"objective equality fails: primal {cert.objective}, dual {dual_value}"
        )

    by_name = {c.name: c for c in dual.constraints}
    trust_by_name = {c.name: c for c in primal.constraints}
    for i in range(q):
        for j in range(q):
            value = cert.primal.get(mu_name(i, j), ZERO)
            dual_cons = by_name[f"pair[{i}|{j}]" if i != j else f"diag[{j}]"]
            if value > 0 and not dual_cons.is_tight(assignment):
                raise CertificationFailure(
                    f"complementary slackness fails: {mu_name(i, j)} = {value} > 0 "
                    f"but {dual_cons.name} is slack"
                )
            if i != j and assignment[v_name(i, j)] > 0:
                if not trust_by_name[trust_name(i, j)].is_tight(cert.primal):
                    raise CertificationFailure(
                        f"complementary slackness fails: {v_name(i, j)} > 0 "
                        f"but {trust_name(i, j)} is slack"
                    )
    return CertificationReport(
        primal_feasible=primal_feasible,
        dual_feasible=dual_feasible,
        objectives_equal=objectives_equal,
        complementary_slackness=True,
    )
