"""Exact optimality certification: feasibility, duality, complementary slackness.

All checks are rational-exact. A solved LP is only reported optimal after
its certificate passes every check here, so solver bugs surface as
CertificationFailure instead of silently wrong numbers.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import CertificationFailure
from .model import EQ, LEQ, MAX, LinearProgram, LpCertificate
from .simplex import OPTIMAL, solve

ZERO = Fraction(0)


def _reduced_cost(lp: LinearProgram, cert: LpCertificate, var: str) -> Fraction:
    total = ZERO
    for cons in lp.constraints:
        c = cons.coeffs.get(var)
        if c:
            total += cert.dual.get(cons.name, ZERO) * c
    c_j = lp.objective.get(var, ZERO)
    return total - c_j if lp.sense == MAX else c_j - total


def certificate_violations(lp: LinearProgram, cert: LpCertificate) -> list[str]:
    """Exact checks of an optimal certificate; empty list means fully verified."""
    if cert.status != OPTIMAL:
        return [f"certificate status is {cert.status}, not optimal"]
    out = list(lp.feasibility_violations(cert.primal))
    if lp.objective_value(cert.primal) != cert.objective:
        out.append("stated objective does not match the primal assignment")

    for cons in lp.constraints:
        y = cert.dual.get(cons.name, ZERO)
        want_nonneg = (cons.relation == LEQ) == (lp.sense == MAX)
        if cons.relation != EQ:
            if want_nonneg and y < 0:
                out.append(f"dual multiplier of {cons.name} must be >= 0, is {y}")
            if not want_nonneg and y > 0:
                out.append(f"dual multiplier of {cons.name} must be <= 0, is {y}")
        if y != 0 and not cons.is_tight(cert.primal):
            out.append(f"complementary slackness: {cons.name} has multiplier {y} but is slack")

    for v in lp.variables:
        rc = _reduced_cost(lp, cert, v.name)
        if v.nonneg:
            if rc < 0:
                out.append(f"dual infeasible at variable {v.name}: reduced cost {rc} < 0")
            if rc != 0 and cert.primal.get(v.name, ZERO) > 0:
                out.append(
                    f"complementary slackness: variable {v.name} positive with reduced cost {rc}"
                )
        elif rc != 0:
            out.append(f"dual infeasible at free variable {v.name}: reduced cost {rc} != 0")

    dual_objective = sum(
        (cert.dual.get(c.name, ZERO) * c.rhs for c in lp.constraints), ZERO
    )
    if dual_objective != cert.objective:
        out.append(
            f"strong duality fails: dual value {dual_objective} != primal value {cert.objective}"
        )
    return out


def certified_solve(lp: LinearProgram) -> LpCertificate:
    """Solve and exactly verify; optimal certificates come back with flags set."""
    cert = solve(lp)
    if cert.status != OPTIMAL:
        return cert
    violations = certificate_violations(lp, cert)
    if violations:
        raise CertificationFailure("; ".join(violations))
    return LpCertificate(
        status=cert.status,
        primal=cert.primal,
        objective=cert.objective,
        dual=cert.dual,
        strong_duality_verified=True,
        complementary_slackness_verified=True,
    )


@dataclass(frozen=True)
class CertificationReport:
    """Outcome of cross-checking a primal certificate against a stated dual pair."""

    primal_feasible: bool
    dual_feasible: bool
    objectives_equal: bool
    complementary_slackness: bool

    @property
    def all_verified(self) -> bool:
        return (
            self.primal_feasible
            and self.dual_feasible
            and self.objectives_equal
            and self.complementary_slackness
        )
