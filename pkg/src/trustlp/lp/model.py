"""Generic exact linear programs: containers, mechanical dualization, feasibility checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from ..errors import InvalidInstance

ZERO = Fraction(0)

LEQ = "<="
EQ = "="
GEQ = ">="
RELATIONS = (LEQ, EQ, GEQ)

MAX = "max"
MIN = "min"


@dataclass(frozen=True)
class Variable:
    name: str
    nonneg: bool = True


@dataclass(frozen=True)
class Constraint:
    name: str
    coeffs: Mapping[str, Fraction]
    relation: str
    rhs: Fraction

    def evaluate(self, assignment: Mapping[str, Fraction]) -> Fraction:
        return sum((c * assignment.get(v, ZERO) for v, c in self.coeffs.items()), ZERO)

    def satisfied_by(self, assignment: Mapping[str, Fraction]) -> bool:
        lhs = self.evaluate(assignment)
        if self.relation == LEQ:
            return lhs <= self.rhs
        if self.relation == GEQ:
            return lhs >= self.rhs
        return lhs == self.rhs

    def is_tight(self, assignment: Mapping[str, Fraction]) -> bool:
        return self.evaluate(assignment) == self.rhs


@dataclass(frozen=True)
class LinearProgram:
    """Named-variable LP with exact rational data.

    Variables are either nonnegative or free; constraints use <=, =, >=.
    Variable declaration order is the deterministic pivot order of the solver.
    """

    sense: str
    objective: Mapping[str, Fraction]
    variables: tuple[Variable, ...]
    constraints: tuple[Constraint, ...]

    def __post_init__(self):
        if self.sense not in (MAX, MIN):
            raise InvalidInstance(f"unknown sense {self.sense!r}")
        declared = {v.name for v in self.variables}
        if len(declared) != len(self.variables):
            raise InvalidInstance("duplicate variable names")
        for name in self.objective:
            if name not in declared:
                raise InvalidInstance(f"objective references undeclared variable {name!r}")
        seen = set()
        for cons in self.constraints:
            if cons.relation not in RELATIONS:
                raise InvalidInstance(f"unknown relation {cons.relation!r} in {cons.name!r}")
            if cons.name in seen:
                raise InvalidInstance(f"duplicate constraint name {cons.name!r}")
            seen.add(cons.name)
            for name in cons.coeffs:
                if name not in declared:
                    raise InvalidInstance(
                        f"constraint {cons.name!r} references undeclared variable {name!r}"
                    )

    def variable(self, name: str) -> Variable:
        for v in self.variables:
            if v.name == name:
                return v
        raise KeyError(name)

    def objective_value(self, assignment: Mapping[str, Fraction]) -> Fraction:
        return sum((c * assignment.get(v, ZERO) for v, c in self.objective.items()), ZERO)

    def feasibility_violations(self, assignment: Mapping[str, Fraction]) -> list[str]:
        out = []
        for v in self.variables:
            if v.nonneg and assignment.get(v.name, ZERO) < 0:
                out.append(f"variable {v.name} = {assignment.get(v.name)} violates nonnegativity")
        for cons in self.constraints:
            if not cons.satisfied_by(assignment):
                out.append(
                    f"constraint {cons.name}: {cons.evaluate(assignment)} {cons.relation} {cons.rhs} fails"
                )
        return out


@dataclass(frozen=True)
class LpCertificate:
    """Solver output with exact self-verification flags.

    ``dual`` maps constraint names to multipliers in the convention of the
    solved LP's sense. For a maximization: y >= 0 on <= rows, y <= 0 on >=
    rows, free on equalities, and for every variable the reduced cost
    (A'y - c) is >= 0 (= 0 for free variables). For a minimization the signs
    are mirrored (y <= 0 on <= rows, y >= 0 on >= rows, reduced cost c - A'y >= 0).
    """

    status: str  # "optimal" | "infeasible" | "unbounded"
    primal: dict[str, Fraction] = field(default_factory=dict)
    objective: Fraction | None = None
    dual: dict[str, Fraction] = field(default_factory=dict)
    strong_duality_verified: bool = False
    complementary_slackness_verified: bool = False


def dual_of(lp: LinearProgram, rename: Mapping[str, str] | None = None) -> LinearProgram:
    """Mechanically derived dual, staying within nonnegative/free variables.

    Each primal constraint is first normalized to <= form (>= rows are
    negated), so every dual variable is nonnegative except those of
    equalities, which are free. Dual variables take the primal constraint's
    name (or its image under ``rename``).

    Only max-sense primals are supported; that is the one direction the
    artifact needs (validating the hand-stated dual of the game LP).
    """
    if lp.sense != MAX:
        raise InvalidInstance("dual_of expects a max-sense program")
    naming = rename or {}

    dual_vars = []
    dual_objective: dict[str, Fraction] = {}
    columns: dict[str, dict[str, Fraction]] = {v.name: {} for v in lp.variables}
    for cons in lp.constraints:
        yname = naming.get(cons.name, cons.name)
        if cons.relation == EQ:
            sign, nonneg = 1, False
        elif cons.relation == LEQ:
            sign, nonneg = 1, True
        else:
            sign, nonneg = -1, True
        dual_vars.append(Variable(yname, nonneg=nonneg))
        rhs = sign * cons.rhs
        if rhs != 0:
            dual_objective[yname] = rhs
        for var, coeff in cons.coeffs.items():
            if coeff != 0:
                columns[var][yname] = sign * coeff

    dual_constraints = []
    for v in lp.variables:
        c = lp.objective.get(v.name, ZERO)
        dual_constraints.append(
            Constraint(
                name=v.name,
                coeffs=columns[v.name],
                relation=GEQ if v.nonneg else EQ,
                rhs=c,
            )
        )
    return LinearProgram(
        sense=MIN,
        objective=dual_objective,
        variables=tuple(dual_vars),
        constraints=tuple(dual_constraints),
    )
