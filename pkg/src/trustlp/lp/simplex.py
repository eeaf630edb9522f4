"""Exact two-phase simplex over the rationals.

The tableau is kept fraction-free: every cell is an integer and the true
value of cell (i, j) is ``M[i][j] / det`` where ``det`` is the previous pivot
element (integer pivoting; each update divides exactly). Pivoting uses
Dantzig's rule with a deterministic lowest-index tie-break and falls back to
Bland's rule permanently after a run of degenerate pivots, which guarantees
termination. Variable order is the declaration order, so the optimal basis
(and hence the reported witness) is reproducible.

Dual values are read off the final objective row under each constraint's
slack or artificial column; artificial columns are retained (barred from
entering) for exactly this purpose.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from ..errors import TrustLpError
from .model import EQ, GEQ, LEQ, MAX, LinearProgram, LpCertificate

_DEGENERATE_LIMIT = 64
_ITERATION_LIMIT = 200_000

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


class _Tableau:
    def __init__(self, lp: LinearProgram):
        self.lp = lp
        self.maximize = lp.sense == MAX
        sign = 1 if self.maximize else -1

        # Column map: nonnegative variables get one column, free ones a split pair.
        self.col_var: list[tuple[str, int]] = []  # (variable name, +1/-1 part)
        for v in lp.variables:
            self.col_var.append((v.name, 1))
            if not v.nonneg:
                self.col_var.append((v.name, -1))
        nstruct = len(self.col_var)

        # Scaled integer objective: cost[j] = F * sign * c(var) * part.
        denoms = [Fraction(sign) * c for c in lp.objective.values()]
        obj_scale = lcm(*(f.denominator for f in denoms)) if denoms else 1
        self.obj_scale = obj_scale
        cost = []
        for name, part in self.col_var:
            c = lp.objective.get(name, Fraction(0))
            cost.append(int(Fraction(sign) * c * part * obj_scale))

        # Integer rows with rhs >= 0; row_mult maps scaled rows back to the
        # original constraints (scaled_row = row_mult * original_row).
        self.rows: list[list[int]] = []
        self.row_mult: list[Fraction] = []
        self.dual_col: list[int] = []
        self.basis: list[int] = []
        art_rows: list[int] = []

        raw = []
        for cons in lp.constraints:
            coeffs = [Fraction(0)] * nstruct
            for j, (name, part) in enumerate(self.col_var):
                c = cons.coeffs.get(name, Fraction(0))
                if c != 0:
                    coeffs[j] = c * part
            scale = lcm(cons.rhs.denominator, *(f.denominator for f in coeffs)) if coeffs else cons.rhs.denominator
            mult = Fraction(scale)
            ints = [int(c * scale) for c in coeffs]
            rhs = int(cons.rhs * scale)
            rel = cons.relation
            if rhs < 0 or (rhs == 0 and rel == GEQ):
                ints = [-v for v in ints]
                rhs = -rhs
                mult = -mult
                rel = {LEQ: GEQ, GEQ: LEQ, EQ: EQ}[rel]
            raw.append((ints, rel, rhs, mult))

        ncols = nstruct
        specs = []  # (slack coeff or None, needs artificial)
        for ints, rel, rhs, mult in raw:
            if rel == LEQ:
                specs.append((1, False))
                ncols += 1
            elif rel == GEQ:
                specs.append((-1, True))
                ncols += 2
            else:
                specs.append((None, True))
                ncols += 1

        self.enterable = [True] * ncols
        col = nstruct
        for idx, ((ints, rel, rhs, mult), (slack, needs_art)) in enumerate(zip(raw, specs)):
            row = ints + [0] * (ncols - nstruct) + [rhs]
            if slack is not None:
                row[col] = slack
                slack_col = col
                col += 1
            if needs_art:
                row[col] = 1
                self.enterable[col] = False
                self.basis.append(col)
                self.dual_col.append(col)
                art_rows.append(idx)
                col += 1
            else:
                self.basis.append(slack_col)
                self.dual_col.append(slack_col)
            self.rows.append(row)
            self.row_mult.append(mult)

        self.ncols = ncols
        self.art_cols = {self.dual_col[i] for i in art_rows}
        self.det = 1

        # Phase-2 reduced costs (initial basis has zero cost everywhere).
        self.z = [-c for c in cost] + [0] * (ncols - nstruct) + [0]
        # Phase-1 reduced costs for maximizing -(sum of artificials).
        self.z1 = None
        if art_rows:
            z1 = [0] * (ncols + 1)
            for i in art_rows:
                row = self.rows[i]
                for j in range(ncols + 1):
                    z1[j] -= row[j]
            for c in self.art_cols:
                z1[c] += 1  # z - c with c = -1 on artificial columns
            self.z1 = z1
        self.have_artificials = bool(art_rows)

    # -- pivoting ---------------------------------------------------------

    def _pivot(self, r: int, c: int) -> None:
        det = self.det
        rows = self.rows
        rowr = rows[r]
        piv = rowr[c]
        if piv <= 0:
            raise TrustLpError("internal: pivot element must be positive")
        targets = [rows[i] for i in range(len(rows)) if i != r]
        targets.append(self.z)
        if self.z1 is not None:
            targets.append(self.z1)
        width = self.ncols + 1
        for row in targets:
            f = row[c]
            if f == 0:
                if piv != det:
                    for j in range(width):
                        row[j] = row[j] * piv // det
            else:
                for j in range(width):
                    row[j] = (row[j] * piv - f * rowr[j]) // det
        self.det = piv
        self.basis[r] = c

    def _ratio_row(self, c: int, bland: bool) -> int | None:
        best = None
        rows = self.rows
        for i in range(len(rows)):
            a = rows[i][c]
            if a <= 0:
                continue
            b = rows[i][self.ncols]
            if best is None:
                best = (i, b, a)
                continue
            _, bb, ba = best
            diff = b * ba - bb * a
            if diff < 0 or (diff == 0 and self.basis[i] < self.basis[best[0]]):
                best = (i, b, a)
        return best[0] if best is not None else None

    def _entering(self, z: list[int], bland: bool) -> int | None:
        if bland:
            for j in range(self.ncols):
                if self.enterable[j] and z[j] < 0:
                    return j
            return None
        best = None
        best_val = 0
        for j in range(self.ncols):
            if self.enterable[j] and z[j] < best_val:
                best = j
                best_val = z[j]
        return best

    def _run(self, z: list[int]) -> str:
        bland = False
        degenerate = 0
        for _ in range(_ITERATION_LIMIT):
            c = self._entering(z, bland)
            if c is None:
                return OPTIMAL
            r = self._ratio_row(c, bland)
            if r is None:
                return UNBOUNDED
            if self.rows[r][self.ncols] == 0:
                degenerate += 1
                if degenerate > _DEGENERATE_LIMIT:
                    bland = True
            else:
                degenerate = 0
            self._pivot(r, c)
        raise TrustLpError("internal: simplex iteration limit exceeded")

    def _drive_out_artificials(self) -> None:
        for r in range(len(self.rows)):
            if self.basis[r] not in self.art_cols:
                continue
            row = self.rows[r]
            target = None
            for j in range(self.ncols):
                if self.enterable[j] and row[j] != 0:
                    target = j
                    break
            if target is None:
                continue  # redundant row; its artificial stays basic at zero
            if row[target] < 0:
                # Row value is zero here, so negating the equation is sound
                # and restores a positive pivot element.
                self.rows[r] = [-v for v in row]
            self._pivot(r, target)

    # -- public driver ----------------------------------------------------

    def solve(self) -> LpCertificate:
        if self.have_artificials:
            status = self._run(self.z1)
            if status != OPTIMAL:
                raise TrustLpError("internal: phase 1 cannot be unbounded")
            if self.z1[self.ncols] != 0:
                return LpCertificate(status=INFEASIBLE)
            self._drive_out_artificials()
            self.z1 = None
        status = self._run(self.z)
        if status == UNBOUNDED:
            return LpCertificate(status=UNBOUNDED)
        return self._extract()

    def _extract(self) -> LpCertificate:
        det = Fraction(self.det)
        col_value: dict[int, Fraction] = {}
        for r, col in enumerate(self.basis):
            col_value[col] = Fraction(self.rows[r][self.ncols]) / det

        primal: dict[str, Fraction] = {v.name: Fraction(0) for v in self.lp.variables}
        for j, (name, part) in enumerate(self.col_var):
            v = col_value.get(j)
            if v:
                primal[name] += part * v

        objective = self.lp.objective_value(primal)

        dual_sign = Fraction(1 if self.maximize else -1)
        dual: dict[str, Fraction] = {}
        for i, cons in enumerate(self.lp.constraints):
            y_scaled = Fraction(self.z[self.dual_col[i]]) / det
            dual[cons.name] = dual_sign * y_scaled * self.row_mult[i] / self.obj_scale

        return LpCertificate(status=OPTIMAL, primal=primal, objective=objective, dual=dual)


def solve(lp: LinearProgram) -> LpCertificate:
    """Solve an exact LP; never raises for well-formed infeasible/unbounded input."""
    return _Tableau(lp).solve()
