"""Independent brute-force verification of the game value.

Two oracles, sharing no pivoting code with the simplex engine:

  * a grid search that enumerates every column-stochastic sender strategy
    with probabilities on {0, 1/N, ..., 1} and takes the best worst-case
    expected utility (a lower bound on the game value by definition), and
  * an exact enumeration of the vertices of the trust polytope
    {column-stochastic mu with mu(i|i) >= mu(i|x)}, whose maximum of V(mu)
    must equal the LP optimum outright.

The trust polytope depends only on q, so its vertex set is computed once and
cached. Vertices are enumerated by a complete structured search: at a vertex
each column has at most one entry strictly between 0 and its trust cap
(otherwise a two-entry exchange stays feasible), so columns are classified
into zero / cap-tight / fractional patterns, fractional columns are paired
with pinned-to-zero diagonals, and the remaining diagonal values solve a
small exact linear system.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, lcm
from random import Random

from .errors import ResourceLimit, VerificationFailure
from .game import (
    RecoveryKernel,
    SenderStrategy,
    UtilityMatrix,
    best_response_structure,
    induced_kernel,
    wceu,
)

ZERO = Fraction(0)
ONE = Fraction(1)

VERTEX_Q_LIMIT = 4
DEFAULT_GRID_BUDGET = 400_000


# -- trust polytope vertices -------------------------------------------------


def _subsets(items: tuple[int, ...]) -> list[tuple[int, ...]]:
    out = []
    for r in range(len(items) + 1):
        out.extend(itertools.combinations(items, r))
    return out


def _solve_square(rows: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction] | None:
    """Gaussian elimination; None when the system is singular."""
    n = len(rows)
    a = [row[:] + [rhs[i]] for i, row in enumerate(rows)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return None
        a[col], a[pivot] = a[pivot], a[col]
        inv = a[col][col]
        a[col] = [v / inv for v in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [v - f * w for v, w in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]


@lru_cache(maxsize=None)
def trust_polytope_vertices(q: int) -> tuple[tuple[tuple[Fraction, ...], ...], ...]:
    """All vertices of the trust polytope for alphabet size q, sorted."""
    cols = tuple(range(q))
    offd = {x: tuple(h for h in cols if h != x) for x in cols}
    found: set[tuple[tuple[Fraction, ...], ...]] = set()

    for fcols in _subsets(cols):
        nonf = tuple(x for x in cols if x not in fcols)
        for pinned in itertools.combinations(cols, len(fcols)):
            unknowns = tuple(x for x in cols if x not in pinned)
            index = {x: i for i, x in enumerate(unknowns)}
            for t_choice in itertools.product(*(_subsets(offd[x]) for x in nonf)):
                t_by_col = dict(zip(nonf, t_choice))
                rows = []
                for x in nonf:
                    row = [ZERO] * len(unknowns)
                    if x in index:
                        row[index[x]] += 1
                    for t in t_by_col[x]:
                        if t in index:
                            row[index[t]] += 1
                    rows.append(row)
                solved = _solve_square(rows, [ONE] * len(nonf)) if unknowns else []
                if solved is None:
                    continue
                diag = {x: ZERO for x in pinned}
                diag.update({x: solved[index[x]] for x in unknowns})
                if any(v < 0 or v > 1 for v in diag.values()):
                    continue

                options: list[list[tuple[int, tuple[int, ...], Fraction]]] = []
                feasible = True
                for x in fcols:
                    opts = []
                    for f in offd[x]:
                        others = tuple(t for t in offd[x] if t != f)
                        for t_set in _subsets(others):
                            val = ONE - diag[x] - sum((diag[t] for t in t_set), ZERO)
                            if ZERO <= val <= diag[f]:
                                opts.append((f, t_set, val))
                    if not opts:
                        feasible = False
                        break
                    options.append(opts)
                if not feasible:
                    continue

                for combo in itertools.product(*options):
                    matrix = [[ZERO] * q for _ in range(q)]
                    for x in cols:
                        matrix[x][x] = diag[x]
                    for x, tset in t_by_col.items():
                        for t in tset:
                            matrix[t][x] = diag[t]
                    for x, (f, tset, val) in zip(fcols, combo):
                        matrix[f][x] = val
                        for t in tset:
                            matrix[t][x] = diag[t]
                    found.add(tuple(tuple(row) for row in matrix))

    vertices = tuple(sorted(found))
    for v in vertices:
        kernel = RecoveryKernel(v)
        if not kernel.is_trust_feasible():
            raise AssertionError("enumerated point outside the trust polytope")
    return vertices


# -- oracle data types -------------------------------------------------------


@dataclass(frozen=True)
class GridSpec:
    """Grid resolution and enumeration budget for the strategy scan."""

    resolution: int
    q: int
    budget: int = DEFAULT_GRID_BUDGET

    def strategy_count(self) -> int:
        per_column = comb(self.resolution + self.q - 1, self.q - 1)
        return per_column**self.q


@dataclass(frozen=True)
class GridSearchResult:
    resolution: int
    strategies_scanned: int
    best_wceu: Fraction
    witness: SenderStrategy


@dataclass(frozen=True)
class VertexSearchResult:
    vertex_count: int
    optimum: Fraction
    witness: RecoveryKernel


@dataclass(frozen=True)
class OracleReport:
    q: int
    lp_sgv: Fraction
    vertex: VertexSearchResult | None
    vertex_skipped_reason: str | None
    grids: tuple[GridSearchResult, ...]
    gaps: tuple[Fraction, ...]
    closure_selections_checked: int


# -- grid oracle -------------------------------------------------------------


@lru_cache(maxsize=64)
def _compositions(total: int, parts: int) -> tuple[tuple[int, ...], ...]:
    if parts == 1:
        return ((total,),)
    out = []
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            out.append((first,) + rest)
    return tuple(out)


def _strategy_from_columns(columns: tuple[tuple[int, ...], ...], n: int) -> SenderStrategy:
    q = len(columns)
    return SenderStrategy(
        [[Fraction(columns[x][y], n) for x in range(q)] for y in range(q)]
    )


def grid_search_sgv(utility: UtilityMatrix, grid: GridSpec) -> GridSearchResult:
    """Exhaustively scan grid strategies for the best worst-case utility.

    The scan runs in integers (payoffs scaled by their common denominator,
    probabilities by N); the returned witness is re-evaluated through the
    exact game evaluator as a guard. Enumeration order is lexicographic over
    column compositions, so the reported witness is the lexicographically
    smallest maximizer. Finer grids contain coarser ones whenever the
    resolutions divide, so the best value never decreases along nested grids.
    """
    q = utility.q
    if grid.q != q:
        raise ResourceLimit(f"grid spec is for q = {grid.q}, matrix has q = {q}")
    count = grid.strategy_count()
    if count > grid.budget:
        raise ResourceLimit(
            f"grid enumeration needs {count} strategies, budget is {grid.budget}"
        )
    n = grid.resolution
    scale = lcm(*(utility.entries[i][j].denominator for i in range(q) for j in range(q)))
    u_int = [[int(utility.entries[i][j] * scale) for j in range(q)] for i in range(q)]

    columns = _compositions(n, q)
    symbols = range(q)
    best_scaled: int | None = None
    best_columns: tuple[tuple[int, ...], ...] | None = None
    for combo in itertools.product(columns, repeat=q):
        total = 0
        for y in symbols:
            m = 0
            for x in symbols:
                if combo[x][y] > m:
                    m = combo[x][y]
            if m == 0:
                continue
            worst = None
            for xh in symbols:
                if combo[xh][y] != m:
                    continue
                t = 0
                row_u = u_int[xh]
                for x in symbols:
                    v = combo[x][y]
                    if v:
                        t += v * row_u[x]
                if worst is None or t < worst:
                    worst = t
            total += worst
        if best_scaled is None or total > best_scaled:
            best_scaled = total
            best_columns = combo

    assert best_columns is not None
    witness = _strategy_from_columns(best_columns, n)
    best = Fraction(best_scaled, n * scale)
    check, _ = wceu(utility, witness)
    if check != best:
        raise VerificationFailure(
            f"grid scan value {best} disagrees with exact evaluation {check}"
        )
    return GridSearchResult(
        resolution=n, strategies_scanned=count, best_wceu=best, witness=witness
    )


def vertex_enumeration_sgv(utility: UtilityMatrix) -> VertexSearchResult:
    """Maximize V(mu) over all vertices of the trust polytope (q <= 4).

    Exact by convexity: the game LP attains its optimum at a vertex, and the
    vertex list is complete. Ties break toward the lexicographically smallest
    vertex.
    """
    q = utility.q
    if q > VERTEX_Q_LIMIT:
        raise ResourceLimit(f"vertex enumeration supports q <= {VERTEX_Q_LIMIT}, got {q}")
    terms = [(i, j, value) for i, j, value in utility.off_diagonal() if value != 0]
    best: Fraction | None = None
    best_vertex = None
    vertices = trust_polytope_vertices(q)
    for vertex in vertices:
        value = sum((vertex[i][j] * u for i, j, u in terms), ZERO)
        if best is None or value > best:
            best = value
            best_vertex = vertex
    assert best_vertex is not None
    return VertexSearchResult(
        vertex_count=len(vertices), optimum=best, witness=RecoveryKernel(best_vertex)
    )


# -- cross-checks ------------------------------------------------------------


def check_best_response_closure(utility: UtilityMatrix, sender: SenderStrategy) -> int:
    """Verify every deterministic best response induces a trust-feasible kernel.

    Returns the number of selections checked; raises VerificationFailure with
    the offending pair otherwise.
    """
    structure = best_response_structure(sender)
    checked = 0
    for selection in structure.deterministic_selections():
        receiver = structure.receiver_from_selection(selection)
        kernel = induced_kernel(sender, receiver)
        violation = kernel.first_trust_violation()
        if violation is not None:
            raise VerificationFailure(
                f"best response {selection} of {sender.matrix} induces a kernel "
                f"violating the trust constraint at {violation}"
            )
        checked += 1
    return checked


def nested_resolutions(resolution: int) -> tuple[int, ...]:
    """The quarter and half resolutions that are exact, then the resolution itself."""
    out = []
    if resolution % 4 == 0:
        out.append(resolution // 4)
    if resolution % 2 == 0:
        out.append(resolution // 2)
    return tuple(dict.fromkeys(out + [resolution]))


def cross_check(utility: UtilityMatrix, grid: GridSpec) -> OracleReport:
    """Compare both oracles against the LP game value.

    Asserts: grid values never exceed the LP value and their gaps are
    non-increasing along nested grids; vertex enumeration (run when q <= 4)
    matches the LP value exactly; every deterministic best response to each
    grid witness induces a trust-feasible kernel. Any violation raises
    VerificationFailure with a witness.
    """
    from .lp import build_primal, certified_solve  # local import; no shared solver code above

    q = utility.q
    cert = certified_solve(build_primal(utility))
    sgv = cert.objective

    vertex = None
    vertex_skipped = None
    if q <= VERTEX_Q_LIMIT:
        vertex = vertex_enumeration_sgv(utility)
        if vertex.optimum != sgv:
            raise VerificationFailure(
                f"vertex enumeration found {vertex.optimum}, LP found {sgv}; "
                f"witness {vertex.witness.matrix}"
            )
    else:
        vertex_skipped = f"q = {q} exceeds the exact enumeration bound {VERTEX_Q_LIMIT}"

    grids = []
    gaps = []
    closure_checked = 0
    for n in nested_resolutions(grid.resolution):
        result = grid_search_sgv(utility, GridSpec(n, q, grid.budget))
        if result.best_wceu > sgv:
            raise VerificationFailure(
                f"grid N={n} found {result.best_wceu} > LP value {sgv}; "
                f"witness {result.witness.matrix}"
            )
        gap = sgv - result.best_wceu
        if gaps and gap > gaps[-1]:
            raise VerificationFailure(
                f"gap increased from {gaps[-1]} to {gap} when refining to N={n}"
            )
        closure_checked += check_best_response_closure(utility, result.witness)
        grids.append(result)
        gaps.append(gap)

    return OracleReport(
        q=q,
        lp_sgv=sgv,
        vertex=vertex,
        vertex_skipped_reason=vertex_skipped,
        grids=tuple(grids),
        gaps=tuple(gaps),
        closure_selections_checked=closure_checked,
    )


# -- randomized helpers -------------------------------------------------------


def random_sender_strategy(q: int, rng: Random, denominator: int = 12) -> SenderStrategy:
    """Uniformly random grid strategy: each column a random composition."""
    cols = []
    for _ in range(q):
        cuts = sorted(rng.randrange(denominator + 1) for _ in range(q - 1))
        parts = [b - a for a, b in zip([0] + cuts, cuts + [denominator])]
        cols.append(parts)
    return SenderStrategy(
        [[Fraction(cols[x][y], denominator) for x in range(q)] for y in range(q)]
    )


def random_best_response(sender: SenderStrategy, rng: Random):
    """A random deterministic best response (as receiver strategy) to a sender strategy."""
    structure = best_response_structure(sender)
    selection = {y: rng.choice(structure.argmax[y]) for y in structure.active_signals}
    return structure.receiver_from_selection(selection)


def mutate_to_non_best_response(sender: SenderStrategy, rng: Random):
    """A deterministic decoding that violates the best-response property, or None.

    Picks an active signal and decodes it to a symbol outside the argmax set.
    None when every symbol is argmax-tied on every active signal.
    """
    structure = best_response_structure(sender)
    q = sender.q
    candidates = [
        (y, xh)
        for y in structure.active_signals
        for xh in range(q)
        if xh not in structure.argmax[y]
    ]
    if not candidates:
        return None
    y_bad, xh_bad = rng.choice(candidates)
    selection = {y: min(structure.argmax[y]) for y in structure.active_signals}
    selection[y_bad] = xh_bad
    rows = [[ZERO] * q for _ in range(q)]
    uniform = Fraction(1, q)
    for y in range(q):
        if y in selection:
            rows[selection[y]][y] = ONE
        else:
            for xh in range(q):
                rows[xh][y] = uniform
    from .game import ReceiverStrategy

    return ReceiverStrategy(rows)
