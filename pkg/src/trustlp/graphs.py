"""Obfuscation-graph and sender-graph analysis: matchings, shapes, closed forms.

The obfuscation graph has a directed edge (x, x') of weight U(x', x) whenever
that payoff is nonnegative: the pairs a persuasion policy can profitably
confuse. Matchings treat directed edges as vertex-disjoint ignoring
direction; antiparallel pairs contribute two candidate edges of which at most
one may be used. Closed forms for stars, chains, and cycles serve as
independent cross-checks of the LP values.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NotApplicable, ResourceLimit
from .game import RecoveryKernel, UtilityMatrix
from .rationals import format_rational

ZERO = Fraction(0)

MATCHING_VERTEX_LIMIT = 20
CLIQUE_COVER_VERTEX_LIMIT = 16

Edge = tuple[int, int, Fraction]  # (tail, head, weight)


@dataclass(frozen=True)
class ObfuscationGraph:
    q: int
    edges: tuple[Edge, ...]

    @staticmethod
    def from_utility(utility: UtilityMatrix) -> "ObfuscationGraph":
        edges = tuple(
            (x, xh, value)
            for xh, x, value in utility.off_diagonal()
            if value >= 0
        )
        return ObfuscationGraph(utility.q, tuple(sorted(edges, key=lambda e: (e[0], e[1]))))

    def weight_sum(self) -> Fraction:
        return sum((w for _, _, w in self.edges), ZERO)


@dataclass(frozen=True)
class StrongSenderGraph:
    """Undirected graph with an edge wherever both cross payoffs are nonnegative."""

    q: int
    edges: tuple[tuple[int, int], ...]  # pairs with tail < head

    @staticmethod
    def from_utility(utility: UtilityMatrix) -> "StrongSenderGraph":
        q = utility.q
        edges = tuple(
            (a, b)
            for a in range(q)
            for b in range(a + 1, q)
            if utility.entries[a][b] >= 0 and utility.entries[b][a] >= 0
        )
        return StrongSenderGraph(q, edges)


@dataclass(frozen=True)
class GraphShape:
    """Structural classification of an obfuscation graph.

    ``order`` lists vertices along the chain (or around the cycle starting at
    the lowest-index vertex); ``center`` is the star's hub. ``uniform_weight``
    is set whenever the graph has edges and all their weights coincide,
    regardless of the tag.
    """

    kind: str  # "star" | "chain" | "cycle" | "other"
    center: int | None = None
    order: tuple[int, ...] | None = None
    uniform_weight: Fraction | None = None


def edge_list_text(graph: ObfuscationGraph) -> str:
    """Plain-text export, one edge per line: tail, head, weight (0-based vertices)."""
    lines = [f"{t} {h} {format_rational(w)}" for t, h, w in graph.edges]
    return "\n".join(lines) + ("\n" if lines else "")


# -- matchings -------------------------------------------------------------


def _matching_branch_and_bound(edges: list[Edge]) -> tuple[tuple[Edge, ...], Fraction]:
    # Zero-weight edges never improve the optimum; search positive edges only.
    candidates = sorted(
        (e for e in edges if e[2] > 0), key=lambda e: (-e[2], e[0], e[1])
    )
    suffix = [ZERO] * (len(candidates) + 1)
    for i in range(len(candidates) - 1, -1, -1):
        suffix[i] = suffix[i + 1] + candidates[i][2]

    best_weight = ZERO
    best_edges: tuple[Edge, ...] = ()

    def search(idx: int, used: int, weight: Fraction, chosen: list[Edge]) -> None:
        nonlocal best_weight, best_edges
        if weight > best_weight:
            best_weight = weight
            best_edges = tuple(sorted(chosen, key=lambda e: (e[0], e[1])))
        if idx == len(candidates) or weight + suffix[idx] <= best_weight:
            return
        t, h, w = candidates[idx]
        mask = (1 << t) | (1 << h)
        if not used & mask:
            chosen.append(candidates[idx])
            search(idx + 1, used | mask, weight + w, chosen)
            chosen.pop()
        search(idx + 1, used, weight, chosen)

    search(0, 0, ZERO, [])
    return best_edges, best_weight


def _matching_path_dp(path_edges: list[Edge]) -> tuple[tuple[Edge, ...], Fraction]:
    # Max-weight independent edge set along a path: edge i conflicts with i-1.
    n = len(path_edges)
    best = [ZERO] * (n + 1)
    take = [False] * (n + 1)
    for i in range(1, n + 1):
        w = path_edges[i - 1][2]
        with_edge = (best[i - 2] if i >= 2 else ZERO) + w
        if w > 0 and with_edge > best[i - 1]:
            best[i] = with_edge
            take[i] = True
        else:
            best[i] = best[i - 1]
    chosen = []
    i = n
    while i > 0:
        if take[i]:
            chosen.append(path_edges[i - 1])
            i -= 2
        else:
            i -= 1
    chosen.sort(key=lambda e: (e[0], e[1]))
    return tuple(chosen), best[n]


def _matching_for_shape(shape: GraphShape, graph: ObfuscationGraph) -> tuple[tuple[Edge, ...], Fraction]:
    by_pair = {(t, h): w for t, h, w in graph.edges}
    order = shape.order or ()
    path = [
        (order[i], order[i + 1], by_pair[(order[i], order[i + 1])])
        for i in range(len(order) - 1)
    ]
    if shape.kind == "chain":
        return _matching_path_dp(path)
    # Cycle: either the closing edge is out (path DP) or in (it blocks its
    # two neighbours).
    closing = (order[-1], order[0], by_pair[(order[-1], order[0])])
    without = _matching_path_dp(path)
    inner_edges, inner_weight = _matching_path_dp(path[1:-1])
    with_closing = (
        tuple(sorted(inner_edges + (closing,), key=lambda e: (e[0], e[1]))),
        inner_weight + closing[2],
    )
    if closing[2] <= 0 or without[1] >= with_closing[1]:
        return without
    return with_closing


def max_weight_matching(graph: ObfuscationGraph) -> tuple[tuple[Edge, ...], Fraction]:
    """One maximum-weight matching and its weight nu(G).

    Chains and cycles are solved by linear-time dynamic programming; anything
    else by branch-and-bound over edge subsets, exact up to 20 vertices.
    """
    shape = detect_shape(graph)
    if shape.kind in ("chain", "cycle"):
        return _matching_for_shape(shape, graph)
    if graph.q > MATCHING_VERTEX_LIMIT:
        raise ResourceLimit(
            f"branch-and-bound matching supports q <= {MATCHING_VERTEX_LIMIT}, got {graph.q}"
        )
    return _matching_branch_and_bound(list(graph.edges))


def matching_kernel(graph: ObfuscationGraph, matching: tuple[Edge, ...]) -> RecoveryKernel:
    """Trust-feasible kernel realizing a matching's weight.

    Every matched source is recovered as its partner with probability one
    (the partner is recovered as itself, keeping the trust constraint tight);
    uncovered symbols are recovered correctly.
    """
    q = graph.q
    rows = [[ZERO] * q for _ in range(q)]
    covered = set()
    for tail, head, _ in matching:
        if tail in covered or head in covered:
            raise NotApplicable("edges do not form a matching")
        covered.update((tail, head))
        rows[head][tail] = Fraction(1)
        rows[head][head] = Fraction(1)
    for x in range(q):
        if x not in covered:
            rows[x][x] = Fraction(1)
    return RecoveryKernel(rows)


# -- shape detection -------------------------------------------------------


def detect_shape(graph: ObfuscationGraph) -> GraphShape:
    """Exact structural match against cycle, chain, and star templates.

    Vertex relabelings are handled by following successor pointers, so the
    paper's index-order presentation is not required. Checks run in the order
    cycle, chain, star; a single edge on two vertices reads as a chain.
    """
    q = graph.q
    uniform = None
    if graph.edges:
        weights = {w for _, _, w in graph.edges}
        if len(weights) == 1:
            uniform = next(iter(weights))

    out_nbr: dict[int, list[int]] = {x: [] for x in range(q)}
    in_nbr: dict[int, list[int]] = {x: [] for x in range(q)}
    for t, h, _ in graph.edges:
        out_nbr[t].append(h)
        in_nbr[h].append(t)

    other = GraphShape("other", uniform_weight=uniform)

    if len(graph.edges) == q and q >= 2:
        if all(len(out_nbr[x]) == 1 and len(in_nbr[x]) == 1 for x in range(q)):
            order = [0]
            while True:
                nxt = out_nbr[order[-1]][0]
                if nxt == 0:
                    break
                if nxt in order:
                    return other
                order.append(nxt)
            if len(order) == q:
                return GraphShape("cycle", order=tuple(order), uniform_weight=uniform)
        return other

    if len(graph.edges) == q - 1 and q >= 2:
        starts = [x for x in range(q) if len(in_nbr[x]) == 0 and len(out_nbr[x]) == 1]
        if (
            len(starts) == 1
            and all(len(out_nbr[x]) <= 1 and len(in_nbr[x]) <= 1 for x in range(q))
        ):
            order = [starts[0]]
            while out_nbr[order[-1]]:
                nxt = out_nbr[order[-1]][0]
                if nxt in order:
                    break
                order.append(nxt)
            if len(order) == q:
                return GraphShape("chain", order=tuple(order), uniform_weight=uniform)
        centers = [x for x in range(q) if len(in_nbr[x]) == q - 1 and len(out_nbr[x]) == 0]
        if centers:
            c = centers[0]
            if all(out_nbr[x] == [c] and len(in_nbr[x]) == 0 for x in range(q) if x != c):
                return GraphShape("star", center=c, uniform_weight=uniform)
        return other

    return other


# -- closed forms ----------------------------------------------------------


def closed_form_sgv(shape: GraphShape, graph: ObfuscationGraph) -> Fraction:
    """Game value from graph structure alone; equals the LP optimum exactly.

    Star: total edge weight. Chain: nu(P_q). Cycle: max of half the total
    weight and nu(C_q).
    """
    if shape.kind == "star":
        return graph.weight_sum()
    if shape.kind == "chain":
        return _matching_for_shape(shape, graph)[1]
    if shape.kind == "cycle":
        half = graph.weight_sum() / 2
        nu = _matching_for_shape(shape, graph)[1]
        return max(half, nu)
    raise NotApplicable("no closed-form game value for this graph shape")


def closed_form_informativeness(shape: GraphShape, graph: ObfuscationGraph) -> Fraction:
    """Truthful-mass closed forms: star -> 1; uniform cycle -> q/2;
    uniform chain -> (q+1)/2 for odd q, q/2 for even q."""
    q = graph.q
    if shape.kind == "star":
        return Fraction(1)
    if shape.kind in ("chain", "cycle"):
        if shape.uniform_weight is None or shape.uniform_weight <= 0:
            raise NotApplicable(
                f"informativeness closed form for a {shape.kind} needs a uniform positive weight"
            )
        if shape.kind == "cycle":
            return Fraction(q, 2)
        return Fraction(q + 1, 2) if q % 2 else Fraction(q, 2)
    raise NotApplicable("no closed-form informativeness for this graph shape")


# -- setting comparison ------------------------------------------------------


@dataclass(frozen=True)
class SettingComparison:
    """Behavioral informativeness next to the deterministic-strategy value."""

    q: int
    sgv: Fraction
    behavioral: Fraction
    deterministic: int
    cover: tuple[tuple[int, ...], ...]

    @property
    def ordering(self) -> str:
        if self.behavioral < self.deterministic:
            return "<"
        return "=" if self.behavioral == self.deterministic else ">"


def compare_settings(utility: UtilityMatrix) -> SettingComparison:
    """Informativeness of the randomized game vs the deterministic one.

    The deterministic value is the vertex clique cover number of the strong
    sender graph; propagates ResourceLimit from the exact cover search.
    """
    from .equilibrium import solve_game  # deferred: equilibrium builds on this module's callers

    cover, theta = vertex_clique_cover(StrongSenderGraph.from_utility(utility))
    report = solve_game(utility)
    return SettingComparison(
        q=utility.q,
        sgv=report.sgv,
        behavioral=report.informativeness,
        deterministic=theta,
        cover=cover,
    )


# -- vertex clique cover ---------------------------------------------------


def vertex_clique_cover(graph: StrongSenderGraph) -> tuple[tuple[tuple[int, ...], ...], int]:
    """Minimum partition of the vertices into cliques, with one witness cover.

    Computed as an exact chromatic number of the complement graph
    (backtracking with incremental color bounds); limited to q <= 16.
    """
    q = graph.q
    if q > CLIQUE_COVER_VERTEX_LIMIT:
        raise ResourceLimit(
            f"exact clique cover supports q <= {CLIQUE_COVER_VERTEX_LIMIT}, got {q}"
        )
    adjacent = [[False] * q for _ in range(q)]
    for a, b in graph.edges:
        adjacent[a][b] = adjacent[b][a] = True
    # Complement adjacency: conflicts that forbid sharing a clique.
    conflict = [
        [a != b and not adjacent[a][b] for b in range(q)] for a in range(q)
    ]
    order = sorted(range(q), key=lambda x: (-sum(conflict[x]), x))

    colors = [-1] * q

    def colorable(k: int) -> bool:
        def place(idx: int, used: int) -> bool:
            if idx == q:
                return True
            x = order[idx]
            forbidden = {colors[y] for y in range(q) if conflict[x][y] and colors[y] >= 0}
            limit = min(k, used + 1)
            for c in range(limit):
                if c in forbidden:
                    continue
                colors[x] = c
                if place(idx + 1, max(used, c + 1)):
                    return True
                colors[x] = -1
            return False

        for i in range(q):
            colors[i] = -1
        return place(0, 0)

    for k in range(1, q + 1):
        if colorable(k):
            cover = tuple(
                tuple(x for x in range(q) if colors[x] == c) for c in range(k)
            )
            cover = tuple(group for group in cover if group)
            return cover, len(cover)
    raise AssertionError("a graph is always q-colorable")
