"""Command handlers shared by the HTTP endpoints and the CLI.

Each ``*_report`` function takes an already-parsed utility matrix and
produces a response model; the thin ``handle_*`` wrappers additionally parse
the request's matrix grid. Domain errors propagate as the package's
exception types; the callers map them to HTTP statuses or exit codes.
"""

from __future__ import annotations

from fractions import Fraction
from random import Random

from ..equilibrium import (
    default_delta,
    eps_ses_sequence,
    kernel_to_strategies,
    sgv_info_bounds,
    solve_game,
)
from ..errors import InvalidInstance, NotApplicable
from ..game import Matrix, UtilityMatrix
from ..graphs import (
    ObfuscationGraph,
    closed_form_informativeness,
    closed_form_sgv,
    compare_settings,
    detect_shape,
    edge_list_text,
    max_weight_matching,
)
from ..oracle import (
    GridSpec,
    check_best_response_closure,
    cross_check,
    random_sender_strategy,
)
from ..rationals import format_rational, parse_rational
from . import models as m

ZERO = Fraction(0)


def matrix_from_grid(grid: list[list[str]], *, normalize: bool) -> tuple[UtilityMatrix, Fraction]:
    """Parse a grid of rational strings; cell errors name (row, column)."""
    if not grid:
        raise InvalidInstance("matrix grid is empty")
    q = len(grid)
    rows = []
    for i, row in enumerate(grid):
        if len(row) != q:
            raise InvalidInstance(f"row {i} has {len(row)} entries, expected {q}")
        parsed = []
        for j, cell in enumerate(row):
            try:
                parsed.append(parse_rational(cell))
            except ValueError as exc:
                raise InvalidInstance(f"cell ({i},{j}): {exc}") from None
        rows.append(parsed)
    if normalize:
        return UtilityMatrix.normalized(rows)
    return UtilityMatrix(rows), ZERO


def _fmt_matrix(matrix: Matrix) -> list[list[str]]:
    return [[format_rational(v) for v in row] for row in matrix]


def _shift_field(normalize: bool, shift: Fraction) -> str | None:
    return format_rational(shift) if normalize else None


def sgv_report(
    utility: UtilityMatrix,
    *,
    normalize: bool = False,
    shift: Fraction = ZERO,
    decimal: bool = False,
) -> m.SgvResponse:
    report = solve_game(utility)
    dual_v = [
        m.DualEntry(recovered=i, source=j, value=format_rational(value))
        for (i, j), value in sorted(report.dual_v.items())
    ]
    return m.SgvResponse(
        q=report.q,
        normalization_shift=_shift_field(normalize, shift),
        sgv=format_rational(report.sgv),
        sgv_decimal=float(report.sgv) if decimal else None,
        sgv_attained_exactly=report.sgv_attained_exactly,
        full_disclosure=report.full_disclosure,
        kernel=_fmt_matrix(report.kernel.matrix),
        sender=_fmt_matrix(report.sender.matrix),
        receiver=_fmt_matrix(report.receiver.matrix),
        dual_w=[format_rational(v) for v in report.dual_w],
        dual_v=dual_v,
        certification=m.CertificationSummary(
            primal_feasible=True,
            dual_feasible=True,
            objectives_equal=True,
            complementary_slackness=True,
        ),
    )


def info_report(
    utility: UtilityMatrix,
    *,
    joint: bool = False,
    normalize: bool = False,
    shift: Fraction = ZERO,
    decimal: bool = False,
) -> m.InfoResponse:
    report = solve_game(utility, joint_informativeness=joint)
    bounds = sgv_info_bounds(utility, report.sgv)
    bounds_model = (
        m.InfoBounds(applicable=False)
        if bounds is None
        else m.InfoBounds(
            applicable=True,
            lower=format_rational(bounds[0]),
            upper=format_rational(bounds[1]),
        )
    )
    return m.InfoResponse(
        q=report.q,
        normalization_shift=_shift_field(normalize, shift),
        sgv=format_rational(report.sgv),
        informativeness=format_rational(report.informativeness),
        informativeness_decimal=float(report.informativeness) if decimal else None,
        bounds=bounds_model,
        kernel=_fmt_matrix(report.kernel.matrix),
        full_disclosure=report.full_disclosure,
    )


def eps_ses_report(
    utility: UtilityMatrix,
    ks: list[int],
    *,
    delta: Fraction | None = None,
    normalize: bool = False,
    shift: Fraction = ZERO,
    decimal: bool = False,
) -> m.EpsSesResponse:
    report = solve_game(utility)
    steps = eps_ses_sequence(utility, report.kernel, ks, delta=delta, sgv=report.sgv)
    used_delta = delta if delta is not None else default_delta(report.kernel)
    limit, _ = kernel_to_strategies(report.kernel)
    return m.EpsSesResponse(
        q=report.q,
        normalization_shift=_shift_field(normalize, shift),
        sgv=format_rational(report.sgv),
        delta=format_rational(used_delta),
        attained_exactly=report.sgv_attained_exactly,
        steps=[
            m.EpsSesStepModel(
                k=s.k,
                epsilon=format_rational(s.epsilon),
                wceu=format_rational(s.wceu),
                epsilon_decimal=float(s.epsilon) if decimal else None,
                wceu_decimal=float(s.wceu) if decimal else None,
                unique_best_response=s.unique_br,
                strategy=_fmt_matrix(s.strategy.matrix),
            )
            for s in steps
        ],
        limit_strategy=_fmt_matrix(limit.matrix),
    )


def graph_report(
    utility: UtilityMatrix,
    *,
    normalize: bool = False,
    shift: Fraction = ZERO,
    decimal: bool = False,
) -> m.GraphResponse:
    graph = ObfuscationGraph.from_utility(utility)
    shape = detect_shape(graph)
    matching, nu = max_weight_matching(graph)
    report = solve_game(utility)

    def closed(fn) -> tuple[m.ClosedFormModel, Fraction | None]:
        try:
            value = fn(shape, graph)
            return m.ClosedFormModel(applicable=True, value=format_rational(value)), value
        except NotApplicable as exc:
            return m.ClosedFormModel(applicable=False, reason=str(exc)), None

    sgv_model, sgv_value = closed(closed_form_sgv)
    info_model, info_value = closed(closed_form_informativeness)
    agrees = (sgv_value is None or sgv_value == report.sgv) and (
        info_value is None or info_value == report.informativeness
    )
    return m.GraphResponse(
        q=utility.q,
        normalization_shift=_shift_field(normalize, shift),
        edges=[
            m.EdgeModel(tail=t, head=h, weight=format_rational(w)) for t, h, w in graph.edges
        ],
        edge_list=edge_list_text(graph),
        shape=m.ShapeModel(
            kind=shape.kind,
            center=shape.center,
            order=list(shape.order) if shape.order is not None else None,
            uniform_weight=(
                format_rational(shape.uniform_weight)
                if shape.uniform_weight is not None
                else None
            ),
        ),
        matching=m.MatchingModel(
            edges=[m.EdgeModel(tail=t, head=h, weight=format_rational(w)) for t, h, w in matching],
            weight=format_rational(nu),
        ),
        closed_form_sgv=sgv_model,
        closed_form_informativeness=info_model,
        lp_sgv=format_rational(report.sgv),
        lp_informativeness=format_rational(report.informativeness),
        agrees_with_lp=agrees,
    )


def compare_report(
    utility: UtilityMatrix,
    *,
    normalize: bool = False,
    shift: Fraction = ZERO,
    decimal: bool = False,
) -> m.CompareResponse:
    comparison = compare_settings(utility)
    return m.CompareResponse(
        q=comparison.q,
        normalization_shift=_shift_field(normalize, shift),
        sgv=format_rational(comparison.sgv),
        behavioral_informativeness=format_rational(comparison.behavioral),
        deterministic_informativeness=str(comparison.deterministic),
        ordering=comparison.ordering,
        clique_cover=[list(group) for group in comparison.cover],
    )


def verify_report(
    utility: UtilityMatrix,
    *,
    grid: int = 8,
    seed: int = 0,
    samples: int = 50,
    normalize: bool = False,
    shift: Fraction = ZERO,
    decimal: bool = False,
) -> m.VerifyResponse:
    oracle = cross_check(utility, GridSpec(grid, utility.q))
    rng = Random(seed)
    pairs = 0
    for _ in range(samples):
        sender = random_sender_strategy(utility.q, rng)
        pairs += check_best_response_closure(utility, sender)
    return m.VerifyResponse(
        q=utility.q,
        normalization_shift=_shift_field(normalize, shift),
        lp_sgv=format_rational(oracle.lp_sgv),
        vertex=(
            m.VertexResultModel(
                vertex_count=oracle.vertex.vertex_count,
                optimum=format_rational(oracle.vertex.optimum),
            )
            if oracle.vertex is not None
            else None
        ),
        vertex_skipped_reason=oracle.vertex_skipped_reason,
        grids=[
            m.GridResultModel(
                resolution=g.resolution,
                strategies_scanned=g.strategies_scanned,
                best_wceu=format_rational(g.best_wceu),
                gap=format_rational(gap),
            )
            for g, gap in zip(oracle.grids, oracle.gaps)
        ],
        gaps_non_increasing=True,
        closure_selections_checked=oracle.closure_selections_checked,
        random_pairs_checked=pairs,
        ok=True,
    )


# -- request-level wrappers (HTTP surface) -----------------------------------


def handle_sgv(req: m.SgvRequest) -> m.SgvResponse:
    utility, shift = matrix_from_grid(req.matrix, normalize=req.normalize)
    return sgv_report(utility, normalize=req.normalize, shift=shift, decimal=req.decimal)


def handle_info(req: m.InfoRequest) -> m.InfoResponse:
    utility, shift = matrix_from_grid(req.matrix, normalize=req.normalize)
    return info_report(
        utility, joint=req.joint, normalize=req.normalize, shift=shift, decimal=req.decimal
    )


def handle_eps_ses(req: m.EpsSesRequest) -> m.EpsSesResponse:
    utility, shift = matrix_from_grid(req.matrix, normalize=req.normalize)
    delta = None
    if req.delta is not None:
        try:
            delta = parse_rational(req.delta)
        except ValueError as exc:
            raise InvalidInstance(str(exc)) from None
    return eps_ses_report(
        utility, req.ks, delta=delta, normalize=req.normalize, shift=shift, decimal=req.decimal
    )


def handle_graph(req: m.GraphRequest) -> m.GraphResponse:
    utility, shift = matrix_from_grid(req.matrix, normalize=req.normalize)
    return graph_report(utility, normalize=req.normalize, shift=shift, decimal=req.decimal)


def handle_compare(req: m.CompareRequest) -> m.CompareResponse:
    utility, shift = matrix_from_grid(req.matrix, normalize=req.normalize)
    return compare_report(utility, normalize=req.normalize, shift=shift, decimal=req.decimal)


def handle_verify(req: m.VerifyRequest) -> m.VerifyResponse:
    utility, shift = matrix_from_grid(req.matrix, normalize=req.normalize)
    return verify_report(
        utility,
        grid=req.grid,
        seed=req.seed,
        samples=req.samples,
        normalize=req.normalize,
        shift=shift,
        decimal=req.decimal,
    )
