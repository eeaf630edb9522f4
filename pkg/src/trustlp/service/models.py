"""Pydantic request/response schemas for the solver service.

All numbers cross the wire as exact rational strings (``a/b`` or an
integer); optional ``*_decimal`` convenience floats appear only when a
report was requested with decimals. Symbols and signals are indexed
0..q-1. Responses carry a top-level ``schema`` version field.
"""

from __future__ import annotations

from pydantic import BaseModel, ConfigDict, Field

SCHEMA_VERSION = 1


class MatrixRequest(BaseModel):
    """A utility matrix as a grid of rational strings."""

    matrix: list[list[str]]
    normalize: bool = False
    decimal: bool = False


class SgvRequest(MatrixRequest):
    pass


class InfoRequest(MatrixRequest):
    joint: bool = False


class EpsSesRequest(MatrixRequest):
    ks: list[int] = Field(default=[1, 2, 4, 8])
    delta: str | None = None


class GraphRequest(MatrixRequest):
    pass


class CompareRequest(MatrixRequest):
    pass


class VerifyRequest(MatrixRequest):
    grid: int = 8
    seed: int = 0
    samples: int = 50


class ReportBase(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    schema_version: int = Field(default=SCHEMA_VERSION, alias="schema")
    command: str
    q: int
    normalization_shift: str | None = None


class DualEntry(BaseModel):
    recovered: int
    source: int
    value: str


class CertificationSummary(BaseModel):
    primal_feasible: bool
    dual_feasible: bool
    objectives_equal: bool
    complementary_slackness: bool


class SgvResponse(ReportBase):
    command: str = "sgv"
    sgv: str
    sgv_decimal: float | None = None
    sgv_attained_exactly: bool
    full_disclosure: bool
    kernel: list[list[str]]
    sender: list[list[str]]
    receiver: list[list[str]]
    dual_w: list[str]
    dual_v: list[DualEntry]
    certification: CertificationSummary


class InfoBounds(BaseModel):
    applicable: bool
    lower: str | None = None
    upper: str | None = None


class InfoResponse(ReportBase):
    command: str = "info"
    sgv: str
    informativeness: str
    informativeness_decimal: float | None = None
    bounds: InfoBounds
    kernel: list[list[str]]
    full_disclosure: bool


class EpsSesStepModel(BaseModel):
    k: int
    epsilon: str
    wceu: str
    epsilon_decimal: float | None = None
    wceu_decimal: float | None = None
    unique_best_response: bool
    strategy: list[list[str]]


class EpsSesResponse(ReportBase):
    command: str = "eps-ses"
    sgv: str
    delta: str
    attained_exactly: bool
    steps: list[EpsSesStepModel]
    limit_strategy: list[list[str]]


class EdgeModel(BaseModel):
    tail: int
    head: int
    weight: str


class ShapeModel(BaseModel):
    kind: str
    center: int | None = None
    order: list[int] | None = None
    uniform_weight: str | None = None


class MatchingModel(BaseModel):
    edges: list[EdgeModel]
    weight: str


class ClosedFormModel(BaseModel):
    applicable: bool
    value: str | None = None
    reason: str | None = None


class GraphResponse(ReportBase):
    command: str = "graph"
    edges: list[EdgeModel]
    edge_list: str
    shape: ShapeModel
    matching: MatchingModel
    closed_form_sgv: ClosedFormModel
    closed_form_informativeness: ClosedFormModel
    lp_sgv: str
    lp_informativeness: str
    agrees_with_lp: bool


class CompareResponse(ReportBase):
    command: str = "compare"
    sgv: str
    behavioral_informativeness: str
    deterministic_informativeness: str
    ordering: str
    clique_cover: list[list[int]]


class GridResultModel(BaseModel):
    resolution: int
    strategies_scanned: int
    best_wceu: str
    gap: str


class VertexResultModel(BaseModel):
    vertex_count: int
    optimum: str


class VerifyResponse(ReportBase):
    command: str = "verify"
    lp_sgv: str
    vertex: VertexResultModel | None = None
    vertex_skipped_reason: str | None = None
    grids: list[GridResultModel]
    gaps_non_increasing: bool
    closure_selections_checked: int
    random_pairs_checked: int
    ok: bool


class HealthResponse(BaseModel):
    status: str
    version: str
