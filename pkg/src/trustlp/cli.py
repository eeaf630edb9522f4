"""Command-line client for the solver service layer.

Thin by design: parse the matrix file, call the same handlers the HTTP
endpoints use, and render the response model as text or JSON. All values are
exact rationals; ``--decimal`` adds rounded convenience columns without
replacing them. Symbols/signals are reported 0-based.

Exit codes: 0 success, 1 unexpected error, 2 parse error, 3 invalid
instance, 4 resource limit exceeded, 5 verification or certification
failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import (
    CertificationFailure,
    InvalidInstance,
    NotApplicable,
    ParseError,
    ResourceLimit,
    VerificationFailure,
)
from .matrixio import parse_matrix_file
from .rationals import parse_rational
from .service import handlers
from .service import models as m

EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_PARSE = 2
EXIT_INVALID = 3
EXIT_RESOURCE = 4
EXIT_VERIFICATION = 5


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("input", help="utility matrix file (line 1: q; then q rows of q rationals)")
    sub.add_argument("--normalize", action="store_true", help="subtract diagonal payoffs per column")
    sub.add_argument("--format", choices=["text", "json"], default="text", dest="fmt")
    sub.add_argument("--decimal", action="store_true", help="add rounded convenience values")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="trustlp",
        description="Exact analysis of trust-constrained sender-receiver persuasion games.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sgv", help="game value, witness kernel, duals, certification")
    _add_common(p)

    p = sub.add_parser("info", help="informativeness, witness, value-based bounds")
    _add_common(p)
    p.add_argument(
        "--joint-informativeness",
        action="store_true",
        help="use the coupled primal-dual build instead of the pinned-value build",
    )

    p = sub.add_parser("eps-ses", help="near-equilibrium sender strategies for given k's")
    _add_common(p)
    p.add_argument("--ks", default="1,2,4,8", help="comma-separated positive integers")
    p.add_argument("--delta", default=None, help="perturbation size (rational); default: half the smallest recovered diagonal")

    p = sub.add_parser("graph", help="obfuscation graph, matching, closed forms vs LP")
    _add_common(p)

    p = sub.add_parser("compare", help="behavioral vs deterministic informativeness")
    _add_common(p)

    p = sub.add_parser("verify", help="brute-force oracle cross-checks")
    _add_common(p)
    p.add_argument("--grid", type=int, default=8, help="finest grid resolution N")
    p.add_argument("--seed", type=int, default=0, help="seed for the random strategy checks")
    p.add_argument("--samples", type=int, default=50, help="random sender strategies to check")

    return parser


# -- text rendering ----------------------------------------------------------


def _matrix_lines(rows: list[list[str]], indent: str = "  ") -> list[str]:
    width = max((len(v) for row in rows for v in row), default=1)
    return [indent + "  ".join(v.rjust(width) for v in row) for row in rows]


def _shift_lines(resp) -> list[str]:
    if resp.normalization_shift is None:
        return []
    return [f"normalization shift (add to all utility values): {resp.normalization_shift}"]


def _dec(value: float | None) -> str:
    return "" if value is None else f"  (~{value:.6g})"


def _render_sgv(r: m.SgvResponse) -> str:
    lines = [f"stackelberg game value (q = {r.q})"]
    lines += _shift_lines(r)
    lines.append(f"sgv: {r.sgv}{_dec(r.sgv_decimal)}")
    lines.append(f"attained exactly by the witness: {'yes' if r.sgv_attained_exactly else 'no'}")
    lines.append(f"full disclosure: {'yes' if r.full_disclosure else 'no'}")
    lines.append("witness kernel mu (rows = recovered symbol, columns = source):")
    lines += _matrix_lines(r.kernel)
    lines.append("witness sender strategy pi (rows = signal, columns = source):")
    lines += _matrix_lines(r.sender)
    lines.append("witness receiver strategy sigma (rows = recovered, columns = signal):")
    lines += _matrix_lines(r.receiver)
    lines.append("dual w: " + " ".join(r.dual_w))
    nonzero_v = [e for e in r.dual_v if e.value != "0"]
    if nonzero_v:
        lines.append("dual v (nonzero):")
        lines += [f"  v[{e.recovered}|{e.source}] = {e.value}" for e in nonzero_v]
    else:
        lines.append("dual v: all zero")
    c = r.certification
    lines.append(
        "certification: primal feasible: %s; dual feasible: %s; objectives equal: %s; "
        "complementary slackness: %s"
        % tuple(
            "yes" if ok else "NO"
            for ok in (c.primal_feasible, c.dual_feasible, c.objectives_equal, c.complementary_slackness)
        )
    )
    return "\n".join(lines) + "\n"


def _render_info(r: m.InfoResponse) -> str:
    lines = [f"informativeness (q = {r.q})"]
    lines += _shift_lines(r)
    lines.append(f"sgv: {r.sgv}")
    lines.append(f"informativeness: {r.informativeness}{_dec(r.informativeness_decimal)}")
    if r.bounds.applicable:
        lines.append(f"value-based bounds: {r.bounds.lower} <= informativeness <= {r.bounds.upper}")
    else:
        lines.append("value-based bounds: not applicable (a zero off-diagonal payoff)")
    lines.append(f"full disclosure: {'yes' if r.full_disclosure else 'no'}")
    lines.append("witness kernel mu:")
    lines += _matrix_lines(r.kernel)
    return "\n".join(lines) + "\n"


def _render_eps_ses(r: m.EpsSesResponse) -> str:
    lines = [f"near-equilibrium sequence (q = {r.q})"]
    lines += _shift_lines(r)
    lines.append(f"sgv: {r.sgv}")
    lines.append(f"delta: {r.delta}")
    lines.append(f"attained exactly: {'yes' if r.attained_exactly else 'no'}")
    header = f"{'k':>6}  {'epsilon':>12}  {'wceu':>12}  unique best response"
    lines.append(header)
    for s in r.steps:
        extra = ""
        if s.epsilon_decimal is not None:
            extra = f"  (~{s.epsilon_decimal:.3g}, ~{s.wceu_decimal:.6g})"
        lines.append(
            f"{s.k:>6}  {s.epsilon:>12}  {s.wceu:>12}  {'yes' if s.unique_best_response else 'no'}{extra}"
        )
    lines.append("limit strategy (rows = signal, columns = source):")
    lines += _matrix_lines(r.limit_strategy)
    return "\n".join(lines) + "\n"


def _render_graph(r: m.GraphResponse) -> str:
    lines = [f"obfuscation graph (q = {r.q})"]
    lines += _shift_lines(r)
    if r.edges:
        lines.append("edges (tail head weight):")
        lines += ["  " + line for line in r.edge_list.rstrip("\n").split("\n")]
    else:
        lines.append("edges: none")
    shape = r.shape
    desc = shape.kind
    if shape.kind == "star":
        desc += f" centered at {shape.center}"
    if shape.order is not None:
        desc += " with order " + "->".join(str(v) for v in shape.order)
    if shape.uniform_weight is not None:
        desc += f", uniform weight {shape.uniform_weight}"
    lines.append(f"shape: {desc}")
    medges = " ".join(f"({e.tail}->{e.head})" for e in r.matching.edges) or "(empty)"
    lines.append(f"maximum-weight matching: {medges}, weight nu = {r.matching.weight}")
    for label, model in (
        ("closed-form sgv", r.closed_form_sgv),
        ("closed-form informativeness", r.closed_form_informativeness),
    ):
        if model.applicable:
            lines.append(f"{label}: {model.value}")
        else:
            lines.append(f"{label}: not applicable ({model.reason})")
    lines.append(f"lp sgv: {r.lp_sgv}")
    lines.append(f"lp informativeness: {r.lp_informativeness}")
    lines.append(f"closed forms agree with lp: {'yes' if r.agrees_with_lp else 'NO'}")
    return "\n".join(lines) + "\n"


def _render_compare(r: m.CompareResponse) -> str:
    lines = [f"informativeness comparison (q = {r.q})"]
    lines += _shift_lines(r)
    lines.append(f"sgv: {r.sgv}")
    lines.append(f"behavioral informativeness:    {r.behavioral_informativeness}")
    lines.append(f"deterministic informativeness: {r.deterministic_informativeness}")
    lines.append(
        f"ordering: behavioral {r.ordering} deterministic"
    )
    cover = ", ".join("{" + ", ".join(str(x) for x in group) + "}" for group in r.clique_cover)
    lines.append(f"witness clique cover: {cover}")
    return "\n".join(lines) + "\n"


def _render_verify(r: m.VerifyResponse) -> str:
    lines = [f"oracle cross-check (q = {r.q})"]
    lines += _shift_lines(r)
    lines.append(f"lp sgv: {r.lp_sgv}")
    if r.vertex is not None:
        lines.append(
            f"vertex enumeration: optimum {r.vertex.optimum} over {r.vertex.vertex_count} vertices (matches lp)"
        )
    else:
        lines.append(f"vertex enumeration: skipped ({r.vertex_skipped_reason})")
    lines.append(f"{'N':>6}  {'strategies':>12}  {'best wceu':>12}  {'gap':>10}")
    for g in r.grids:
        lines.append(
            f"{g.resolution:>6}  {g.strategies_scanned:>12}  {g.best_wceu:>12}  {g.gap:>10}"
        )
    lines.append(f"gaps non-increasing: {'yes' if r.gaps_non_increasing else 'NO'}")
    lines.append(
        f"trust closure: {r.closure_selections_checked} grid-witness selections and "
        f"{r.random_pairs_checked} random best-response pairs verified"
    )
    lines.append("verification: ok" if r.ok else "verification: FAILED")
    return "\n".join(lines) + "\n"


_RENDERERS = {
    "sgv": _render_sgv,
    "info": _render_info,
    "eps-ses": _render_eps_ses,
    "graph": _render_graph,
    "compare": _render_compare,
    "verify": _render_verify,
}


def _emit(resp, fmt: str) -> None:
    if fmt == "json":
        payload = resp.model_dump(mode="json", by_alias=True, exclude_none=True)
        sys.stdout.write(json.dumps(payload, indent=2, sort_keys=False) + "\n")
    else:
        sys.stdout.write(_RENDERERS[resp.command](resp))


def _parse_ks(text: str) -> list[int]:
    try:
        ks = [int(part) for part in text.split(",") if part.strip() != ""]
    except ValueError:
        raise InvalidInstance(f"--ks expects comma-separated integers, got {text!r}") from None
    if not ks:
        raise InvalidInstance("--ks is empty")
    return ks


def _run(args: argparse.Namespace) -> None:
    utility, shift = parse_matrix_file(args.input, normalize=args.normalize)
    common = dict(normalize=args.normalize, shift=shift, decimal=args.decimal)
    if args.command == "sgv":
        resp = handlers.sgv_report(utility, **common)
    elif args.command == "info":
        resp = handlers.info_report(utility, joint=args.joint_informativeness, **common)
    elif args.command == "eps-ses":
        delta = None
        if args.delta is not None:
            try:
                delta = parse_rational(args.delta)
            except ValueError as exc:
                raise InvalidInstance(f"--delta: {exc}") from None
        resp = handlers.eps_ses_report(utility, _parse_ks(args.ks), delta=delta, **common)
    elif args.command == "graph":
        resp = handlers.graph_report(utility, **common)
    elif args.command == "compare":
        resp = handlers.compare_report(utility, **common)
    elif args.command == "verify":
        resp = handlers.verify_report(
            utility, grid=args.grid, seed=args.seed, samples=args.samples, **common
        )
    else:  # pragma: no cover - argparse enforces the choices
        raise InvalidInstance(f"unknown command {args.command!r}")
    _emit(resp, args.fmt)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        _run(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except FileNotFoundError as exc:
        print(f"parse error: cannot read input: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (InvalidInstance, NotApplicable) as exc:
        print(f"invalid instance: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ResourceLimit as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (VerificationFailure, CertificationFailure) as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return EXIT_VERIFICATION
    except Exception as exc:  # pragma: no cover - defensive
        print(f"unexpected error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_UNEXPECTED
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
