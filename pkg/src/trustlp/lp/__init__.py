"""Exact linear programming: model, simplex solver, game-program builders."""

from .builders import (
    build_dual,
    build_informativeness,
    build_primal,
    certify,
    dual_assignment_from_certificate,
    dual_values_from_certificate,
    kernel_from_certificate,
)
from .certify import CertificationReport, certificate_violations, certified_solve
from .model import Constraint, LinearProgram, LpCertificate, Variable, dual_of
from .simplex import INFEASIBLE, OPTIMAL, UNBOUNDED, solve

__all__ = [
    "Constraint",
    "LinearProgram",
    "LpCertificate",
    "Variable",
    "dual_of",
    "solve",
    "certified_solve",
    "certificate_violations",
    "CertificationReport",
    "build_primal",
    "build_dual",
    "build_informativeness",
    "certify",
    "kernel_from_certificate",
    "dual_values_from_certificate",
    "dual_assignment_from_certificate",
    "OPTIMAL",
    "INFEASIBLE",
    "UNBOUNDED",
]
