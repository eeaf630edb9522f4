"""Game-program builders: structure, paper values, duality, certification."""

from fractions import Fraction
from random import Random

import pytest

from trustlp.errors import CertificationFailure
from trustlp.game import UtilityMatrix
from trustlp.lp import (
    LpCertificate,
    build_dual,
    build_informativeness,
    build_primal,
    certified_solve,
    certify,
    dual_of,
    kernel_from_certificate,
    solve,
)
from trustlp.lp.builders import trust_name, v_name, w_name

from conftest import all_negative_utility, random_utility

F = Fraction


def test_primal_shape_q2(u1):
    lp = build_primal(u1)
    assert len(lp.variables) == 4
    relations = [c.relation for c in lp.constraints]
    assert relations.count("=") == 2
    assert relations.count(">=") == 2


def test_primal_shape_q3(u2):
    lp = build_primal(u2)
    assert len(lp.variables) == 9
    relations = [c.relation for c in lp.constraints]
    assert relations.count("=") == 3
    assert relations.count(">=") == 6


def test_primal_example1_value_and_unique_solution(u1):
    cert = certified_solve(build_primal(u1))
    assert cert.objective == 1
    kernel = kernel_from_certificate(cert, 2)
    assert kernel.matrix == ((F(1), F(1)), (F(0), F(0)))


def test_primal_always_optimal_and_nonnegative():
    rng = Random(101)
    for _ in range(40):
        utility = random_utility(rng, rng.choice((1, 2, 3, 4)))
        cert = certified_solve(build_primal(utility))
        assert cert.status == "optimal"
        assert cert.objective >= 0


def test_dual_example1_value(u1):
    cert = certified_solve(build_dual(u1))
    assert cert.objective == 1


def test_dual_all_negative_zero_is_optimal():
    rng = Random(7)
    utility = all_negative_utility(rng, 3)
    lp = build_dual(utility)
    zero = {v.name: F(0) for v in lp.variables}
    assert not lp.feasibility_violations(zero)
    cert = certified_solve(lp)
    assert cert.objective == 0


def test_dual_q1():
    utility = UtilityMatrix([[0]])
    assert certified_solve(build_dual(utility)).objective == 0


def test_hand_stated_dual_matches_mechanical_dual():
    # One-time validation: derive the dual of build_primal symbolically and
    # compare variable signs, objective, and constraints term by term.
    rng = Random(13)
    for q, utility in [
        (2, UtilityMatrix([[0, 1], [-1, 0]])),
        (3, UtilityMatrix([[0, 1, -1], [-1, 0, 1], [1, -1, 0]])),
        (4, random_utility(rng, 4)),
    ]:
        primal = build_primal(utility)
        rename = {f"col[{j}]": w_name(j) for j in range(q)}
        rename.update(
            {
                trust_name(i, j): v_name(i, j)
                for i in range(q)
                for j in range(q)
                if i != j
            }
        )
        mechanical = dual_of(primal, rename)
        stated = build_dual(utility)

        assert mechanical.sense == stated.sense == "min"
        assert {(v.name, v.nonneg) for v in mechanical.variables} == {
            (v.name, v.nonneg) for v in stated.variables
        }
        assert dict(mechanical.objective) == dict(stated.objective)

        def canon(lp):
            return {
                (cons.relation, cons.rhs, frozenset((k, v) for k, v in cons.coeffs.items() if v))
                for cons in lp.constraints
            }

        assert canon(mechanical) == canon(stated)


def test_strong_duality_randomized():
    rng = Random(17)
    for _ in range(60):
        utility = random_utility(rng, rng.choice((2, 3, 4, 5, 6)))
        p = certified_solve(build_primal(utility))
        d = certified_solve(build_dual(utility))
        assert p.objective == d.objective


def test_optimal_kernel_avoids_negative_payoffs():
    # Positive probability is never assigned where the payoff is negative.
    rng = Random(19)
    for _ in range(60):
        utility = random_utility(rng, rng.choice((2, 3, 4)))
        cert = certified_solve(build_primal(utility))
        kernel = kernel_from_certificate(cert, utility.q)
        for i, j, value in utility.off_diagonal():
            if value < 0:
                assert kernel.matrix[i][j] == 0


def test_informativeness_values(u1, u2):
    sgv2 = certified_solve(build_primal(u2)).objective
    assert certified_solve(build_informativeness(u2, sgv2)).objective == F(3, 2)

    sgv1 = certified_solve(build_primal(u1)).objective
    cert = certified_solve(build_informativeness(u1, sgv1))
    assert cert.objective == 1
    kernel = kernel_from_certificate(cert, 2)
    assert kernel.matrix[0][0] == 1 and kernel.matrix[1][1] == 0


def test_informativeness_all_negative_q4():
    rng = Random(29)
    utility = all_negative_utility(rng, 4)
    sgv = certified_solve(build_primal(utility)).objective
    assert sgv == 0
    assert certified_solve(build_informativeness(utility, sgv)).objective == 4


def test_informativeness_builds_agree():
    rng = Random(37)
    for _ in range(30):
        utility = random_utility(rng, rng.choice((2, 3, 4)))
        sgv = certified_solve(build_primal(utility)).objective
        two_stage = certified_solve(build_informativeness(utility, sgv))
        joint = certified_solve(build_informativeness(utility, sgv, joint=True))
        assert two_stage.objective == joint.objective


def test_certify_pass_and_perturbed_failure(u1):
    primal = build_primal(u1)
    dual = build_dual(u1)
    cert = certified_solve(primal)
    report = certify(cert, primal, dual)
    assert report.all_verified

    bumped = dict(cert.dual)
    bumped["col[0]"] = bumped.get("col[0]", F(0)) + 1
    broken = LpCertificate(
        status=cert.status,
        primal=cert.primal,
        objective=cert.objective,
        dual=bumped,
    )
    with pytest.raises(CertificationFailure):
        certify(broken, primal, dual)


def test_certify_detects_slack_violation(u2):
    primal = build_primal(u2)
    dual = build_dual(u2)
    cert = certified_solve(primal)
    # Inflating one trust multiplier keeps signs but breaks objective equality
    # or slackness; certify must name a failure either way.
    tweaked = dict(cert.dual)
    tweaked[trust_name(0, 1)] = tweaked.get(trust_name(0, 1), F(0)) - 1
    broken = LpCertificate("optimal", dict(cert.primal), cert.objective, tweaked)
    with pytest.raises(CertificationFailure):
        certify(broken, primal, dual)


def test_q1_degenerate_game():
    utility = UtilityMatrix([[0]])
    assert certified_solve(build_primal(utility)).objective == 0
    assert certified_solve(build_informativeness(utility, F(0))).objective == 1
