"""Acceptance suite: one test per criterion, each printing a PASS line.

Every check is exact rational arithmetic (zero tolerance). Run with
``pytest tests/test_acceptance.py -v -s`` to see the per-criterion lines.
"""

from fractions import Fraction
from random import Random

from trustlp.equilibrium import eps_ses_sequence, solve_game
from trustlp.game import (
    RecoveryKernel,
    UtilityMatrix,
    best_response_structure,
    induced_kernel,
    kernel_value,
)
from trustlp.graphs import (
    ObfuscationGraph,
    StrongSenderGraph,
    matching_kernel,
    max_weight_matching,
    vertex_clique_cover,
)
from trustlp.lp import (
    build_dual,
    build_primal,
    certified_solve,
    certify,
    kernel_from_certificate,
)
from trustlp.oracle import (
    GridSpec,
    grid_search_sgv,
    mutate_to_non_best_response,
    random_sender_strategy,
    vertex_enumeration_sgv,
)

from conftest import (
    U1_ROWS,
    U2_ROWS,
    all_negative_utility,
    chain_utility,
    cycle_utility,
    random_utility,
    star_utility,
)

F = Fraction


def ok(n: int, message: str) -> None:
    print(f"ACCEPTANCE {n}: PASS - {message}")


def test_criterion_1_example1_exact_solution():
    utility = UtilityMatrix(U1_ROWS)
    report = solve_game(utility)
    assert report.sgv == 1
    assert report.informativeness == 1
    assert report.kernel.matrix == ((F(1), F(1)), (F(0), F(0)))
    assert report.sgv_attained_exactly is False
    # Uniqueness: exactly one vertex of the trust polytope attains the value,
    # so the optimal face is that single point.
    from trustlp.oracle import trust_polytope_vertices

    attaining = [
        v
        for v in trust_polytope_vertices(2)
        if kernel_value(utility, RecoveryKernel(v)) == 1
    ]
    assert attaining == [((F(1), F(1)), (F(0), F(0)))]
    ok(1, "example 1: sgv=1, unique kernel (1,1;0,0), informativeness=1, unattained")


def test_criterion_2_example1_eps_ses_sequence():
    utility = UtilityMatrix(U1_ROWS)
    report = solve_game(utility)
    ks = list(range(1, 101))
    steps = eps_ses_sequence(utility, report.kernel, ks, delta=F(1, 10), sgv=report.sgv)
    assert [s.k for s in steps] == ks
    for step in steps:
        assert step.wceu == 1 - F(1, 10 * step.k)
        assert step.epsilon == F(1, 10 * step.k)
        assert step.unique_br
        assert best_response_structure(step.strategy).is_unique
    ok(2, "example 1 sequence: wceu(pi_k) = 1 - 1/(10k) for k=1..100, all unique-BR")


def test_criterion_3_example2_values():
    utility = UtilityMatrix(U2_ROWS)
    report = solve_game(utility)
    assert report.sgv == F(3, 2)
    assert report.informativeness == F(3, 2)
    _, theta = vertex_clique_cover(StrongSenderGraph.from_utility(utility))
    assert theta == 3
    assert report.informativeness < theta
    ok(3, "example 2: sgv=3/2, informativeness=3/2 < clique-cover value 3")


def test_criterion_4_closed_forms_match_lp():
    weights = (F(1), F(2), F(1, 3))
    checked = 0
    for q in range(3, 9):
        for u in weights:
            utility = cycle_utility(q, u)
            report = solve_game(utility)
            assert report.sgv == F(q) * u / 2
            assert report.informativeness == F(q, 2)
            checked += 1
    for q in range(2, 10):
        for u in weights:
            utility = chain_utility(q, u)
            report = solve_game(utility)
            expected_sgv = F(q - 1) * u / 2 if q % 2 else F(q) * u / 2
            expected_info = F(q + 1, 2) if q % 2 else F(q, 2)
            assert report.sgv == expected_sgv
            assert report.informativeness == expected_info
            checked += 1
    rng = Random(404)
    for q in range(3, 9):
        center = rng.randrange(q)
        spokes = {
            x: F(rng.randint(1, 12), rng.choice((1, 2, 3)))
            for x in range(q)
            if x != center
        }
        utility = star_utility(center, spokes, q)
        report = solve_game(utility)
        assert report.sgv == sum(spokes.values(), F(0))
        assert report.informativeness == 1
        checked += 1
    ok(4, f"closed forms: {checked} cycle/chain/star instances match the LP exactly")


def test_criterion_5_duality_and_slackness():
    rng = Random(505)
    for trial in range(200):
        q = rng.choice((2, 3, 4, 5))
        utility = random_utility(rng, q)
        primal = build_primal(utility)
        dual = build_dual(utility)
        p_cert = certified_solve(primal)
        d_cert = certified_solve(dual)
        assert p_cert.objective == d_cert.objective
        report = certify(p_cert, primal, dual)
        assert report.all_verified
        kernel = kernel_from_certificate(p_cert, q)
        for i, j, value in utility.off_diagonal():
            if value < 0:
                assert kernel.matrix[i][j] == 0
    ok(5, "200 random games: primal = dual exactly, slackness certified, "
          "no mass on negative payoffs")


def test_criterion_6_oracle_equivalence():
    rng = Random(606)
    for trial in range(100):
        q = rng.choice((2, 3, 4))
        utility = random_utility(rng, q)
        sgv = certified_solve(build_primal(utility)).objective
        assert vertex_enumeration_sgv(utility).optimum == sgv

    resolutions = (4, 8, 16)
    grid_cases = [UtilityMatrix(U1_ROWS)] + [random_utility(rng, 2) for _ in range(15)]
    for utility in grid_cases:
        sgv = certified_solve(build_primal(utility)).objective
        gaps = []
        for n in resolutions:
            value = grid_search_sgv(utility, GridSpec(n, 2)).best_wceu
            assert value <= sgv
            gaps.append(sgv - value)
        assert gaps[0] >= gaps[1] >= gaps[2]
    for _ in range(3):
        utility = random_utility(rng, 3)
        sgv = certified_solve(build_primal(utility)).objective
        values = [grid_search_sgv(utility, GridSpec(n, 3)).best_wceu for n in (2, 4, 8)]
        assert all(v <= sgv for v in values)
        assert sgv - values[0] >= sgv - values[1] >= sgv - values[2]

    u1 = UtilityMatrix(U1_ROWS)
    gaps = [1 - grid_search_sgv(u1, GridSpec(n, 2)).best_wceu for n in resolutions]
    assert gaps == [F(1, 4), F(1, 8), F(1, 16)]
    ok(6, "oracles: vertex = LP on 100 instances; grid sound and monotone; "
          "example-1 gaps exactly 1/4, 1/8, 1/16")


def test_criterion_7_full_disclosure_iff():
    rng = Random(707)
    for trial in range(100):
        q = rng.choice((2, 3, 4))
        utility = all_negative_utility(rng, q)
        report = solve_game(utility)
        assert report.informativeness == q
        assert report.full_disclosure
    for trial in range(100):
        q = rng.choice((2, 3, 4))
        while True:
            utility = random_utility(rng, q)
            if any(v >= 0 for _, _, v in utility.off_diagonal()):
                break
        report = solve_game(utility)
        assert 1 <= report.informativeness
        assert report.informativeness < q
    ok(7, "informativeness = q exactly when all payoffs negative (100 instances) "
          "and < q with any nonnegative payoff (100 instances)")


def test_criterion_8_value_based_bounds():
    rng = Random(808)
    equality_checked = 0
    for trial in range(100):
        q = rng.choice((2, 3, 4))
        uniform_positive = trial % 2 == 0
        while True:
            if uniform_positive:
                u = F(rng.randint(1, 6), rng.choice((1, 2)))
                rows = [[F(0)] * q for _ in range(q)]
                for i in range(q):
                    for j in range(q):
                        if i != j:
                            rows[i][j] = u if rng.random() < 0.5 else F(-rng.randint(1, 3))
                utility = UtilityMatrix(rows)
            else:
                utility = random_utility(rng, q, forbid_zero=True)
            positives = [v for _, _, v in utility.off_diagonal() if v > 0]
            if positives:
                break
        report = solve_game(utility)
        u_plus = max(positives)
        u_minus = min(positives)
        lower = q - report.sgv / u_minus
        upper = q - report.sgv / u_plus
        assert lower <= report.informativeness <= upper
        if u_plus == u_minus:
            assert report.informativeness == q - report.sgv / u_plus
            equality_checked += 1
    assert equality_checked >= 30
    ok(8, f"bounds hold on 100 instances ({equality_checked} with equality end-to-end)")


def test_criterion_9_matching_lower_bound():
    rng = Random(909)
    for trial in range(200):
        q = rng.choice((2, 3, 4, 5))
        utility = random_utility(rng, q)
        graph = ObfuscationGraph.from_utility(utility)
        matching, nu = max_weight_matching(graph)
        sgv = certified_solve(build_primal(utility)).objective
        assert nu <= sgv
        kernel = matching_kernel(graph, matching)
        assert kernel.is_trust_feasible()
        assert kernel_value(utility, kernel) == nu
    ok(9, "200 random games: matching weight <= sgv and the matching kernel "
          "is trust-feasible with matching value")


def test_criterion_10_trust_closure_and_mutation():
    rng = Random(1010)
    pairs = 0
    while pairs < 500:
        q = rng.choice((2, 3, 4))
        sender = random_sender_strategy(q, rng, denominator=rng.choice((4, 6, 9, 12)))
        structure = best_response_structure(sender)
        for selection in structure.deterministic_selections():
            receiver = structure.receiver_from_selection(selection)
            assert induced_kernel(sender, receiver).is_trust_feasible()
            pairs += 1
            if pairs >= 500:
                break

    violations = 0
    for _ in range(300):
        q = rng.choice((2, 3))
        sender = random_sender_strategy(q, rng, denominator=6)
        receiver = mutate_to_non_best_response(sender, rng)
        if receiver is not None and not induced_kernel(sender, receiver).is_trust_feasible():
            violations += 1
    assert violations >= 1
    ok(10, f"500 best-response pairs trust-feasible; mutation produced "
           f"{violations} trust violations")
