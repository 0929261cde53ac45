import random

import pytest

from fast_robber import graph as graph_ops
from fast_robber import strategy
from fast_robber.bounds import BoundParams, averaging_budget, claim_bound
from fast_robber.errors import PreconditionError
from fast_robber.schema import SimulationSpec
from fast_robber.simulation import run_simulation
from fast_robber.strategy import WitnessRobber, Moved, NoSafeSuccessor, PreconditionViolated, SafeWitness


def _chase(g, params, rounds):
    """Witnesses held by the robber while one cop walks straight at it."""

    robber = WitnessRobber(g, params)
    cop = 0
    robber.place([cop])
    trail = [robber.witness]
    for _ in range(rounds):
        dist = graph_ops.distances_from(g, robber.witness.r)
        cop = min(graph_ops.closed_neighborhood(g, cop), key=lambda v: (dist[v], v))
        outcome = robber.respond([cop])
        assert isinstance(outcome, Moved), outcome
        trail.append(robber.witness)
    return trail


def _near(g, vertices, radius):
    ring = set(vertices)
    for _ in range(radius):
        ring |= {w for v in ring for w in g.adjacency[v]}
    return sorted(ring - set(vertices))


@pytest.fixture(scope="module")
def mcgee_trail(mcgee):
    return _chase(mcgee, BoundParams(2, 2, 2), 200)


@pytest.fixture(scope="module")
def tutte12_trail(tutte12):
    return _chase(tutte12, BoundParams(2, 4, 8), 200)


def test_control_closure(mcgee):
    assert strategy.control_closure(graph_ops.cycle_graph(6), [3]) == {2, 3, 4}
    assert len(strategy.control_closure(mcgee, [0])) == 4
    assert len(strategy.control_closure(mcgee, [0, mcgee.adjacency[0][0]])) == 6


def test_is_controlled():
    assert strategy.is_controlled((0, 1, 2), {2})
    assert not strategy.is_controlled((0, 1, 2), {3})


def test_host_must_be_regular_with_large_girth(petersen, mcgee):
    with pytest.raises(PreconditionError):
        strategy.check_host(graph_ops.complete_graph(4), BoundParams(2, 2, 2))
    with pytest.raises(PreconditionError):
        strategy.check_host(petersen, BoundParams(2, 2, 2))
    with pytest.raises(PreconditionError):
        strategy.check_host(mcgee, BoundParams(3, 2, 2))
    strategy.check_host(mcgee, BoundParams(2, 2, 2))


@pytest.mark.parametrize("start", range(24))
def test_initial_witness_against_colocated_cop(mcgee, mcgee_params, start):
    witness = strategy.find_initial_witness(mcgee, [start], mcgee_params)
    assert witness is not None
    assert graph_ops.distances_from(mcgee, start)[witness.r] == mcgee_params.t + 1
    assert len(witness.S) == mcgee_params.m
    assert witness.t == mcgee_params.t
    assert strategy.verify_witness(mcgee, witness, [start], mcgee_params) == []


def test_initial_witness_on_tutte_12_cage(tutte12, tutte12_params):
    witness = strategy.find_initial_witness(tutte12, [0, 0], tutte12_params)
    assert graph_ops.distances_from(tutte12, 0)[witness.r] == 5
    assert strategy.verify_witness(tutte12, witness, [0], tutte12_params) == []


def test_initial_witness_against_spread_cops(mcgee, mcgee_params):
    cops = [0, 12]
    witness = strategy.find_initial_witness(mcgee, cops, mcgee_params)
    assert witness is not None
    assert witness.r not in strategy.control_closure(mcgee, cops)
    assert strategy.verify_witness(mcgee, witness, cops, mcgee_params) == []


def test_initial_witness_needs_a_cop(mcgee, mcgee_params):
    with pytest.raises(PreconditionError):
        strategy.find_initial_witness(mcgee, [], mcgee_params)


def test_verify_witness_reports_broken_paths(mcgee, mcgee_params):
    witness = strategy.find_initial_witness(mcgee, [0], mcgee_params)
    s = witness.S[0]
    problems = strategy.verify_witness(mcgee, witness, [s], mcgee_params)
    assert any("controlled" in problem for problem in problems)
    bad = SafeWitness.from_paths(witness.r, [witness.witness_paths[s]])
    assert any("|S|" in problem for problem in strategy.verify_witness(mcgee, bad, [0], mcgee_params))


@pytest.mark.parametrize("trail_name, params", [("mcgee_trail", (2, 2, 2)), ("tutte12_trail", (2, 4, 8))])
def test_escaping_path_counts(request, trail_name, params):
    d, t, m = params
    trail = request.getfixturevalue(trail_name)
    assert len(trail) > 200
    g_name = "mcgee" if trail_name == "mcgee_trail" else "tutte12"
    g = request.getfixturevalue(g_name)
    for witness in trail:
        escaping = strategy.enumerate_escaping_paths(g, witness)
        assert len(escaping) == m * d ** t
        for s in witness.S:
            from_s = [path for path in escaping if path[0] == s]
            assert len(from_s) == d ** t
            assert len({path[-1] for path in from_s}) == d ** t
            assert all(path[1] not in witness.U for path in from_s)


@pytest.mark.parametrize("g_name, t", [("mcgee", 2), ("tutte_coxeter", 2), ("tutte12", 4)])
def test_witness_shape_on_high_girth_hosts(request, g_name, t):
    g = request.getfixturevalue(g_name)
    params = BoundParams(2, t, 2 ** t // 2)
    for witness in _chase(g, params, 60):
        assert len(witness.U) <= 1 + params.m * t
        for s in witness.S:
            assert not set(g.adjacency[s]) & set(witness.S)
        for v in g.vertices():
            if v not in witness.U:
                assert len(set(g.adjacency[v]) & witness.U) <= 1


@pytest.mark.parametrize("trail_name, g_name", [("mcgee_trail", "mcgee"), ("tutte12_trail", "tutte12")])
def test_claim_bounds_hold(request, trail_name, g_name):
    trail = request.getfixturevalue(trail_name)
    g = request.getfixturevalue(g_name)
    rng = random.Random(7)
    d, t = 2, trail[0].t
    for _ in range(1000):
        witness = rng.choice(trail)
        pool = _near(g, witness.U, 2) if rng.random() < 0.5 else [v for v in g.vertices() if v not in witness.U]
        cop = rng.choice(pool)
        counts = strategy.claim_counts(g, witness, cop)
        assert counts.total <= claim_bound(d, t)
        for v, through in counts.per_vertex.items():
            limit = counts.s_bound if v in witness.S else counts.non_s_bound
            assert through <= limit


def test_claim_counts_reject_cop_in_u(mcgee, mcgee_trail):
    witness = mcgee_trail[0]
    with pytest.raises(PreconditionError):
        strategy.claim_counts(mcgee, witness, witness.r)


def test_claim_counts_for_cop_next_to_s(mcgee, mcgee_trail):
    witness = mcgee_trail[0]
    s = witness.S[0]
    cop = next(v for v in mcgee.adjacency[s] if v not in witness.U)
    counts = strategy.claim_counts(mcgee, witness, cop)
    assert counts.per_vertex[s] == 4
    assert counts.total >= 4


@pytest.mark.parametrize(
    "trail_name, g_name, params, minimum",
    [
        ("mcgee_trail", "mcgee", BoundParams(2, 2, 2), 0),
        ("tutte12_trail", "tutte12", BoundParams(2, 4, 8), 100),
    ],
)
def test_averaging_guarantee(request, trail_name, g_name, params, minimum):
    trail = request.getfixturevalue(trail_name)
    g = request.getfixturevalue(g_name)
    budget = averaging_budget(params)
    rng = random.Random(11)
    checked = 0
    for _ in range(3000):
        witness = rng.choice(trail)
        ring = _near(g, witness.U, 2)
        cops = rng.sample(ring, rng.randint(1, 3))
        total = strategy.total_controlled(g, witness, cops)
        if 0 < total < budget:
            checked += 1
            outcome = strategy.strategy_step(g, witness, cops, params)
            assert isinstance(outcome, Moved), outcome
            assert strategy.verify_witness(g, outcome.next, cops, params) == []
    assert checked >= minimum


def test_step_reports_cop_inside_u(mcgee, mcgee_params, mcgee_trail):
    witness = mcgee_trail[0]
    outcome = strategy.strategy_step(mcgee, witness, [witness.r], mcgee_params)
    assert isinstance(outcome, PreconditionViolated)
    assert outcome.to_dict()["kind"] == "PreconditionViolated"


def test_step_without_safe_successor(mcgee, mcgee_params, mcgee_trail):
    witness = mcgee_trail[0]
    cops = [v for v in mcgee.vertices() if v not in witness.U]
    outcome = strategy.strategy_step(mcgee, witness, cops, mcgee_params)
    assert isinstance(outcome, NoSafeSuccessor)
    assert outcome.diagnostics == {s: 4 for s in witness.S}


def test_moved_path_is_the_witness_path(mcgee, mcgee_params, mcgee_trail):
    witness = mcgee_trail[0]
    outcome = strategy.strategy_step(mcgee, witness, [0], mcgee_params)
    assert isinstance(outcome, Moved)
    assert outcome.path == witness.witness_paths[outcome.next.r]
    assert outcome.next.r in witness.S


def test_witness_robber_requires_placement(mcgee, mcgee_params):
    robber = WitnessRobber(mcgee, mcgee_params)
    assert isinstance(robber.respond([0]), PreconditionViolated)


def test_robber_survives_one_greedy_cop_on_mcgee():
    spec = SimulationSpec(graph="catalog:mcgee", speed=2, cop_count=1, cop_strategy="greedy", max_rounds=1000)
    verdict = run_simulation(spec).verdict
    if verdict.kind == "StrategyFailure" and verdict.outcome.get("kind") == "PreconditionViolated":
        pytest.skip("cop entered the witness paths")
    assert verdict.to_dict() == {"kind": "RobberSurvived", "rounds": 1000}


def test_robber_survives_one_greedy_cop_on_tutte_12_cage():
    spec = SimulationSpec(
        graph="catalog:tutte-12-cage", speed=4, cop_count=1, cop_strategy="greedy", max_rounds=200, m=8
    )
    verdict = run_simulation(spec).verdict
    if verdict.kind == "StrategyFailure" and verdict.outcome.get("kind") == "PreconditionViolated":
        pytest.skip("cop entered the witness paths")
    assert verdict.to_dict() == {"kind": "RobberSurvived", "rounds": 200}
