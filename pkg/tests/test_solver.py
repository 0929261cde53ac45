import itertools
import random

import networkx as nx
import pytest

from fast_robber import graph as graph_ops
from fast_robber import solver
from fast_robber.errors import PreconditionError, StateCapExceededError
from fast_robber.solver import SolverConfig, StateIndex
from fast_robber.types import Turn


def _from_networkx(nx_graph):
    relabel = {node: i for i, node in enumerate(sorted(nx_graph.nodes()))}
    return graph_ops.from_edges(len(relabel), [(relabel[u], relabel[v]) for u, v in nx_graph.edges()])


def _random_tree(n, seed):
    rng = random.Random(seed)
    return graph_ops.from_edges(n, [(v, rng.randrange(v)) for v in range(1, n)])


def _classical_cops_win(g, k):
    """Plain fixed point over (cops, robber) positions for the speed-1 game."""

    closed = [(v,) + g.adjacency[v] for v in g.vertices()]
    placements = list(itertools.combinations_with_replacement(g.vertices(), k))
    moves = {
        cops: {tuple(sorted(choice)) for choice in itertools.product(*(closed[c] for c in cops))}
        for cops in placements
    }
    cop_win = set()
    robber_lost = set()
    changed = True
    while changed:
        changed = False
        for cops in placements:
            for r in g.vertices():
                if (cops, r) not in robber_lost:
                    if r in cops or all(r2 in cops or (cops, r2) in cop_win for r2 in closed[r]):
                        robber_lost.add((cops, r))
                        changed = True
                if (cops, r) not in cop_win:
                    if r in cops or any(r in nxt or (nxt, r) in robber_lost for nxt in moves[cops]):
                        cop_win.add((cops, r))
                        changed = True
    return any(all((cops, r) in cop_win for r in g.vertices()) for cops in placements)


def _classical_cop_number(g, k_max):
    for k in range(1, k_max + 1):
        if _classical_cops_win(g, k):
            return k
    return None


def _atlas_graphs(max_order):
    for nx_graph in nx.graph_atlas_g():
        if 1 <= nx_graph.number_of_nodes() <= max_order and nx.is_connected(nx_graph):
            yield nx_graph


def _random_connected(n, count, seed):
    rng = random.Random(seed)
    found = []
    while len(found) < count:
        nx_graph = nx.gnp_random_graph(n, rng.uniform(0.2, 0.6), seed=rng.randrange(2 ** 32))
        if nx.is_connected(nx_graph):
            found.append(nx_graph)
    return found


def test_count_states():
    assert solver.count_states(4, 2) == 10 * 4 * 2
    assert len(StateIndex(4, 2)) == solver.count_states(4, 2)


def test_state_index_layout():
    index = StateIndex(5, 2)
    state = index.encode((1, 3), 4, Turn.ROBBER_TO_MOVE)
    assert state == (index.multiset_id((1, 3)) * 5 + 4) * 2 + 1
    assert index.decode(state) == ((1, 3), 4, Turn.ROBBER_TO_MOVE)
    assert index.decode(0) == ((0, 0), 0, Turn.COPS_TO_MOVE)


def test_path_is_one_cop_win_at_speed_three():
    report = solver.cops_win_with(graph_ops.path_graph(5), 1, 3)
    assert report.cop_win
    assert report.best_placement is not None


def test_square_needs_two_cops():
    square = graph_ops.cycle_graph(4)
    assert not solver.cops_win_with(square, 1, 1).cop_win
    assert solver.cops_win_with(square, 2, 1).cop_win


def test_capture_time_and_placement_on_short_path():
    report = solver.cops_win_with(graph_ops.path_graph(3), 1, 1)
    assert report.best_placement == (1,)
    assert report.capture_time == 1


def test_complete_graph_is_caught_in_one_move():
    report = solver.cops_win_with(graph_ops.complete_graph(5), 1, 3)
    assert report.cop_win
    assert report.capture_time == 1


@pytest.mark.parametrize("seed", range(20))
def test_trees_are_one_cop_win(seed):
    tree = _random_tree(random.Random(seed).randint(2, 20), seed)
    for speed in (1, 2, 3):
        assert solver.cop_number(tree, speed, 2) == 1


@pytest.mark.parametrize("n", range(4, 13))
def test_cycles_need_two_cops(n):
    cycle = graph_ops.cycle_graph(n)
    for speed in (1, 2):
        assert solver.cop_number(cycle, speed, 3) == 2


def test_petersen_cop_number(petersen):
    assert solver.cop_number(petersen, 1, 3) == 3


def test_six_cycle_at_speed_two():
    assert solver.cop_number(graph_ops.cycle_graph(6), 2, 3) == 2


def test_solve_cop_number_keeps_reports(petersen):
    value, reports = solver.solve_cop_number(petersen, 1, 3)
    assert value == 3
    assert [report.k for report in reports] == [1, 2, 3]
    assert [report.cop_win for report in reports] == [False, False, True]
    assert reports[-1].to_dict()["best_placement"] == list(reports[-1].best_placement)


@pytest.mark.parametrize(
    "g",
    [graph_ops.cycle_graph(5), graph_ops.path_graph(6), graph_ops.complete_graph(4)],
    ids=["cycle-5", "path-6", "complete-4"],
)
def test_more_cops_never_hurt(g):
    for speed in (1, 2):
        wins = [solver.cops_win_with(g, k, speed).cop_win for k in (1, 2, 3)]
        assert wins == sorted(wins)


@pytest.mark.parametrize("fixture", ["petersen", "heawood", "mcgee", "tutte_coxeter"])
def test_faster_robber_never_lowers_cop_number(request, fixture):
    g = request.getfixturevalue(fixture)
    k_max = 3
    values = [solver.cop_number(g, speed, k_max) or k_max + 1 for speed in (1, 2)]
    assert values[0] <= values[1]


def test_visited_states_counts_touched_states(petersen):
    report = solver.cops_win_with(petersen, 1, 1)
    captures = 10 * 2
    assert captures <= report.visited_states <= solver.count_states(10, 1)
    path_report = solver.cops_win_with(graph_ops.path_graph(4), 1, 1)
    assert path_report.visited_states == solver.count_states(4, 1)


def test_winning_states_can_be_queried():
    engine = solver.RetrogradeSolver(graph_ops.path_graph(3), 1, 1)
    engine.run()
    assert engine.is_winning((1,), 0, Turn.COPS_TO_MOVE)
    assert engine.is_winning((1,), 1, Turn.ROBBER_TO_MOVE)

    cycle = solver.RetrogradeSolver(graph_ops.cycle_graph(4), 1, 1)
    cycle.run()
    assert not cycle.is_winning((0,), 2, Turn.COPS_TO_MOVE)
    assert cycle.is_winning((0,), 1, Turn.COPS_TO_MOVE)


def test_solver_is_deterministic(petersen):
    assert solver.cops_win_with(petersen, 2, 2) == solver.cops_win_with(petersen, 2, 2)


def test_matches_classical_solver_on_small_graphs():
    for nx_graph in _atlas_graphs(7):
        g = _from_networkx(nx_graph)
        assert solver.cop_number(g, 1, 2) == _classical_cop_number(g, 2), nx_graph.edges()


@pytest.mark.parametrize("n", [8, 9])
def test_matches_classical_solver_on_random_graphs(n):
    for nx_graph in _random_connected(n, 250, seed=n):
        g = _from_networkx(nx_graph)
        assert solver.cop_number(g, 1, 2) == _classical_cop_number(g, 2), nx_graph.edges()


def test_padding_keeps_cop_number(petersen):
    square = graph_ops.cycle_graph(4)
    for speed in (1, 2):
        assert solver.cop_number(graph_ops.pad_with_path(square, 8), speed, 3) == 2
    assert solver.cop_number(graph_ops.pad_with_path(petersen, 14), 1, 3) == 3
    assert solver.cop_number(graph_ops.pad_with_path(petersen, 14), 2, 3) == solver.cop_number(petersen, 2, 3)


def test_state_cap_is_enforced(petersen):
    with pytest.raises(StateCapExceededError) as excinfo:
        solver.cops_win_with(petersen, 2, 1, SolverConfig(state_cap=100))
    assert excinfo.value.estimated_states == solver.count_states(10, 2)
    assert excinfo.value.cap == 100


def test_state_cap_from_environment(monkeypatch, petersen):
    monkeypatch.setenv("PURSUIT_STATE_CAP", "50")
    assert SolverConfig.from_env().state_cap == 50
    with pytest.raises(StateCapExceededError):
        solver.cops_win_with(petersen, 1, 1)


def test_disconnected_graph_is_rejected():
    with pytest.raises(PreconditionError):
        solver.cops_win_with(graph_ops.from_edges(4, [(0, 1), (2, 3)]), 1, 1)
    with pytest.raises(PreconditionError):
        solver.cops_win_with(graph_ops.cycle_graph(4), 0, 1)
