"""Cops-versus-robber simulations, transcript replay and seeded batches."""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
from typing import Callable, List, Optional, Sequence

import numpy as np

from . import game
from .bounds import BoundParams, default_witness_size
from .errors import PreconditionError, RuleViolationError
from .graph import distances_from, is_regular, read_graph_source
from .schema import SimulationSpec, Transcript, Verdict
from .strategy import WitnessRobber, Moved
from .types import Actor, CopMultiset, GameConfig, GameState, Graph, MoveRecord, Turn, canonical_cops

LOGGER = logging.getLogger(__name__)

CopPolicy = Callable[[Graph, GameState, Sequence[np.random.Generator]], CopMultiset]

NO_SAFE_START = {"kind": "PreconditionViolated", "reason": "no safe starting vertex"}


def cop_streams(seed: Optional[int], cop_count: int) -> List[np.random.Generator]:
    """One independent PCG64 stream per cop, split from a single seed."""

    children = np.random.SeedSequence(seed if seed is not None else 0).spawn(cop_count)
    return [np.random.Generator(np.random.PCG64(child)) for child in children]


def stationary_cop_move(g: Graph, state: GameState, rng: Sequence[np.random.Generator] = ()) -> CopMultiset:
    return state.cops


def random_cop_move(g: Graph, state: GameState, rng: Sequence[np.random.Generator]) -> CopMultiset:
    """Each cop stays or steps to a neighbour uniformly, drawing from its own stream."""

    moves = []
    for cop, stream in zip(state.cops, rng):
        options = (cop,) + g.adjacency[cop]
        moves.append(options[int(stream.integers(len(options)))])
    return canonical_cops(moves)


def greedy_cop_move(g: Graph, state: GameState, rng: Sequence[np.random.Generator] = ()) -> CopMultiset:
    """Every cop steps along a shortest path toward the robber, smallest id on ties."""

    if state.turn is not Turn.COPS_TO_MOVE or state.robber is None:
        raise PreconditionError("greedy cops move only on the cops' turn")
    dist = distances_from(g, state.robber)
    unreachable = g.n + 1
    moves = []
    for cop in state.cops:
        options = (cop,) + g.adjacency[cop]
        moves.append(min(options, key=lambda v: (dist.get(v, unreachable), v)))
    return canonical_cops(moves)


class ScriptedCops:
    """Replays a fixed list of cop multisets, one per round, then stands still."""

    def __init__(self, script: Sequence[Sequence[int]]) -> None:
        self.script = [canonical_cops(entry) for entry in script]

    def __call__(self, g: Graph, state: GameState, rng: Sequence[np.random.Generator] = ()) -> CopMultiset:
        index = state.round + 1
        if index < len(self.script):
            return self.script[index]
        return state.cops


def witness_robber_for(g: Graph, spec: SimulationSpec) -> WitnessRobber:
    degree = is_regular(g)
    if degree is None or degree < 3:
        raise PreconditionError("the robber strategy needs a regular graph of degree at least 3")
    d = degree - 1
    m = spec.m if spec.m is not None else default_witness_size(d, spec.speed)
    return WitnessRobber(g, BoundParams(d=d, t=spec.speed, m=m))


def policy_for(spec: SimulationSpec) -> CopPolicy:
    if spec.cop_strategy == "stationary":
        return stationary_cop_move
    if spec.cop_strategy == "random":
        return random_cop_move
    if spec.cop_strategy == "greedy":
        return greedy_cop_move
    if spec.cop_strategy == "script":
        return ScriptedCops(spec.script)
    raise PreconditionError("human play needs an interactive cop policy")


class SimulationRunner:
    """Plays one spec: cops per policy against the witness-keeping robber."""

    def __init__(
        self,
        spec: SimulationSpec,
        cop_policy: Optional[CopPolicy] = None,
        graph: Optional[Graph] = None,
    ) -> None:
        self.spec = spec
        self.graph = graph if graph is not None else read_graph_source(spec.graph)
        self.robber = witness_robber_for(self.graph, spec)
        self.params = self.robber.params
        self.config = GameConfig(speed=spec.speed, cop_count=spec.cop_count)
        self.policy = cop_policy or policy_for(spec)
        self.rngs = cop_streams(spec.seed, spec.cop_count)

    def initial_cops(self) -> CopMultiset:
        if self.spec.cop_strategy == "script":
            if not self.spec.script:
                raise PreconditionError("script strategy needs at least the initial placement")
            return canonical_cops(self.spec.script[0])
        return canonical_cops([self.spec.start_vertex] * self.spec.cop_count)

    def run(self) -> Transcript:
        g, speed = self.graph, self.spec.speed
        state = game.initial_state(g, self.config, self.initial_cops())
        transcript = Transcript(spec=self.spec, cops=list(state.cops))
        LOGGER.info("Simulating %s: %s %s cop(s), speed %s", self.spec.graph, self.spec.cop_count,
                    self.spec.cop_strategy, speed)

        start = self.robber.place(state.cops)
        if start is None:
            transcript.verdict = Verdict.strategy_failure(dict(NO_SAFE_START))
            return transcript
        state = game.place_robber(g, state, start)
        transcript.robber = start

        while state.round < self.spec.max_rounds:
            new_cops = canonical_cops(self.policy(g, state, self.rngs))
            pairs = game.assign_cop_moves(g, state.cops, new_cops)
            state = game.apply_cop_move(g, state, new_cops)
            transcript.rounds.append(MoveRecord(actor=Actor.COPS, cop_moves=pairs or ()))
            if state.captured:
                transcript.verdict = Verdict.captured(state.round + 1)
                LOGGER.info("Robber captured in round %s", state.round + 1)
                return transcript

            outcome = self.robber.respond(state.cops)
            if not isinstance(outcome, Moved):
                transcript.verdict = Verdict.strategy_failure(outcome.to_dict())
                LOGGER.warning("Robber strategy stopped in round %s: %s", state.round + 1, outcome.kind)
                return transcript
            game.check_robber_path(g, state, outcome.path, speed)
            state = game.apply_robber_move(g, state, outcome.path[-1], speed)
            transcript.rounds.append(MoveRecord(actor=Actor.ROBBER, path=outcome.path))
            LOGGER.debug("Round %s: cops %s, robber %s", state.round, list(state.cops), state.robber)

        transcript.verdict = Verdict.robber_survived(state.round)
        LOGGER.info("Robber survived %s rounds", state.round)
        return transcript


def run_simulation(spec: SimulationSpec, cop_policy: Optional[CopPolicy] = None) -> Transcript:
    """Convenience wrapper around :class:`SimulationRunner`."""

    return SimulationRunner(spec, cop_policy).run()


def replay_transcript(transcript: Transcript, graph: Optional[Graph] = None) -> Verdict:
    """Re-apply every recorded move through the game rules and recompute the verdict.

    Raises:
        RuleViolationError: If a recorded move is illegal or the transcript is inconsistent.
    """

    spec = transcript.spec
    g = graph if graph is not None else read_graph_source(spec.graph)
    state = game.initial_state(g, GameConfig(spec.speed, spec.cop_count), transcript.cops)
    if transcript.robber is None:
        if transcript.rounds:
            raise RuleViolationError("moves recorded without a robber placement")
        verdict = _replay_strategy_failure(g, transcript)
        _check_recorded(transcript, verdict)
        return verdict
    state = game.place_robber(g, state, transcript.robber)

    for index, record in enumerate(transcript.rounds):
        if state.captured:
            raise RuleViolationError(f"record {index} follows a capture")
        if record.actor is Actor.COPS:
            sources = canonical_cops(source for source, _ in record.cop_moves)
            if sources != state.cops:
                raise RuleViolationError(f"record {index} moves cops from {list(sources)}, state has {list(state.cops)}")
            for source, target in record.cop_moves:
                if target != source and target not in g.adjacency[source]:
                    raise RuleViolationError(f"record {index}: cop cannot move {source}->{target}")
            state = game.apply_cop_move(g, state, (target for _, target in record.cop_moves))
        else:
            game.check_robber_path(g, state, record.path, spec.speed)
            state = game.apply_robber_move(g, state, record.path[-1], spec.speed)

    if state.captured:
        verdict = Verdict.captured(state.round + 1)
    elif state.turn is Turn.COPS_TO_MOVE and state.round >= spec.max_rounds:
        verdict = Verdict.robber_survived(state.round)
    elif (
        state.turn is Turn.ROBBER_TO_MOVE
        and transcript.rounds
        and transcript.rounds[-1].actor is Actor.COPS
    ):
        verdict = _replay_strategy_failure(g, transcript)
    else:
        raise RuleViolationError("transcript ends before the game was decided")

    _check_recorded(transcript, verdict)
    return verdict


def _check_recorded(transcript: Transcript, verdict: Verdict) -> None:
    recorded = transcript.verdict.to_dict() if transcript.verdict is not None else None
    if recorded != verdict.to_dict():
        raise RuleViolationError(f"replayed verdict {verdict.to_dict()} differs from recorded {recorded}")


def _replay_strategy_failure(g: Graph, transcript: Transcript) -> Verdict:
    """Re-drive the witness robber through the recorded cop moves until it stops."""

    try:
        robber = witness_robber_for(g, transcript.spec)
    except PreconditionError as error:
        raise RuleViolationError(f"strategy failure recorded on an unsupported host: {error}") from None
    start = robber.place(canonical_cops(transcript.cops))
    if start != transcript.robber:
        raise RuleViolationError(f"strategy starts at {start}, transcript at {transcript.robber}")
    if start is None:
        return Verdict.strategy_failure(dict(NO_SAFE_START))

    outcome = None
    for index, record in enumerate(transcript.rounds):
        if record.actor is Actor.COPS:
            outcome = robber.respond(canonical_cops(target for _, target in record.cop_moves))
        elif not isinstance(outcome, Moved) or tuple(outcome.path) != record.path:
            raise RuleViolationError(f"record {index} is not the move the strategy makes")
    if outcome is None or isinstance(outcome, Moved):
        raise RuleViolationError("strategy still has a safe move at the end of the transcript")
    return Verdict.strategy_failure(outcome.to_dict())


def repetition_seeds(seed: Optional[int], repeat: int) -> List[int]:
    children = np.random.SeedSequence(seed if seed is not None else 0).spawn(repeat)
    return [int(child.generate_state(1, dtype=np.uint64)[0]) for child in children]


def run_batch(spec: SimulationSpec, repeat: int, jobs: int = 1) -> List[Transcript]:
    """``repeat`` independent simulations, ordered by repetition index."""

    if repeat < 1:
        raise PreconditionError("repeat must be at least 1")
    specs = [replace(spec, seed=seed) for seed in repetition_seeds(spec.seed, repeat)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(run_simulation, specs))
    return [run_simulation(item) for item in specs]


__all__ = [
    "CopPolicy",
    "NO_SAFE_START",
    "cop_streams",
    "stationary_cop_move",
    "random_cop_move",
    "greedy_cop_move",
    "ScriptedCops",
    "policy_for",
    "witness_robber_for",
    "SimulationRunner",
    "run_simulation",
    "replay_transcript",
    "repetition_seeds",
    "run_batch",
]
