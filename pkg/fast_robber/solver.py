"""Exact cop numbers by retrograde analysis of the full game graph."""

from __future__ import annotations

import itertools
import logging
import os
from collections import deque
from dataclasses import asdict, dataclass
from math import comb
from typing import Any, Dict, FrozenSet, List, Optional, Tuple

import numpy as np

from . import game
from .errors import PreconditionError, StateCapExceededError
from .graph import is_connected
from .types import CopMultiset, Graph, Turn

LOGGER = logging.getLogger(__name__)

_SIDES = (Turn.COPS_TO_MOVE, Turn.ROBBER_TO_MOVE)


@dataclass
class SolverConfig:
    """Resource limits for the exact solver."""

    state_cap: int = 50_000_000

    @classmethod
    def from_env(cls) -> "SolverConfig":
        value = os.getenv("PURSUIT_STATE_CAP")
        if value:
            return cls(state_cap=int(value))
        return cls()


@dataclass(frozen=True)
class SolveReport:
    """Outcome of one fixed-point computation."""

    cop_win: bool
    k: int
    speed: int
    visited_states: int
    iterations: int
    capture_time: Optional[int] = None
    best_placement: Optional[CopMultiset] = None

    def to_dict(self) -> Dict[str, Any]:
        payload = asdict(self)
        payload["best_placement"] = list(self.best_placement) if self.best_placement is not None else None
        return payload


def count_states(n: int, k: int) -> int:
    """Indexed states: sorted cop multisets x robber vertex x side to move."""

    return comb(n + k - 1, k) * n * 2


class StateIndex:
    """Dense numbering of ``(cop multiset, robber, side)`` triples.

    Multisets are numbered in lexicographic order; the index of a state is
    ``(multiset * n + robber) * 2 + side`` where side 0 means cops to move.
    """

    def __init__(self, n: int, k: int) -> None:
        self.n = n
        self.k = k
        self.multisets: List[CopMultiset] = list(itertools.combinations_with_replacement(range(n), k))
        self._position: Dict[CopMultiset, int] = {ms: i for i, ms in enumerate(self.multisets)}

    def __len__(self) -> int:
        return len(self.multisets) * self.n * 2

    def multiset_id(self, cops: CopMultiset) -> int:
        return self._position[cops]

    def encode(self, cops: CopMultiset, robber: int, turn: Turn) -> int:
        return self.encode_ids(self._position[cops], robber, _SIDES.index(turn))

    def encode_ids(self, multiset: int, robber: int, side: int) -> int:
        return (multiset * self.n + robber) * 2 + side

    def decode(self, index: int) -> Tuple[CopMultiset, int, Turn]:
        multiset, side = divmod(index, 2)
        multiset, robber = divmod(multiset, self.n)
        return self.multisets[multiset], robber, _SIDES[side]


class RetrogradeSolver:
    """Least fixed point of the cop-winning states for ``k`` cops and speed ``t``."""

    def __init__(self, g: Graph, k: int, speed: int) -> None:
        self.g = g
        self.k = k
        self.speed = speed
        self.index = StateIndex(g.n, k)
        total = len(self.index)
        self.won = np.zeros(total, dtype=bool)
        self.rank = np.full(total, -1, dtype=np.int64)
        self.remaining = np.full(total, -1, dtype=np.int64)
        self._successors: Dict[int, List[int]] = {}

    def _cop_successors(self, multiset: int) -> List[int]:
        cached = self._successors.get(multiset)
        if cached is None:
            cops = self.index.multisets[multiset]
            cached = [self.index.multiset_id(ms) for ms in game.multiset_successors(self.g, cops)]
            self._successors[multiset] = cached
        return cached

    def _reach(self, multiset: int, robber: int) -> FrozenSet[int]:
        return game.reachable_within(self.g, robber, self.index.multisets[multiset], self.speed)

    def _seed_captures(self) -> List[int]:
        captures: List[int] = []
        for multiset, cops in enumerate(self.index.multisets):
            for robber in set(cops):
                for side in (0, 1):
                    state = self.index.encode_ids(multiset, robber, side)
                    self.won[state] = True
                    self.rank[state] = 0
                    captures.append(state)
        return captures

    def run(self) -> int:
        """Propagate wins layer by layer; returns the number of layers processed."""

        layer = self._seed_captures()
        iterations = 0
        while layer:
            iterations += 1
            LOGGER.debug("Layer %s: %s newly winning cop states", iterations - 1, len(layer))
            next_layer: List[int] = []
            queue = deque(layer)
            while queue:
                state = queue.popleft()
                value = int(self.rank[state])
                multiset, side = divmod(state, 2)
                multiset, robber = divmod(multiset, self.g.n)
                if side == 1:
                    # a winning robber-to-move state makes every cop predecessor winning
                    for previous in self._cop_successors(multiset):
                        candidate = self.index.encode_ids(previous, robber, 0)
                        if not self.won[candidate]:
                            self.won[candidate] = True
                            self.rank[candidate] = value + 1
                            next_layer.append(candidate)
                    continue
                if robber in self.index.multisets[multiset]:
                    continue
                # reachability avoiding the same cops is symmetric, so reach() lists predecessors
                for origin in self._reach(multiset, robber):
                    candidate = self.index.encode_ids(multiset, origin, 1)
                    if self.won[candidate]:
                        continue
                    if self.remaining[candidate] < 0:
                        self.remaining[candidate] = len(self._reach(multiset, origin))
                    self.remaining[candidate] -= 1
                    if self.remaining[candidate] == 0:
                        self.won[candidate] = True
                        self.rank[candidate] = value
                        queue.append(candidate)
            layer = next_layer
        return iterations

    def placement_verdict(self) -> Tuple[Optional[int], Optional[CopMultiset]]:
        """Best initial placement against every robber answer, with its capture time."""

        best_time: Optional[int] = None
        best: Optional[CopMultiset] = None
        for multiset, cops in enumerate(self.index.multisets):
            worst = 0
            for robber in range(self.g.n):
                if robber in cops:
                    continue
                state = self.index.encode_ids(multiset, robber, 0)
                if not self.won[state]:
                    break
                worst = max(worst, int(self.rank[state]))
            else:
                if best_time is None or worst < best_time:
                    best_time, best = worst, cops
        return best_time, best

    @property
    def visited(self) -> int:
        """States the propagation marked winning or started counting down."""

        return int(np.count_nonzero(self.won | (self.remaining >= 0)))

    def is_winning(self, cops: CopMultiset, robber: int, turn: Turn) -> bool:
        return bool(self.won[self.index.encode(tuple(sorted(cops)), robber, turn)])


def cops_win_with(g: Graph, k: int, t: int, config: Optional[SolverConfig] = None) -> SolveReport:
    """Decide whether ``k`` cops catch a speed-``t`` robber on ``g``.

    Raises:
        PreconditionError: If ``g`` is disconnected or ``k``/``t`` are not positive.
        StateCapExceededError: If the state space is larger than the configured cap.
    """

    if k < 1 or t < 1:
        raise PreconditionError("cop count and speed must be positive")
    if g.n == 0 or not is_connected(g):
        raise PreconditionError("the exact solver needs a non-empty connected graph")
    config = config or SolverConfig.from_env()
    estimate = count_states(g.n, k)
    if estimate > config.state_cap:
        raise StateCapExceededError(estimate, config.state_cap)

    LOGGER.info("Solving n=%s k=%s t=%s over %s states", g.n, k, t, estimate)
    solver = RetrogradeSolver(g, k, t)
    iterations = solver.run()
    capture_time, placement = solver.placement_verdict()
    report = SolveReport(
        cop_win=placement is not None,
        k=k,
        speed=t,
        visited_states=solver.visited,
        iterations=iterations,
        capture_time=capture_time,
        best_placement=placement,
    )
    LOGGER.info("k=%s t=%s: cop_win=%s after %s layers", k, t, report.cop_win, iterations)
    return report


def solve_cop_number(
    g: Graph, t: int, k_max: int, config: Optional[SolverConfig] = None
) -> Tuple[Optional[int], List[SolveReport]]:
    """Smallest winning ``k <= k_max`` together with every report computed on the way."""

    reports: List[SolveReport] = []
    for k in range(1, k_max + 1):
        report = cops_win_with(g, k, t, config)
        reports.append(report)
        if report.cop_win:
            return k, reports
    return None, reports


def cop_number(g: Graph, t: int, k_max: int, config: Optional[SolverConfig] = None) -> Optional[int]:
    return solve_cop_number(g, t, k_max, config)[0]


__all__ = [
    "SolverConfig",
    "SolveReport",
    "StateIndex",
    "RetrogradeSolver",
    "count_states",
    "cops_win_with",
    "solve_cop_number",
    "cop_number",
]
