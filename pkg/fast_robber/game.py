"""Rules of Cops and Robbers with a speed-t robber."""

from __future__ import annotations

import itertools
import logging
from collections import deque
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from .errors import GameStateError, PreconditionError, RuleViolationError
from .types import CopMultiset, GameConfig, GameState, Graph, Path, Turn, canonical_cops

LOGGER = logging.getLogger(__name__)


def _require_turn(s: GameState, turn: Turn) -> None:
    if s.turn is not turn:
        raise GameStateError(f"expected turn {turn.value}, state is at {s.turn.value}")


def initial_state(g: Graph, config: GameConfig, cops: Iterable[int]) -> GameState:
    """State right after the cops chose their starting vertices."""

    placement = canonical_cops(cops)
    if len(placement) != config.cop_count:
        raise PreconditionError(f"expected {config.cop_count} cops, got {len(placement)}")
    for cop in placement:
        if not 0 <= cop < g.n:
            raise PreconditionError(f"cop vertex {cop} is not in the graph")
    return GameState(cops=placement, robber=None, turn=Turn.ROBBER_PLACEMENT, round=0)


def place_robber(g: Graph, s: GameState, v: int) -> GameState:
    _require_turn(s, Turn.ROBBER_PLACEMENT)
    if not 0 <= v < g.n:
        raise RuleViolationError(f"robber vertex {v} is not in the graph")
    turn = Turn.CAPTURED if v in s.cops else Turn.COPS_TO_MOVE
    return GameState(cops=s.cops, robber=v, turn=turn, round=s.round)


def cop_move_candidates(g: Graph, s: GameState) -> List[CopMultiset]:
    """Every cop multiset reachable in one cop round, sorted and deduplicated."""

    _require_turn(s, Turn.COPS_TO_MOVE)
    return multiset_successors(g, s.cops)


def multiset_successors(g: Graph, cops: Sequence[int]) -> List[CopMultiset]:
    options = [(cop,) + g.adjacency[cop] for cop in cops]
    return sorted({canonical_cops(choice) for choice in itertools.product(*options)})


def assign_cop_moves(g: Graph, old: Sequence[int], new: Sequence[int]) -> Optional[Tuple[Tuple[int, int], ...]]:
    """Pair each old cop with a new position one step away, or ``None`` if impossible.

    Cops are taken in sorted order and matched to the smallest feasible target, with
    backtracking, so the pairing is deterministic.
    """

    sources = canonical_cops(old)
    targets = list(canonical_cops(new))
    if len(sources) != len(targets):
        return None
    used = [False] * len(targets)
    pairs: List[Tuple[int, int]] = []

    def match(index: int) -> bool:
        if index == len(sources):
            return True
        source = sources[index]
        tried = set()
        for j, target in enumerate(targets):
            if used[j] or target in tried:
                continue
            if target != source and target not in g.adjacency[source]:
                continue
            tried.add(target)
            used[j] = True
            pairs.append((source, target))
            if match(index + 1):
                return True
            pairs.pop()
            used[j] = False
        return False

    return tuple(pairs) if match(0) else None


def apply_cop_move(g: Graph, s: GameState, new_cops: Iterable[int]) -> GameState:
    _require_turn(s, Turn.COPS_TO_MOVE)
    target = canonical_cops(new_cops)
    if assign_cop_moves(g, s.cops, target) is None:
        raise RuleViolationError(f"cops cannot move from {list(s.cops)} to {list(target)} in one round")
    turn = Turn.CAPTURED if s.robber in target else Turn.ROBBER_TO_MOVE
    return GameState(cops=target, robber=s.robber, turn=turn, round=s.round)


def _robber_bfs(g: Graph, robber: int, cops: FrozenSet[int], speed: int) -> Dict[int, Optional[int]]:
    parent: Dict[int, Optional[int]] = {robber: None}
    depth = {robber: 0}
    queue = deque([robber])
    while queue:
        u = queue.popleft()
        if depth[u] == speed:
            continue
        for w in g.adjacency[u]:
            if w in parent or w in cops:
                continue
            parent[w] = u
            depth[w] = depth[u] + 1
            queue.append(w)
    return parent


def reachable_within(g: Graph, robber: int, cops: Iterable[int], speed: int) -> FrozenSet[int]:
    """Vertices within ``speed`` of ``robber`` once cop vertices are deleted."""

    return frozenset(_robber_bfs(g, robber, frozenset(cops), speed))


def robber_reachable(g: Graph, s: GameState, speed: int) -> FrozenSet[int]:
    """Legal robber destinations, staying put included."""

    if s.turn is Turn.CAPTURED:
        raise GameStateError("the robber has been captured")
    _require_turn(s, Turn.ROBBER_TO_MOVE)
    assert s.robber is not None
    return reachable_within(g, s.robber, s.cops, speed)


def robber_path(g: Graph, s: GameState, dest: int, speed: int) -> Path:
    """A shortest cop-free path from the robber to ``dest`` (smallest ids first)."""

    _require_turn(s, Turn.ROBBER_TO_MOVE)
    assert s.robber is not None
    parent = _robber_bfs(g, s.robber, frozenset(s.cops), speed)
    if dest not in parent:
        raise RuleViolationError(f"vertex {dest} is not reachable by the robber")
    path = [dest]
    while parent[path[-1]] is not None:
        path.append(parent[path[-1]])  # type: ignore[arg-type]
    return tuple(reversed(path))


def apply_robber_move(g: Graph, s: GameState, dest: int, speed: int) -> GameState:
    if s.turn is Turn.CAPTURED:
        raise GameStateError("the robber has been captured")
    _require_turn(s, Turn.ROBBER_TO_MOVE)
    if dest not in robber_reachable(g, s, speed):
        raise RuleViolationError(f"robber cannot reach {dest} from {s.robber} at speed {speed}")
    return GameState(cops=s.cops, robber=dest, turn=Turn.COPS_TO_MOVE, round=s.round + 1)


def check_robber_path(g: Graph, s: GameState, path: Sequence[int], speed: int) -> None:
    """Validate a concrete robber path as recorded in a transcript."""

    _require_turn(s, Turn.ROBBER_TO_MOVE)
    if not path or path[0] != s.robber:
        raise RuleViolationError("robber path must start at the robber's vertex")
    if len(path) - 1 > speed:
        raise RuleViolationError(f"robber path of length {len(path) - 1} exceeds speed {speed}")
    if len(set(path)) != len(path):
        raise RuleViolationError("robber path repeats a vertex")
    for u, w in zip(path, path[1:]):
        if w not in g.adjacency[u]:
            raise RuleViolationError(f"{u}-{w} is not an edge")
    blocked = set(s.cops).intersection(path)
    if blocked:
        raise RuleViolationError(f"robber path passes through cop vertex {min(blocked)}")


__all__ = [
    "initial_state",
    "place_robber",
    "cop_move_candidates",
    "multiset_successors",
    "assign_cop_moves",
    "apply_cop_move",
    "reachable_within",
    "robber_reachable",
    "robber_path",
    "apply_robber_move",
    "check_robber_path",
]
