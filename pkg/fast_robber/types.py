"""Common data structures used across the fast robber toolkit."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import PreconditionError

Path = Tuple[int, ...]
CopMultiset = Tuple[int, ...]


def canonical_cops(cops: Iterable[int]) -> CopMultiset:
    """Cops are interchangeable, so a sorted tuple is the canonical multiset."""

    return tuple(sorted(int(cop) for cop in cops))


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph on vertices ``0..n-1``.

    ``adjacency[v]`` is the sorted tuple of neighbours of ``v``. Build graphs through
    :func:`fast_robber.graph.from_edges` or :func:`fast_robber.graph.load_graph`,
    which report bad input with line-level errors; ``__post_init__`` only guards the
    structural invariants.
    """

    n: int
    adjacency: Tuple[Tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.adjacency) != self.n:
            raise PreconditionError("adjacency must list every vertex")
        for v, neighbours in enumerate(self.adjacency):
            if list(neighbours) != sorted(set(neighbours)):
                raise PreconditionError(f"neighbours of {v} must be sorted and distinct")
            for u in neighbours:
                if not 0 <= u < self.n or u == v:
                    raise PreconditionError(f"invalid neighbour {u} of {v}")
                if v not in self.adjacency[u]:
                    raise PreconditionError(f"edge {v}-{u} is not symmetric")

    @property
    def m(self) -> int:
        return sum(len(neighbours) for neighbours in self.adjacency) // 2

    def neighbors(self, v: int) -> Tuple[int, ...]:
        return self.adjacency[v]

    def vertices(self) -> range:
        return range(self.n)


@dataclass(frozen=True)
class MooreBoundQuery:
    """Degree/girth pair whose Moore bound is requested."""

    degree: int
    girth: int

    def __post_init__(self) -> None:
        if self.degree < 2:
            raise PreconditionError("Moore bound needs degree >= 2")
        if self.girth < 3:
            raise PreconditionError("Moore bound needs girth >= 3")


class Turn(str, Enum):
    ROBBER_PLACEMENT = "RobberPlacement"
    COPS_TO_MOVE = "CopsToMove"
    ROBBER_TO_MOVE = "RobberToMove"
    CAPTURED = "Captured"


class Actor(str, Enum):
    COPS = "cops"
    ROBBER = "robber"


@dataclass(frozen=True)
class GameConfig:
    """Robber speed ``t`` and number of cops ``k``."""

    speed: int = 1
    cop_count: int = 1

    def __post_init__(self) -> None:
        if self.speed < 1:
            raise PreconditionError("speed must be at least 1")
        if self.cop_count < 1:
            raise PreconditionError("cop_count must be at least 1")


@dataclass(frozen=True)
class GameState:
    """One node of the game's state space."""

    cops: CopMultiset
    robber: Optional[int] = None
    turn: Turn = Turn.ROBBER_PLACEMENT
    round: int = 0

    def __post_init__(self) -> None:
        if tuple(self.cops) != tuple(sorted(self.cops)):
            raise PreconditionError("cops must be stored in nondecreasing order")
        captured = self.robber is not None and self.robber in self.cops
        if captured != (self.turn is Turn.CAPTURED):
            raise PreconditionError("turn must be Captured exactly when the robber shares a cop vertex")
        if self.round < 0:
            raise PreconditionError("round must be non-negative")

    @property
    def captured(self) -> bool:
        return self.turn is Turn.CAPTURED


@dataclass(frozen=True)
class MoveRecord:
    """A single cop round or robber move as stored in transcripts."""

    actor: Actor
    cop_moves: Tuple[Tuple[int, int], ...] = ()
    path: Path = ()

    def to_dict(self) -> Dict[str, Any]:
        if self.actor is Actor.COPS:
            detail: List[Any] = [[source, target] for source, target in self.cop_moves]
        else:
            detail = list(self.path)
        return {"actor": self.actor.value, "detail": detail}

    @classmethod
    def from_dict(cls, payload: Dict[str, Any]) -> "MoveRecord":
        actor = Actor(payload["actor"])
        detail: Sequence[Any] = payload.get("detail", [])
        if actor is Actor.COPS:
            moves = tuple((int(pair[0]), int(pair[1])) for pair in detail)
            return cls(actor=actor, cop_moves=moves)
        return cls(actor=actor, path=tuple(int(v) for v in detail))


@dataclass(frozen=True)
class CatalogEntry:
    """Named high-girth regular graph with its declared parameters."""

    name: str
    degree: int
    girth: int
    order: int
    moore_extremal: bool
    description: str = ""
    edges: Tuple[Tuple[int, int], ...] = field(default=(), repr=False, compare=False)
    lcf: Tuple[int, ...] = field(default=(), repr=False, compare=False)
    lcf_repeats: int = field(default=1, repr=False, compare=False)


__all__ = [
    "Path",
    "CopMultiset",
    "canonical_cops",
    "Graph",
    "MooreBoundQuery",
    "Turn",
    "Actor",
    "GameConfig",
    "GameState",
    "MoveRecord",
    "CatalogEntry",
]
