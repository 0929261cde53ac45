"""Robber strategy that keeps a safe-vertex witness against a small cop force.

A cop *controls* a vertex when it stands on it or next to it, and controls a path
when it controls any vertex of that path. The robber at ``r`` is *safe* when a set
``S`` of ``m`` vertices is reachable by uncontrolled paths of length exactly ``t``.
After every cop round the robber hops to some ``s`` in ``S`` that still admits ``m``
uncontrolled *escaping paths*: length-``t`` paths out of ``s`` whose second vertex
leaves ``U``, the vertex set of the current witness paths.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import AbstractSet, Any, Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from . import graph as graph_ops
from .bounds import BoundParams, vertex_path_bounds
from .errors import PreconditionError
from .types import Graph, Path

LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class SafeWitness:
    """Robber vertex ``r``, target set ``S`` and one uncontrolled ``(r, s)``-path per target."""

    r: int
    S: Tuple[int, ...]
    witness_paths: Mapping[int, Path]
    U: FrozenSet[int]

    @property
    def t(self) -> int:
        return len(next(iter(self.witness_paths.values()))) - 1

    @classmethod
    def from_paths(cls, r: int, paths: Iterable[Path]) -> "SafeWitness":
        by_end = {path[-1]: tuple(path) for path in paths}
        vertices = frozenset(v for path in by_end.values() for v in path)
        return cls(r=r, S=tuple(sorted(by_end)), witness_paths=dict(sorted(by_end.items())), U=vertices)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "r": self.r,
            "S": list(self.S),
            "witness_paths": {str(s): list(path) for s, path in self.witness_paths.items()},
        }


@dataclass(frozen=True)
class Moved:
    path: Path
    next: SafeWitness
    kind: str = field(default="Moved", init=False)

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind, "path": list(self.path), "next": self.next.to_dict()}


@dataclass(frozen=True)
class NoSafeSuccessor:
    diagnostics: Mapping[int, int]
    kind: str = field(default="NoSafeSuccessor", init=False)

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind, "controlled": {str(s): c for s, c in self.diagnostics.items()}}


@dataclass(frozen=True)
class PreconditionViolated:
    reason: str
    kind: str = field(default="PreconditionViolated", init=False)

    def to_dict(self) -> Dict[str, Any]:
        return {"kind": self.kind, "reason": self.reason}


StrategyOutcome = Union[Moved, NoSafeSuccessor, PreconditionViolated]


def control_closure(g: Graph, cops: Iterable[int]) -> FrozenSet[int]:
    """Union of the cops' closed neighbourhoods."""

    controlled = set()
    for cop in cops:
        controlled.add(cop)
        controlled.update(g.adjacency[cop])
    return frozenset(controlled)


def is_controlled(path: Sequence[int], controlled: AbstractSet[int]) -> bool:
    return any(v in controlled for v in path)


def check_host(g: Graph, p: BoundParams) -> None:
    """Raise unless ``g`` is ``(d+1)``-regular with girth larger than ``2t + 2``."""

    degree = graph_ops.is_regular(g)
    if degree != p.d + 1:
        raise PreconditionError(f"graph must be {p.d + 1}-regular (found degree {degree})")
    found = graph_ops.girth(g)
    if found is None or found <= 2 * p.t + 2:
        raise PreconditionError(f"graph girth {found} must exceed 2t+2 = {2 * p.t + 2}")


def _select_uncontrolled(paths: Iterable[Path], controlled: AbstractSet[int], m: int) -> List[Path]:
    """First ``m`` uncontrolled paths (lexicographic) with pairwise distinct endpoints."""

    chosen: List[Path] = []
    ends = set()
    for path in paths:
        if is_controlled(path, controlled) or path[-1] in ends:
            continue
        chosen.append(path)
        ends.add(path[-1])
        if len(chosen) == m:
            break
    return chosen


def _witness_at(g: Graph, v: int, controlled: AbstractSet[int], p: BoundParams) -> Optional[SafeWitness]:
    if v in controlled:
        return None
    chosen = _select_uncontrolled(graph_ops.paths_of_length(g, v, p.t), controlled, p.m)
    if len(chosen) < p.m:
        return None
    return SafeWitness.from_paths(v, chosen)


def find_initial_witness(g: Graph, cops: Sequence[int], p: BoundParams) -> Optional[SafeWitness]:
    """Choose a robber start that is safe against ``cops``.

    Co-located cops at ``u`` are answered from a vertex at distance exactly ``t + 1``
    from ``u``. Otherwise vertices are tried farthest-from-the-cops first.

    Raises:
        PreconditionError: If the graph is not ``(d+1)``-regular with girth > 2t+2.
    """

    check_host(g, p)
    if not cops:
        raise PreconditionError("at least one cop is required")
    controlled = control_closure(g, cops)
    if len(set(cops)) == 1:
        distances = graph_ops.distances_from(g, cops[0])
        for v in sorted(vertex for vertex, dist in distances.items() if dist == p.t + 1):
            witness = _witness_at(g, v, controlled, p)
            if witness is not None:
                return witness
        LOGGER.warning("No safe start at distance %s from the cops; widening the search", p.t + 1)

    nearest: Dict[int, int] = {}
    for cop in set(cops):
        for vertex, dist in graph_ops.distances_from(g, cop).items():
            nearest[vertex] = min(dist, nearest.get(vertex, dist))
    for v in sorted(range(g.n), key=lambda vertex: (-nearest.get(vertex, g.n), vertex)):
        witness = _witness_at(g, v, controlled, p)
        if witness is not None:
            return witness
    LOGGER.warning("No safe vertex exists against cops at %s", list(cops))
    return None


def enumerate_escaping_paths(g: Graph, w: SafeWitness) -> List[Path]:
    """Length-``t`` paths starting in ``S`` whose second vertex lies outside ``U``."""

    escaping: List[Path] = []
    for s in w.S:
        escaping.extend(graph_ops.paths_of_length(g, s, w.t, forbidden_second=w.U))
    return escaping


def _escaping_by_start(g: Graph, w: SafeWitness, t: int) -> Dict[int, List[Path]]:
    return {s: graph_ops.paths_of_length(g, s, t, forbidden_second=w.U) for s in w.S}


def verify_witness(g: Graph, w: SafeWitness, cops: Iterable[int], p: BoundParams) -> List[str]:
    """Every broken witness invariant as a readable string; empty when valid."""

    controlled = control_closure(g, cops)
    problems: List[str] = []
    if len(w.S) != p.m:
        problems.append(f"|S| = {len(w.S)}, expected {p.m}")
    if set(w.witness_paths) != set(w.S):
        problems.append("witness paths do not match S")
    for s, path in w.witness_paths.items():
        if len(path) != p.t + 1:
            problems.append(f"path to {s} has length {len(path) - 1}, expected {p.t}")
        if path[0] != w.r or path[-1] != s:
            problems.append(f"path to {s} does not run from {w.r} to {s}")
        if len(set(path)) != len(path):
            problems.append(f"path to {s} repeats a vertex")
        if any(b not in g.adjacency[a] for a, b in zip(path, path[1:])):
            problems.append(f"path to {s} uses a non-edge")
        if is_controlled(path, controlled):
            problems.append(f"path to {s} is controlled by a cop")
    if not set(w.S) <= w.U:
        problems.append("S is not contained in U")
    for s in w.S:
        if any(other in g.adjacency[s] for other in w.S):
            problems.append(f"S is not independent at {s}")
            break
    return problems


def strategy_step(g: Graph, w: SafeWitness, new_cops: Sequence[int], p: BoundParams) -> StrategyOutcome:
    """Answer a cop round from a witness that was valid before the cops moved."""

    inside = sorted(set(new_cops) & w.U)
    if inside:
        return PreconditionViolated(f"cop inside U at vertex {inside[0]}")
    controlled = control_closure(g, new_cops)
    diagnostics: Dict[int, int] = {}
    for s, paths in _escaping_by_start(g, w, p.t).items():
        chosen = _select_uncontrolled(paths, controlled, p.m)
        diagnostics[s] = sum(1 for path in paths if is_controlled(path, controlled))
        if len(chosen) < p.m:
            continue
        hop = w.witness_paths[s]
        if set(hop) & set(new_cops):
            return PreconditionViolated(f"witness path to {s} is blocked by a cop")
        successor = SafeWitness.from_paths(s, chosen)
        problems = verify_witness(g, successor, new_cops, p)
        if problems:
            return PreconditionViolated("; ".join(problems))
        return Moved(path=hop, next=successor)
    LOGGER.debug("No safe successor; controlled escaping paths per s: %s", diagnostics)
    return NoSafeSuccessor(diagnostics)


@dataclass(frozen=True)
class ClaimCounts:
    """Escaping paths one cop controls, vertex by vertex."""

    per_vertex: Mapping[int, int]
    total: int
    non_s_bound: int
    s_bound: int


def claim_counts(g: Graph, w: SafeWitness, cop: int) -> ClaimCounts:
    """Count the escaping paths through each vertex the cop controls.

    ``non_s_bound`` and ``s_bound`` are the per-vertex ceilings for vertices outside
    and inside ``S`` on a regular host of the cop's degree.
    """

    if cop in w.U:
        raise PreconditionError(f"cop at {cop} is inside U")
    closed = graph_ops.closed_neighborhood(g, cop)
    escaping = enumerate_escaping_paths(g, w)
    per_vertex = {v: sum(1 for path in escaping if v in path) for v in closed}
    total = sum(1 for path in escaping if any(v in path for v in closed))
    non_s_bound, s_bound = vertex_path_bounds(graph_ops.degree(g, cop) - 1, w.t)
    return ClaimCounts(per_vertex=per_vertex, total=total, non_s_bound=non_s_bound, s_bound=s_bound)


def total_controlled(g: Graph, w: SafeWitness, cops: Iterable[int]) -> int:
    controlled = control_closure(g, cops)
    return sum(1 for path in enumerate_escaping_paths(g, w) if is_controlled(path, controlled))


class WitnessRobber:
    """Stateful driver that places the robber and answers every cop round."""

    def __init__(self, g: Graph, params: BoundParams) -> None:
        check_host(g, params)
        self.g = g
        self.params = params
        self.witness: Optional[SafeWitness] = None

    def place(self, cops: Sequence[int]) -> Optional[int]:
        self.witness = find_initial_witness(self.g, cops, self.params)
        return self.witness.r if self.witness is not None else None

    def respond(self, new_cops: Sequence[int]) -> StrategyOutcome:
        if self.witness is None:
            return PreconditionViolated("robber has no witness")
        outcome = strategy_step(self.g, self.witness, new_cops, self.params)
        if isinstance(outcome, Moved):
            self.witness = outcome.next
        return outcome


__all__ = [
    "SafeWitness",
    "Moved",
    "NoSafeSuccessor",
    "PreconditionViolated",
    "StrategyOutcome",
    "ClaimCounts",
    "control_closure",
    "is_controlled",
    "check_host",
    "find_initial_witness",
    "enumerate_escaping_paths",
    "verify_witness",
    "strategy_step",
    "claim_counts",
    "total_controlled",
    "WitnessRobber",
]
