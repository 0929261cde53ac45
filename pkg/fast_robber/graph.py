"""Graph construction, edge-list I/O and structural queries."""

from __future__ import annotations

import logging
import os
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path as FilePath
from typing import AbstractSet, Dict, Iterable, List, Optional, Set, Tuple

import networkx as nx

from .errors import GraphParseError, GraphTooLargeError, PreconditionError
from .types import Graph, MooreBoundQuery, Path

LOGGER = logging.getLogger(__name__)

CATALOG_PREFIX = "catalog:"


@dataclass
class GraphConfig:
    """Limits applied when graphs are built."""

    max_vertices: int = 100_000

    @classmethod
    def from_env(cls) -> "GraphConfig":
        value = os.getenv("PURSUIT_MAX_VERTICES")
        if value:
            return cls(max_vertices=int(value))
        return cls()


def _check_size(n: int, config: Optional[GraphConfig]) -> None:
    config = config or GraphConfig.from_env()
    if n < 0:
        raise PreconditionError("vertex count must be non-negative")
    if n > config.max_vertices:
        raise GraphTooLargeError(f"graph has {n} vertices, cap is {config.max_vertices}")


def from_edges(
    n: int,
    edges: Iterable[Tuple[int, int]],
    config: Optional[GraphConfig] = None,
    allow_duplicates: bool = False,
) -> Graph:
    """Build a :class:`Graph` from an edge iterable.

    Raises:
        GraphParseError: On loops, out-of-range ids or (unless allowed) repeated edges.
        GraphTooLargeError: If ``n`` exceeds the configured cap.
    """

    _check_size(n, config)
    neighbour_sets: List[Set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        u, v = int(u), int(v)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphParseError(f"edge {u}-{v} has an id outside [0, {n})")
        if u == v:
            raise GraphParseError(f"self-loop at {u}")
        if v in neighbour_sets[u]:
            if allow_duplicates:
                continue
            raise GraphParseError(f"duplicate edge {min(u, v)}-{max(u, v)}")
        neighbour_sets[u].add(v)
        neighbour_sets[v].add(u)
    return Graph(n=n, adjacency=tuple(tuple(sorted(s)) for s in neighbour_sets))


@lru_cache(maxsize=128)
def to_networkx(g: Graph) -> nx.Graph:
    """Shared read-only ``nx.Graph`` view of ``g``; callers must not mutate it."""

    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(edges(g))
    return h


def from_networkx(h: nx.Graph, config: Optional[GraphConfig] = None) -> Graph:
    """Convert a networkx graph on nodes ``0..n-1`` back into a :class:`Graph`."""

    n = h.number_of_nodes()
    if set(h.nodes) != set(range(n)):
        raise PreconditionError("networkx graph must use the nodes 0..n-1")
    return from_edges(n, h.edges(), config)


def load_graph(text: str, config: Optional[GraphConfig] = None) -> Graph:
    """Parse the ``n m`` + ``u v`` edge-list format.

    Blank lines are ignored. Every error names the offending line.
    """

    lines = [(number, raw.strip()) for number, raw in enumerate(text.splitlines(), start=1)]
    lines = [(number, line) for number, line in lines if line]
    if not lines:
        raise GraphParseError("empty document", line_number=1)

    header_number, header = lines[0]
    fields = header.split()
    if len(fields) != 2:
        raise GraphParseError("header must be 'n m'", line_number=header_number)
    try:
        n, m = int(fields[0]), int(fields[1])
    except ValueError:
        raise GraphParseError("header must hold two integers", line_number=header_number) from None
    if n < 0 or m < 0:
        raise GraphParseError("counts must be non-negative", line_number=header_number)
    _check_size(n, config)

    body = lines[1:]
    if len(body) != m:
        last = body[-1][0] if body else header_number
        raise GraphParseError(f"expected {m} edge lines, found {len(body)}", line_number=last)

    seen: Set[Tuple[int, int]] = set()
    edges: List[Tuple[int, int]] = []
    for number, line in body:
        parts = line.split()
        if len(parts) != 2:
            raise GraphParseError("edge line must be 'u v'", line_number=number)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphParseError("edge endpoints must be integers", line_number=number) from None
        if not (0 <= u < n and 0 <= v < n):
            raise GraphParseError(f"vertex id out of range [0, {n})", line_number=number)
        if u == v:
            raise GraphParseError(f"self-loop at {u}", line_number=number)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphParseError(f"duplicate edge {key[0]}-{key[1]}", line_number=number)
        seen.add(key)
        edges.append(key)
    graph = from_edges(n, edges, config)
    LOGGER.debug("Loaded graph with %s vertices and %s edges", graph.n, graph.m)
    return graph


def edges(g: Graph) -> List[Tuple[int, int]]:
    """Each edge once as ``(u, v)`` with ``u < v``, sorted."""

    return [(u, v) for u in range(g.n) for v in g.adjacency[u] if u < v]


def write_graph(g: Graph) -> str:
    """Canonical edge-list text accepted by :func:`load_graph`."""

    edge_list = edges(g)
    lines = [f"{g.n} {len(edge_list)}"]
    lines.extend(f"{u} {v}" for u, v in edge_list)
    return "\n".join(lines) + "\n"


def read_graph_source(source: str, config: Optional[GraphConfig] = None) -> Graph:
    """Resolve ``catalog:<name>`` through the catalog, anything else as a file path."""

    if source.startswith(CATALOG_PREFIX):
        from . import catalog

        return catalog.build(source[len(CATALOG_PREFIX):])
    path = FilePath(source).expanduser()
    LOGGER.info("Reading graph file %s", path)
    return load_graph(path.read_text(encoding="utf-8"), config)


def degree(g: Graph, v: int) -> int:
    return len(g.adjacency[v])


def neighbors(g: Graph, v: int) -> Tuple[int, ...]:
    return g.adjacency[v]


def closed_neighborhood(g: Graph, v: int) -> Tuple[int, ...]:
    return tuple(sorted((v,) + g.adjacency[v]))


def is_regular(g: Graph) -> Optional[int]:
    """Common degree of every vertex, or ``None`` when degrees differ."""

    if g.n == 0:
        return None
    first = len(g.adjacency[0])
    if all(len(neighbours) == first for neighbours in g.adjacency):
        return first
    return None


def distances_from(g: Graph, v: int, blocked: AbstractSet[int] = frozenset()) -> Dict[int, int]:
    """BFS distances from ``v`` after deleting ``blocked``; unreachable vertices are absent."""

    if v in blocked:
        raise PreconditionError(f"start vertex {v} is blocked")
    if not 0 <= v < g.n:
        raise PreconditionError(f"vertex {v} is not in the graph")
    dist = {v: 0}
    queue = deque([v])
    while queue:
        u = queue.popleft()
        for w in g.adjacency[u]:
            if w not in dist and w not in blocked:
                dist[w] = dist[u] + 1
                queue.append(w)
    return dist


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    return nx.is_connected(to_networkx(g))


def bipartition(g: Graph) -> Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """Two colour classes of a 2-colouring, or ``None`` if an odd cycle exists.

    In every component the smallest vertex lands in the first class.
    """

    h = to_networkx(g)
    if not nx.is_bipartite(h):
        return None
    colour = nx.bipartite.color(h)
    first: Dict[int, bool] = {}
    for component in nx.connected_components(h):
        anchor = colour[min(component)]
        first.update((v, colour[v] == anchor) for v in component)
    side0 = tuple(v for v in range(g.n) if first[v])
    side1 = tuple(v for v in range(g.n) if not first[v])
    return side0, side1


def girth(g: Graph) -> Optional[int]:
    """Length of a shortest cycle, ``None`` for a forest."""

    found = nx.girth(to_networkx(g))
    if found == float("inf"):
        return None
    return int(found)


def paths_of_length(
    g: Graph,
    start: int,
    length: int,
    forbidden_second: AbstractSet[int] = frozenset(),
) -> List[Path]:
    """All simple paths with exactly ``length`` edges from ``start``.

    The second vertex (if any) must avoid ``forbidden_second``. Neighbour lists are
    sorted, so depth-first order is lexicographic order.
    """

    if length < 0:
        raise PreconditionError("path length must be non-negative")
    results: List[Path] = []
    stack: List[int] = [start]
    on_path: Set[int] = {start}

    def extend() -> None:
        if len(stack) == length + 1:
            results.append(tuple(stack))
            return
        for w in g.adjacency[stack[-1]]:
            if w in on_path:
                continue
            if len(stack) == 1 and w in forbidden_second:
                continue
            stack.append(w)
            on_path.add(w)
            extend()
            on_path.discard(w)
            stack.pop()

    extend()
    return results


def pad_with_path(h: Graph, n_target: int, config: Optional[GraphConfig] = None) -> Graph:
    """Attach a disjoint path on ``n_target - n(h)`` new vertices to vertex 0 of ``h``."""

    if n_target < h.n:
        raise PreconditionError(f"n_target={n_target} is smaller than the graph order {h.n}")
    if n_target == h.n:
        return h
    if h.n == 0:
        raise PreconditionError("cannot attach a path to the empty graph")
    new_edges = edges(h)
    new_edges.append((0, h.n))
    new_edges.extend((v, v + 1) for v in range(h.n, n_target - 1))
    LOGGER.debug("Padding %s-vertex graph with a %s-vertex path", h.n, n_target - h.n)
    return from_edges(n_target, new_edges, config)


def moore_bound(query: MooreBoundQuery) -> int:
    """Minimum order of a ``degree``-regular graph with girth ``girth``."""

    degree_, girth_ = query.degree, query.girth
    radius = girth_ // 2 if girth_ % 2 == 0 else (girth_ - 1) // 2
    shells = sum((degree_ - 1) ** i for i in range(radius))
    if girth_ % 2 == 1:
        return 1 + degree_ * shells
    return 2 * shells


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise PreconditionError("a cycle needs at least 3 vertices")
    return from_networkx(nx.cycle_graph(n))


def path_graph(n: int) -> Graph:
    if n < 1:
        raise PreconditionError("a path needs at least 1 vertex")
    return from_networkx(nx.path_graph(n))


def complete_graph(n: int) -> Graph:
    if n < 1:
        raise PreconditionError("a complete graph needs at least 1 vertex")
    return from_networkx(nx.complete_graph(n))


__all__ = [
    "GraphConfig",
    "from_edges",
    "to_networkx",
    "from_networkx",
    "load_graph",
    "edges",
    "write_graph",
    "read_graph_source",
    "degree",
    "neighbors",
    "closed_neighborhood",
    "is_regular",
    "distances_from",
    "is_connected",
    "bipartition",
    "girth",
    "paths_of_length",
    "pad_with_path",
    "moore_bound",
    "cycle_graph",
    "path_graph",
    "complete_graph",
]
