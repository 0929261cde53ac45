"""Catalog of named high-girth cubic graphs and projective-plane incidence graphs."""

from __future__ import annotations

import itertools
import logging
from functools import lru_cache
from typing import Dict, List, Tuple

import networkx as nx

from . import graph as graph_ops
from .errors import PreconditionError, UnknownGraphError
from .types import CatalogEntry, Graph, MooreBoundQuery

LOGGER = logging.getLogger(__name__)

_PETERSEN_EDGES: Tuple[Tuple[int, int], ...] = (
    (0, 1), (1, 2), (2, 3), (3, 4), (0, 4),
    (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
    (5, 7), (7, 9), (6, 9), (6, 8), (5, 8),
)
# Hamiltonian cubic graphs in LCF notation: Hamilton cycle 0..n-1 plus the chord
# i ~ i + code[i mod len(code)] (mod n).
_BALABAN_10_LCF = (
    -9, -25, -19, 29, 13, 35, -13, -29, 19, 25, 9, -29, 29, 17, 33, 21, 9, -13, -31, -9,
    25, 17, 9, -31, 27, -9, 17, -19, -29, 27, -17, -9, -29, 33, -25, 25, -21, 17, -17, 29,
    35, -29, 17, -17, 21, -25, 25, -33, 29, 9, 17, -27, 29, 19, -17, 9, -27, 31, -9, -17,
    -25, 9, 31, 13, -9, -21, -33, -17, -29, 29,
)
_TUTTE_12_LCF = (17, 27, -13, -59, -35, 35, -11, 13, -53, 53, -27, 21, 57, 11, -21, -57, 59, -17)

_ENTRIES: Tuple[CatalogEntry, ...] = (
    CatalogEntry("petersen", 3, 5, 10, True, "(3,5)-cage", edges=_PETERSEN_EDGES),
    CatalogEntry("heawood", 3, 6, 14, True, "(3,6)-cage, incidence graph of PG(2,2)", lcf=(5, -5), lcf_repeats=7),
    CatalogEntry("mcgee", 3, 7, 24, False, "(3,7)-cage", lcf=(12, 7, -7), lcf_repeats=8),
    CatalogEntry("tutte-coxeter", 3, 8, 30, True, "(3,8)-cage", lcf=(-13, -9, 7, -7, 9, 13), lcf_repeats=5),
    CatalogEntry("balaban-10-cage", 3, 10, 70, False, "(3,10)-cage", lcf=_BALABAN_10_LCF, lcf_repeats=1),
    CatalogEntry("tutte-12-cage", 3, 12, 126, True, "(3,12)-cage", lcf=_TUTTE_12_LCF, lcf_repeats=7),
)
_BY_NAME: Dict[str, CatalogEntry] = {entry.name: entry for entry in _ENTRIES}


def lcf_graph(n: int, code: Tuple[int, ...], repeats: int) -> Graph:
    """Expand LCF notation ``[code]^repeats`` on ``n`` vertices."""

    if len(code) * repeats != n:
        raise PreconditionError(f"LCF code of length {len(code)}x{repeats} does not cover {n} vertices")
    return graph_ops.from_networkx(nx.LCF_graph(n, list(code), repeats))


def _materialize(entry: CatalogEntry) -> Graph:
    if entry.edges:
        return graph_ops.from_edges(entry.order, entry.edges)
    return lcf_graph(entry.order, entry.lcf, entry.lcf_repeats)


def verify_entry(entry: CatalogEntry) -> Graph:
    """Build ``entry`` and check order, regularity, girth, connectivity and Moore status."""

    g = _materialize(entry)
    problems: List[str] = []
    if g.n != entry.order:
        problems.append(f"order {g.n} != {entry.order}")
    if graph_ops.is_regular(g) != entry.degree:
        problems.append(f"not {entry.degree}-regular")
    found_girth = graph_ops.girth(g)
    if found_girth != entry.girth:
        problems.append(f"girth {found_girth} != {entry.girth}")
    if not graph_ops.is_connected(g):
        problems.append("disconnected")
    moore = graph_ops.moore_bound(MooreBoundQuery(entry.degree, entry.girth))
    if moore > entry.order or (moore == entry.order) != entry.moore_extremal:
        problems.append(f"Moore bound {moore} inconsistent with order {entry.order}")
    if problems:
        raise PreconditionError(f"catalog entry {entry.name} failed verification: {'; '.join(problems)}")
    return g


@lru_cache(maxsize=None)
def _verified(name: str) -> Graph:
    g = verify_entry(_BY_NAME[name])
    LOGGER.debug("Verified catalog entry %s", name)
    return g


def list_entries() -> List[CatalogEntry]:
    """Catalog entries in stable order (increasing girth)."""

    return list(_ENTRIES)


def get_entry(name: str) -> CatalogEntry:
    try:
        return _BY_NAME[name]
    except KeyError:
        raise UnknownGraphError(name, _BY_NAME) from None


def _parametric(name: str) -> Graph:
    family, _, size = name.rpartition("-")
    builders = {
        "cycle": graph_ops.cycle_graph,
        "path": graph_ops.path_graph,
        "complete": graph_ops.complete_graph,
        "projective-plane": projective_plane_incidence,
    }
    if family not in builders or not size.isdigit():
        raise UnknownGraphError(name, list(_BY_NAME) + [f"{key}-N" for key in builders])
    return builders[family](int(size))


def build(name: str) -> Graph:
    """Return the verified graph stored under ``name``.

    Besides the named cages, ``cycle-N``, ``path-N``, ``complete-N`` and
    ``projective-plane-Q`` are accepted.

    Raises:
        UnknownGraphError: If ``name`` is not in the catalog.
    """

    if name in _BY_NAME:
        return _verified(name)
    return _parametric(name)


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    return all(q % p for p in range(2, int(q ** 0.5) + 1))


def points_and_lines(q: int) -> List[Tuple[int, int, int]]:
    """Canonical homogeneous triples of PG(2, q): first non-zero coordinate is 1."""

    if not is_prime(q):
        raise PreconditionError(f"q={q} is not prime")
    triples = []
    for triple in itertools.product(range(q), repeat=3):
        nonzero = [x for x in triple if x]
        if nonzero and nonzero[0] == 1:
            triples.append(triple)
    return triples


def projective_plane_incidence(q: int) -> Graph:
    """Point-line incidence graph of PG(2, q) for prime ``q``.

    Points take ids ``0..N-1`` and lines ``N..2N-1`` with ``N = q^2 + q + 1``; a point
    lies on a line when their coordinate triples are orthogonal mod ``q``.
    """

    triples = points_and_lines(q)
    count = len(triples)
    edge_list = []
    for p_index, point in enumerate(triples):
        for l_index, line in enumerate(triples):
            if sum(a * b for a, b in zip(point, line)) % q == 0:
                edge_list.append((p_index, count + l_index))
    LOGGER.debug("PG(2,%s) incidence graph: %s points, %s incidences", q, count, len(edge_list))
    return graph_ops.from_edges(2 * count, edge_list)


__all__ = [
    "lcf_graph",
    "verify_entry",
    "list_entries",
    "get_entry",
    "build",
    "is_prime",
    "points_and_lines",
    "projective_plane_incidence",
]
