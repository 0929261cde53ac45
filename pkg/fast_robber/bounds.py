"""Exact arithmetic for the speed-t lower bound and the cage sizes behind it."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import Any, Dict, List, Tuple

from .catalog import is_prime
from .errors import PreconditionError
from .graph import moore_bound
from .types import MooreBoundQuery

LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class BoundParams:
    """``(d, t, m)`` for a ``(d+1)``-regular host, robber speed ``t`` and witness size ``m``.

    ``alpha = m / d**t`` is kept as an exact fraction. The bound also asks for
    ``t <= d + 1``; that hypothesis is exposed through ``satisfies_speed_hypothesis``
    and not enforced.
    """

    d: int
    t: int
    m: int

    def __post_init__(self) -> None:
        if self.d < 2:
            raise PreconditionError("d must be at least 2")
        if self.t < 1:
            raise PreconditionError("speed t must be at least 1")
        if not 1 <= self.m <= self.d ** self.t - 1:
            raise PreconditionError(f"m must lie in [1, {self.d ** self.t - 1}] so that alpha is in (0, 1)")

    @property
    def alpha(self) -> Fraction:
        return Fraction(self.m, self.d ** self.t)

    @property
    def satisfies_speed_hypothesis(self) -> bool:
        return self.t <= self.d + 1

    def to_dict(self) -> Dict[str, Any]:
        return {"d": self.d, "t": self.t, "m": self.m, "alpha": str(self.alpha)}


def default_witness_size(d: int, t: int) -> int:
    """``m = d^t // 2``: alpha = 1/2 maximises alpha(1 - alpha)."""

    return max(1, d ** t // 2)


def lemma1_bound(p: BoundParams) -> Fraction:
    """alpha(1 - alpha) d^(2t) / (2 (t + 2) (d + 1)^t)."""

    alpha = p.alpha
    return alpha * (1 - alpha) * p.d ** (2 * p.t) / (2 * (p.t + 2) * (p.d + 1) ** p.t)


def averaging_budget(p: BoundParams) -> Fraction:
    """Controlled-path total below which some witness vertex must stay safe."""

    alpha = p.alpha
    return alpha * (1 - alpha) * p.d ** (2 * p.t) / 2


def claim_bound(d: int, t: int) -> int:
    """Escaping paths one cop can control, in the rounded form (t + 2)(d + 1)^t."""

    return (t + 2) * (d + 1) ** t


def claim_bound_exact(d: int, t: int) -> int:
    """(d + 1)^t + (d + 2) t (d + 1)^(t - 1); at most :func:`claim_bound` whenever t <= d + 1."""

    return (d + 1) ** t + (d + 2) * t * (d + 1) ** (t - 1)


def vertex_path_bounds(d: int, t: int) -> Tuple[int, int]:
    """Most escaping paths through a vertex outside S, and through a vertex of S."""

    outside = t * (d + 1) ** (t - 1)
    return outside, (d + 1) ** t + outside


def guaranteed_cops(p: BoundParams) -> int:
    """Largest cop count strictly below the bound (ceiling semantics)."""

    return max(0, ceil(lemma1_bound(p)) - 1)


@dataclass(frozen=True)
class BoundRow:
    m: int
    alpha: Fraction
    bound: Fraction

    def to_dict(self) -> Dict[str, Any]:
        return {"m": self.m, "alpha": str(self.alpha), "bound": str(self.bound), "bound_decimal": float(self.bound)}


def bound_table(d: int, t: int) -> List[BoundRow]:
    rows = []
    for m in range(1, d ** t):
        params = BoundParams(d, t, m)
        rows.append(BoundRow(m=m, alpha=params.alpha, bound=lemma1_bound(params)))
    return rows


def best_m(d: int, t: int) -> int:
    """Witness size maximising the bound; the smallest one on ties."""

    best = max(bound_table(d, t), key=lambda row: (row.bound, -row.m))
    return best.m


@dataclass(frozen=True)
class PaddingPlan:
    """Host size and padding path for lifting the bound to an ``n``-vertex graph."""

    n: int
    speed: int
    family_speed: int
    girth: int
    d: int
    host_order_bound: int
    path_vertices: int

    def to_dict(self) -> Dict[str, Any]:
        return dict(self.__dict__)


_FAMILIES = {
    # family speed: (girth, exponent e in 2 d^e, smallest n)
    2: (7, 3, 54),
    4: (12, 5, 486),
}


def padding_plan(n: int, t: int) -> PaddingPlan:
    """Pick the largest prime ``d`` whose girth-7 or girth-12 host fits in ``n`` vertices.

    Speeds 2 and 3 use the girth-7 family (hosts with at most ``2 d^3`` vertices),
    speeds of 4 and more the girth-12 family (at most ``2 d^5`` vertices); the cop
    number does not drop when the robber gets faster.
    """

    if t < 2:
        raise PreconditionError("the padded family needs robber speed at least 2")
    family_speed = 2 if t < 4 else 4
    girth_, exponent, smallest = _FAMILIES[family_speed]
    if n < smallest:
        raise PreconditionError(f"n must be at least {smallest} for speed {family_speed}")
    d = 2
    candidate = 3
    while 2 * candidate ** exponent <= n:
        if is_prime(candidate):
            d = candidate
        candidate += 1
    host = 2 * d ** exponent
    LOGGER.debug("Padding plan for n=%s t=%s: d=%s host<=%s", n, t, d, host)
    return PaddingPlan(
        n=n,
        speed=t,
        family_speed=family_speed,
        girth=girth_,
        d=d,
        host_order_bound=host,
        path_vertices=n - host,
    )


def moore_degree_ceiling(n: int, t: int) -> int:
    """Largest degree whose Moore bound for girth ``2t + 3`` still fits in ``n`` vertices."""

    girth_ = 2 * t + 3
    if n < moore_bound(MooreBoundQuery(2, girth_)):
        raise PreconditionError(f"no regular graph of girth {girth_} has at most {n} vertices")
    degree = 2
    while moore_bound(MooreBoundQuery(degree + 1, girth_)) <= n:
        degree += 1
    return degree


__all__ = [
    "BoundParams",
    "BoundRow",
    "PaddingPlan",
    "default_witness_size",
    "lemma1_bound",
    "averaging_budget",
    "claim_bound",
    "claim_bound_exact",
    "vertex_path_bounds",
    "guaranteed_cops",
    "bound_table",
    "best_m",
    "padding_plan",
    "moore_degree_ceiling",
]
