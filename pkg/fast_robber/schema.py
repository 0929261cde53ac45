"""JSON schema for simulation specs and game transcripts."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional

from .errors import PreconditionError, PursuitError
from .types import MoveRecord

SCHEMA_VERSION = "1.0"
COP_STRATEGIES = ("stationary", "random", "greedy", "script", "human")
VERDICT_KINDS = ("RobberSurvived", "Captured", "StrategyFailure")


def _ensure_dict(value: Optional[Dict[str, Any]]) -> Dict[str, Any]:
    return dict(value or {})


@dataclass
class SimulationSpec:
    """Everything needed to replay one cops-versus-robber simulation."""

    graph: str
    speed: int = 2
    cop_count: int = 1
    cop_strategy: str = "greedy"
    max_rounds: int = 100
    seed: Optional[int] = None
    m: Optional[int] = None
    start_vertex: int = 0
    script: List[List[int]] = field(default_factory=list)

    def __post_init__(self) -> None:
        if self.cop_strategy not in COP_STRATEGIES:
            raise PreconditionError(f"cop_strategy must be one of {', '.join(COP_STRATEGIES)}")
        if self.speed < 1:
            raise PreconditionError("speed must be at least 1")
        if self.cop_count < 1:
            raise PreconditionError("cop_count must be at least 1")
        if self.max_rounds < 1:
            raise PreconditionError("max_rounds must be at least 1")
        if self.cop_strategy == "random" and self.seed is None:
            raise PreconditionError("the random strategy needs a seed")
        if self.seed is not None and not 0 <= self.seed < 2 ** 64:
            raise PreconditionError("seed must be an unsigned 64-bit integer")
        try:
            self.script = [sorted(int(v) for v in entry) for entry in self.script]
        except (TypeError, ValueError):
            raise PreconditionError("script must be a list of vertex lists") from None

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, payload: Dict[str, Any]) -> "SimulationSpec":
        return cls(**_ensure_dict(payload))


@dataclass
class Verdict:
    """How a simulation ended."""

    kind: str
    rounds: Optional[int] = None
    round: Optional[int] = None
    outcome: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.kind not in VERDICT_KINDS:
            raise PreconditionError(f"unknown verdict {self.kind!r}")
        self.outcome = _ensure_dict(self.outcome)

    @classmethod
    def robber_survived(cls, rounds: int) -> "Verdict":
        return cls(kind="RobberSurvived", rounds=rounds)

    @classmethod
    def captured(cls, round_: int) -> "Verdict":
        return cls(kind="Captured", round=round_)

    @classmethod
    def strategy_failure(cls, outcome: Dict[str, Any]) -> "Verdict":
        return cls(kind="StrategyFailure", outcome=outcome)

    def to_dict(self) -> Dict[str, Any]:
        payload: Dict[str, Any] = {"kind": self.kind}
        if self.kind == "RobberSurvived":
            payload["rounds"] = self.rounds
        elif self.kind == "Captured":
            payload["round"] = self.round
        else:
            payload["outcome"] = dict(self.outcome)
        return payload

    @classmethod
    def from_dict(cls, payload: Dict[str, Any]) -> "Verdict":
        return cls(
            kind=payload["kind"],
            rounds=payload.get("rounds"),
            round=payload.get("round"),
            outcome=payload.get("outcome", {}),
        )


@dataclass
class Transcript:
    """Ordered record of one simulated game."""

    spec: SimulationSpec
    cops: List[int] = field(default_factory=list)
    robber: Optional[int] = None
    rounds: List[MoveRecord] = field(default_factory=list)
    verdict: Optional[Verdict] = None
    schema_version: str = SCHEMA_VERSION

    def __post_init__(self) -> None:
        if isinstance(self.spec, dict):
            self.spec = SimulationSpec.from_dict(self.spec)
        self.rounds = [item if isinstance(item, MoveRecord) else MoveRecord.from_dict(item) for item in self.rounds]
        if isinstance(self.verdict, dict):
            self.verdict = Verdict.from_dict(self.verdict)
        self.cops = sorted(int(v) for v in self.cops)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "schema_version": self.schema_version,
            "spec": self.spec.to_dict(),
            "placements": {"cops": list(self.cops), "robber": self.robber},
            "rounds": [record.to_dict() for record in self.rounds],
            "verdict": self.verdict.to_dict() if self.verdict is not None else None,
        }

    def json(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=True)

    @classmethod
    def from_dict(cls, payload: Dict[str, Any]) -> "Transcript":
        """Decode a transcript payload.

        Raises:
            PreconditionError: On a foreign major version or a malformed payload.
        """

        try:
            return cls._decode(payload)
        except PursuitError:
            raise
        except (KeyError, TypeError, ValueError, AttributeError) as error:
            raise PreconditionError(f"malformed transcript: {error!r}") from error

    @classmethod
    def _decode(cls, payload: Dict[str, Any]) -> "Transcript":
        payload = dict(payload)
        version = str(payload.get("schema_version", SCHEMA_VERSION))
        if version.split(".")[0] != SCHEMA_VERSION.split(".")[0]:
            raise PreconditionError(f"unsupported transcript schema version {version}")
        placements = _ensure_dict(payload.get("placements"))
        return cls(
            spec=SimulationSpec.from_dict(payload["spec"]),
            cops=placements.get("cops", []),
            robber=placements.get("robber"),
            rounds=payload.get("rounds", []),
            verdict=payload.get("verdict"),
            schema_version=version,
        )

    @classmethod
    def loads(cls, text: str) -> "Transcript":
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as error:
            raise PreconditionError(f"transcript is not valid JSON: {error}") from error
        return cls.from_dict(payload)

    def validate(self) -> None:
        if self.verdict is None:
            raise PreconditionError("transcript has no verdict")
        if len(self.cops) != self.spec.cop_count:
            raise PreconditionError("placement does not match cop_count")


__all__ = ["SCHEMA_VERSION", "COP_STRATEGIES", "SimulationSpec", "Verdict", "Transcript"]
