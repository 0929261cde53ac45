"""Exception hierarchy shared by the fast robber toolkit."""

from __future__ import annotations

from typing import Iterable, Optional


class PursuitError(Exception):
    """Base class for every domain error raised by the package."""


class GraphParseError(PursuitError, ValueError):
    """Edge-list text could not be turned into a simple graph."""

    def __init__(self, message: str, line_number: Optional[int] = None) -> None:
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class GraphTooLargeError(PursuitError, ValueError):
    """Vertex count exceeds the configured cap."""


class PreconditionError(PursuitError, ValueError):
    """An operation was called outside its documented domain."""


class UnknownGraphError(PursuitError, KeyError):
    """Requested catalog name does not exist."""

    def __init__(self, name: str, valid: Iterable[str]) -> None:
        self.name = name
        self.valid = sorted(valid)
        super().__init__(f"unknown graph {name!r}; valid names: {', '.join(self.valid)}")

    def __str__(self) -> str:
        return str(self.args[0])


class GameStateError(PursuitError, RuntimeError):
    """Game operation applied on the wrong turn."""


class RuleViolationError(PursuitError, ValueError):
    """Illegal move for the current game state."""


class StateCapExceededError(PursuitError, RuntimeError):
    """The exact solver would index more states than allowed."""

    def __init__(self, estimated_states: int, cap: int) -> None:
        self.estimated_states = estimated_states
        self.cap = cap
        super().__init__(
            f"state space of {estimated_states} states exceeds the cap of {cap} "
            "(raise PURSUIT_STATE_CAP to allow it)"
        )


__all__ = [
    "PursuitError",
    "GraphParseError",
    "GraphTooLargeError",
    "PreconditionError",
    "UnknownGraphError",
    "GameStateError",
    "RuleViolationError",
    "StateCapExceededError",
]
