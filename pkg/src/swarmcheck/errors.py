"""Exception types shared across swarmcheck modules."""

from __future__ import annotations


class SwarmCheckError(Exception):
    """Base class for all swarmcheck errors."""


class NotEnoughAgents(SwarmCheckError):
    """An operation needed more agents than the state provides."""


class DegenerateDistance(SwarmCheckError):
    """A pair of agents is closer than the degeneracy floor EPS_SEP."""


class DimensionMismatch(SwarmCheckError):
    """Vectors in one collection disagree on dimension."""


class BadDelta(SwarmCheckError):
    """A ball radius / separation parameter was not strictly positive."""


class NumericBlowup(SwarmCheckError):
    """A time step produced a non-finite component.

    Carries the index of the failing step so sweeps can report where an
    unstable parameter set diverged.
    """

    def __init__(self, message: str, step_index: int | None = None):
        super().__init__(message)
        self.step_index = step_index


class InsufficientData(SwarmCheckError):
    """Aggregation was asked to run on too few distinct swarm sizes."""


class ConfigError(SwarmCheckError):
    """A run/sweep configuration is malformed or inconsistent."""
