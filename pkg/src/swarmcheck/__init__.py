"""swarmcheck: swarm simulator and reliability-qualification harness.

Frame-theoretic diagnostics (pairwise inverse-square energy, frame potential,
optimal frame bounds, delta-ball coverage) over deterministic swarm
simulations, with a sweep harness that tests whether bounded energy comes
with coverage bounded below, independent of swarm size.
"""

from ._version import VERSION as __version__
from .controllers import ControllerSpec
from .core import AgentState, Cube, SwarmState, bounding_cube, centroid, mean_velocity
from .engine import RunConfig, RunRecord, Violation, neighbors_within, run, step
from .errors import (
    BadDelta,
    ConfigError,
    DegenerateDistance,
    DimensionMismatch,
    InsufficientData,
    NotEnoughAgents,
    NumericBlowup,
    SwarmCheckError,
)
from .harness import (
    RobustnessReport,
    RunSummary,
    SweepConfig,
    robustness_report,
    run_sweep,
    trend_stat,
)
from .metrics import (
    CoverageEstimate,
    FrameBounds,
    MetricsSample,
    coverage_ratio,
    energy,
    frame_bounds,
    frame_potential,
    max_velocity_deviation,
    min_separation,
    sample_metrics,
)
from .scenarios import Scenario, make_scenario

__all__ = [
    "__version__",
    "AgentState",
    "BadDelta",
    "ConfigError",
    "ControllerSpec",
    "CoverageEstimate",
    "Cube",
    "DegenerateDistance",
    "DimensionMismatch",
    "FrameBounds",
    "InsufficientData",
    "MetricsSample",
    "NotEnoughAgents",
    "NumericBlowup",
    "RobustnessReport",
    "RunConfig",
    "RunRecord",
    "RunSummary",
    "Scenario",
    "SwarmCheckError",
    "SwarmState",
    "SweepConfig",
    "Violation",
    "bounding_cube",
    "centroid",
    "coverage_ratio",
    "energy",
    "frame_bounds",
    "frame_potential",
    "make_scenario",
    "max_velocity_deviation",
    "mean_velocity",
    "min_separation",
    "neighbors_within",
    "robustness_report",
    "run",
    "run_sweep",
    "sample_metrics",
    "step",
    "trend_stat",
]
