"""willsim: a Markov Stag Hunt engine for commitment-driven cooperation.

Subpackages: core (config + RNG contract), env (grid world), policy (agent
decision rules), dynamics (infinite-population analysis), evolve (genetic
search), harness (experiments + CSV), service (FastAPI endpoints), cli
(thin client).
"""

from .core import (
    Action,
    AgentSpec,
    ConfigError,
    PreyKind,
    RationalParams,
    SimConfig,
    derive_episode_seed,
    make_rng,
    validate_config,
)
from .env import GridState, StepOutcome, normalized_group_payoff, reset, step
from .harness import BatchStats, EpisodeResult, run_batch, run_episode

__all__ = [
    "Action",
    "AgentSpec",
    "BatchStats",
    "ConfigError",
    "EpisodeResult",
    "GridState",
    "PreyKind",
    "RationalParams",
    "SimConfig",
    "StepOutcome",
    "derive_episode_seed",
    "make_rng",
    "normalized_group_payoff",
    "reset",
    "run_batch",
    "run_episode",
    "step",
    "validate_config",
]

__version__ = "0.1.0"
