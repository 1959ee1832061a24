"""Shared configuration, action vocabulary, and the deterministic RNG contract.

Every stochastic operation in the package draws from a numpy Philox generator
(Philox-4x64-10, a counter-based algorithm with a published specification)
keyed by a 64-bit seed.  Batch runs derive one seed per episode with
`derive_episode_seed`, a splitmix64 mix of (master_seed, episode_index), so
replaying any episode, batch, or sweep with the same master seed reproduces
bit-identical traces and CSV rows regardless of parallelism.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, fields
from enum import IntEnum
from pathlib import Path
from typing import NamedTuple

import numpy as np


class ConfigError(ValueError):
    """A SimConfig invariant is violated."""


class ThresholdExceedsAgents(ConfigError):
    pass


class GridTooSmall(ConfigError):
    pass


class NegativeReward(ConfigError):
    pass


class Action(IntEnum):
    """The six agent actions. The declaration order is the canonical
    tie-breaking order used everywhere in the package."""

    IDLE = 0
    LEFT = 1
    RIGHT = 2
    UP = 3
    DOWN = 4
    HUNT = 5


# (row, col) displacement per action; HUNT does not move. UP decreases the
# row index, LEFT decreases the column index.
ACTION_DELTAS = np.array(
    [[0, 0], [0, -1], [0, 1], [-1, 0], [1, 0], [0, 0]], dtype=np.int64
)


class PreyKind(IntEnum):
    STAG = 0
    HARE = 1


class Position(NamedTuple):
    row: int
    col: int


@dataclass(frozen=True)
class SimConfig:
    """Full parameterization of one Markov Stag Hunt setup.

    Defaults follow the reference experimental setup: a 20x20 grid with 20
    agents, 3 stags, 20 hares, hare reward 1, per-hunter stag share 5.
    `stag_share` is the effective individual share; the total reward carried
    by a stag is stag_share * threshold.
    """

    grid_height: int = 20
    grid_width: int = 20
    n_agents: int = 20
    n_stags: int = 3
    n_hares: int = 20
    hare_reward: float = 1.0
    stag_share: float = 5.0
    threshold: int = 3
    horizon: int = 50
    master_seed: int = 0

    @property
    def stag_reward(self) -> float:
        return self.stag_share * self.threshold

    @property
    def n_prey(self) -> int:
        return self.n_stags + self.n_hares


def validate_config(config: SimConfig) -> None:
    """Raise the first violated invariant as a ConfigError subclass."""
    if config.grid_height < 1 or config.grid_width < 1:
        raise ConfigError("grid dimensions must be positive")
    if config.n_agents < 1:
        raise ConfigError("n_agents must be positive")
    if config.n_stags < 0 or config.n_hares < 0:
        raise ConfigError("prey counts must be non-negative")
    if config.threshold < 1:
        raise ConfigError("threshold must be >= 1")
    if config.horizon < 1:
        raise ConfigError("horizon must be >= 1")
    if config.hare_reward < 0 or config.stag_share < 0:
        raise NegativeReward("hare_reward and stag_share must be >= 0")
    if config.threshold > config.n_agents:
        raise ThresholdExceedsAgents(
            f"threshold {config.threshold} exceeds n_agents {config.n_agents}: "
            "no stag is ever capturable"
        )
    if config.grid_height * config.grid_width < config.n_prey:
        raise GridTooSmall(
            f"{config.grid_height}x{config.grid_width} grid cannot hold "
            f"{config.n_prey} prey on distinct cells"
        )
    if not (0 <= config.master_seed < 2**64):
        raise ConfigError("master_seed must fit in 64 bits")


_CONFIG_FIELDS = None


def config_from_dict(doc: dict) -> SimConfig:
    """Build a SimConfig from a JSON-style dict. Unknown keys are an error."""
    global _CONFIG_FIELDS
    if _CONFIG_FIELDS is None:
        _CONFIG_FIELDS = {f.name for f in fields(SimConfig)}
    unknown = set(doc) - _CONFIG_FIELDS
    if unknown:
        raise ConfigError(f"unknown config fields: {sorted(unknown)}")
    config = SimConfig(**doc)
    validate_config(config)
    return config


def load_config(path: str | Path) -> SimConfig:
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict):
        raise ConfigError("config document must be a JSON object")
    return config_from_dict(doc)


@dataclass(frozen=True)
class RationalParams:
    """Planner knobs: Boltzmann inverse temperature used to model peers,
    number of Monte Carlo plans, and reward discount."""

    beta: float = 10.0
    n_samples: int = 15
    discount: float = 0.98

    def validate(self) -> None:
        if self.beta <= 0:
            raise ValueError("beta must be > 0")
        if self.n_samples < 1:
            raise ValueError("n_samples must be >= 1")
        if not 0 < self.discount <= 1:
            raise ValueError("discount must be in (0, 1]")


# Endogenous commitment schedules.
PURE_RATIONAL = "pure_rational"
INTERMITTENT = "intermittent"
PHASED = "phased"
INSTANT = "instant"
STRATEGY_VARIANTS = (PURE_RATIONAL, INTERMITTENT, PHASED, INSTANT)


@dataclass(frozen=True)
class EndoStrategy:
    """A self-selected commitment schedule: when the agent re-plans vs.
    pursues its most recently chosen prey by greedy descent."""

    variant: str
    ratio: float | None = None  # re-planning budget k, required for the periodic variants

    def __post_init__(self):
        if self.variant not in STRATEGY_VARIANTS:
            raise ValueError(f"unknown strategy variant {self.variant!r}")
        if self.variant in (INTERMITTENT, PHASED):
            if self.ratio is None or not (0 < self.ratio <= 1):
                raise ValueError(f"{self.variant} requires ratio in (0, 1]")


MODE_WILLED = "willed"
MODE_RATIONAL = "rational"
MODE_HYBRID = "hybrid"
MODE_ENDOGENOUS = "endogenous"


@dataclass(frozen=True)
class AgentSpec:
    """An agent's decision mode.

    willed:     greedy potential descent toward all alive prey of target_kind
    rational:   Bayesian goal inference over peers + Monte Carlo planning
    hybrid:     willed for the first ceil(|will_strength| * T) steps
                (sign picks stag vs hare), rational afterwards
    endogenous: rational planning on the strategy's schedule, willed descent
                toward the locked target in between
    """

    mode: str
    target_kind: PreyKind | None = None
    will_strength: float | None = None
    strategy: EndoStrategy | None = None
    rational_params: RationalParams = field(default_factory=RationalParams)

    def __post_init__(self):
        if self.mode == MODE_WILLED:
            if self.target_kind is None:
                raise ValueError("willed spec requires target_kind")
        elif self.mode == MODE_HYBRID:
            if self.will_strength is None or not -1 <= self.will_strength <= 1:
                raise ValueError("hybrid spec requires will_strength in [-1, 1]")
        elif self.mode == MODE_ENDOGENOUS:
            if self.strategy is None:
                raise ValueError("endogenous spec requires a strategy")
        elif self.mode != MODE_RATIONAL:
            raise ValueError(f"unknown agent mode {self.mode!r}")
        self.rational_params.validate()

    @staticmethod
    def willed(kind: PreyKind, **kw) -> "AgentSpec":
        return AgentSpec(mode=MODE_WILLED, target_kind=kind, **kw)

    @staticmethod
    def rational(**kw) -> "AgentSpec":
        return AgentSpec(mode=MODE_RATIONAL, **kw)

    @staticmethod
    def hybrid(will_strength: float, **kw) -> "AgentSpec":
        return AgentSpec(mode=MODE_HYBRID, will_strength=will_strength, **kw)

    @staticmethod
    def endogenous(variant: str, ratio: float | None = None, **kw) -> "AgentSpec":
        return AgentSpec(
            mode=MODE_ENDOGENOUS, strategy=EndoStrategy(variant, ratio), **kw
        )


_MASK64 = (1 << 64) - 1


def splitmix64(x: int) -> int:
    """One splitmix64 step: the standard 64-bit finalizing mix."""
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def derive_episode_seed(master_seed: int, episode_index: int) -> int:
    """Mix (master_seed, episode_index) into an independent 64-bit stream key.

    Pure and collision-free in practice: two splitmix64 rounds over the pair.
    """
    if episode_index < 0:
        raise ValueError("episode_index must be non-negative")
    return splitmix64(splitmix64(master_seed & _MASK64) ^ (episode_index & _MASK64))


def make_rng(seed: int) -> np.random.Generator:
    """The package-wide generator: Philox keyed by a 64-bit seed."""
    return np.random.Generator(np.random.Philox(key=seed & _MASK64))
