"""Pydantic request/response models for the simulation service.

Every endpoint is stateless: a request carries the full configuration and
seeds, so identical requests produce byte-identical CSV payloads.
"""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

from ..core import (
    AgentSpec,
    PreyKind,
    RationalParams,
    SimConfig,
    config_from_dict,
)
from ..dynamics import SDEParams
from ..evolve import GAConfig


class ConfigModel(BaseModel):
    """Mirror of SimConfig; unknown fields are rejected."""

    model_config = ConfigDict(extra="forbid")

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

    def to_config(self) -> SimConfig:
        return config_from_dict(self.model_dump())


class AgentSpecModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    mode: Literal["willed", "rational", "hybrid", "endogenous"]
    target_kind: Optional[Literal["stag", "hare"]] = None
    will_strength: Optional[float] = None
    strategy: Optional[
        Literal["pure_rational", "intermittent", "phased", "instant"]
    ] = None
    ratio: Optional[float] = None
    beta: float = 10.0
    n_samples: int = Field(default=15, ge=1)
    discount: float = 0.98

    def to_spec(self) -> AgentSpec:
        params = RationalParams(
            beta=self.beta, n_samples=self.n_samples, discount=self.discount
        )
        if self.mode == "willed":
            kind = PreyKind.STAG if self.target_kind == "stag" else PreyKind.HARE
            if self.target_kind is None:
                raise ValueError("willed agents need target_kind")
            return AgentSpec.willed(kind, rational_params=params)
        if self.mode == "rational":
            return AgentSpec.rational(rational_params=params)
        if self.mode == "hybrid":
            if self.will_strength is None:
                raise ValueError("hybrid agents need will_strength")
            return AgentSpec.hybrid(self.will_strength, rational_params=params)
        if self.strategy is None:
            raise ValueError("endogenous agents need a strategy")
        return AgentSpec.endogenous(self.strategy, self.ratio, rational_params=params)


class SimulateRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    config: ConfigModel = ConfigModel()
    agents: Optional[list[AgentSpecModel]] = None  # default: all rational
    seed: Optional[int] = None  # default: config.master_seed
    include_trace: bool = False


class SimulateResponse(BaseModel):
    seed: int
    total_reward: float
    normalized_payoff: float
    stags_captured: int
    hares_captured: int
    per_agent_rewards: list[float]
    trace: Optional[list[dict]] = None


class CsvResponse(BaseModel):
    csv: str


class CompositionSweepRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    config: ConfigModel = ConfigModel()
    thetas: list[int] = [2, 3, 4, 5, 6, 7, 8]
    stag_counts: list[int] = [0, 5, 10, 15, 20]
    episodes: int = Field(default=300, ge=1)
    parallelism: int = Field(default=1, ge=1)


class TernarySweepRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    config: ConfigModel = ConfigModel()
    theta: int = 3
    step: int = Field(default=2, ge=1)
    episodes: int = Field(default=300, ge=1)
    parallelism: int = Field(default=1, ge=1)


class StrengthSweepRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    config: ConfigModel = ConfigModel()
    thetas: list[int] = [2, 3, 4, 5, 6, 7, 8]
    alphas: list[float] = Field(
        default_factory=lambda: [round(-1.0 + 0.1 * i, 10) for i in range(21)]
    )
    episodes: int = Field(default=300, ge=1)
    parallelism: int = Field(default=1, ge=1)


class EndogenousRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    config: ConfigModel = ConfigModel()
    rs_bars: list[float] = [10.0, 50.0]
    ks: list[float] = [0.5, 0.2, 0.1]
    episodes: int = Field(default=300, ge=1)
    parallelism: int = Field(default=1, ge=1)


class GAConfigModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    pop_size: int = 32
    generations: int = 60
    episodes_per_eval: int = 30
    tournament_size: int = 3
    crossover_rate: float = 0.9
    mutation_rate: float = 0.05
    elitism: int = 2
    alpha_step: float = 0.2

    def to_config(self) -> GAConfig:
        return GAConfig(**self.model_dump())


class EvolveRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    config: ConfigModel = ConfigModel()
    ga: GAConfigModel = GAConfigModel()
    seed: Optional[int] = None
    parallelism: int = Field(default=1, ge=1)


class EvolveResponse(BaseModel):
    best_alphas: list[float]
    best_fitness: float
    mean_alpha: float
    history_csv: str
    distribution_csv: str
    payoff_csv: str


class EquilibriaRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    games: list[Literal["stag_hunt", "snowdrift", "prisoners_dilemma"]] = [
        "stag_hunt",
        "snowdrift",
        "prisoners_dilemma",
    ]
    grid_step: float = Field(default=0.1, gt=0, le=0.5)


class EscapeRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    game: Literal["stag_hunt"] = "stag_hunt"
    n1_values: list[float] = [0.0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7]
    sigma: float = Field(default=0.15, gt=0)
    trials: int = Field(default=500, ge=1)
    move_rate: float = Field(default=1.0, gt=0)
    dt: float = Field(default=1e-3, gt=0)
    t_max: float = Field(default=1e4, gt=0)
    seed: int = 0

    def to_params(self) -> SDEParams:
        return SDEParams(
            move_rate=self.move_rate, sigma=self.sigma, dt=self.dt, t_max=self.t_max
        )
