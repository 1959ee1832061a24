"""FastAPI service exposing the simulation engine.

The CLI mounts this app in-process by default; `willsim serve` runs it under
uvicorn for remote clients (e.g. the figures frontend fetching CSVs).
Config violations map to HTTP 400 with the violated invariant's name.
"""

from __future__ import annotations

import numpy as np
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..core import ConfigError, derive_episode_seed, make_rng
from ..dynamics import default_game, equilibria_rows, escape_rows
from ..dynamics import EQUILIBRIA_HEADER, ESCAPE_HEADER
from ..evolve import (
    DISTRIBUTION_HEADER,
    HISTORY_HEADER,
    PAYOFF_HEADER,
    distribution_rows,
    evolve,
    payoff_rows,
)
from ..harness import (
    COMPOSITION_HEADER,
    ENDOGENOUS_HEADER,
    STRENGTH_HEADER,
    rows_to_csv,
    run_endogenous,
    run_episode,
    sweep_composition,
    sweep_strength,
    sweep_ternary,
)
from .schemas import (
    CompositionSweepRequest,
    CsvResponse,
    EndogenousRequest,
    EquilibriaRequest,
    EscapeRequest,
    EvolveRequest,
    EvolveResponse,
    SimulateRequest,
    SimulateResponse,
    StrengthSweepRequest,
    TernarySweepRequest,
)

app = FastAPI(
    title="willsim",
    version=__version__,
    description="Markov Stag Hunt simulation and population-dynamics service",
)


@app.exception_handler(ConfigError)
async def config_error_handler(request: Request, exc: ConfigError):
    return JSONResponse(
        status_code=400,
        content={"error": type(exc).__name__, "detail": str(exc)},
    )


@app.exception_handler(ValueError)
async def value_error_handler(request: Request, exc: ValueError):
    return JSONResponse(
        status_code=400,
        content={"error": type(exc).__name__, "detail": str(exc)},
    )


@app.get("/health")
def health():
    return {"status": "ok", "version": __version__}


@app.post("/simulate", response_model=SimulateResponse)
def simulate(request: SimulateRequest):
    config = request.config.to_config()
    if request.agents is None:
        from ..core import AgentSpec

        specs = [AgentSpec.rational()] * config.n_agents
    else:
        if len(request.agents) != config.n_agents:
            raise ValueError(
                f"{len(request.agents)} agent specs for {config.n_agents} agents"
            )
        specs = [a.to_spec() for a in request.agents]
    seed = config.master_seed if request.seed is None else request.seed
    result = run_episode(config, specs, seed, record_trace=request.include_trace)
    return SimulateResponse(
        seed=seed,
        total_reward=result.total_reward,
        normalized_payoff=result.normalized_payoff,
        stags_captured=result.stags_captured,
        hares_captured=result.hares_captured,
        per_agent_rewards=[float(r) for r in result.per_agent_rewards],
        trace=result.trace,
    )


@app.post("/sweeps/composition", response_model=CsvResponse)
def composition(request: CompositionSweepRequest):
    config = request.config.to_config()
    rows = sweep_composition(
        config, request.thetas, request.stag_counts, request.episodes,
        request.parallelism,
    )
    return CsvResponse(csv=rows_to_csv(COMPOSITION_HEADER, rows))


@app.post("/sweeps/ternary", response_model=CsvResponse)
def ternary(request: TernarySweepRequest):
    config = request.config.to_config()
    rows = sweep_ternary(
        config, request.theta, request.step, request.episodes, request.parallelism
    )
    return CsvResponse(csv=rows_to_csv(COMPOSITION_HEADER, rows))


@app.post("/sweeps/strength", response_model=CsvResponse)
def strength(request: StrengthSweepRequest):
    config = request.config.to_config()
    rows = sweep_strength(
        config, request.thetas, request.alphas, request.episodes, request.parallelism
    )
    return CsvResponse(csv=rows_to_csv(STRENGTH_HEADER, rows))


@app.post("/endogenous", response_model=CsvResponse)
def endogenous(request: EndogenousRequest):
    config = request.config.to_config()
    rows = run_endogenous(
        config, request.rs_bars, request.ks, request.episodes, request.parallelism
    )
    return CsvResponse(csv=rows_to_csv(ENDOGENOUS_HEADER, rows))


@app.post("/evolve", response_model=EvolveResponse)
def evolve_endpoint(request: EvolveRequest):
    config = request.config.to_config()
    ga = request.ga.to_config()
    seed = config.master_seed if request.seed is None else request.seed
    result = evolve(ga, config, seed, request.parallelism)
    return EvolveResponse(
        best_alphas=[float(a) for a in result.best_genome],
        best_fitness=result.best_fitness,
        mean_alpha=float(np.mean(result.best_genome)),
        history_csv=rows_to_csv(HISTORY_HEADER, result.history),
        distribution_csv=rows_to_csv(
            DISTRIBUTION_HEADER, distribution_rows(result, config, ga)
        ),
        payoff_csv=rows_to_csv(
            PAYOFF_HEADER, payoff_rows(result, config, ga, seed, request.parallelism)
        ),
    )


@app.post("/dynamics/equilibria", response_model=CsvResponse)
def equilibria(request: EquilibriaRequest):
    games = [default_game(kind) for kind in request.games]
    rows = equilibria_rows(games, request.grid_step)
    return CsvResponse(csv=rows_to_csv(EQUILIBRIA_HEADER, rows))


@app.post("/dynamics/escape", response_model=CsvResponse)
def escape(request: EscapeRequest):
    game = default_game(request.game)
    rng = make_rng(derive_episode_seed(request.seed, 0xE5CA))
    rows = escape_rows(
        game, request.n1_values, request.sigma, request.to_params(),
        request.trials, rng,
    )
    return CsvResponse(csv=rows_to_csv(ESCAPE_HEADER, rows))
