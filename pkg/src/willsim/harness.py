"""Experiment orchestration: episodes, batches, sweeps, and CSV emission.

Episode i of any batch is keyed by derive_episode_seed(master_seed, i), and
every sweep cell reuses the same episode seed sequence (common random numbers
across cells).  Batch statistics aggregate per-episode results in episode
order, so means and intervals are bit-identical for any parallelism degree.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .core import (
    INSTANT,
    INTERMITTENT,
    PHASED,
    PURE_RATIONAL,
    Action,
    AgentSpec,
    PreyKind,
    SimConfig,
    derive_episode_seed,
    make_rng,
    validate_config,
)
from .env import normalized_group_payoff, reset, step, step_record
from .policy import AgentController, action_likelihoods


@dataclass
class EpisodeResult:
    total_reward: float
    per_agent_rewards: np.ndarray
    normalized_payoff: float
    stags_captured: int
    hares_captured: int
    trace: list | None = None


@dataclass
class BatchStats:
    n_episodes: int
    mean: float
    ci95_halfwidth: float


@dataclass
class BatchResult:
    stats: BatchStats
    normalized: np.ndarray  # (n_episodes,)
    totals: np.ndarray  # (n_episodes,)
    per_agent: np.ndarray  # (n_episodes, N)
    stags: np.ndarray  # (n_episodes,) int
    hares: np.ndarray  # (n_episodes,) int


def run_episode(
    config: SimConfig,
    specs: list,
    seed: int,
    record_trace: bool = False,
) -> EpisodeResult:
    """Run one full episode; deterministic in (config, specs, seed)."""
    validate_config(config)
    if len(specs) != config.n_agents:
        raise ValueError("one AgentSpec per agent required")
    rng = make_rng(seed)
    state = reset(config, rng)
    controllers = [AgentController(s, i, config) for i, s in enumerate(specs)]

    rewards = np.zeros(config.n_agents, dtype=np.float64)
    stags = 0
    hares = 0
    trace = [] if record_trace else None

    for t in range(config.horizon):
        actions = np.full(config.n_agents, int(Action.IDLE), dtype=np.int64)
        for i, ctl in enumerate(controllers):
            if not state.agent_done[i]:
                actions[i] = int(ctl.act(state, t, rng))
        prev_state = state
        state, outcome = step(prev_state, actions, config, rng)
        rewards += outcome.rewards
        for prey, _hunters in outcome.hunt_events:
            if prev_state.prey_is_stag[prey]:
                stags += 1
            else:
                hares += 1

        if t + 1 < config.horizon:
            _update_beliefs(controllers, prev_state, actions, state)

        if record_trace:
            goals = [ctl.last_goal for ctl in controllers]
            trace.append(step_record(t, actions, outcome, goals))

    total = float(rewards.sum())
    return EpisodeResult(
        total_reward=total,
        per_agent_rewards=rewards,
        normalized_payoff=normalized_group_payoff(total, config),
        stags_captured=stags,
        hares_captured=hares,
        trace=trace,
    )


def _update_beliefs(controllers, prev_state, actions, new_state):
    """One shared-likelihood Bayes step for every live belief consumer."""
    consumers = [
        c
        for c in controllers
        if c.needs_beliefs and not new_state.agent_done[c.index]
    ]
    if not consumers:
        return
    config = consumers[0].config
    by_beta: dict = {}
    for c in consumers:
        by_beta.setdefault(c.spec.rational_params.beta, []).append(c)
    for beta, group in by_beta.items():
        like = action_likelihoods(prev_state, actions, beta, config)
        for c in group:
            c.observe(prev_state, like, new_state.prey_alive)


# ---------------------------------------------------------------------------
# batches
# ---------------------------------------------------------------------------

_WORKER_CONFIG: SimConfig | None = None
_WORKER_SPECS: list | None = None


def _init_worker(config, specs):
    global _WORKER_CONFIG, _WORKER_SPECS
    _WORKER_CONFIG = config
    _WORKER_SPECS = specs


def _episode_summary(config, specs, task):
    index, seed = task
    result = run_episode(config, specs, seed)
    return (
        index,
        result.total_reward,
        result.normalized_payoff,
        result.per_agent_rewards.tolist(),
        result.stags_captured,
        result.hares_captured,
    )


def _episode_task(task):
    return _episode_summary(_WORKER_CONFIG, _WORKER_SPECS, task)


def _stats(normalized: np.ndarray) -> BatchStats:
    n = normalized.size
    mean = float(normalized.mean()) if n else 0.0
    if n >= 2:
        sd = float(normalized.std(ddof=1))
        ci = 1.96 * sd / np.sqrt(n)
    else:
        ci = 0.0
    return BatchStats(n_episodes=n, mean=mean, ci95_halfwidth=float(ci))


def run_batch(
    config: SimConfig,
    specs: list,
    n_episodes: int,
    parallelism: int = 1,
    base_seed: int | None = None,
) -> BatchResult:
    """Run n_episodes with seeds derived from the master seed.

    Results are gathered per episode index and aggregated in index order, so
    the output is independent of the parallelism degree.
    """
    validate_config(config)
    if n_episodes < 1:
        raise ValueError("n_episodes must be >= 1")
    master = config.master_seed if base_seed is None else base_seed
    tasks = [(i, derive_episode_seed(master, i)) for i in range(n_episodes)]

    if parallelism <= 1 or n_episodes == 1:
        raw = [_episode_summary(config, specs, t) for t in tasks]
    else:
        with ProcessPoolExecutor(
            max_workers=parallelism,
            initializer=_init_worker,
            initargs=(config, specs),
        ) as pool:
            chunk = max(1, n_episodes // (parallelism * 4))
            raw = list(pool.map(_episode_task, tasks, chunksize=chunk))

    raw.sort(key=lambda r: r[0])
    totals = np.array([r[1] for r in raw], dtype=np.float64)
    normalized = np.array([r[2] for r in raw], dtype=np.float64)
    per_agent = np.array([r[3] for r in raw], dtype=np.float64)
    stags = np.array([r[4] for r in raw], dtype=np.int64)
    hares = np.array([r[5] for r in raw], dtype=np.int64)
    return BatchResult(
        stats=_stats(normalized),
        normalized=normalized,
        totals=totals,
        per_agent=per_agent,
        stags=stags,
        hares=hares,
    )


# ---------------------------------------------------------------------------
# population builders
# ---------------------------------------------------------------------------


def composition_specs(
    config: SimConfig, n_willed_stag: int, n_willed_hare: int = 0
) -> list:
    """n_willed_stag stag-committed + n_willed_hare hare-committed agents,
    remainder rational."""
    n_rational = config.n_agents - n_willed_stag - n_willed_hare
    if min(n_willed_stag, n_willed_hare, n_rational) < 0:
        raise ValueError("composition exceeds the population size")
    return (
        [AgentSpec.willed(PreyKind.STAG)] * n_willed_stag
        + [AgentSpec.willed(PreyKind.HARE)] * n_willed_hare
        + [AgentSpec.rational()] * n_rational
    )


def homogeneous_strength_specs(config: SimConfig, will_strength: float) -> list:
    return [AgentSpec.hybrid(will_strength)] * config.n_agents


def endogenous_specs(config: SimConfig, variant: str, ratio: float | None) -> list:
    return [AgentSpec.endogenous(variant, ratio)] * config.n_agents


# ---------------------------------------------------------------------------
# sweeps
# ---------------------------------------------------------------------------

COMPOSITION_HEADER = (
    "theta",
    "n_willed_stag",
    "n_rational",
    "n_willed_hare",
    "mean",
    "ci95",
)
STRENGTH_HEADER = ("theta", "alpha", "mean", "ci95")
ENDOGENOUS_HEADER = ("strategy", "k", "rs_bar", "mean", "ci95")


def sweep_composition(
    config: SimConfig,
    thetas: list,
    stag_counts: list,
    episodes: int,
    parallelism: int = 1,
) -> list:
    """Stag-willed vs rational mixes across thresholds; rows match
    COMPOSITION_HEADER."""
    rows = []
    for theta in thetas:
        cell_config = replace(config, threshold=int(theta))
        for s in stag_counts:
            specs = composition_specs(cell_config, int(s))
            batch = run_batch(cell_config, specs, episodes, parallelism)
            rows.append(
                (
                    int(theta),
                    int(s),
                    cell_config.n_agents - int(s),
                    0,
                    batch.stats.mean,
                    batch.stats.ci95_halfwidth,
                )
            )
    return rows


def sweep_ternary(
    config: SimConfig,
    theta: int,
    step_size: int,
    episodes: int,
    parallelism: int = 1,
) -> list:
    """Full simplex of (stag-willed, rational, hare-willed) counts at one
    threshold, on a step_size grid; rows match COMPOSITION_HEADER."""
    cell_config = replace(config, threshold=int(theta))
    n = cell_config.n_agents
    rows = []
    for s in range(0, n + 1, step_size):
        for h in range(0, n - s + 1, step_size):
            specs = composition_specs(cell_config, s, h)
            batch = run_batch(cell_config, specs, episodes, parallelism)
            rows.append(
                (int(theta), s, n - s - h, h, batch.stats.mean, batch.stats.ci95_halfwidth)
            )
    return rows


def sweep_strength(
    config: SimConfig,
    thetas: list,
    alphas: list,
    episodes: int,
    parallelism: int = 1,
) -> list:
    """Homogeneous will-strength populations; rows match STRENGTH_HEADER."""
    rows = []
    for theta in thetas:
        cell_config = replace(config, threshold=int(theta))
        for alpha in alphas:
            specs = homogeneous_strength_specs(cell_config, float(alpha))
            batch = run_batch(cell_config, specs, episodes, parallelism)
            rows.append(
                (int(theta), float(alpha), batch.stats.mean, batch.stats.ci95_halfwidth)
            )
    return rows


def endogenous_cells(ks: list, horizon: int) -> list:
    """(strategy, k) cells in canonical table order."""
    cells = [(PURE_RATIONAL, 1.0)]
    for k in ks:
        cells.append((INTERMITTENT, float(k)))
        cells.append((PHASED, float(k)))
    cells.append((INSTANT, 1.0 / horizon))
    return cells


def run_endogenous(
    config: SimConfig,
    rs_bars: list,
    ks: list,
    episodes: int,
    parallelism: int = 1,
) -> list:
    """Endogenous-commitment strategy table; rows match ENDOGENOUS_HEADER."""
    rows = []
    for variant, k in endogenous_cells(ks, config.horizon):
        ratio = None if variant in (PURE_RATIONAL, INSTANT) else k
        for rs_bar in rs_bars:
            cell_config = replace(config, stag_share=float(rs_bar))
            specs = endogenous_specs(cell_config, variant, ratio)
            batch = run_batch(cell_config, specs, episodes, parallelism)
            rows.append(
                (variant, float(k), float(rs_bar), batch.stats.mean, batch.stats.ci95_halfwidth)
            )
    return rows


# ---------------------------------------------------------------------------
# CSV emission
# ---------------------------------------------------------------------------


def format_cell(value) -> str:
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    return str(value)


def rows_to_csv(header, rows) -> str:
    """Canonical CSV text: header row, comma separators, '.' decimals, \\n."""
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(format_cell(v) for v in row))
    return "\n".join(lines) + "\n"


def write_csv(path, header, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(rows_to_csv(header, rows))


def trace_to_jsonl(trace: list) -> str:
    return "\n".join(json.dumps(rec, separators=(",", ":")) for rec in trace) + "\n"
