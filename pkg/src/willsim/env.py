"""The Markov Stag Hunt grid world.

Agents move synchronously on an H x W grid populated by static prey.  Hunting
a hare pays `hare_reward` to a single hunter; hunting a stag succeeds only
when at least `threshold` agents hunt it in the same step, splitting the
total stag reward equally among them.  Each agent can capture one prey per
episode; successful hunters freeze in place for the rest of the episode.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import ACTION_DELTAS, Action, Position, SimConfig


class EpisodeOver(RuntimeError):
    """step() called on a state whose clock already reached the horizon."""


@dataclass
class GridState:
    """Positions, aliveness, and hunt status of all agents and prey at one step.

    Prey are laid out stags first, then hares; dead prey keep their record so
    prey indices are stable for the whole episode.
    """

    t: int
    agent_pos: np.ndarray  # (N, 2) int64, (row, col)
    agent_done: np.ndarray  # (N,) bool
    prey_pos: np.ndarray  # (P, 2) int64
    prey_is_stag: np.ndarray  # (P,) bool
    prey_alive: np.ndarray  # (P,) bool

    @property
    def n_agents(self) -> int:
        return self.agent_pos.shape[0]

    @property
    def n_prey(self) -> int:
        return self.prey_pos.shape[0]

    def agent_position(self, index: int) -> Position:
        return Position(int(self.agent_pos[index, 0]), int(self.agent_pos[index, 1]))

    def prey_position(self, index: int) -> Position:
        return Position(int(self.prey_pos[index, 0]), int(self.prey_pos[index, 1]))

    def copy(self) -> "GridState":
        return GridState(
            t=self.t,
            agent_pos=self.agent_pos.copy(),
            agent_done=self.agent_done.copy(),
            prey_pos=self.prey_pos.copy(),
            prey_is_stag=self.prey_is_stag.copy(),
            prey_alive=self.prey_alive.copy(),
        )


@dataclass
class StepOutcome:
    rewards: np.ndarray  # (N,) float
    # (prey_index, tuple of successful hunter indices), one entry per capture
    hunt_events: list


def reset(config: SimConfig, rng: np.random.Generator) -> GridState:
    """Place prey uniformly on distinct cells and agents uniformly anywhere.

    Draw order is fixed (prey cells, then agent rows, then agent cols) so a
    given rng state always yields the same layout.
    """
    n_cells = config.grid_height * config.grid_width
    prey_cells = rng.choice(n_cells, size=config.n_prey, replace=False)
    prey_pos = np.stack(
        np.unravel_index(prey_cells, (config.grid_height, config.grid_width)), axis=1
    ).astype(np.int64)
    prey_is_stag = np.zeros(config.n_prey, dtype=bool)
    prey_is_stag[: config.n_stags] = True

    agent_rows = rng.integers(0, config.grid_height, size=config.n_agents)
    agent_cols = rng.integers(0, config.grid_width, size=config.n_agents)
    agent_pos = np.stack([agent_rows, agent_cols], axis=1).astype(np.int64)

    return GridState(
        t=0,
        agent_pos=agent_pos,
        agent_done=np.zeros(config.n_agents, dtype=bool),
        prey_pos=prey_pos,
        prey_is_stag=prey_is_stag,
        prey_alive=np.ones(config.n_prey, dtype=bool),
    )


def _split_exactly(total: float, count: int) -> list:
    """Equal split whose left-to-right float sum is exactly `total`.

    The first count-1 hunters get total/count; the last gets the residual,
    which differs from an equal share by at most one ulp.
    """
    share = total / count
    if count == 1:
        return [total]
    partial = 0.0
    for _ in range(count - 1):
        partial += share
    return [share] * (count - 1) + [total - partial]


def step(
    state: GridState,
    joint_action: np.ndarray,
    config: SimConfig,
    rng: np.random.Generator,
) -> tuple:
    """Advance one synchronous step; returns (new_state, StepOutcome).

    Done agents are forced to IDLE.  Moves that would leave the grid resolve
    to staying put.  A HUNT targets the prey on the agent's own (post-move)
    cell; hunting an empty cell or a dead prey is a no-op.  When several
    agents hunt the same hare in one step, one winner is drawn uniformly
    from the episode rng.
    """
    if state.t >= config.horizon:
        raise EpisodeOver(f"episode horizon {config.horizon} reached")
    actions = np.asarray(joint_action, dtype=np.int64)
    if actions.shape != (state.n_agents,):
        raise ValueError("joint_action must give one action per agent")

    effective = np.where(state.agent_done, int(Action.IDLE), actions)

    new_pos = state.agent_pos + ACTION_DELTAS[effective]
    off_grid = (
        (new_pos[:, 0] < 0)
        | (new_pos[:, 0] >= config.grid_height)
        | (new_pos[:, 1] < 0)
        | (new_pos[:, 1] >= config.grid_width)
    )
    new_pos[off_grid] = state.agent_pos[off_grid]

    rewards = np.zeros(state.n_agents, dtype=np.float64)
    new_done = state.agent_done.copy()
    new_alive = state.prey_alive.copy()
    hunt_events = []

    cell_to_prey = {
        (int(r), int(c)): p
        for p, (r, c) in enumerate(state.prey_pos)
        if state.prey_alive[p]
    }
    hunters_by_prey: dict = {}
    for i in np.flatnonzero((effective == int(Action.HUNT)) & ~state.agent_done):
        prey = cell_to_prey.get((int(new_pos[i, 0]), int(new_pos[i, 1])))
        if prey is not None:
            hunters_by_prey.setdefault(prey, []).append(int(i))

    for prey in sorted(hunters_by_prey):
        hunters = hunters_by_prey[prey]
        if state.prey_is_stag[prey]:
            if len(hunters) < config.threshold:
                continue
            shares = _split_exactly(config.stag_reward, len(hunters))
            for i, share in zip(hunters, shares):
                rewards[i] = share
                new_done[i] = True
            new_alive[prey] = False
            hunt_events.append((prey, tuple(hunters)))
        else:
            if len(hunters) == 1:
                winner = hunters[0]
            else:
                winner = hunters[int(rng.integers(len(hunters)))]
            rewards[winner] = config.hare_reward
            new_done[winner] = True
            new_alive[prey] = False
            hunt_events.append((prey, (winner,)))

    new_state = GridState(
        t=state.t + 1,
        agent_pos=new_pos,
        agent_done=new_done,
        prey_pos=state.prey_pos,
        prey_is_stag=state.prey_is_stag,
        prey_alive=new_alive,
    )
    return new_state, StepOutcome(rewards=rewards, hunt_events=hunt_events)


def max_group_payoff(config: SimConfig) -> float:
    """Greedy-assignment maximum total reward for one episode.

    Considers every feasible number of staffed stags k (each takes threshold
    agents) and sends everyone else to a hare while hares last.
    """
    best = 0.0
    max_stags = min(config.n_stags, config.n_agents // config.threshold)
    for k in range(max_stags + 1):
        rest = config.n_agents - k * config.threshold
        total = k * config.stag_reward + min(rest, config.n_hares) * config.hare_reward
        best = max(best, total)
    return best


def normalized_group_payoff(total_reward: float, config: SimConfig) -> float:
    """total_reward scaled into [0, 1] by the greedy-assignment maximum."""
    if total_reward < 0:
        raise ValueError("total_reward must be >= 0")
    p_max = max_group_payoff(config)
    if p_max <= 0:
        return 0.0
    return min(1.0, max(0.0, total_reward / p_max))


def step_record(t: int, joint_action, outcome: StepOutcome, goals=None) -> dict:
    """One JSON-lines trace record for a completed step."""
    record = {
        "t": t,
        "joint_action": [Action(int(a)).name.lower() for a in joint_action],
        "rewards": [float(r) for r in outcome.rewards],
        "hunt_events": [
            {"prey": int(p), "hunters": [int(h) for h in hs]}
            for p, hs in outcome.hunt_events
        ],
    }
    if goals is not None:
        record["chosen_goals"] = [None if g is None else int(g) for g in goals]
    return record
