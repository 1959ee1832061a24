"""Agent decision rules.

Four families share this module:

* greedy potential descent: move to minimize Manhattan distance to the
  nearest committed target, hunt when standing on it;
* Boltzmann goal models: the action likelihoods other agents are assumed
  to follow, used both for belief updates and inside planning rollouts;
* the Monte Carlo planner: Bayesian goal inference over peers plus
  K-sample rollout value estimation for every candidate prey;
* commitment schedules: fixed-duration (will-strength) and endogenous
  (periodic / phased / plan-once) switching between descent and planning.

Planning rollouts are simulated by a numba kernel (`_rollout_kernel`) that
replays the environment rules forward: the planner models itself as greedy
descent toward the candidate prey and every peer as a Boltzmann-goal-directed
mover.  Each rollout row draws from its own splitmix64 counter stream keyed
by a seed taken from the episode's Philox generator, so results stay
bit-reproducible, and rows sharing a seed (the candidate comparisons within
one Monte Carlo sample) share their noise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit

from .core import (
    ACTION_DELTAS,
    MODE_ENDOGENOUS,
    MODE_HYBRID,
    MODE_RATIONAL,
    MODE_WILLED,
    INSTANT,
    INTERMITTENT,
    PHASED,
    PURE_RATIONAL,
    Action,
    AgentSpec,
    PreyKind,
    RationalParams,
    SimConfig,
)
from .env import GridState


class EmptyTargetSet(ValueError):
    """No alive prey of the committed kind remain."""


class DegenerateBelief(ValueError):
    pass


class NoAlivePrey(ValueError):
    pass


# ---------------------------------------------------------------------------
# potential descent
# ---------------------------------------------------------------------------


def potential(state: GridState, agent_index: int, targets: np.ndarray) -> int:
    """Manhattan distance from the agent to its nearest target prey."""
    targets = np.asarray(targets, dtype=np.int64)
    if targets.size == 0:
        raise EmptyTargetSet("target set is empty")
    pos = state.agent_pos[agent_index]
    dists = np.abs(state.prey_pos[targets] - pos).sum(axis=1)
    return int(dists.min())


def _post_move_distances(
    pos: np.ndarray, goal_pos: np.ndarray, grid_h: int, grid_w: int
) -> np.ndarray:
    """Distances to goal after each of the five movement actions (clamped)."""
    cand = pos + ACTION_DELTAS[:5]
    off = (
        (cand[:, 0] < 0)
        | (cand[:, 0] >= grid_h)
        | (cand[:, 1] < 0)
        | (cand[:, 1] >= grid_w)
    )
    cand[off] = pos
    return np.abs(cand - goal_pos).sum(axis=1)


def willed_action(
    state: GridState, agent_index: int, targets: np.ndarray, config: SimConfig
) -> Action:
    """Greedy descent: hunt when standing on an alive target, otherwise the
    canonical-first action whose resulting position minimizes the potential."""
    targets = np.asarray(targets, dtype=np.int64)
    if targets.size == 0:
        raise EmptyTargetSet("target set is empty")
    pos = state.agent_pos[agent_index]
    dists = np.abs(state.prey_pos[targets] - pos).sum(axis=1)
    nearest = targets[int(dists.argmin())]
    if dists.min() == 0:
        # At most one prey per cell, so the co-located target is `nearest`.
        if state.prey_alive[nearest]:
            return Action.HUNT
    # One distance per (move, target); pick the move minimizing the min over
    # targets, first in canonical order on ties.
    cand = pos + ACTION_DELTAS[:5]
    off = (
        (cand[:, 0] < 0)
        | (cand[:, 0] >= config.grid_height)
        | (cand[:, 1] < 0)
        | (cand[:, 1] >= config.grid_width)
    )
    cand[off] = pos
    per_move = np.abs(cand[:, None, :] - state.prey_pos[targets][None, :, :]).sum(
        axis=2
    ).min(axis=1)
    return Action(int(per_move.argmin()))


def softmax_neg_beta(distances: np.ndarray, beta: float) -> np.ndarray:
    """softmax(-beta * d), shift-invariant in d."""
    z = -beta * (np.asarray(distances, dtype=np.float64))
    z -= z.max()
    w = np.exp(z)
    return w / w.sum()


def boltzmann_action_dist(
    state: GridState,
    peer_index: int,
    goal_prey_index: int,
    beta: float,
    config: SimConfig,
) -> np.ndarray:
    """Probability over all six actions for a goal-directed peer.

    Mass is a softmax of -beta times post-move distance over the five
    movement actions; when the peer already stands on the goal the IDLE mass
    moves to HUNT (a goal-directed agent on its goal hunts).
    """
    if beta <= 0:
        raise ValueError("beta must be > 0")
    goal_pos = state.prey_pos[goal_prey_index]
    dists = _post_move_distances(
        state.agent_pos[peer_index], goal_pos, config.grid_height, config.grid_width
    )
    probs5 = softmax_neg_beta(dists, beta)
    out = np.zeros(6, dtype=np.float64)
    out[:5] = probs5
    if dists[0] == 0:  # standing on the goal
        out[int(Action.HUNT)] = out[int(Action.IDLE)]
        out[int(Action.IDLE)] = 0.0
    return out


# ---------------------------------------------------------------------------
# beliefs
# ---------------------------------------------------------------------------


def uniform_belief(n_agents: int, n_prey: int) -> np.ndarray:
    """Per-peer uniform prior over every prey, row j = belief about agent j."""
    return np.full((n_agents, n_prey), 1.0 / n_prey, dtype=np.float64)


def action_likelihoods(
    state: GridState, joint_action: np.ndarray, beta: float, config: SimConfig
) -> np.ndarray:
    """L[j, g] = Pr(observed action of agent j | goal g), for every agent.

    Shared by all observers: the likelihood depends only on the public state
    and the observed joint action.
    """
    n, p = state.n_agents, state.n_prey
    cand = state.agent_pos[:, None, :] + ACTION_DELTAS[None, :5, :]  # (N,5,2)
    off = (
        (cand[..., 0] < 0)
        | (cand[..., 0] >= config.grid_height)
        | (cand[..., 1] < 0)
        | (cand[..., 1] >= config.grid_width)
    )
    cand = np.where(off[..., None], state.agent_pos[:, None, :], cand)
    # (N, 5, P) post-move Manhattan distances
    dists = np.abs(cand[:, :, None, :] - state.prey_pos[None, None, :, :]).sum(axis=3)
    z = -beta * dists.astype(np.float64)
    z -= z.max(axis=1, keepdims=True)
    w = np.exp(z)
    probs = w / w.sum(axis=1, keepdims=True)  # (N, 5, P) move probabilities per goal

    on_goal = dists[:, 0, :] == 0  # (N, P): IDLE move keeps distance 0
    actions = np.asarray(joint_action, dtype=np.int64)
    out = np.empty((n, p), dtype=np.float64)
    for j in range(n):
        a = actions[j]
        if a == int(Action.HUNT):
            like = np.where(on_goal[j], probs[j, 0, :], 0.0)
        elif a == int(Action.IDLE):
            like = np.where(on_goal[j], 0.0, probs[j, 0, :])
        else:
            like = probs[j, a, :]
        out[j] = like
    return out


def apply_likelihoods(
    belief: np.ndarray,
    likelihoods: np.ndarray,
    frozen: np.ndarray,
    alive: np.ndarray,
) -> np.ndarray:
    """Bayes step for every non-frozen peer row, with degenerate-row reset.

    A row whose posterior mass vanishes is reset to uniform over alive prey.
    """
    updated = belief.copy()
    active = ~np.asarray(frozen, dtype=bool)
    updated[active] = belief[active] * likelihoods[active]
    sums = updated.sum(axis=1, keepdims=True)
    dead_rows = (sums[:, 0] <= 0.0) & active
    if np.any(dead_rows):
        n_alive = int(np.count_nonzero(alive))
        if n_alive > 0:
            updated[dead_rows] = np.where(alive, 1.0 / n_alive, 0.0)
            sums = updated.sum(axis=1, keepdims=True)
        else:
            updated[dead_rows] = 1.0 / belief.shape[1]
            sums = updated.sum(axis=1, keepdims=True)
    updated /= sums
    return updated


def update_beliefs(
    belief: np.ndarray,
    prev_state: GridState,
    observed_actions: np.ndarray,
    beta: float,
    config: SimConfig,
) -> np.ndarray:
    """One Bayes update from an observed joint action.

    Peers already done before the step are frozen.  Dead-prey columns stay
    whatever the pruning step made them (zero), since their likelihood entries
    multiply zeros.
    """
    like = action_likelihoods(prev_state, observed_actions, beta, config)
    return apply_likelihoods(
        belief, like, frozen=prev_state.agent_done, alive=prev_state.prey_alive
    )


def prune_dead_prey(belief: np.ndarray, prey_alive: np.ndarray) -> np.ndarray:
    """Zero columns of dead prey and renormalize each row.

    Rows that lose all mass (their every candidate died) reset to uniform
    over alive prey.
    """
    alive = np.asarray(prey_alive, dtype=bool)
    updated = belief * alive[None, :]
    sums = updated.sum(axis=1, keepdims=True)
    n_alive = int(np.count_nonzero(alive))
    if n_alive == 0:
        return np.full_like(belief, 1.0 / belief.shape[1])
    empty = sums[:, 0] <= 0.0
    if np.any(empty):
        updated[empty] = np.where(alive, 1.0 / n_alive, 0.0)
        sums = updated.sum(axis=1, keepdims=True)
    return updated / sums


# ---------------------------------------------------------------------------
# planning rollouts
# ---------------------------------------------------------------------------


_MIX_GOLD = np.uint64(0x9E3779B97F4A7C15)
_MIX_M1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX_M2 = np.uint64(0x94D049BB133111EB)


@njit(cache=True, inline="always")
def _next_uniform(state):
    """One splitmix64 step; returns (u01, new_state). Gives every rollout its
    own counter-based stream so row seeds fully determine the simulation."""
    state = state + _MIX_GOLD
    z = state
    z = (z ^ (z >> np.uint64(30))) * _MIX_M1
    z = (z ^ (z >> np.uint64(27))) * _MIX_M2
    z = z ^ (z >> np.uint64(31))
    return (z >> np.uint64(11)) * (1.0 / 9007199254740992.0), state


@njit(cache=True)
def _rollout_kernel(
    start_pos,  # (N, 2) int64
    start_done,  # (N,) bool
    start_alive,  # (P,) bool
    goals,  # (R, N) int64; column self_index holds the candidate prey
    self_index,  # int
    prey_pos,  # (P, 2) int64
    prey_is_stag,  # (P,) bool
    grid_h,
    grid_w,
    threshold,
    hare_reward,
    stag_reward,
    steps,  # rollout horizon (remaining episode steps)
    discount,
    beta,
    row_seeds,  # (R,) uint64; rows sharing a seed share their noise stream
):
    """Simulate R independent rollouts of the environment; return the
    discounted reward the planning agent collects in each.

    Self follows greedy descent toward its candidate; peers sample moves with
    probability proportional to exp(-beta * post-move distance) toward their
    assigned goal, hunting when on it.  Environment rules (clamped moves,
    threshold hunts, equal stag split, random hare winner, hunt-once freeze)
    match env.step.
    """
    n_rollouts = goals.shape[0]
    n_agents = start_pos.shape[0]
    n_prey = prey_pos.shape[0]
    values = np.zeros(n_rollouts, dtype=np.float64)

    # exp(-beta * k) for distance offsets above the per-agent minimum; the
    # five movement distances span at most [d_min, d_min + 2].
    expw = np.empty(3, dtype=np.float64)
    for k in range(3):
        expw[k] = math.exp(-beta * k)

    pos = np.empty((n_agents, 2), dtype=np.int64)
    done = np.empty(n_agents, dtype=np.bool_)
    alive = np.empty(n_prey, dtype=np.bool_)
    hunting = np.empty(n_agents, dtype=np.bool_)
    hunters_count = np.empty(n_prey, dtype=np.int64)
    move_d = np.empty(5, dtype=np.int64)
    weights = np.empty(5, dtype=np.float64)

    for r in range(n_rollouts):
        rng_state = row_seeds[r]
        for j in range(n_agents):
            pos[j, 0] = start_pos[j, 0]
            pos[j, 1] = start_pos[j, 1]
            done[j] = start_done[j]
        for p in range(n_prey):
            alive[p] = start_alive[p]
        value = 0.0
        disc = 1.0

        for _ in range(steps):
            # choose and apply actions
            for j in range(n_agents):
                hunting[j] = False
                if done[j]:
                    continue
                g = goals[r, j]
                gr = prey_pos[g, 0]
                gc = prey_pos[g, 1]
                row = pos[j, 0]
                col = pos[j, 1]
                d0 = abs(row - gr) + abs(col - gc)
                if j == self_index:
                    if d0 == 0:
                        if alive[g]:
                            hunting[j] = True
                        continue  # on the goal cell: hunt or idle
                    # greedy move, canonical tie-break (idle,left,right,up,down)
                    best_a = 0
                    best_d = d0
                    # left
                    if col - 1 >= 0:
                        d = abs(row - gr) + abs(col - 1 - gc)
                        if d < best_d:
                            best_d = d
                            best_a = 1
                    # right
                    if col + 1 < grid_w:
                        d = abs(row - gr) + abs(col + 1 - gc)
                        if d < best_d:
                            best_d = d
                            best_a = 2
                    # up
                    if row - 1 >= 0:
                        d = abs(row - 1 - gr) + abs(col - gc)
                        if d < best_d:
                            best_d = d
                            best_a = 3
                    # down
                    if row + 1 < grid_h:
                        d = abs(row + 1 - gr) + abs(col - gc)
                        if d < best_d:
                            best_d = d
                            best_a = 4
                    if best_a == 1:
                        pos[j, 1] = col - 1
                    elif best_a == 2:
                        pos[j, 1] = col + 1
                    elif best_a == 3:
                        pos[j, 0] = row - 1
                    elif best_a == 4:
                        pos[j, 0] = row + 1
                else:
                    # Boltzmann move toward the assigned goal
                    move_d[0] = d0
                    move_d[1] = (
                        abs(row - gr) + abs(col - 1 - gc) if col - 1 >= 0 else d0
                    )
                    move_d[2] = (
                        abs(row - gr) + abs(col + 1 - gc) if col + 1 < grid_w else d0
                    )
                    move_d[3] = (
                        abs(row - 1 - gr) + abs(col - gc) if row - 1 >= 0 else d0
                    )
                    move_d[4] = (
                        abs(row + 1 - gr) + abs(col - gc) if row + 1 < grid_h else d0
                    )
                    dmin = move_d[0]
                    for a in range(1, 5):
                        if move_d[a] < dmin:
                            dmin = move_d[a]
                    total = 0.0
                    for a in range(5):
                        off = move_d[a] - dmin
                        w = expw[off] if off < 3 else math.exp(-beta * off)
                        weights[a] = w
                        total += w
                    u, rng_state = _next_uniform(rng_state)
                    u *= total
                    acc = 0.0
                    chosen = 4
                    for a in range(5):
                        acc += weights[a]
                        if u < acc:
                            chosen = a
                            break
                    if chosen == 0:
                        if d0 == 0:  # idle mass becomes hunt on the goal
                            hunting[j] = True
                    elif chosen == 1:
                        if col - 1 >= 0:
                            pos[j, 1] = col - 1
                    elif chosen == 2:
                        if col + 1 < grid_w:
                            pos[j, 1] = col + 1
                    elif chosen == 3:
                        if row - 1 >= 0:
                            pos[j, 0] = row - 1
                    elif chosen == 4:
                        if row + 1 < grid_h:
                            pos[j, 0] = row + 1

            # resolve hunts: each hunter stands on its own goal by construction
            for p in range(n_prey):
                hunters_count[p] = 0
            any_hunt = False
            for j in range(n_agents):
                if hunting[j]:
                    g = goals[r, j]
                    if alive[g]:
                        hunters_count[g] += 1
                        any_hunt = True
            if any_hunt:
                for p in range(n_prey):
                    cnt = hunters_count[p]
                    if cnt == 0 or not alive[p]:
                        continue
                    if prey_is_stag[p]:
                        if cnt >= threshold:
                            share = stag_reward / cnt
                            alive[p] = False
                            for j in range(n_agents):
                                if hunting[j] and goals[r, j] == p:
                                    done[j] = True
                                    if j == self_index:
                                        value += disc * share
                    else:
                        u, rng_state = _next_uniform(rng_state)
                        pick = int(u * cnt)
                        if pick >= cnt:
                            pick = cnt - 1
                        idx = 0
                        for j in range(n_agents):
                            if hunting[j] and goals[r, j] == p:
                                if idx == pick:
                                    done[j] = True
                                    alive[p] = False
                                    if j == self_index:
                                        value += disc * hare_reward
                                    break
                                idx += 1
            if done[self_index]:
                break  # the planner can earn at most one reward
            disc *= discount
        values[r] = value
    return values


def rollout_value(
    state: GridState,
    agent_index: int,
    own_goal: int,
    peer_goals: np.ndarray,
    config: SimConfig,
    discount: float,
    rng: np.random.Generator,
    beta: float = 10.0,
) -> float:
    """Discounted reward the agent collects in one simulated continuation.

    Self descends greedily toward `own_goal`; each peer j moves Boltzmann
    toward peer_goals[j].
    """
    goals = np.asarray(peer_goals, dtype=np.int64).copy().reshape(1, -1)
    goals[0, agent_index] = own_goal
    steps = config.horizon - state.t
    if steps <= 0:
        return 0.0
    row_seeds = np.array([rng.integers(0, 2**63)], dtype=np.uint64)
    values = _rollout_kernel(
        state.agent_pos,
        state.agent_done,
        state.prey_alive,
        goals,
        agent_index,
        state.prey_pos,
        state.prey_is_stag,
        config.grid_height,
        config.grid_width,
        config.threshold,
        config.hare_reward,
        config.stag_reward,
        steps,
        discount,
        beta,
        row_seeds,
    )
    return float(values[0])


def sample_peer_goals(
    belief: np.ndarray, n_samples: int, rng: np.random.Generator
) -> np.ndarray:
    """Draw (n_samples, N) goal assignments from the per-peer posteriors.

    Per-peer stratified uniforms (one draw per 1/n_samples stratum, strata
    order shuffled independently per peer): each single sample is distributed
    exactly per the posterior product, while the sample-count of any goal
    across the K draws concentrates at K * p(goal), which keeps the Monte
    Carlo argmax from flapping between near-tied candidates.
    """
    k, n = n_samples, belief.shape[0]
    cdf = np.cumsum(belief, axis=1)
    cdf[:, -1] = 1.0  # kill normalization drift at the top bin
    strata = rng.permuted(np.tile(np.arange(k), (n, 1)), axis=1).T
    u = (strata + rng.random((k, n))) / k
    return (u[:, :, None] > cdf[None, :, :]).sum(axis=2).astype(np.int64)


def rational_action(
    state: GridState,
    agent_index: int,
    belief: np.ndarray,
    config: SimConfig,
    params: RationalParams,
    rng: np.random.Generator,
) -> tuple:
    """Plan via K Monte Carlo continuations per candidate prey.

    Samples K joint peer-goal assignments from the belief, evaluates every
    alive prey as own goal under each, and commits to the candidate with the
    highest mean value (ties to the lowest prey index).  Returns
    (action, chosen_prey).
    """
    candidates = np.flatnonzero(state.prey_alive).astype(np.int64)
    if candidates.size == 0:
        raise NoAlivePrey("no alive prey to plan toward")
    k = params.n_samples
    c = candidates.size
    peer_samples = sample_peer_goals(belief, k, rng)  # (K, N)
    goals = np.repeat(peer_samples, c, axis=0)  # (K*C, N)
    goals[:, agent_index] = np.tile(candidates, k)
    steps = config.horizon - state.t
    if steps <= 0:
        chosen = int(candidates[0])
        return willed_action(state, agent_index, np.array([chosen]), config), chosen
    # Common random numbers across candidates: rows of the same sample k
    # share a noise stream, so candidate values differ only through the goal.
    sample_seeds = rng.integers(0, 2**63, size=k).astype(np.uint64)
    row_seeds = np.repeat(sample_seeds, c)
    values = _rollout_kernel(
        state.agent_pos,
        state.agent_done,
        state.prey_alive,
        goals,
        agent_index,
        state.prey_pos,
        state.prey_is_stag,
        config.grid_height,
        config.grid_width,
        config.threshold,
        config.hare_reward,
        config.stag_reward,
        steps,
        params.discount,
        params.beta,
        row_seeds,
    )
    means = values.reshape(k, c).mean(axis=0)
    chosen = int(candidates[int(means.argmax())])  # first max = lowest prey index
    action = willed_action(state, agent_index, np.array([chosen]), config)
    return action, chosen


# ---------------------------------------------------------------------------
# per-agent controllers
# ---------------------------------------------------------------------------


def kind_targets(state: GridState, kind: PreyKind) -> np.ndarray:
    """Indices of alive prey of one kind."""
    if kind == PreyKind.STAG:
        mask = state.prey_is_stag & state.prey_alive
    else:
        mask = ~state.prey_is_stag & state.prey_alive
    return np.flatnonzero(mask).astype(np.int64)


@dataclass
class WillClock:
    """Fixed-duration commitment window: willed for steps t < committed_steps."""

    committed_steps: int
    target_kind: PreyKind | None

    @staticmethod
    def from_strength(will_strength: float, horizon: int) -> "WillClock":
        steps = math.ceil(abs(will_strength) * horizon)
        if will_strength > 0:
            kind = PreyKind.STAG
        elif will_strength < 0:
            kind = PreyKind.HARE
        else:
            kind = None
        return WillClock(committed_steps=steps, target_kind=kind)


class AgentController:
    """Episode-scoped decision state for one agent.

    The harness calls `act` once per step (on the pre-step state) and
    `observe` once per step after the environment transition, threading the
    same episode rng through both in agent order.
    """

    def __init__(self, spec: AgentSpec, index: int, config: SimConfig):
        self.spec = spec
        self.index = index
        self.config = config
        self.needs_beliefs = spec.mode in (MODE_RATIONAL, MODE_HYBRID, MODE_ENDOGENOUS)
        self.belief = (
            uniform_belief(config.n_agents, config.n_prey)
            if self.needs_beliefs
            else None
        )
        if spec.mode == MODE_HYBRID:
            self.will_clock = WillClock.from_strength(
                spec.will_strength, config.horizon
            )
        else:
            self.will_clock = None
        self.locked_goal: int | None = None
        self.last_goal: int | None = None
        self.plan_steps: list = []  # steps at which the planner actually ran

    # -- scheduling ---------------------------------------------------------

    def _endo_should_plan(self, t: int) -> bool:
        strat = self.spec.strategy
        if strat.variant == PURE_RATIONAL:
            return True
        if strat.variant == INSTANT:
            return t == 0
        if strat.variant == INTERMITTENT:
            period = max(1, round(1.0 / strat.ratio))
            return t % period == 0
        # phased: plan through the initial window, then stay locked
        return t < math.ceil(strat.ratio * self.config.horizon)

    # -- acting -------------------------------------------------------------

    def _willed(self, state: GridState, kind: PreyKind) -> Action | None:
        targets = kind_targets(state, kind)
        if targets.size == 0:
            return None
        return willed_action(state, self.index, targets, self.config)

    def _rational(self, state: GridState, rng: np.random.Generator) -> Action:
        try:
            action, goal = rational_action(
                state, self.index, self.belief, self.config,
                self.spec.rational_params, rng,
            )
        except NoAlivePrey:
            self.last_goal = None
            return Action.IDLE
        self.last_goal = goal
        return action

    def act(self, state: GridState, t: int, rng: np.random.Generator) -> Action:
        spec = self.spec
        self.last_goal = None
        if spec.mode == MODE_WILLED:
            action = self._willed(state, spec.target_kind)
            # A rigidly committed agent whose kind is extinct idles out the episode.
            return Action.IDLE if action is None else action
        if spec.mode == MODE_RATIONAL:
            self.plan_steps.append(t)
            return self._rational(state, rng)
        if spec.mode == MODE_HYBRID:
            clock = self.will_clock
            if t < clock.committed_steps and clock.target_kind is not None:
                action = self._willed(state, clock.target_kind)
                if action is not None:
                    return action
                # committed kind extinct: fall through to planning immediately
            self.plan_steps.append(t)
            return self._rational(state, rng)
        # endogenous
        if self._endo_should_plan(t):
            self.plan_steps.append(t)
            action = self._rational(state, rng)
            self.locked_goal = self.last_goal
            return action
        if self.locked_goal is None:
            return Action.IDLE
        self.last_goal = self.locked_goal
        return willed_action(
            state, self.index, np.array([self.locked_goal]), self.config
        )

    # -- observing ----------------------------------------------------------

    def observe(
        self,
        prev_state: GridState,
        likelihoods: np.ndarray,
        new_prey_alive: np.ndarray,
    ) -> None:
        """Fold one observed joint action into the belief state."""
        if not self.needs_beliefs:
            return
        self.belief = apply_likelihoods(
            self.belief,
            likelihoods,
            frozen=prev_state.agent_done,
            alive=prev_state.prey_alive,
        )
        if not np.array_equal(new_prey_alive, prev_state.prey_alive):
            self.belief = prune_dead_prey(self.belief, new_prey_alive)


def act(
    spec: AgentSpec,
    t: int,
    state: GridState,
    controller: AgentController,
    rng: np.random.Generator,
) -> Action:
    """Functional dispatch entry point; state is threaded via the controller."""
    assert controller.spec is spec
    return controller.act(state, t, rng)
