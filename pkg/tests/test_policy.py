import math

import numpy as np
import pytest

from willsim.core import (
    Action,
    AgentSpec,
    PreyKind,
    RationalParams,
    SimConfig,
    make_rng,
)
from willsim.env import GridState, step
from willsim.policy import (
    AgentController,
    EmptyTargetSet,
    NoAlivePrey,
    action_likelihoods,
    boltzmann_action_dist,
    kind_targets,
    potential,
    prune_dead_prey,
    rational_action,
    rollout_value,
    sample_peer_goals,
    softmax_neg_beta,
    uniform_belief,
    update_beliefs,
    willed_action,
)
from test_env import make_state


# ---------------------------------------------------------------------------
# potential and descent
# ---------------------------------------------------------------------------


def test_potential_examples():
    cfg = SimConfig(n_agents=1, n_stags=0, n_hares=2, threshold=1)
    state = make_state([[3, 3]], [[3, 3], [9, 9]], [False, False])
    assert potential(state, 0, np.array([0])) == 0
    state = make_state([[0, 0]], [[2, 1], [0, 4]], [False, False])
    assert potential(state, 0, np.array([0])) == 3
    assert potential(state, 0, np.array([0, 1])) == 3  # min(3, 4)


def test_potential_brute_force_oracle():
    rng = make_rng(17)
    for _ in range(300):
        n_prey = int(rng.integers(1, 6))
        state = make_state(
            [[int(rng.integers(0, 15)), int(rng.integers(0, 15))]],
            rng.integers(0, 15, size=(n_prey, 2)),
            [False] * n_prey,
        )
        targets = rng.choice(n_prey, size=int(rng.integers(1, n_prey + 1)), replace=False)
        expected = min(
            abs(int(state.agent_pos[0, 0]) - int(state.prey_pos[t, 0]))
            + abs(int(state.agent_pos[0, 1]) - int(state.prey_pos[t, 1]))
            for t in targets
        )
        assert potential(state, 0, targets) == expected


def test_potential_empty_targets():
    state = make_state([[0, 0]], [[1, 1]], [False])
    with pytest.raises(EmptyTargetSet):
        potential(state, 0, np.array([], dtype=np.int64))


def _oracle_willed_action(state, agent_index, targets, cfg):
    """Independent enumeration over the six actions with canonical ties."""
    pos = state.agent_pos[agent_index]
    target_pos = state.prey_pos[targets]
    dist_from = lambda r, c: min(abs(r - tr) + abs(c - tc) for tr, tc in target_pos)
    d0 = dist_from(*pos)
    if d0 == 0:
        on_cell = [t for t in targets if tuple(state.prey_pos[t]) == tuple(pos)]
        if on_cell and state.prey_alive[on_cell[0]]:
            return Action.HUNT
    deltas = {
        Action.IDLE: (0, 0),
        Action.LEFT: (0, -1),
        Action.RIGHT: (0, 1),
        Action.UP: (-1, 0),
        Action.DOWN: (1, 0),
    }
    best, best_d = None, None
    for action in (Action.IDLE, Action.LEFT, Action.RIGHT, Action.UP, Action.DOWN):
        dr, dc = deltas[action]
        r, c = int(pos[0]) + dr, int(pos[1]) + dc
        if not (0 <= r < cfg.grid_height and 0 <= c < cfg.grid_width):
            r, c = int(pos[0]), int(pos[1])
        d = dist_from(r, c)
        if best_d is None or d < best_d:
            best, best_d = action, d
    return best


def test_willed_action_examples():
    cfg = SimConfig(n_agents=1, n_stags=0, n_hares=2, threshold=1)
    on_target = make_state([[3, 3]], [[3, 3], [9, 9]], [False, False])
    assert willed_action(on_target, 0, np.array([0]), cfg) == Action.HUNT

    tie = make_state([[0, 0]], [[2, 1], [9, 9]], [False, False])
    assert willed_action(tie, 0, np.array([0]), cfg) == Action.RIGHT

    unique = make_state([[5, 5]], [[5, 9], [0, 0]], [False, False])
    assert willed_action(unique, 0, np.array([0]), cfg) == Action.RIGHT


def test_willed_action_dead_target_idles_in_place():
    cfg = SimConfig(n_agents=1, n_stags=0, n_hares=1, threshold=1)
    state = make_state([[3, 3]], [[3, 3]], [False], alive=[False])
    assert willed_action(state, 0, np.array([0]), cfg) == Action.IDLE


def test_willed_action_enumeration_oracle():
    rng = make_rng(23)
    cfg = SimConfig(n_agents=1, n_stags=0, n_hares=4, grid_height=8, grid_width=8, threshold=1)
    for _ in range(400):
        prey = rng.integers(0, 8, size=(4, 2))
        # force distinct prey cells
        if len({tuple(p) for p in prey.tolist()}) < 4:
            continue
        alive = rng.random(4) < 0.8
        state = make_state(
            [[int(rng.integers(0, 8)), int(rng.integers(0, 8))]],
            prey,
            [False] * 4,
            alive=alive,
        )
        targets = np.array(sorted(rng.choice(4, size=int(rng.integers(1, 5)), replace=False)))
        got = willed_action(state, 0, targets, cfg)
        want = _oracle_willed_action(state, 0, targets, cfg)
        assert got == want


def test_potential_descent_property():
    # A willed agent alone with static alive targets never increases its
    # potential, and strictly decreases it unless hunting or already at 0.
    rng = make_rng(31)
    cfg = SimConfig(n_agents=1, n_stags=0, n_hares=3, grid_height=9, grid_width=9, threshold=1, horizon=30)
    for _ in range(50):
        prey = rng.integers(0, 9, size=(3, 2))
        if len({tuple(p) for p in prey.tolist()}) < 3:
            continue
        state = make_state(
            [[int(rng.integers(0, 9)), int(rng.integers(0, 9))]], prey, [False] * 3
        )
        targets = np.arange(3)
        d = potential(state, 0, targets)
        for _ in range(15):
            action = willed_action(state, 0, targets, cfg)
            if action == Action.HUNT:
                break
            state, _ = step(state, np.array([int(action)]), cfg, rng)
            d_next = potential(state, 0, targets)
            if d > 0:
                assert d_next == d - 1  # deterministic own-moves descend strictly
            else:
                assert d_next == 0
            d = d_next


# ---------------------------------------------------------------------------
# Boltzmann action model
# ---------------------------------------------------------------------------


def test_boltzmann_near_uniform_at_tiny_beta():
    cfg = SimConfig(n_agents=1, n_stags=0, n_hares=1, threshold=1)
    state = make_state([[5, 5]], [[9, 9]], [False])
    probs = boltzmann_action_dist(state, 0, 0, beta=1e-9, config=cfg)
    assert probs[int(Action.HUNT)] == 0.0
    assert probs[:5] == pytest.approx([0.2] * 5, abs=1e-6)
    assert probs.sum() == pytest.approx(1.0, abs=1e-12)


def test_boltzmann_hand_softmax_oracle():
    cfg = SimConfig(n_agents=1, n_stags=0, n_hares=1, threshold=1)
    state = make_state([[2, 2]], [[0, 2]], [False])
    probs = boltzmann_action_dist(state, 0, 0, beta=10.0, config=cfg)
    dists = np.array([2, 3, 3, 1, 3], dtype=float)  # idle,left,right,up,down
    weights = np.exp(-10.0 * dists)
    expected = weights / weights.sum()
    assert probs[:5] == pytest.approx(expected, rel=1e-12)
    assert probs[int(Action.UP)] > 0.9999


def test_boltzmann_on_goal_hunts():
    cfg = SimConfig(n_agents=1, n_stags=0, n_hares=1, threshold=1)
    state = make_state([[4, 4]], [[4, 4]], [False])
    probs = boltzmann_action_dist(state, 0, 0, beta=10.0, config=cfg)
    # Softmax oracle: distances [0,1,1,1,1], the idle mass moves to hunt.
    expected_hunt = 1.0 / (1.0 + 4.0 * math.exp(-10.0))
    assert probs[int(Action.HUNT)] == pytest.approx(expected_hunt, rel=1e-12)
    assert probs[int(Action.HUNT)] > 0.999
    assert probs[int(Action.IDLE)] == 0.0
    assert probs.sum() == pytest.approx(1.0, abs=1e-12)


def test_softmax_shift_invariance():
    d = np.array([3.0, 1.0, 4.0, 1.0, 5.0])
    for c in (-2.0, 0.5, 10.0):
        assert softmax_neg_beta(d, 7.0) == pytest.approx(softmax_neg_beta(d + c, 7.0), rel=1e-12)


# ---------------------------------------------------------------------------
# beliefs
# ---------------------------------------------------------------------------


def test_belief_unchanged_under_uninformative_idle():
    cfg = SimConfig(n_agents=1, n_stags=0, n_hares=2, grid_height=5, grid_width=5, threshold=1)
    state = make_state([[0, 0]], [[1, 0], [0, 1]], [False, False])
    belief = uniform_belief(1, 2)
    updated = update_beliefs(belief, state, np.array([int(Action.IDLE)]), 10.0, cfg)
    assert updated[0] == pytest.approx([0.5, 0.5], abs=1e-12)


def test_belief_two_goal_bayes_oracle():
    cfg = SimConfig(n_agents=1, n_stags=0, n_hares=2, threshold=1)
    state = make_state([[2, 2]], [[0, 2], [2, 0]], [False, False])
    belief = uniform_belief(1, 2)
    updated = update_beliefs(belief, state, np.array([int(Action.UP)]), 10.0, cfg)

    def likelihood_up(goal):
        dists = []
        for dr, dc in [(0, 0), (0, -1), (0, 1), (-1, 0), (1, 0)]:
            r, c = 2 + dr, 2 + dc
            dists.append(abs(r - goal[0]) + abs(c - goal[1]))
        w = np.exp(-10.0 * np.array(dists, dtype=float))
        return (w / w.sum())[3]

    la, lb = likelihood_up((0, 2)), likelihood_up((2, 0))
    expected_a = 0.5 * la / (0.5 * la + 0.5 * lb)
    assert updated[0, 0] == pytest.approx(expected_a, abs=1e-9)
    assert updated[0, 0] > 0.999
    assert la / lb == pytest.approx(math.exp(20.0), rel=1e-6)


def test_belief_monotone_under_consistent_evidence():
    cfg = SimConfig(n_agents=1, n_stags=0, n_hares=2, threshold=1)
    state = make_state([[10, 2]], [[0, 2], [10, 19]], [False, False])
    belief = uniform_belief(1, 2)
    last = belief[0, 0]
    for _ in range(4):
        belief = update_beliefs(belief, state, np.array([int(Action.UP)]), 2.0, cfg)
        assert belief[0, 0] > last
        last = belief[0, 0]
    assert last > 0.99 or last > belief[0, 1]


def test_belief_rows_stay_normalized():
    cfg = SimConfig(n_agents=3, n_stags=1, n_hares=3, threshold=1)
    rng = make_rng(5)
    state = make_state(
        rng.integers(0, 20, size=(3, 2)),
        [[0, 0], [5, 5], [10, 10], [15, 15]],
        [True, False, False, False],
    )
    belief = uniform_belief(3, 4)
    for _ in range(40):
        actions = rng.integers(0, 5, size=3)
        belief = update_beliefs(belief, state, actions, 3.0, cfg)
        assert belief.sum(axis=1) == pytest.approx([1.0] * 3, abs=1e-9)
        assert (belief >= 0).all()


def test_belief_hunt_concentrates_on_occupied_prey():
    cfg = SimConfig(n_agents=1, n_stags=0, n_hares=2, threshold=1)
    state = make_state([[5, 5]], [[5, 5], [9, 9]], [False, False])
    belief = uniform_belief(1, 2)
    updated = update_beliefs(belief, state, np.array([int(Action.HUNT)]), 10.0, cfg)
    assert updated[0, 0] == pytest.approx(1.0, abs=1e-12)


def test_belief_done_peers_freeze():
    cfg = SimConfig(n_agents=2, n_stags=0, n_hares=2, threshold=1)
    state = make_state(
        [[2, 2], [7, 7]], [[0, 2], [9, 9]], [False, False], done=[True, False]
    )
    belief = uniform_belief(2, 2)
    updated = update_beliefs(belief, state, np.array([int(Action.UP)] * 2), 10.0, cfg)
    assert updated[0] == pytest.approx([0.5, 0.5], abs=1e-12)
    # Moving up from (7,7) approaches prey A at (0,2) and recedes from B at (9,9).
    assert updated[1, 0] > 0.9


def test_prune_dead_prey_zeros_and_renormalizes():
    belief = np.array([[0.25, 0.25, 0.5], [0.9, 0.05, 0.05]])
    pruned = prune_dead_prey(belief, np.array([True, False, True]))
    assert pruned[0] == pytest.approx([1 / 3, 0.0, 2 / 3], abs=1e-12)
    assert pruned[1] == pytest.approx([18 / 19, 0.0, 1 / 19], abs=1e-12)
    # A row whose whole support died resets to uniform over alive prey.
    only_b = np.array([[0.0, 1.0, 0.0]])
    assert prune_dead_prey(only_b, np.array([True, False, True]))[0] == pytest.approx(
        [0.5, 0.0, 0.5]
    )


def test_sample_peer_goals_respects_zero_mass():
    belief = np.array([[0.0, 0.7, 0.3], [1.0, 0.0, 0.0]])
    draws = sample_peer_goals(belief, 500, make_rng(2))
    assert draws.shape == (500, 2)
    assert (draws[:, 0] != 0).all()
    assert (draws[:, 1] == 0).all()


# ---------------------------------------------------------------------------
# rollouts
# ---------------------------------------------------------------------------


def test_rollout_adjacent_hare_exact_value():
    cfg = SimConfig(n_agents=1, n_stags=0, n_hares=1, threshold=1, horizon=10)
    state = make_state([[4, 3]], [[4, 4]], [False])
    value = rollout_value(state, 0, 0, np.array([0]), cfg, discount=0.98, rng=make_rng(0))
    assert value == pytest.approx(0.98, abs=1e-12)


def test_rollout_on_prey_now_pays_undiscounted():
    cfg = SimConfig(n_agents=1, n_stags=0, n_hares=1, threshold=1, horizon=10)
    state = make_state([[4, 4]], [[4, 4]], [False])
    value = rollout_value(state, 0, 0, np.array([0]), cfg, discount=0.98, rng=make_rng(0))
    assert value == pytest.approx(1.0, abs=1e-12)


def test_rollout_dead_goal_is_worthless():
    cfg = SimConfig(n_agents=1, n_stags=0, n_hares=1, threshold=1, horizon=10)
    state = make_state([[4, 3]], [[4, 4]], [False], alive=[False])
    value = rollout_value(state, 0, 0, np.array([0]), cfg, discount=0.98, rng=make_rng(0))
    assert value == 0.0


def test_rollout_paired_stag_capture():
    cfg = SimConfig(n_agents=2, n_stags=1, n_hares=0, threshold=2, stag_share=5.0, horizon=12)
    state = make_state([[4, 3], [4, 5]], [[4, 4]], [True])
    rng = make_rng(77)
    values = [
        rollout_value(state, 0, 0, np.array([0, 0]), cfg, discount=0.98, rng=rng)
        for _ in range(2000)
    ]
    # Both arrive after one move and hunt together at step 1: share is
    # (theta * stag_share) / 2 discounted once; peer noise is ~1e-4.
    assert np.mean(values) == pytest.approx(0.98 * 5.0, rel=2e-3)


def test_rollout_horizon_boundary():
    cfg = SimConfig(n_agents=1, n_stags=0, n_hares=1, threshold=1, horizon=3)
    far = make_state([[0, 0]], [[0, 9]], [False])  # 9 > 3 steps away
    assert rollout_value(far, 0, 0, np.array([0]), cfg, 0.98, make_rng(0)) == 0.0
    # Distance 3 needs 3 moves plus a hunt step: value gamma^3 with 4 steps
    # remaining, 0 with only 3.
    exact = make_state([[0, 0]], [[0, 3]], [False], t=0)
    assert rollout_value(exact, 0, 0, np.array([0]), cfg, 0.98, make_rng(0)) == 0.0
    cfg4 = SimConfig(n_agents=1, n_stags=0, n_hares=1, threshold=1, horizon=4)
    assert rollout_value(exact, 0, 0, np.array([0]), cfg4, 0.98, make_rng(0)) == pytest.approx(
        0.98**3
    )


def test_rollout_matches_deterministic_env_simulation():
    # With near-infinite beta and tie-free geometry the rollout must equal a
    # step-by-step environment simulation with greedy agents.
    cfg = SimConfig(
        n_agents=2, n_stags=1, n_hares=1, threshold=2, stag_share=5.0,
        grid_height=12, grid_width=12, horizon=12,
    )
    state = make_state([[3, 0], [3, 9]], [[3, 4], [11, 11]], [True, False])
    goals = np.array([0, 0])
    value = rollout_value(state, 0, 0, goals, cfg, discount=0.98, rng=make_rng(1), beta=50.0)

    sim = state.copy()
    env_rng = make_rng(99)
    total, disc = 0.0, 1.0
    for _ in range(cfg.horizon):
        actions = []
        for j in range(2):
            if sim.agent_done[j]:
                actions.append(int(Action.IDLE))
            else:
                actions.append(int(willed_action(sim, j, np.array([goals[j]]), cfg)))
        sim, out = step(sim, np.array(actions), cfg, env_rng)
        total += disc * out.rewards[0]
        if sim.agent_done[0]:
            break
        disc *= 0.98
    assert value == pytest.approx(total, abs=1e-12)
    # Independent hand trace: both reach the stag after 4 and 5 moves, hunt
    # together at step 5, split 10 evenly.
    assert value == pytest.approx(0.98**5 * 5.0, abs=1e-12)


# ---------------------------------------------------------------------------
# planning
# ---------------------------------------------------------------------------


def test_rational_action_single_candidate():
    cfg = SimConfig(n_agents=1, n_stags=0, n_hares=1, threshold=1, horizon=10)
    state = make_state([[4, 0]], [[4, 4]], [False])
    action, goal = rational_action(
        state, 0, uniform_belief(1, 1), cfg, RationalParams(), make_rng(3)
    )
    assert goal == 0
    assert action == Action.RIGHT


def test_rational_action_prefers_reachable_hare_over_risky_stag():
    cfg = SimConfig(
        n_agents=5, n_stags=1, n_hares=1, threshold=5, stag_share=5.0, horizon=20
    )
    agents = [[0, 0], [19, 19], [19, 18], [18, 19], [18, 18]]
    state = make_state(agents, [[12, 12], [0, 3]], [True, False])
    for seed in range(5):
        action, goal = rational_action(
            state, 0, uniform_belief(5, 2), cfg, RationalParams(), make_rng(seed)
        )
        assert goal == 1  # the hare
        assert action == Action.RIGHT


def test_rational_action_matches_single_rollout_when_deterministic():
    # All peers done: rollouts are deterministic, so the argmax over mean
    # values equals the argmax over one rollout per candidate.
    cfg = SimConfig(n_agents=3, n_stags=0, n_hares=3, threshold=1, horizon=15)
    state = make_state(
        [[0, 0], [9, 9], [9, 0]],
        [[0, 5], [3, 0], [9, 19]],
        [False] * 3,
        done=[False, True, True],
    )
    belief = uniform_belief(3, 3)
    _, goal = rational_action(state, 0, belief, cfg, RationalParams(), make_rng(11))
    singles = [
        rollout_value(state, 0, g, np.array([0, 0, 0]), cfg, 0.98, make_rng(50 + g))
        for g in range(3)
    ]
    assert goal == int(np.argmax(singles))
    assert goal == 1  # the closest hare


def test_rational_argmax_invariant_under_reward_rescaling():
    cfg = SimConfig(n_agents=4, n_stags=1, n_hares=2, threshold=2, horizon=15)
    rng = make_rng(8)
    state = make_state(
        rng.integers(0, 20, size=(4, 2)),
        [[4, 4], [10, 2], [2, 16]],
        [True, False, False],
    )
    belief = uniform_belief(4, 3)
    _, goal_base = rational_action(state, 0, belief, cfg, RationalParams(), make_rng(42))
    scaled = SimConfig(**{**cfg.__dict__, "hare_reward": 3.0, "stag_share": 15.0})
    _, goal_scaled = rational_action(state, 0, belief, scaled, RationalParams(), make_rng(42))
    assert goal_base == goal_scaled


def test_rational_action_no_alive_prey():
    cfg = SimConfig(n_agents=1, n_stags=0, n_hares=1, threshold=1, horizon=5)
    state = make_state([[0, 0]], [[4, 4]], [False], alive=[False])
    with pytest.raises(NoAlivePrey):
        rational_action(state, 0, uniform_belief(1, 1), cfg, RationalParams(), make_rng(0))


# ---------------------------------------------------------------------------
# controllers
# ---------------------------------------------------------------------------


def _drive(controller, state, cfg, steps, rng):
    actions = []
    for t in range(steps):
        if state.agent_done[controller.index]:
            break
        a = controller.act(state, t, rng)
        actions.append(a)
        joint = np.full(cfg.n_agents, int(Action.IDLE), dtype=np.int64)
        joint[controller.index] = int(a)
        state, _ = step(state, joint, cfg, rng)
    return actions, state


def test_hybrid_full_strength_is_pure_descent():
    cfg = SimConfig(n_agents=1, n_stags=1, n_hares=1, threshold=1, horizon=10)
    state = make_state([[0, 0]], [[0, 15], [15, 0]], [True, False])
    ctl = AgentController(AgentSpec.hybrid(1.0), 0, cfg)
    actions, _ = _drive(ctl, state, cfg, 10, make_rng(0))
    assert all(a == Action.RIGHT for a in actions)  # straight toward the stag
    assert ctl.plan_steps == []


def test_hybrid_negative_strength_targets_hares():
    cfg = SimConfig(n_agents=1, n_stags=1, n_hares=1, threshold=1, horizon=10)
    state = make_state([[0, 0]], [[0, 15], [15, 0]], [True, False])
    ctl = AgentController(AgentSpec.hybrid(-1.0), 0, cfg)
    actions, _ = _drive(ctl, state, cfg, 10, make_rng(0))
    assert all(a == Action.DOWN for a in actions)  # straight toward the hare


def test_hybrid_window_is_ceil_of_alpha_times_horizon():
    cfg = SimConfig(n_agents=1, n_stags=1, n_hares=1, threshold=1, horizon=10)
    ctl = AgentController(AgentSpec.hybrid(0.05), 0, cfg)
    assert ctl.will_clock.committed_steps == 1  # ceil(0.5)
    ctl = AgentController(AgentSpec.hybrid(-0.31), 0, cfg)
    assert ctl.will_clock.committed_steps == 4  # ceil(3.1)
    assert ctl.will_clock.target_kind == PreyKind.HARE


def test_hybrid_zero_equals_rational_trajectory():
    cfg = SimConfig(n_agents=1, n_stags=1, n_hares=2, threshold=1, horizon=8)
    state = make_state([[5, 5]], [[0, 0], [5, 9], [9, 5]], [True, False, False])
    a1, _ = _drive(AgentController(AgentSpec.hybrid(0.0), 0, cfg), state.copy(), cfg, 8, make_rng(4))
    a2, _ = _drive(AgentController(AgentSpec.rational(), 0, cfg), state.copy(), cfg, 8, make_rng(4))
    assert a1 == a2


def test_pure_willed_idles_when_kind_extinct():
    cfg = SimConfig(n_agents=1, n_stags=1, n_hares=1, threshold=1, horizon=5)
    state = make_state([[0, 0]], [[3, 3], [5, 5]], [True, False], alive=[False, True])
    ctl = AgentController(AgentSpec.willed(PreyKind.STAG), 0, cfg)
    assert ctl.act(state, 0, make_rng(0)) == Action.IDLE


def test_hybrid_falls_back_to_planning_when_kind_extinct():
    cfg = SimConfig(n_agents=1, n_stags=1, n_hares=1, threshold=1, horizon=5)
    state = make_state([[5, 4]], [[3, 3], [5, 5]], [True, False], alive=[False, True])
    ctl = AgentController(AgentSpec.hybrid(1.0), 0, cfg)
    action = ctl.act(state, 0, make_rng(0))
    assert action == Action.RIGHT  # planned toward the hare
    assert ctl.plan_steps == [0]


def test_intermittent_schedule():
    cfg = SimConfig(n_agents=1, n_stags=0, n_hares=1, grid_height=30, grid_width=30, threshold=1, horizon=10)
    state = make_state([[0, 0]], [[29, 29]], [False])  # unreachable in 10 steps
    ctl = AgentController(AgentSpec.endogenous("intermittent", 0.5), 0, cfg)
    _drive(ctl, state, cfg, 10, make_rng(0))
    assert ctl.plan_steps == [0, 2, 4, 6, 8]


def test_phased_schedule():
    cfg = SimConfig(n_agents=1, n_stags=0, n_hares=1, grid_height=30, grid_width=30, threshold=1, horizon=10)
    state = make_state([[0, 0]], [[29, 29]], [False])
    ctl = AgentController(AgentSpec.endogenous("phased", 0.2), 0, cfg)
    _drive(ctl, state, cfg, 10, make_rng(0))
    assert ctl.plan_steps == [0, 1]


def test_instant_plans_once_and_commits():
    cfg = SimConfig(n_agents=1, n_stags=0, n_hares=1, grid_height=30, grid_width=30, threshold=1, horizon=10)
    state = make_state([[0, 0]], [[29, 29]], [False])
    ctl = AgentController(AgentSpec.endogenous("instant"), 0, cfg)
    actions, _ = _drive(ctl, state, cfg, 10, make_rng(0))
    assert ctl.plan_steps == [0]
    assert ctl.locked_goal == 0
    assert len(actions) == 10


def test_kind_targets():
    state = make_state(
        [[0, 0]], [[1, 1], [2, 2], [3, 3]], [True, False, False], alive=[True, True, False]
    )
    assert kind_targets(state, PreyKind.STAG).tolist() == [0]
    assert kind_targets(state, PreyKind.HARE).tolist() == [1]


def test_action_likelihoods_match_pointwise_model():
    cfg = SimConfig(n_agents=3, n_stags=1, n_hares=2, threshold=1)
    rng = make_rng(12)
    state = make_state(
        rng.integers(0, 20, size=(3, 2)),
        [[4, 4], [10, 2], [2, 16]],
        [True, False, False],
    )
    actions = np.array([int(Action.UP), int(Action.HUNT), int(Action.IDLE)])
    like = action_likelihoods(state, actions, 10.0, cfg)
    for j in range(3):
        for g in range(3):
            probs = boltzmann_action_dist(state, j, g, 10.0, cfg)
            assert like[j, g] == pytest.approx(probs[actions[j]], rel=1e-12, abs=1e-300)
