"""Infinite-population analysis of committed fractions in matrix games.

The population state x in [0, 1] is the share pursuing the cooperative
target.  Fractions n1 (committed cooperators) and n2 (committed defectors)
never switch, confining x to the feasible interval [n1, 1 - n2]; the rational
remainder m = 1 - n1 - n2 drifts along the payoff differential under social
noise, modeled as a clamped Euler-Maruyama diffusion.

Payoffs are linear (two-player matrix games under random matching):
f1(x) = R*x + S*(1-x) for cooperators, f2(x) = T*x + P*(1-x) for defectors,
so the differential a*x + b has closed-form roots and barrier integrals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

STAG_HUNT = "stag_hunt"
SNOWDRIFT = "snowdrift"
PRISONERS_DILEMMA = "prisoners_dilemma"
GAME_KINDS = (STAG_HUNT, SNOWDRIFT, PRISONERS_DILEMMA)

INTERIOR_STABLE = "interior_stable"
INTERIOR_UNSTABLE = "interior_unstable"
LOWER_BOUNDARY_STABLE = "lower_boundary_stable"
UPPER_BOUNDARY_STABLE = "upper_boundary_stable"
STABLE_CLASSES = (INTERIOR_STABLE, LOWER_BOUNDARY_STABLE, UPPER_BOUNDARY_STABLE)


class EmptyFeasibleRegion(ValueError):
    pass


class TippingPointOutsideFeasibleRegion(ValueError):
    pass


@dataclass(frozen=True)
class PopulationGame:
    """Payoff matrix (R_cc, S_cd, T_dc, P_dd) plus its paradigm label."""

    kind: str
    r_cc: float
    s_cd: float
    t_dc: float
    p_dd: float

    def __post_init__(self):
        if self.kind not in GAME_KINDS:
            raise ValueError(f"unknown game kind {self.kind!r}")
        r, s, t, p = self.r_cc, self.s_cd, self.t_dc, self.p_dd
        if self.kind == STAG_HUNT:
            ok = r > t >= p > s
        elif self.kind == SNOWDRIFT:
            ok = t > r and s > p
        else:
            ok = t > r and p > s
        if not ok:
            raise ValueError(f"matrix {(r, s, t, p)} violates the {self.kind} ordering")

    def f1(self, x: float) -> float:
        return self.r_cc * x + self.s_cd * (1.0 - x)

    def f2(self, x: float) -> float:
        return self.t_dc * x + self.p_dd * (1.0 - x)

    def differential_coeffs(self) -> tuple:
        """Delta f(x) = a*x + b."""
        a = self.r_cc - self.s_cd - self.t_dc + self.p_dd
        b = self.s_cd - self.p_dd
        return a, b

    @staticmethod
    def stag_hunt(r=4.0, s=0.0, t=3.0, p=3.0) -> "PopulationGame":
        return PopulationGame(STAG_HUNT, r, s, t, p)

    @staticmethod
    def snowdrift(r=3.0, s=2.0, t=4.0, p=0.0) -> "PopulationGame":
        return PopulationGame(SNOWDRIFT, r, s, t, p)

    @staticmethod
    def prisoners_dilemma(r=3.0, s=0.0, t=5.0, p=1.0) -> "PopulationGame":
        return PopulationGame(PRISONERS_DILEMMA, r, s, t, p)


def default_game(kind: str) -> PopulationGame:
    if kind == STAG_HUNT:
        return PopulationGame.stag_hunt()
    if kind == SNOWDRIFT:
        return PopulationGame.snowdrift()
    if kind == PRISONERS_DILEMMA:
        return PopulationGame.prisoners_dilemma()
    raise ValueError(f"unknown game kind {kind!r}")


@dataclass(frozen=True)
class WillShares:
    """Committed fractions; the feasible interval is [n1, 1 - n2]."""

    n1: float
    n2: float = 0.0

    def __post_init__(self):
        if not (0.0 <= self.n1 <= 1.0 and 0.0 <= self.n2 <= 1.0):
            raise ValueError("shares must lie in [0, 1]")
        if self.n1 + self.n2 > 1.0 + 1e-12:
            raise EmptyFeasibleRegion(f"n1 + n2 = {self.n1 + self.n2} > 1")

    @property
    def m(self) -> float:
        return max(0.0, 1.0 - self.n1 - self.n2)

    @property
    def lower(self) -> float:
        return self.n1

    @property
    def upper(self) -> float:
        return 1.0 - self.n2


@dataclass(frozen=True)
class SDEParams:
    """Euler-Maruyama controls. sigma is the social-noise amplitude; the
    drift is move_rate * m * Delta f."""

    move_rate: float = 1.0
    sigma: float = 0.0
    dt: float = 1e-3
    t_max: float = 1e4

    def __post_init__(self):
        if self.move_rate <= 0 or self.dt <= 0 or self.t_max <= 0:
            raise ValueError("move_rate, dt, t_max must be positive")
        if self.sigma < 0:
            raise ValueError("sigma must be >= 0")


@dataclass(frozen=True)
class Equilibrium:
    x_star: float
    classification: str

    @property
    def stable(self) -> bool:
        return self.classification in STABLE_CLASSES


def payoff_differential(game: PopulationGame, x: float) -> float:
    """f1(x) - f2(x): the drift direction of the rational share at state x."""
    if not 0.0 <= x <= 1.0:
        raise ValueError("x must lie in [0, 1]")
    a, b = game.differential_coeffs()
    return a * x + b


def find_equilibria(
    game: PopulationGame, shares: WillShares, tol: float = 1e-9
) -> list:
    """All stable equilibria on [n1, 1-n2], plus the interior unstable root
    when one exists (reported for tipping-point analysis)."""
    if tol <= 0:
        raise ValueError("tol must be > 0")
    a, b = game.differential_coeffs()
    lo, hi = shares.lower, shares.upper

    if hi - lo <= tol:
        # Frozen population: the single feasible point cannot move.
        df = a * lo + b
        cls = UPPER_BOUNDARY_STABLE if df > 0 else LOWER_BOUNDARY_STABLE
        return [Equilibrium(lo, cls)]

    out = []
    if a * lo + b < 0:
        out.append(Equilibrium(lo, LOWER_BOUNDARY_STABLE))
    if a != 0.0:
        root = -b / a
        if lo + tol < root < hi - tol:
            cls = INTERIOR_STABLE if a < 0 else INTERIOR_UNSTABLE
            out.append(Equilibrium(root, cls))
    if a * hi + b > 0:
        out.append(Equilibrium(hi, UPPER_BOUNDARY_STABLE))
    return out


def tipping_point(game: PopulationGame, shares: WillShares) -> float:
    """The interior unstable root, required to lie inside [n1, 1-n2]."""
    a, b = game.differential_coeffs()
    if a <= 0:
        raise TippingPointOutsideFeasibleRegion(
            f"{game.kind} has no unstable interior root"
        )
    root = -b / a
    if not shares.lower <= root <= shares.upper:
        raise TippingPointOutsideFeasibleRegion(
            f"tipping point {root} outside [{shares.lower}, {shares.upper}]"
        )
    return root


def integrate_sde(
    game: PopulationGame,
    shares: WillShares,
    params: SDEParams,
    x0: float,
    rng: np.random.Generator,
) -> np.ndarray:
    """Clamped Euler-Maruyama path from x0, sampled every dt up to t_max.

    Returns the full path including x0 (length round(t_max/dt) + 1; note the
    default t_max/dt implies 1e7 samples, size the params to what you need).
    """
    if not shares.lower <= x0 <= shares.upper:
        raise ValueError("x0 must lie in the feasible interval")
    n_steps = int(round(params.t_max / params.dt))
    a, b = game.differential_coeffs()
    drift_scale = params.move_rate * shares.m
    noise_scale = params.sigma * math.sqrt(params.dt)
    path = np.empty(n_steps + 1, dtype=np.float64)
    path[0] = x = float(x0)
    lo, hi = shares.lower, shares.upper
    if params.sigma == 0.0:
        for i in range(1, n_steps + 1):
            x += drift_scale * (a * x + b) * params.dt
            x = min(hi, max(lo, x))
            path[i] = x
    else:
        noise = rng.standard_normal(n_steps) * noise_scale
        for i in range(1, n_steps + 1):
            x += drift_scale * (a * x + b) * params.dt + noise[i - 1]
            x = min(hi, max(lo, x))
            path[i] = x
    return path


def settle(
    game: PopulationGame,
    shares_list: list,
    x0s: np.ndarray,
    move_rate: float = 1.0,
    dt: float = 1e-2,
    max_steps: int = 2_000_000,
    step_tol: float = 1e-6,
) -> np.ndarray:
    """Deterministic (sigma = 0) terminal points for a batch of trajectories.

    shares_list pairs with x0s row-wise; integration stops once every
    trajectory moves less than step_tol per step.
    """
    x = np.asarray(x0s, dtype=np.float64).copy()
    lo = np.array([s.lower for s in shares_list])
    hi = np.array([s.upper for s in shares_list])
    m = np.array([s.m for s in shares_list])
    a, b = game.differential_coeffs()
    scale = move_rate * m * dt
    for _ in range(max_steps):
        nxt = np.clip(x + scale * (a * x + b), lo, hi)
        if np.abs(nxt - x).max() < step_tol:
            return nxt
        x = nxt
    return x


@dataclass
class EscapeEstimate:
    mean_tau: float
    ci95: float
    censored_fraction: float
    n_trials: int
    t_max: float
    taus: np.ndarray | None = None  # per-trial first-passage times


def escape_time(
    game: PopulationGame,
    shares: WillShares,
    sigma: float,
    params: SDEParams,
    trials: int,
    rng: np.random.Generator,
) -> EscapeEstimate:
    """Monte Carlo first-passage time from x0 = n1 up across the tipping point.

    The tipping point is absorbing for this measurement.  Trials still below
    it at t_max are censored there: they enter the mean at t_max and are
    flagged through censored_fraction.
    """
    if sigma <= 0:
        raise ValueError("sigma must be > 0 for escape measurement")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    x_tip = tipping_point(game, shares)
    a, b = game.differential_coeffs()
    drift_scale = params.move_rate * shares.m
    noise_scale = sigma * math.sqrt(params.dt)
    lo, hi = shares.lower, shares.upper

    x = np.full(trials, shares.n1, dtype=np.float64)
    taus = np.full(trials, params.t_max, dtype=np.float64)
    active = np.ones(trials, dtype=bool)
    if shares.n1 >= x_tip:
        taus[:] = 0.0
        active[:] = False

    n_steps = int(round(params.t_max / params.dt))
    t = 0.0
    idx = np.arange(trials)
    for _ in range(n_steps):
        if not active.any():
            break
        t += params.dt
        sub = idx[active]
        xs = x[sub]
        xs += drift_scale * (a * xs + b) * params.dt
        xs += rng.standard_normal(sub.size) * noise_scale
        np.clip(xs, lo, hi, out=xs)
        x[sub] = xs
        crossed = xs >= x_tip
        if crossed.any():
            hit = sub[crossed]
            taus[hit] = t
            active[hit] = False

    censored = int(active.sum())
    mean = float(taus.mean())
    sd = float(taus.std(ddof=1)) if trials >= 2 else 0.0
    ci = 1.96 * sd / math.sqrt(trials) if trials >= 2 else 0.0
    return EscapeEstimate(
        mean_tau=mean,
        ci95=float(ci),
        censored_fraction=censored / trials,
        n_trials=trials,
        t_max=params.t_max,
        taus=taus,
    )


def barrier_integral(game: PopulationGame, shares: WillShares) -> float:
    """Closed-form integral of the payoff differential from n1 to the tipping
    point (non-positive: the potential barrier against coordination)."""
    x_tip = tipping_point(game, shares)
    a, b = game.differential_coeffs()
    n1 = shares.n1
    return a / 2.0 * (x_tip**2 - n1**2) + b * (x_tip - n1)


# ---------------------------------------------------------------------------
# CSV row builders
# ---------------------------------------------------------------------------

EQUILIBRIA_HEADER = ("game", "n1", "n2", "x_star", "classification")
ESCAPE_HEADER = ("n1", "sigma", "mean_tau", "ci95", "censored_fraction", "barrier")


def share_grid(step: float = 0.1) -> list:
    """All (n1, n2) on a step grid with n1 + n2 <= 1."""
    count = int(round(1.0 / step))
    shares = []
    for i in range(count + 1):
        for j in range(count + 1 - i):
            shares.append(WillShares(round(i * step, 10), round(j * step, 10)))
    return shares


def equilibria_rows(games: list | None = None, grid_step: float = 0.1) -> list:
    """One row per equilibrium per game per feasible (n1, n2) grid point."""
    if games is None:
        games = [default_game(kind) for kind in GAME_KINDS]
    rows = []
    for game in games:
        for shares in share_grid(grid_step):
            for eq in find_equilibria(game, shares):
                rows.append(
                    (game.kind, shares.n1, shares.n2, eq.x_star, eq.classification)
                )
    return rows


def escape_rows(
    game: PopulationGame,
    n1_values: list,
    sigma: float,
    params: SDEParams,
    trials: int,
    rng: np.random.Generator,
) -> list:
    rows = []
    for n1 in n1_values:
        shares = WillShares(float(n1))
        est = escape_time(game, shares, sigma, params, trials, rng)
        rows.append(
            (
                float(n1),
                float(sigma),
                est.mean_tau,
                est.ci95,
                est.censored_fraction,
                barrier_integral(game, shares),
            )
        )
    return rows
