"""Genetic search over heterogeneous will-strength vectors.

A genome assigns each of the N agents a will strength from the discrete grid
{-1.0, -0.8, ..., 1.0}; fitness is the mean normalized group payoff of the
corresponding mixed population.  One fixed evaluation seed set is used for
the whole run (common random numbers), which makes fitness a pure function
of the genome and best-so-far monotone under elitism.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import AgentSpec, SimConfig, derive_episode_seed, make_rng
from .harness import run_batch


@dataclass(frozen=True)
class GAConfig:
    pop_size: int = 32
    generations: int = 60
    episodes_per_eval: int = 30
    tournament_size: int = 3
    crossover_rate: float = 0.9
    mutation_rate: float = 0.05
    elitism: int = 2
    alpha_step: float = 0.2

    def __post_init__(self):
        if not 0 <= self.crossover_rate <= 1 or not 0 <= self.mutation_rate <= 1:
            raise ValueError("rates must lie in [0, 1]")
        if self.elitism >= self.pop_size:
            raise ValueError("elitism must be < pop_size")
        if self.tournament_size < 1 or self.pop_size < 2:
            raise ValueError("bad population sizing")


def alpha_grid(step: float = 0.2) -> np.ndarray:
    n = int(round(2.0 / step))
    return np.round(np.linspace(-1.0, 1.0, n + 1), 10)


def genome_specs(genome: np.ndarray) -> list:
    return [AgentSpec.hybrid(float(a)) for a in genome]


def evaluate_fitness(
    genome: np.ndarray,
    config: SimConfig,
    episodes: int,
    eval_seed: int,
    parallelism: int = 1,
) -> float:
    """Mean normalized group payoff of the genome's population over the
    fixed episode seed set derived from eval_seed."""
    batch = run_batch(
        config, genome_specs(genome), episodes, parallelism, base_seed=eval_seed
    )
    return batch.stats.mean


def evaluate_payoffs(
    genome: np.ndarray,
    config: SimConfig,
    episodes: int,
    eval_seed: int,
    parallelism: int = 1,
):
    """(fitness, per-agent mean payoffs) for one genome."""
    batch = run_batch(
        config, genome_specs(genome), episodes, parallelism, base_seed=eval_seed
    )
    return batch.stats.mean, batch.per_agent.mean(axis=0)


@dataclass
class EvolveResult:
    best_genome: np.ndarray
    best_fitness: float
    history: list  # (generation, best_fitness, mean_fitness)
    final_population: np.ndarray  # (pop_size, N)
    final_fitnesses: np.ndarray


def evolve(
    ga: GAConfig,
    config: SimConfig,
    seed: int,
    parallelism: int = 1,
) -> EvolveResult:
    """Generational GA: tournament selection, uniform crossover, per-gene
    resampling mutation, elitism."""
    rng = make_rng(seed)
    grid = alpha_grid(ga.alpha_step)
    eval_seed = derive_episode_seed(seed, 0xE7A1)
    n_genes = config.n_agents

    population = grid[rng.integers(0, grid.size, size=(ga.pop_size, n_genes))]
    best_genome = None
    best_fitness = -np.inf
    history = []

    for generation in range(ga.generations):
        fitnesses = np.array(
            [
                evaluate_fitness(g, config, ga.episodes_per_eval, eval_seed, parallelism)
                for g in population
            ]
        )
        gen_best = int(fitnesses.argmax())
        if fitnesses[gen_best] > best_fitness:
            best_fitness = float(fitnesses[gen_best])
            best_genome = population[gen_best].copy()
        history.append((generation, best_fitness, float(fitnesses.mean())))

        if generation == ga.generations - 1:
            break

        elite_idx = np.argsort(-fitnesses, kind="stable")[: ga.elitism]
        children = [population[i].copy() for i in elite_idx]
        while len(children) < ga.pop_size:
            p1 = _tournament(population, fitnesses, ga.tournament_size, rng)
            p2 = _tournament(population, fitnesses, ga.tournament_size, rng)
            c1, c2 = p1.copy(), p2.copy()
            if rng.random() < ga.crossover_rate:
                mask = rng.random(n_genes) < 0.5
                c1[mask], c2[mask] = p2[mask], p1[mask]
            _mutate(c1, grid, ga.mutation_rate, rng)
            _mutate(c2, grid, ga.mutation_rate, rng)
            children.append(c1)
            if len(children) < ga.pop_size:
                children.append(c2)
        population = np.array(children)

    return EvolveResult(
        best_genome=best_genome,
        best_fitness=best_fitness,
        history=history,
        final_population=population,
        final_fitnesses=fitnesses,
    )


def _tournament(population, fitnesses, size, rng) -> np.ndarray:
    picks = rng.integers(0, population.shape[0], size=size)
    return population[picks[int(np.argmax(fitnesses[picks]))]]


def _mutate(genome, grid, rate, rng) -> None:
    mask = rng.random(genome.size) < rate
    count = int(mask.sum())
    if count:
        genome[mask] = grid[rng.integers(0, grid.size, size=count)]


# ---------------------------------------------------------------------------
# reporting tables
# ---------------------------------------------------------------------------

HISTORY_HEADER = ("generation", "best_fitness", "mean_fitness")
DISTRIBUTION_HEADER = ("theta", "alpha_bin", "population_share", "mean_alpha")
PAYOFF_HEADER = (
    "theta",
    "max_alpha_payoff",
    "min_alpha_payoff",
    "group_payoff",
    "rational_baseline",
)


def distribution_rows(result: EvolveResult, config: SimConfig, ga: GAConfig) -> list:
    """Share of the final population's genes at each strength level."""
    grid = alpha_grid(ga.alpha_step)
    genes = result.final_population.ravel()
    mean_alpha = float(genes.mean())
    rows = []
    for level in grid:
        share = float(np.isclose(genes, level).mean())
        rows.append((config.threshold, float(level), share, mean_alpha))
    return rows


def payoff_rows(
    result: EvolveResult,
    config: SimConfig,
    ga: GAConfig,
    seed: int,
    parallelism: int = 1,
) -> list:
    """Individual payoffs of the strongest- vs weakest-willed members of the
    best genome, with group payoff and the all-rational baseline."""
    eval_seed = derive_episode_seed(seed, 0xE7A1)
    group, per_agent = evaluate_payoffs(
        result.best_genome, config, ga.episodes_per_eval, eval_seed, parallelism
    )
    genome = result.best_genome
    max_mask = np.isclose(genome, genome.max())
    min_mask = np.isclose(genome, genome.min())
    baseline = evaluate_fitness(
        np.zeros_like(genome), config, ga.episodes_per_eval, eval_seed, parallelism
    )
    return [
        (
            config.threshold,
            float(per_agent[max_mask].mean()),
            float(per_agent[min_mask].mean()),
            float(group),
            float(baseline),
        )
    ]
