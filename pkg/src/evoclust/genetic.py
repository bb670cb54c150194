"""Genetic clustering over real-valued chromosomes.

Each chromosome is a flat vector of k concatenated centers. Fitness
evaluation decodes the centers, assigns the points, replaces every
non-empty cluster's center by its mean (written back into the chromosome),
and scores 1 / (1 + Jc). Selection is roulette-wheel, recombination is
single-point crossover, mutation perturbs genes multiplicatively.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .metric import (
    UNSQUARED,
    ClusterModel,
    _points_of,
    assign,
    assign_points,
    compute_jc,
)


@dataclass
class Chromosome:
    genes: np.ndarray  # k*d reals
    jc: float | None = None
    fitness: float | None = None

    def copy(self) -> "Chromosome":
        return Chromosome(genes=self.genes.copy(), jc=self.jc, fitness=self.fitness)


@dataclass
class GaParams:
    population_size: int = 15
    crossover_prob: float = 0.8
    mutation_prob: float = 0.001
    generations: int = 100
    elitism: int = 1

    def __post_init__(self):
        if self.population_size < 2:
            raise ValueError("population_size must be >= 2")
        for p in (self.crossover_prob, self.mutation_prob):
            if not 0.0 <= p <= 1.0:
                raise ValueError("probabilities must lie in [0, 1]")
        if self.elitism < 0:
            raise ValueError("elitism must be >= 0")


def init_population(data, k: int, params: GaParams, rng: np.random.Generator) -> list[Chromosome]:
    """Each chromosome encodes k distinct data points drawn uniformly."""
    X = _points_of(data)
    n = X.shape[0]
    if k > n:
        raise ValueError(f"k={k} exceeds dataset size n={n}")
    pop = []
    for _ in range(params.population_size):
        idx = rng.choice(n, size=k, replace=False)
        pop.append(Chromosome(genes=X[idx].ravel().copy()))
    return pop


def evaluate_fitness(chrom: Chromosome, data, k: int, mode: str = UNSQUARED) -> float:
    """Assign, pull non-empty centers to their cluster means (in place),
    then score 1 / (1 + Jc) against the updated centers."""
    X = _points_of(data)
    centers = chrom.genes.reshape(k, -1).copy()
    cluster_of = assign_points(X, centers)
    counts = np.bincount(cluster_of, minlength=k)

    sums = np.zeros_like(centers)
    np.add.at(sums, cluster_of, X)
    nonempty = counts > 0
    centers[nonempty] = sums[nonempty] / counts[nonempty, None]

    chrom.genes = centers.ravel()
    diff = X - centers[cluster_of]
    sq = np.einsum("ij,ij->i", diff, diff)
    jc = float(sq.sum()) if mode == "squared" else float(np.sqrt(sq).sum())
    chrom.jc = jc
    chrom.fitness = 1.0 / (1.0 + jc)
    return chrom.fitness


def roulette_select(pop: list[Chromosome], rng: np.random.Generator, n: int | None = None) -> list[Chromosome]:
    """Sample with replacement, probability proportional to fitness."""
    fitness = np.array([c.fitness for c in pop], dtype=float)
    if np.any(fitness < 0):
        raise ValueError("fitness values must be >= 0")
    total = fitness.sum()
    if total <= 0:
        raise ValueError("degenerate roulette: total fitness is zero")
    idx = rng.choice(len(pop), size=n or len(pop), replace=True, p=fitness / total)
    return [pop[i].copy() for i in idx]


def crossover_single_point(
    a: Chromosome, b: Chromosome, pc: float, rng: np.random.Generator
) -> tuple[Chromosome, Chromosome]:
    """With probability pc, swap suffixes at a uniform cut in [1, L-1]."""
    L = a.genes.shape[0]
    if b.genes.shape[0] != L:
        raise ValueError("parents must have equal gene length")
    if L < 2:
        raise ValueError("gene length must be >= 2 for crossover")
    if rng.random() < pc:
        cut = int(rng.integers(1, L))
        c1 = np.concatenate([a.genes[:cut], b.genes[cut:]])
        c2 = np.concatenate([b.genes[:cut], a.genes[cut:]])
        return Chromosome(genes=c1), Chromosome(genes=c2)
    return Chromosome(genes=a.genes.copy()), Chromosome(genes=b.genes.copy())


def mutate(chrom: Chromosome, pm: float, rng: np.random.Generator) -> Chromosome:
    """Per gene, with probability pm: v -> v +/- 2*delta*v (delta uniform in
    [0,1], sign equiprobable); a zero gene becomes +/- 2*delta."""
    genes = chrom.genes.copy()
    hit = np.nonzero(rng.random(genes.shape[0]) < pm)[0]
    for i in hit:
        delta = rng.random()
        sign = 1.0 if rng.random() < 0.5 else -1.0
        v = genes[i]
        genes[i] = sign * 2.0 * delta if v == 0.0 else v + sign * 2.0 * delta * v
    return Chromosome(genes=genes)


def ga_cluster(
    data,
    k: int,
    params: GaParams,
    rng: np.random.Generator,
    mode: str = UNSQUARED,
    seed_centers: np.ndarray | None = None,
) -> ClusterModel:
    """Evolve center-sets for a fixed generation budget; return the best-ever
    chromosome decoded with a fresh assignment and objective.

    seed_centers, when given, replaces one random individual in the initial
    population (used to inject refined initial centers).
    """
    X = _points_of(data)
    pop = init_population(X, k, params, rng)
    if seed_centers is not None:
        seed_centers = np.asarray(seed_centers, dtype=float)
        if seed_centers.shape != (k, X.shape[1]):
            raise ValueError(f"seed_centers must be {k} x {X.shape[1]}")
        pop[0] = Chromosome(genes=seed_centers.ravel().copy())

    for c in pop:
        evaluate_fitness(c, X, k, mode)
    best = max(pop, key=lambda c: c.fitness).copy()

    for _ in range(params.generations):
        order = sorted(range(len(pop)), key=lambda i: pop[i].fitness, reverse=True)
        elites = [pop[i].copy() for i in order[: params.elitism]]

        selected = roulette_select(pop, rng)
        children: list[Chromosome] = []
        for i in range(0, len(selected) - 1, 2):
            c1, c2 = crossover_single_point(
                selected[i], selected[i + 1], params.crossover_prob, rng
            )
            children.extend([c1, c2])
        if len(selected) % 2:
            children.append(selected[-1].copy())

        children = [mutate(c, params.mutation_prob, rng) for c in children]
        for i, elite in enumerate(elites):
            children[i] = elite

        pop = children
        for c in pop:
            evaluate_fitness(c, X, k, mode)
        gen_best = max(pop, key=lambda c: c.fitness)
        if gen_best.fitness > best.fitness:
            best = gen_best.copy()

    centers = best.genes.reshape(k, -1).copy()
    assignment = assign(X, centers)
    jc = compute_jc(X, centers, assignment, mode)
    return ClusterModel(centers=centers, assignment=assignment, jc=jc, metric_mode=mode)
