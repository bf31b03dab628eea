"""Test path set reduction framed as set cover.

Requirements are the universe and every candidate path is the subset of
requirements it covers. All reducers take a :class:`CoverageMatrix` and
return the selected paths in selection order.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .model import Graph, contains_sequence
from .requirements import covers, requirement_subsumed


@dataclass(frozen=True)
class CoverageMatrix:
    paths: tuple
    requirements: tuple
    covers: tuple
    # requirement index -> indices of other requirements it is a sub-path of
    contained_in: dict = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "paths", tuple(self.paths))
        object.__setattr__(self, "requirements", tuple(self.requirements))
        object.__setattr__(self, "covers", tuple(frozenset(c) for c in self.covers))
        if len(self.covers) != len(self.paths):
            raise ValueError("need one cover set per path")
        n = len(self.requirements)
        for c in self.covers:
            if any(not 0 <= r < n for r in c):
                raise ValueError("cover set refers to an unknown requirement")

    @classmethod
    def build(cls, graph: Graph, paths, requirements):
        paths, requirements = list(paths), list(requirements)
        cover_sets = [
            frozenset(j for j, r in enumerate(requirements) if covers(p, r, graph)) for p in paths
        ]
        contained_in = {}
        for i, r1 in enumerate(requirements):
            sup = frozenset(j for j, r2 in enumerate(requirements) if requirement_subsumed(r1, r2, graph))
            if sup:
                contained_in[i] = sup
        return cls(paths, requirements, cover_sets, contained_in)

    @property
    def coverable(self) -> frozenset:
        return frozenset().union(*self.covers)

    def select(self, indices) -> list:
        return [self.paths[i] for i in indices]


@dataclass(frozen=True)
class GaConfig:
    population_size: int = 30
    initial_probability_to_set_gene: float = 0.2
    probability_to_mutate_one_gene: float = 0.4
    probability_to_mutate_zero_gene: float = 0.6
    max_generations: int = 100
    max_generations_without_improvement: int = 40

    def __post_init__(self):
        for name in ("initial_probability_to_set_gene", "probability_to_mutate_one_gene",
                     "probability_to_mutate_zero_gene"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ValueError(f"{name} must be a probability")
        for name in ("population_size", "max_generations", "max_generations_without_improvement"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")


@dataclass(frozen=True)
class SaConfig:
    alpha: float = 0.8
    freeze_threshold: float = 1e-6

    def __post_init__(self):
        if not 0.0 < self.alpha < 1.0:
            raise ValueError("alpha must lie in (0, 1)")
        if self.freeze_threshold <= 0:
            raise ValueError("freeze_threshold must be positive")


def _greedy_scan(matrix: CoverageMatrix, order) -> list:
    uncovered = set(matrix.coverable)
    chosen = []
    for i in order:
        if not uncovered:
            break
        new = matrix.covers[i] & uncovered
        if new:
            uncovered -= new
            chosen.append(i)
    return chosen


def reduce_none(matrix: CoverageMatrix) -> list:
    return list(matrix.paths)


def reduce_random(matrix: CoverageMatrix, seed=None) -> list:
    order = list(range(len(matrix.paths)))
    random.Random(seed).shuffle(order)
    return matrix.select(_greedy_scan(matrix, order))


def reduce_sorted(matrix: CoverageMatrix) -> list:
    order = sorted(range(len(matrix.paths)), key=lambda i: (-len(matrix.covers[i]), i))
    return matrix.select(_greedy_scan(matrix, order))


def chvatal_universe(matrix: CoverageMatrix) -> frozenset:
    """Coverable requirements that are not a sub-path of another coverable requirement."""
    coverable = matrix.coverable
    return frozenset(
        r for r in coverable if not (matrix.contained_in.get(r, frozenset()) & coverable)
    )


def reduce_chvatal(matrix: CoverageMatrix) -> list:
    universe = chvatal_universe(matrix)
    candidates = [i for i, c in enumerate(matrix.covers) if c & universe]
    uncovered = set(universe)
    chosen = []
    while uncovered:
        # unit cost: the best cost/gain ratio is the largest gain; ties go to the lower index
        best = max(candidates, key=lambda i: (len(matrix.covers[i] & uncovered), -i))
        chosen.append(best)
        uncovered -= matrix.covers[best]
        candidates.remove(best)
    return matrix.select(chosen)


def _bitmasks(matrix: CoverageMatrix, universe):
    index = {r: k for k, r in enumerate(sorted(universe))}
    masks = []
    for c in matrix.covers:
        m = 0
        for r in c:
            if r in index:
                m |= 1 << index[r]
        masks.append(m)
    return masks, len(index)


def ga_fitness(individual, matrix: CoverageMatrix) -> int:
    """``maxCost - (uncovered * (|P| + 1) + selected)`` with ``maxCost = |R| * (|P| + 1) + |P|``."""
    n, n_req = len(matrix.paths), len(matrix.requirements)
    if len(individual) != n:
        raise ValueError("individual length must equal the number of paths")
    covered = set()
    for bit, c in zip(individual, matrix.covers):
        if bit:
            covered |= c
    uncovered = n_req - len(covered)
    max_cost = n_req * (n + 1) + n
    return max_cost - (uncovered * (n + 1) + sum(1 for b in individual if b))


def sa_energy(point, matrix: CoverageMatrix) -> int:
    """``uncovered * (|P| + 1) + selected``; equals ``maxCost - ga_fitness``."""
    n, n_req = len(matrix.paths), len(matrix.requirements)
    covered = set()
    for bit, c in zip(point, matrix.covers):
        if bit:
            covered |= c
    return (n_req - len(covered)) * (n + 1) + sum(1 for b in point if b)


def repair(matrix: CoverageMatrix, chosen) -> list:
    """Add paths greedily (most newly covered first, lowest index on ties) until all coverable requirements are covered."""
    chosen = list(chosen)
    uncovered = set(matrix.coverable)
    for i in chosen:
        uncovered -= matrix.covers[i]
    while uncovered:
        best = max(range(len(matrix.paths)), key=lambda i: (len(matrix.covers[i] & uncovered), -i))
        chosen.append(best)
        uncovered -= matrix.covers[best]
    return chosen


def _roulette(rng, individuals, fitness, k):
    # fitness + 1 keeps the wheel valid when every fitness is 0
    return rng.choices(individuals, weights=[fitness[ind] + 1 for ind in individuals], k=k)


def _roulette_without_replacement(rng, individuals, fitness, k):
    pool = list(individuals)
    picked = []
    for _ in range(min(k, len(pool))):
        j = rng.choices(range(len(pool)), weights=[fitness[ind] + 1 for ind in pool])[0]
        picked.append(pool.pop(j))
    return picked


def reduce_ga(matrix: CoverageMatrix, config: GaConfig = GaConfig(), seed=None) -> list:
    rng = random.Random(seed)
    universe = matrix.coverable
    n = len(matrix.paths)
    if not universe:
        return []
    masks, n_req = _bitmasks(matrix, universe)
    full = (1 << n_req) - 1
    max_cost = n_req * (n + 1) + n
    fitness = {}

    def evaluate(ind):
        if ind not in fitness:
            m = 0
            ones = 0
            for bit, mask in zip(ind, masks):
                if bit:
                    m |= mask
                    ones += 1
            uncovered = n_req - bin(m & full).count("1")
            fitness[ind] = max_cost - (uncovered * (n + 1) + ones)
        return fitness[ind]

    # one selected path with nothing uncovered is the only provable optimum
    optimum = max_cost - 1

    def mutate(child):
        g = rng.randrange(n)
        p = config.probability_to_mutate_one_gene if child[g] else config.probability_to_mutate_zero_gene
        if rng.random() < p:
            child[g] ^= 1
        return tuple(child)

    def crossover(p1, p2):
        if n < 3:
            return list(p1), list(p2)
        a, b = sorted(rng.sample(range(1, n), 2))
        return list(p1[:a] + p2[a:b] + p1[b:]), list(p2[:a] + p1[a:b] + p2[b:])

    population = [
        tuple(int(rng.random() < config.initial_probability_to_set_gene) for _ in range(n))
        for _ in range(config.population_size)
    ]
    for ind in population:
        evaluate(ind)
    best = max(population, key=lambda ind: fitness[ind])
    stagnant = 0
    generation = 0
    n_elite = config.population_size // 10
    while generation < config.max_generations and fitness[best] < optimum \
            and stagnant < config.max_generations_without_improvement:
        generation += 1
        offspring = []
        for _ in range(config.population_size // 3):
            p1, p2 = _roulette(rng, population, fitness, 2)
            c1, c2 = crossover(p1, p2)
            for child in (mutate(c1), mutate(c2)):
                evaluate(child)
                offspring.append(child)
        pool = population + offspring
        ranked = sorted(range(len(pool)), key=lambda i: -fitness[pool[i]])
        elite_idx = set(ranked[:n_elite])
        elites = [pool[i] for i in ranked[:n_elite]]
        rest = [pool[i] for i in range(len(pool)) if i not in elite_idx]
        population = elites + _roulette_without_replacement(
            rng, rest, fitness, config.population_size - len(elites)
        )
        leader = max(population, key=lambda ind: fitness[ind])
        if fitness[leader] > fitness[best]:
            best = leader
            stagnant = 0
        else:
            stagnant += 1

    chosen = [i for i, bit in enumerate(best) if bit]
    return matrix.select(repair(matrix, chosen))


def initial_temperature(n_paths: int) -> float:
    return n_paths ** 2.2 * 1.5


def reduce_sa(matrix: CoverageMatrix, config: SaConfig = SaConfig(), seed=None) -> list:
    rng = random.Random(seed)
    universe = matrix.coverable
    n = len(matrix.paths)
    if not universe:
        return []
    cover_lists = [sorted(c & universe) for c in matrix.covers]
    weight = n + 1
    point = [rng.random() < 0.5 for _ in range(n)]
    count = dict.fromkeys(universe, 0)
    for i, bit in enumerate(point):
        if bit:
            for r in cover_lists[i]:
                count[r] += 1
    uncovered = sum(1 for r in universe if count[r] == 0)
    energy = uncovered * weight + sum(point)
    best, best_energy = list(point), energy

    t = initial_temperature(n)
    while True:
        for _ in range(math.ceil(t)):
            i = rng.randrange(n)
            if point[i]:
                delta = sum(1 for r in cover_lists[i] if count[r] == 1) * weight - 1
            else:
                delta = 1 - sum(1 for r in cover_lists[i] if count[r] == 0) * weight
            if delta < 0 or rng.random() < math.exp(-delta / t):
                step = -1 if point[i] else 1
                point[i] = not point[i]
                for r in cover_lists[i]:
                    count[r] += step
                energy += delta
                if energy < best_energy:
                    best, best_energy = list(point), energy
        t *= config.alpha
        if t < config.freeze_threshold:
            break

    chosen = [i for i, bit in enumerate(best) if bit]
    return matrix.select(repair(matrix, chosen))


def enforce_no_subpath_rule(paths) -> list:
    """Drop duplicates and every path that is a contiguous sub-path of another kept path."""
    unique = list(dict.fromkeys(paths))
    kept = []
    for i, p in enumerate(unique):
        if any(j != i and len(q) > len(p) and contains_sequence(q.edges, p.edges) for j, q in enumerate(unique)):
            continue
        kept.append(p)
    return kept


REDUCERS = ("none", "random", "sorted", "chvatal", "ga", "sa")
STOCHASTIC = frozenset({"random", "ga", "sa"})


def reduce(matrix: CoverageMatrix, method: str, seed=None, ga_config=GaConfig(), sa_config=SaConfig()) -> list:
    if method == "none":
        return reduce_none(matrix)
    if method == "random":
        return reduce_random(matrix, seed)
    if method == "sorted":
        return reduce_sorted(matrix)
    if method == "chvatal":
        return reduce_chvatal(matrix)
    if method == "ga":
        return reduce_ga(matrix, ga_config, seed)
    if method == "sa":
        return reduce_sa(matrix, sa_config, seed)
    raise ValueError(f"unknown reduction {method!r}")
