"""End-to-end generation: requirements, one shortest path each, reduction, normalization."""

from __future__ import annotations

from dataclasses import dataclass, field

from .model import Graph, PrioritySelection
from .nswitch import DEFAULT_ENUM_CAP, nswitch_reduce
from .reduction import CoverageMatrix, GaConfig, REDUCERS, SaConfig, enforce_no_subpath_rule, reduce
from .requirements import Coverage, CoverageReport, check_coverage, generate_requirements
from .search import find_path_in_range

ALGORITHMS = REDUCERS + ("nswitch",)


class NoPathsPossible(RuntimeError):
    def __init__(self, infeasible):
        self.infeasible = list(infeasible)
        super().__init__(
            f"none of the {len(self.infeasible)} requirements fits a test path in the length range; "
            "widen min/max length or add test starts/ends"
        )


@dataclass(frozen=True)
class RunConfig:
    coverage: Coverage = Coverage.BASIC
    min_length: int = 2
    max_length: int = 6
    selection: PrioritySelection = PrioritySelection()
    reduction: str = "sorted"
    seed: int | None = 0
    repetitions: int = 3
    enum_cap: int = DEFAULT_ENUM_CAP
    ga: GaConfig = field(default_factory=GaConfig)
    sa: SaConfig = field(default_factory=SaConfig)

    def __post_init__(self):
        object.__setattr__(self, "coverage", Coverage(self.coverage))
        if not 1 <= self.min_length <= self.max_length:
            raise ValueError(f"need 1 <= min_length <= max_length, got {self.min_length}, {self.max_length}")
        if self.reduction not in ALGORITHMS:
            raise ValueError(f"unknown reduction {self.reduction!r}; choose from {', '.join(ALGORITHMS)}")
        if self.repetitions < 1:
            raise ValueError("repetitions must be >= 1")


@dataclass
class GenerationResult:
    paths: list
    report: CoverageReport
    infeasible: list
    feasible: list
    requirements: list


def initial_paths(graph: Graph, requirements, min_length, max_length):
    """One shortest in-range path per requirement; returns ``(paths, feasible, infeasible)``."""
    found, feasible, infeasible = {}, [], []
    for r in requirements:
        p = find_path_in_range(r, graph, min_length, max_length)
        if p is None:
            infeasible.append(r)
        else:
            feasible.append(r)
            found.setdefault(p, None)
    return list(found), feasible, infeasible


def generate_paths(graph: Graph, config: RunConfig, seed=None) -> GenerationResult:
    """Run the whole strategy for one configuration; ``seed`` overrides ``config.seed``."""
    seed = config.seed if seed is None else seed
    lo, hi = config.min_length, config.max_length
    requirements = generate_requirements(graph, config.coverage, config.selection)
    candidates, feasible, infeasible = initial_paths(graph, requirements, lo, hi)
    if requirements and not feasible:
        raise NoPathsPossible(infeasible)
    if config.reduction == "nswitch":
        paths = nswitch_reduce(graph, lo, hi, config.coverage, config.selection, config.enum_cap)
    else:
        matrix = CoverageMatrix.build(graph, candidates, feasible)
        paths = reduce(matrix, config.reduction, seed, config.ga, config.sa)
    paths = enforce_no_subpath_rule(paths)
    report = check_coverage(paths, feasible, graph, lo, hi)
    return GenerationResult(paths, report, infeasible, feasible, requirements)
