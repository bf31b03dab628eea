"""Coverage requirements for the Basic and Extended prioritized criteria."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .model import (
    Graph,
    PrioritySelection,
    TestPath,
    contains_sequence,
    first_vertex,
    is_subpath,
    is_well_formed,
    last_vertex,
    path_vertices,
)


class Coverage(str, enum.Enum):
    BASIC = "basic"
    EXTENDED = "extended"


@dataclass(frozen=True)
class Requirement:
    """Either a vertex that must be visited or a 1-2 edge sequence that must appear contiguously."""

    vertex: str | None = None
    edges: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(self.edges))
        if (self.vertex is None) == (not self.edges):
            raise ValueError("a requirement is either a vertex or an edge sequence")

    @classmethod
    def visit(cls, vertex):
        return cls(vertex=vertex)

    @classmethod
    def sequence(cls, *edges):
        return cls(edges=edges)

    @property
    def is_vertex(self) -> bool:
        return self.vertex is not None

    def as_path(self) -> TestPath:
        return TestPath(edges=self.edges) if self.edges else TestPath(vertex=self.vertex)

    def __str__(self):
        return self.vertex if self.is_vertex else "[" + ",".join(self.edges) + "]"


def covers(path: TestPath, requirement: Requirement, graph: Graph) -> bool:
    if requirement.is_vertex:
        return requirement.vertex in path_vertices(path, graph)
    return contains_sequence(path.edges, requirement.edges)


def requirement_subsumed(r1: Requirement, r2: Requirement, graph: Graph) -> bool:
    """True iff ``r1`` is a sub-path of ``r2`` and the two differ."""
    return r1 != r2 and is_subpath(r1.as_path(), r2.as_path(), graph)


def generate_requirements(graph: Graph, criterion: Coverage, selection: PrioritySelection) -> list:
    """Requirements in a deterministic order derived from declaration order, without duplicates.

    Only elements whose priority falls inside the closed selection band are
    required; values above ``select_max`` are not (the band, not a threshold,
    decides).
    """
    criterion = Coverage(criterion)
    out = {}

    def add(req):
        out.setdefault(req, None)

    priority_vertices = [v for v in graph.vertices if graph.priority(v) in selection]
    priority_edges = {e.id for e in graph.edges if e.priority in selection}
    for v in priority_vertices:
        add(Requirement.visit(v))
    for e in graph.edges:
        if e.id in priority_edges:
            add(Requirement.sequence(e.id))
    if criterion is Coverage.EXTENDED:
        for v in priority_vertices:
            for e in graph.in_edges[v] + graph.out_edges[v]:
                add(Requirement.sequence(e.id))
        for e1 in graph.edges:
            for e2 in graph.out_edges[e1.target]:
                if e1.id in priority_edges or e2.id in priority_edges:
                    add(Requirement.sequence(e1.id, e2.id))
    return list(out)


def filter_feasible(requirements, graph: Graph, min_length: int, max_length: int):
    """Split requirements into ``(feasible, infeasible)``.

    A requirement is feasible when some valid test path within the length
    range contains it.
    """
    from .search import find_path_in_range

    feasible, infeasible = [], []
    for req in requirements:
        if find_path_in_range(req, graph, min_length, max_length) is None:
            infeasible.append(req)
        else:
            feasible.append(req)
    return feasible, infeasible


@dataclass
class CoverageReport:
    bad_endpoints: list = field(default_factory=list)
    bad_lengths: list = field(default_factory=list)
    uncovered: list = field(default_factory=list)
    nested: list = field(default_factory=list)
    malformed: list = field(default_factory=list)

    @property
    def satisfied(self) -> bool:
        return not (self.bad_endpoints or self.bad_lengths or self.uncovered or self.nested or self.malformed)

    def violations(self) -> list:
        lines = [f"malformed path {p}" for p in self.malformed]
        lines += [f"rule 1: {p} does not start in a test start and end in a test end" for p in self.bad_endpoints]
        lines += [f"rule 2: {p} has length {len(p)} outside the range" for p in self.bad_lengths]
        lines += [f"rule 3: requirement {r} not covered" for r in self.uncovered]
        lines += [f"rule 4: {p} is a sub-path of {q}" for p, q in self.nested]
        return lines


def check_coverage(paths, requirements, graph: Graph, min_length: int, max_length: int) -> CoverageReport:
    paths = list(paths)
    report = CoverageReport()
    starts, ends = graph.path_starts, graph.path_ends
    for p in paths:
        if not is_well_formed(p, graph):
            report.malformed.append(p)
            continue
        if first_vertex(p, graph) not in starts or last_vertex(p, graph) not in ends:
            report.bad_endpoints.append(p)
        if not min_length <= len(p) <= max_length:
            report.bad_lengths.append(p)
    for r in requirements:
        if not any(covers(p, r, graph) for p in paths):
            report.uncovered.append(r)
    for i, p in enumerate(paths):
        for j, q in enumerate(paths):
            if i != j and is_subpath(p, q, graph) and (p != q or i > j):
                report.nested.append((p, q))
    return report
