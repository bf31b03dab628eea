"""SUT model: a prioritized directed multigraph plus test paths over it."""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence


@dataclass(frozen=True)
class PriorityScale:
    scale_min: float = 0.0
    scale_max: float = 3.0

    def __post_init__(self):
        if not self.scale_min < self.scale_max:
            raise ValueError(f"scale_min must be < scale_max, got {self.scale_min}, {self.scale_max}")

    def contains(self, value: float) -> bool:
        return self.scale_min <= value <= self.scale_max


@dataclass(frozen=True)
class PrioritySelection:
    """Closed priority band ``[select_min, select_max]`` that marks elements as required."""

    select_min: float = 2.0
    select_max: float = 3.0

    def __post_init__(self):
        if self.select_min > self.select_max:
            raise ValueError(f"select_min must be <= select_max, got {self.select_min}, {self.select_max}")

    def __contains__(self, value: float) -> bool:
        return self.select_min <= value <= self.select_max

    def fits(self, scale: PriorityScale) -> bool:
        return scale.scale_min <= self.select_min and self.select_max <= scale.scale_max


@dataclass(frozen=True)
class Edge:
    id: str
    source: str
    target: str
    label: str = ""
    priority: float = 0.0


@dataclass(frozen=True)
class DefectSet:
    """Simulated defects: single edges (type 1) and ordered edge pairs (type 2)."""

    type1: frozenset = frozenset()
    type2: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "type1", frozenset(self.type1))
        object.__setattr__(self, "type2", frozenset(tuple(p) for p in self.type2))

    def __bool__(self):
        return bool(self.type1 or self.type2)


@dataclass(frozen=True)
class TestPath:
    """A walk through the model as an edge sequence.

    Zero-length paths (used only for vertex requirements) carry ``vertex``
    and no edges.
    """

    __test__ = False  # keep pytest from collecting this class

    edges: tuple = ()
    vertex: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(self.edges))
        if not self.edges and self.vertex is None:
            raise ValueError("a zero-length path needs a vertex")
        if self.edges and self.vertex is not None:
            raise ValueError("vertex is only meaningful for zero-length paths")

    def __len__(self):
        return len(self.edges)

    def __repr__(self):
        if not self.edges:
            return f"TestPath(vertex={self.vertex!r})"
        return f"TestPath({list(self.edges)!r})"


@dataclass(frozen=True, eq=False)
class Graph:
    """Directed multigraph with priorities and test start/end vertex sets.

    ``vertices`` and ``edges`` keep declaration order; every algorithm that
    iterates over them relies on that order for determinism.
    """

    vertices: tuple
    edges: tuple
    start_vertex: str
    end_vertices: frozenset = frozenset()
    test_starts: frozenset = frozenset()
    test_ends: frozenset = frozenset()
    vertex_priority: Mapping[str, float] = field(default_factory=dict)
    priority_scale: PriorityScale = PriorityScale()
    defects: DefectSet = DefectSet()
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))
        for attr in ("end_vertices", "test_starts", "test_ends"):
            object.__setattr__(self, attr, frozenset(getattr(self, attr)))
        object.__setattr__(self, "vertex_priority", dict(self.vertex_priority))

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.name == other.name
            and self.vertices == other.vertices
            and self.edges == other.edges
            and self.start_vertex == other.start_vertex
            and self.end_vertices == other.end_vertices
            and self.test_starts == other.test_starts
            and self.test_ends == other.test_ends
            and {v: self.priority(v) for v in self.vertices}
            == {v: other.priority(v) for v in other.vertices}
            and self.priority_scale == other.priority_scale
            and self.defects == other.defects
        )

    __hash__ = None

    @property
    def labels(self) -> set:
        return {e.label for e in self.edges}

    @cached_property
    def edge_by_id(self) -> dict:
        return {e.id: e for e in self.edges}

    @cached_property
    def out_edges(self) -> dict:
        out = defaultdict(list)
        for e in self.edges:
            out[e.source].append(e)
        return {v: tuple(out[v]) for v in self.vertices}

    @cached_property
    def in_edges(self) -> dict:
        inc = defaultdict(list)
        for e in self.edges:
            inc[e.target].append(e)
        return {v: tuple(inc[v]) for v in self.vertices}

    def priority(self, vertex: str) -> float:
        return self.vertex_priority.get(vertex, 0.0)

    def edge(self, edge_id: str) -> Edge:
        return self.edge_by_id[edge_id]

    @property
    def path_starts(self) -> frozenset:
        return self.test_starts | {self.start_vertex}

    @property
    def path_ends(self) -> frozenset:
        return self.test_ends | self.end_vertices

    def reachable_from(self, vertex: str) -> set:
        seen = {vertex}
        stack = [vertex]
        while stack:
            v = stack.pop()
            for e in self.out_edges.get(v, ()):
                if e.target not in seen:
                    seen.add(e.target)
                    stack.append(e.target)
        return seen


def path_vertices(path: TestPath, graph: Graph) -> list:
    if not path.edges:
        return [path.vertex]
    first = graph.edge(path.edges[0])
    return [first.source] + [graph.edge(e).target for e in path.edges]


def first_vertex(path: TestPath, graph: Graph) -> str:
    return path.vertex if not path.edges else graph.edge(path.edges[0]).source


def last_vertex(path: TestPath, graph: Graph) -> str:
    return path.vertex if not path.edges else graph.edge(path.edges[-1]).target


def contains_sequence(container: Sequence, window: Sequence) -> bool:
    """True iff ``window`` occurs as a contiguous run inside ``container``."""
    n, k = len(container), len(window)
    if k == 0:
        return True
    if k > n:
        return False
    first = window[0]
    for i in range(n - k + 1):
        if container[i] == first and tuple(container[i:i + k]) == tuple(window):
            return True
    return False


def is_subpath(candidate: TestPath, container: TestPath, graph: Graph) -> bool:
    """Contiguous sub-path test; a zero-length path is contained in any path visiting its vertex."""
    if not candidate.edges:
        return candidate.vertex in path_vertices(container, graph)
    return contains_sequence(container.edges, candidate.edges)


def is_well_formed(path: TestPath, graph: Graph) -> bool:
    if not path.edges:
        return path.vertex in graph.out_edges
    try:
        edges = [graph.edge(e) for e in path.edges]
    except KeyError:
        return False
    return all(a.target == b.source for a, b in zip(edges, edges[1:]))


def validate(graph: Graph) -> list:
    """Return a list of human-readable violations; empty means the model is well formed."""
    problems = []
    vertex_set = set(graph.vertices)
    if len(vertex_set) != len(graph.vertices):
        problems.append("duplicate vertex id")
    edge_ids = [e.id for e in graph.edges]
    if len(set(edge_ids)) != len(edge_ids):
        problems.append("duplicate edge id")
    for e in graph.edges:
        if e.source not in vertex_set or e.target not in vertex_set:
            problems.append(f"dangling edge endpoint: {e.id} ({e.source} -> {e.target})")
    if graph.start_vertex not in vertex_set:
        problems.append(f"start vertex {graph.start_vertex!r} not in vertices")
    if graph.start_vertex not in graph.test_starts:
        problems.append("start_vertex not in test_starts")
    if not graph.end_vertices <= graph.test_ends:
        problems.append("end_vertices ⊄ test_ends")
    if not graph.test_starts <= vertex_set:
        problems.append("test_starts ⊄ vertices")
    if not graph.test_ends <= vertex_set:
        problems.append("test_ends ⊄ vertices")
    unknown = set(graph.vertex_priority) - vertex_set
    if unknown:
        problems.append(f"priority given for unknown vertices: {sorted(unknown)}")
    scale = graph.priority_scale
    for v in graph.vertices:
        if not scale.contains(graph.priority(v)):
            problems.append(f"vertex {v} priority {graph.priority(v)} outside scale")
    for e in graph.edges:
        if not scale.contains(e.priority):
            problems.append(f"edge {e.id} priority {e.priority} outside scale")
    problems.extend(_defect_problems(graph))
    return problems


def _defect_problems(graph: Graph) -> list:
    problems = []
    known = graph.edge_by_id
    for e in sorted(graph.defects.type1):
        if e not in known:
            problems.append(f"type 1 defect on unknown edge {e}")
    for e1, e2 in sorted(graph.defects.type2):
        if e1 not in known or e2 not in known:
            problems.append(f"type 2 defect on unknown edge ({e1}, {e2})")
        elif known[e2].source not in graph.reachable_from(known[e1].target):
            problems.append(f"type 2 defect ({e1}, {e2}) has no path from {e1} to {e2}")
    return problems


def make_graph(
    edges: Iterable,
    start: str,
    test_starts: Iterable = (),
    test_ends: Iterable = (),
    end_vertices: Iterable = (),
    vertices: Iterable | None = None,
    vertex_priority: Mapping | None = None,
    **kwargs,
) -> Graph:
    """Convenience builder taking ``(id, source, target[, priority])`` tuples."""
    built = []
    for spec in edges:
        if isinstance(spec, Edge):
            built.append(spec)
            continue
        eid, src, dst, *rest = spec
        built.append(Edge(eid, src, dst, label=eid, priority=rest[0] if rest else 0.0))
    if vertices is None:
        seen = {start: None}
        for e in built:
            seen.setdefault(e.source)
            seen.setdefault(e.target)
        vertices = list(seen)
    test_starts = set(test_starts) | {start}
    return Graph(
        vertices=tuple(vertices),
        edges=tuple(built),
        start_vertex=start,
        end_vertices=frozenset(end_vertices),
        test_starts=frozenset(test_starts),
        test_ends=frozenset(test_ends) | frozenset(end_vertices),
        vertex_priority=vertex_priority or {},
        **kwargs,
    )
