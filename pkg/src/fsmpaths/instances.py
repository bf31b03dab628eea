"""Artificial problem instances with requested structural properties."""

from __future__ import annotations

import math
import random
from collections import Counter
from dataclasses import asdict, dataclass, field

from .defects import mean_pair_distance
from .model import Edge, Graph, PriorityScale, PrioritySelection

CYCLE_CAP = 10_000


class SpecUnsatisfiable(ValueError):
    pass


@dataclass(frozen=True)
class InstanceSpec:
    vertex_count: int
    edge_count: int
    cycle_count: int = 0
    test_start_count: int = 1
    test_end_count: int = 1
    overlap_count: int = 0
    end_vertex_count: int = 1
    priority_scale: PriorityScale = PriorityScale()
    priority_band: PrioritySelection = PrioritySelection()
    priority_vertex_count: int = 0
    priority_edge_count: int = 0
    priority_clustered: bool = True
    seed: int | None = None
    name: str = ""

    def problems(self) -> list:
        out = []
        n, m = self.vertex_count, self.edge_count
        if n < 1:
            out.append("vertex_count must be >= 1")
        if m < n - 1:
            out.append(f"edge_count {m} < vertex_count - 1 = {n - 1}: cannot reach every vertex")
        if not 1 <= self.test_start_count <= n:
            out.append("test_start_count must lie in [1, vertex_count]")
        if not 1 <= self.test_end_count <= n:
            out.append("test_end_count must lie in [1, vertex_count]")
        if self.overlap_count > min(self.test_start_count, self.test_end_count):
            out.append("overlap_count exceeds min(test_start_count, test_end_count)")
        if self.test_end_count - self.overlap_count > n - self.test_start_count:
            out.append("not enough vertices outside the test starts for the requested test ends")
        if self.test_start_count + self.test_end_count - self.overlap_count > n:
            out.append("test starts and test ends do not fit into the vertex set")
        if self.end_vertex_count > self.test_end_count:
            out.append("end_vertex_count exceeds test_end_count")
        if self.priority_vertex_count > n or self.priority_edge_count > m:
            out.append("priority counts exceed element counts")
        if not self.priority_band.fits(self.priority_scale):
            out.append("priority band lies outside the priority scale")
        return out


def enumerate_cycles(graph: Graph, cap: int = CYCLE_CAP) -> list:
    """Lengths of the simple cycles (edge level, rotations counted once), stopping after ``cap``."""
    order = {v: i for i, v in enumerate(graph.vertices)}
    lengths = []
    for s in graph.vertices:
        rank = order[s]
        stack = [(s, 0, iter(graph.out_edges[s]))]
        on_path = {s}
        while stack:
            v, depth, it = stack[-1]
            e = next(it, None)
            if e is None:
                stack.pop()
                on_path.discard(v)
                continue
            w = e.target
            if w == s:
                lengths.append(depth + 1)
                if len(lengths) >= cap:
                    return lengths
            elif order[w] > rank and w not in on_path:
                on_path.add(w)
                stack.append((w, depth + 1, iter(graph.out_edges[w])))
    return lengths


@dataclass(frozen=True)
class PropertyReport:
    vertices: int
    edges: int
    cycles: int
    cycles_capped: bool
    avg_cycle_length: float
    end_vertices: int
    parallel_edges: int
    parallel_edge_groups: int
    avg_in_degree: float
    avg_out_degree: float
    avg_degree: float
    test_starts: int
    test_ends: int
    overlap: int
    priority_vertices: int
    priority_edges: int
    type1_defects: int
    type2_defects: int
    pair_avg_distance: float

    def as_dict(self) -> dict:
        return asdict(self)


def measure_properties(graph: Graph, selection: PrioritySelection = PrioritySelection(),
                       cycle_cap: int = CYCLE_CAP) -> PropertyReport:
    cycles = enumerate_cycles(graph, cycle_cap)
    groups = Counter((e.source, e.target) for e in graph.edges)
    parallel = [c for c in groups.values() if c > 1]
    n, m = len(graph.vertices), len(graph.edges)
    return PropertyReport(
        vertices=n,
        edges=m,
        cycles=len(cycles),
        cycles_capped=len(cycles) >= cycle_cap,
        avg_cycle_length=sum(cycles) / len(cycles) if cycles else 0.0,
        end_vertices=len(graph.end_vertices),
        parallel_edges=sum(parallel),
        parallel_edge_groups=len(parallel),
        avg_in_degree=m / n if n else 0.0,
        avg_out_degree=m / n if n else 0.0,
        avg_degree=2 * m / n if n else 0.0,
        test_starts=len(graph.test_starts),
        test_ends=len(graph.test_ends),
        overlap=len(graph.test_starts & graph.test_ends),
        priority_vertices=sum(1 for v in graph.vertices if graph.priority(v) in selection),
        priority_edges=sum(1 for e in graph.edges if e.priority in selection),
        type1_defects=len(graph.defects.type1),
        type2_defects=len(graph.defects.type2),
        pair_avg_distance=mean_pair_distance(graph, sorted(graph.defects.type2)),
    )


@dataclass
class _Builder:
    vertices: list
    arcs: list = field(default_factory=list)

    def reach(self):
        succ = {v: [] for v in self.vertices}
        for u, w in self.arcs:
            succ[u].append(w)
        out = {}
        for v in self.vertices:
            seen = {v}
            stack = [v]
            while stack:
                x = stack.pop()
                for y in succ[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            out[v] = seen
        return out

    def cycles(self, cap):
        g = Graph(
            vertices=self.vertices,
            edges=[Edge(f"x{i}", u, w) for i, (u, w) in enumerate(self.arcs)],
            start_vertex=self.vertices[0],
            test_starts={self.vertices[0]},
        )
        return len(enumerate_cycles(g, cap))


def _pick_priority_elements(rng, vertices, arcs, n_vertices, n_edges, clustered):
    """Choose which vertices and edges carry an in-band priority.

    Clustered selection grows random walks along the arcs, the way a whole
    feature area of a model tends to be marked important; priority vertices
    are then drawn from the walked vertices first. Otherwise both are plain
    uniform samples.
    """
    if not clustered:
        return set(rng.sample(range(len(arcs)), n_edges)), set(rng.sample(vertices, n_vertices))
    out = {v: [] for v in vertices}
    for i, (u, _) in enumerate(arcs):
        out[u].append(i)
    edges, touched = set(), []
    while len(edges) < n_edges:
        v = rng.choice(vertices)
        for _ in range(rng.randint(2, 5)):
            free = [i for i in out[v] if i not in edges]
            if not free or len(edges) >= n_edges:
                break
            i = rng.choice(free)
            edges.add(i)
            touched.extend(a for a in arcs[i] if a not in touched)
            v = arcs[i][1]
    pool = touched + [v for v in rng.sample(vertices, len(vertices)) if v not in touched]
    return edges, set(pool[:n_vertices])


def _floor3(x):
    return math.floor(x * 1000) / 1000


def generate(spec: InstanceSpec) -> Graph:
    """Build a graph whose cardinalities match ``spec`` exactly and whose cycle count is matched best-effort.

    Construction: a random spanning arborescence rooted at the start vertex
    (so everything is reachable from it), back edges until the cycle target
    is met, then acyclic surplus edges. Surplus edges first go to vertices
    that cannot yet reach any test end, so most requirements fit some test
    path.
    """
    problems = spec.problems()
    if problems:
        raise SpecUnsatisfiable("; ".join(problems))
    rng = random.Random(spec.seed)
    n, m = spec.vertex_count, spec.edge_count
    vertices = [f"s{i}" for i in range(n)]
    start = vertices[0]
    b = _Builder(vertices)

    order = [start] + rng.sample(vertices[1:], n - 1)
    position = {v: i for i, v in enumerate(order)}
    for i in range(1, n):
        b.arcs.append((rng.choice(order[:i]), order[i]))

    test_starts = [start] + rng.sample(vertices[1:], spec.test_start_count - 1)
    outside = sorted((v for v in vertices if v not in test_starts), key=position.get)
    # test ends outside the starts come from the deep half of the arborescence
    k = spec.test_end_count - spec.overlap_count
    deep = outside[len(outside) // 2:] if len(outside) - len(outside) // 2 >= k else outside
    test_ends = rng.sample(test_starts, spec.overlap_count) + rng.sample(deep, k)
    end_vertices = rng.sample(test_ends, spec.end_vertex_count)
    ends = set(test_ends)

    surplus = m - (n - 1)
    cycles = 0
    attempts = 0
    while cycles < spec.cycle_count and surplus > 0 and attempts < 50 * (spec.cycle_count + 1):
        attempts += 1
        reach = b.reach()
        u = rng.choice(vertices)
        closers = [w for w in vertices if u in reach[w]]
        w = rng.choice(closers)
        b.arcs.append((u, w))
        count = b.cycles(spec.cycle_count + 1)
        if count <= spec.cycle_count:
            cycles = count
            surplus -= 1
        else:
            b.arcs.pop()

    for u in order:
        if surplus == 0:
            break
        reach = b.reach()
        if reach[u] & ends:
            continue
        targets = [w for w in vertices if reach[w] & ends and u not in reach[w]]
        if targets:
            b.arcs.append((u, rng.choice(targets)))
            surplus -= 1

    while surplus > 0:
        reach = b.reach()
        existing = set(b.arcs)
        acyclic = [(u, w) for u in vertices for w in vertices if u != w and u not in reach[w]]
        fresh = [a for a in acyclic if a not in existing]
        pool = fresh or acyclic or [(u, w) for u in vertices for w in vertices]
        b.arcs.append(rng.choice(pool))
        surplus -= 1

    rng.shuffle(b.arcs)
    scale, band = spec.priority_scale, spec.priority_band
    prio_edges, prio_vertices = _pick_priority_elements(
        rng, vertices, b.arcs, spec.priority_vertex_count, spec.priority_edge_count, spec.priority_clustered
    )

    def draw(selected):
        if selected:
            return _floor3(rng.uniform(band.select_min, band.select_max))
        return _floor3(scale.scale_min + (band.select_min - scale.scale_min) * rng.random())

    edges = [
        Edge(f"e{i}", u, w, label=f"t{i}", priority=draw(i in prio_edges))
        for i, (u, w) in enumerate(b.arcs)
    ]
    vertex_priority = {v: draw(v in prio_vertices) for v in vertices}

    return Graph(
        vertices=vertices,
        edges=edges,
        start_vertex=start,
        end_vertices=frozenset(end_vertices),
        test_starts=frozenset(test_starts),
        test_ends=frozenset(test_ends),
        vertex_priority=vertex_priority,
        priority_scale=scale,
        name=spec.name or f"instance-{spec.seed}",
    )


def random_spec(seed, vertex_range=(10, 30), edge_range=(19, 60), name=None) -> InstanceSpec:
    """Sample a spec with the structural mix of the experimental corpus (small cycle counts, a few
    test starts/ends, roughly a quarter of vertices and edges prioritized)."""
    rng = random.Random(seed)
    n = rng.randint(*vertex_range)
    m = rng.randint(max(edge_range[0], n - 1), max(edge_range[1], n - 1))
    m = min(m, max(n - 1, 2 * n))
    ts = rng.randint(1, 3)
    te = rng.randint(1, 3)
    overlap = rng.randint(0, min(ts, te, 1))
    return InstanceSpec(
        vertex_count=n,
        edge_count=m,
        cycle_count=rng.randint(0, 6),
        test_start_count=ts,
        test_end_count=te,
        overlap_count=overlap,
        end_vertex_count=rng.randint(1, te),
        priority_vertex_count=max(0, round(n * rng.uniform(0.15, 0.35))),
        priority_edge_count=max(2, round(m * rng.uniform(0.2, 0.35))),
        seed=seed,
        name=name or f"gen-{seed}",
    )
