"""Simulated defects and the path-set quality metrics."""

from __future__ import annotations

import random
from collections import deque
from dataclasses import asdict, dataclass

from .model import DefectSet, Graph, PrioritySelection


class InsufficientCandidates(ValueError):
    pass


@dataclass(frozen=True)
class MetricsReport:
    steps: int = 0
    path_count: int = 0
    avg_steps: float = 0.0
    unique_steps: int = 0
    ut: float = 0.0
    type1_activated: int = 0
    type2_activated: int = 0
    eff1: float = 0.0
    eff2: float = 0.0

    def as_dict(self) -> dict:
        return asdict(self)


def _pair_activated(edges, e1, e2) -> bool:
    try:
        i = edges.index(e1)
    except ValueError:
        return False
    return e2 in edges[i + 1:]


def activate_defects(paths, defects: DefectSet, count_repeats: bool = True):
    """Return ``(type1_activated, type2_activated)`` summed over paths.

    Type 1 counts every traversal of a defective edge unless
    ``count_repeats`` is off, in which case a path activates each edge at
    most once. Type 2 counts at most once per pair and path.
    """
    t1 = t2 = 0
    for p in paths:
        edges = p.edges
        for e in defects.type1:
            n = edges.count(e)
            t1 += n if count_repeats else min(n, 1)
        for e1, e2 in defects.type2:
            t2 += _pair_activated(edges, e1, e2)
    return t1, t2


def compute_metrics(paths, defects: DefectSet = DefectSet(), count_repeats: bool = True) -> MetricsReport:
    paths = list(paths)
    if not paths:
        return MetricsReport()
    steps = sum(len(p) for p in paths)
    unique = len({e for p in paths for e in p.edges})
    t1, t2 = activate_defects(paths, defects, count_repeats)
    return MetricsReport(
        steps=steps,
        path_count=len(paths),
        avg_steps=steps / len(paths),
        unique_steps=unique,
        ut=steps / unique if unique else 0.0,
        type1_activated=t1,
        type2_activated=t2,
        eff1=t1 / steps if steps else 0.0,
        eff2=t2 / steps if steps else 0.0,
    )


def edge_distances(graph: Graph, edge_id: str) -> dict:
    """Edges reachable after ``edge_id`` mapped to the number of edges strictly between them."""
    start = graph.edge(edge_id).target
    vertex_dist = {start: 0}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for e in graph.out_edges[v]:
            if e.target not in vertex_dist:
                vertex_dist[e.target] = vertex_dist[v] + 1
                queue.append(e.target)
    return {e.id: vertex_dist[e.source] for e in graph.edges if e.source in vertex_dist}


def type2_candidates(graph: Graph) -> list:
    pairs = []
    for e1 in graph.edges:
        reach = edge_distances(graph, e1.id)
        pairs.extend((e1.id, e2.id) for e2 in graph.edges if e2.id != e1.id and e2.id in reach)
    return pairs


def mean_pair_distance(graph: Graph, pairs) -> float:
    pairs = list(pairs)
    if not pairs:
        return 0.0
    return sum(edge_distances(graph, e1)[e2] for e1, e2 in pairs) / len(pairs)


def plant_random_defects(
    graph: Graph,
    type1_count: int,
    type2_count: int,
    seed=None,
    priority_weight: float = 1.0,
    selection: PrioritySelection = PrioritySelection(),
) -> DefectSet:
    """Sample defects without replacement, deterministically per seed.

    Type 1 edges are uniform by default; ``priority_weight`` > 1 makes edges
    whose priority lies in ``selection`` that many times more likely to be
    picked (weighted sampling without replacement). Type 2 pairs are uniform
    over ordered pairs of distinct edges where the second is reachable
    after the first.
    """
    if priority_weight <= 0:
        raise ValueError("priority_weight must be positive")
    rng = random.Random(seed)
    if type1_count > len(graph.edges):
        raise InsufficientCandidates(f"{type1_count} type 1 defects requested, graph has {len(graph.edges)} edges")
    keyed = []
    for e in graph.edges:
        w = priority_weight if e.priority in selection else 1.0
        keyed.append((rng.random() ** (1.0 / w), e.id))
    keyed.sort(key=lambda kv: -kv[0])
    type1 = [eid for _, eid in keyed[:type1_count]]
    pairs = type2_candidates(graph) if type2_count else []
    if type2_count > len(pairs):
        raise InsufficientCandidates(
            f"{type2_count} type 2 defects requested, only {len(pairs)} connected edge pairs exist"
        )
    type2 = rng.sample(pairs, type2_count)
    return DefectSet(frozenset(type1), frozenset(type2))
