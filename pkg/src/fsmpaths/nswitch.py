"""N-switch style baseline: enumerate every bounded-length path, then keep greedily."""

from __future__ import annotations

from .model import Graph, PrioritySelection, TestPath
from .requirements import Coverage, covers, generate_requirements

DEFAULT_ENUM_CAP = 1_000_000


class EnumerationOverflow(RuntimeError):
    pass


def enumerate_paths(graph: Graph, min_length: int, max_length: int, enum_cap: int = DEFAULT_ENUM_CAP):
    """All paths with ``min_length <= length <= max_length``, grouped by first edge.

    Order is edge declaration order for the first edge, then depth-first
    extension in declaration order. Every generated partial path counts
    towards ``enum_cap``.
    """
    if min_length < 1 or min_length > max_length:
        raise ValueError(f"need 1 <= min_length <= max_length, got {min_length}, {max_length}")
    produced = 0
    out = []
    for first in graph.edges:
        stack = [(first.id,)]
        while stack:
            path = stack.pop()
            produced += 1
            if produced > enum_cap:
                raise EnumerationOverflow(
                    f"more than {enum_cap} partial paths of length <= {max_length}; "
                    "raise the cap or shrink the length range"
                )
            if len(path) >= min_length:
                out.append(path)
            if len(path) < max_length:
                tail = graph.edge(path[-1]).target
                # reversed so the first declared edge is popped first
                for e in reversed(graph.out_edges[tail]):
                    stack.append(path + (e.id,))
    return out


def nswitch_reduce(
    graph: Graph,
    min_length: int,
    max_length: int,
    criterion: Coverage = Coverage.BASIC,
    selection: PrioritySelection = PrioritySelection(),
    enum_cap: int = DEFAULT_ENUM_CAP,
) -> list:
    starts, ends = graph.path_starts, graph.path_ends
    requirements = generate_requirements(graph, criterion, selection)
    if not requirements:
        return []
    remaining = set(requirements)
    kept = []
    for edges in enumerate_paths(graph, min_length, max_length, enum_cap):
        if graph.edge(edges[0]).source not in starts or graph.edge(edges[-1]).target not in ends:
            continue
        p = TestPath(edges=edges)
        hit = {r for r in remaining if covers(p, r, graph)}
        if hit:
            remaining -= hit
            kept.append(p)
            if not remaining:
                break
    return kept
