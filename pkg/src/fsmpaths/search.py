"""Shortest test path through a requirement with a length inside ``[min_length, max_length]``.

Two breadth-first frontiers grow away from the requirement: prefixes
backwards from its first vertex towards a test start, suffixes forwards from
its last vertex towards a test end. Any prefix and suffix can be glued around
the requirement, so each side only needs one representative path per length
(``start_map`` / ``end_map``), and partial paths that reach the same vertex
with the same length are expanded once.
"""

from __future__ import annotations

import math
from collections import deque

from .model import Graph, TestPath
from .requirements import Requirement

INF = math.inf


def requirement_endpoints(requirement: Requirement, graph: Graph):
    if requirement.is_vertex:
        return requirement.vertex, requirement.vertex
    return graph.edge(requirement.edges[0]).source, graph.edge(requirement.edges[-1]).target


def _best_partner(length, body, other_map, min_length, max_length):
    lo = min_length - body - length
    hi = max_length - body - length
    fits = [k for k in other_map if lo <= k <= hi]
    return min(fits) if fits else None


def find_path_in_range(requirement: Requirement, graph: Graph, min_length: int, max_length: int):
    """Return a minimum-length valid test path containing ``requirement``, or ``None``.

    A valid test path starts in a test start vertex, ends in a test end
    vertex and has between ``min_length`` and ``max_length`` edges.
    """
    if min_length < 1 or min_length > max_length:
        raise ValueError(f"need 1 <= min_length <= max_length, got {min_length}, {max_length}")
    body = requirement.edges
    b = len(body)
    if b > max_length:
        return None
    first, last = requirement_endpoints(requirement, graph)
    starts, ends = graph.path_starts, graph.path_ends

    start_queue = deque([(first, ())])  # (first vertex of prefix, prefix edges)
    end_queue = deque([(last, ())])  # (last vertex of suffix, suffix edges)
    start_seen = {(first, 0)}
    end_seen = {(last, 0)}
    start_map, end_map = {}, {}
    best = None  # (total length, prefix, suffix)

    def shortest(m):
        # an empty map must not prune anything yet
        return min(m) if m else 0

    def consider(prefix, suffix):
        nonlocal best
        total = len(prefix) + b + len(suffix)
        if best is None or total < best[0]:
            best = (total, prefix, suffix)

    def done():
        if best is None:
            return False
        sf = len(start_queue[0][1]) if start_queue else INF
        ef = len(end_queue[0][1]) if end_queue else INF
        s_min = min(min(start_map, default=INF), sf)
        e_min = min(min(end_map, default=INF), ef)
        bound = max(min_length, min(sf + b + e_min, ef + b + s_min))
        return best[0] <= bound

    while start_queue or end_queue:
        if start_queue:
            v_first, prefix = start_queue.popleft()
            k = len(prefix)
            if k + b <= max_length:
                if v_first in starts:
                    partner = _best_partner(k, b, end_map, min_length, max_length)
                    if partner is not None:
                        consider(prefix, end_map[partner])
                    if k + b + shortest(end_map) <= max_length and k not in start_map:
                        start_map[k] = prefix
                if k + 1 + b + shortest(end_map) <= max_length:
                    for e in graph.in_edges.get(v_first, ()):
                        key = (e.source, k + 1)
                        if key not in start_seen:
                            start_seen.add(key)
                            start_queue.append((e.source, (e.id,) + prefix))
            if done():
                break
        if end_queue:
            v_last, suffix = end_queue.popleft()
            k = len(suffix)
            if k + b <= max_length:
                if v_last in ends:
                    partner = _best_partner(k, b, start_map, min_length, max_length)
                    if partner is not None:
                        consider(start_map[partner], suffix)
                    if k + b + shortest(start_map) <= max_length and k not in end_map:
                        end_map[k] = suffix
                if k + 1 + b + shortest(start_map) <= max_length:
                    for e in graph.out_edges.get(v_last, ()):
                        key = (e.target, k + 1)
                        if key not in end_seen:
                            end_seen.add(key)
                            end_queue.append((e.target, suffix + (e.id,)))
            if done():
                break

    if best is None:
        return None
    _, prefix, suffix = best
    return TestPath(edges=prefix + body + suffix)
