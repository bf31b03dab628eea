"""Independent brute-force references used to freeze expected values.

Nothing here imports the search or reduction code; only the plain model
types are shared.
"""

import itertools
import random

from fsmpaths.model import make_graph


def all_walks(graph, max_length):
    """Every edge walk of length 1..max_length, as tuples of edge ids."""
    out = []
    frontier = [(e.id,) for e in graph.edges]
    while frontier:
        out.extend(frontier)
        nxt = []
        for w in frontier:
            if len(w) == max_length:
                continue
            tail = graph.edge(w[-1]).target
            nxt.extend(w + (e.id,) for e in graph.edges if e.source == tail)
        frontier = nxt
    return out


def walk_vertices(graph, walk):
    return [graph.edge(walk[0]).source] + [graph.edge(e).target for e in walk]


def satisfies(graph, walk, req, lo, hi):
    vs = walk_vertices(graph, walk)
    if not lo <= len(walk) <= hi:
        return False
    if vs[0] not in graph.test_starts | {graph.start_vertex}:
        return False
    if vs[-1] not in graph.test_ends | graph.end_vertices:
        return False
    if req.vertex is not None:
        return req.vertex in vs
    k = len(req.edges)
    return any(walk[i:i + k] == req.edges for i in range(len(walk) - k + 1))


def min_path_length(graph, req, lo, hi):
    """Oracle minimum length of a valid test path containing ``req``, or None."""
    lengths = [len(w) for w in all_walks(graph, hi) if satisfies(graph, w, req, lo, hi)]
    return min(lengths) if lengths else None


def exact_cover_size(cover_sets, universe):
    """Smallest number of sets whose union contains ``universe`` (exhaustive)."""
    universe = set(universe)
    if not universe:
        return 0
    n = len(cover_sets)
    for k in range(1, n + 1):
        for combo in itertools.combinations(range(n), k):
            if universe <= set().union(*(cover_sets[i] for i in combo)):
                return k
    return None


def harmonic(n):
    return sum(1.0 / k for k in range(1, n + 1))


def count_walks_dp(graph, max_length):
    """Number of edge walks of length 1..max_length, by dynamic programming on length."""
    ending_at = {v: 0 for v in graph.vertices}
    for e in graph.edges:
        ending_at[e.target] += 1
    total = sum(ending_at.values())
    for _ in range(max_length - 1):
        nxt = {v: 0 for v in graph.vertices}
        for e in graph.edges:
            nxt[e.target] += ending_at[e.source]
        ending_at = nxt
        total += sum(ending_at.values())
    return total


def random_graph(rng: random.Random, max_vertices=10, max_edges=None):
    n = rng.randint(2, max_vertices)
    vs = [f"v{i}" for i in range(n)]
    m = rng.randint(1, max_edges or 2 * n)
    edges = [(f"e{i}", rng.choice(vs), rng.choice(vs)) for i in range(m)]
    start = vs[0]
    ts = set(rng.sample(vs, rng.randint(1, min(3, n))))
    te = set(rng.sample(vs, rng.randint(1, min(3, n))))
    return make_graph(edges, start, test_starts=ts, test_ends=te, end_vertices=set(list(te)[:1]), vertices=vs)


def random_matrix(rng: random.Random, max_paths=15, max_reqs=15):
    n_p = rng.randint(1, max_paths)
    n_r = rng.randint(1, max_reqs)
    density = rng.uniform(0.1, 0.5)
    return [frozenset(r for r in range(n_r) if rng.random() < density) for _ in range(n_p)], n_r
