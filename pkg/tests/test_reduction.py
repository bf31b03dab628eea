import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from fsmpaths.model import TestPath
from fsmpaths.reduction import (
    CoverageMatrix, GaConfig, SaConfig, chvatal_universe, enforce_no_subpath_rule, ga_fitness,
    initial_temperature, reduce, reduce_chvatal, reduce_ga, reduce_none, reduce_random, reduce_sa,
    reduce_sorted, repair, sa_energy,
)
from fsmpaths.requirements import Requirement
from oracles import exact_cover_size, random_matrix

S = Requirement.sequence


def matrix(*cover_sets, n_req=None):
    n_req = n_req if n_req is not None else 1 + max((max(c) for c in cover_sets if c), default=-1)
    paths = [TestPath((f"p{i}",)) for i in range(len(cover_sets))]
    reqs = [Requirement.visit(f"r{j}") for j in range(n_req)]
    return CoverageMatrix(paths, reqs, [frozenset(c) for c in cover_sets])


def names(paths):
    return [p.edges[0] for p in paths]


def covered(m, paths):
    idx = {p: i for i, p in enumerate(m.paths)}
    return frozenset().union(*(m.covers[idx[p]] for p in paths)) if paths else frozenset()


def test_none_is_identity():
    m = matrix({0}, {1}, {0, 1})
    assert reduce_none(m) == list(m.paths)
    assert reduce_none(matrix()) == []
    assert names(reduce_none(matrix(set(), n_req=2))) == ["p0"]


def test_random_trace():
    m = matrix({0, 1}, {1})
    for seed in range(20):
        out = reduce_random(m, seed)
        assert covered(m, out) == {0, 1}
        # p1 first keeps both; p0 first makes p1 redundant
        assert names(out) in (["p0"], ["p1", "p0"])
    assert {tuple(names(reduce_random(m, s))) for s in range(20)} == {("p0",), ("p1", "p0")}
    assert reduce_random(m, 5) == reduce_random(m, 5)


def test_sorted_examples():
    assert names(reduce_sorted(matrix({0, 1, 2}, {0}, {3}))) == ["p0", "p2"]
    assert names(reduce_sorted(matrix({0, 1}, {0, 1}, {0, 1}))) == ["p0"]
    assert reduce_sorted(matrix(set(), set(), n_req=0)) == []


def test_sorted_order_is_static():
    # dynamic greedy would take p2 after p0; the static order takes p1 first
    assert names(reduce_sorted(matrix({0, 1, 2, 3}, {0, 1, 4}, {4, 5}))) == ["p0", "p1", "p2"]


def test_chvatal_drops_contained_requirement(g3):
    reqs = [S("a"), S("a", "b")]
    m = CoverageMatrix.build(g3, [TestPath(("a", "b", "c"))], reqs)
    assert chvatal_universe(m) == {1}
    assert reduce_chvatal(m) == [TestPath(("a", "b", "c"))]


def test_chvatal_keeps_requirement_when_container_uncoverable(g3):
    reqs = [S("a"), S("a", "b")]
    m = CoverageMatrix.build(g3, [TestPath(("a",))], reqs)
    assert chvatal_universe(m) == {0}


def test_chvatal_examples():
    assert names(reduce_chvatal(matrix({0}, {1}))) == ["p0", "p1"]
    assert names(reduce_chvatal(matrix({0, 1, 2}, {0, 1}, {2, 3}))) == ["p0", "p2"]


def test_chvatal_reevaluates_gain():
    # static order would also keep p1; greedy re-counting does not
    assert names(reduce_chvatal(matrix({0, 1, 2, 3}, {0, 1, 4}, {4, 5}))) == ["p0", "p2"]


def test_ga_fitness_examples():
    m = matrix({0, 1}, {2}, {0}, set(), n_req=3)
    assert ga_fitness((1, 1, 0, 0), m) == 17
    assert ga_fitness((0, 0, 0, 0), m) == 4
    assert sa_energy((1, 1, 0, 0), m) == 2
    with pytest.raises(ValueError):
        ga_fitness((1,), m)


def test_initial_temperature():
    assert initial_temperature(10) == pytest.approx(237.73, abs=0.01)


@pytest.mark.parametrize("method", ["ga", "sa"])
def test_single_full_path_wins(method):
    m = matrix({0}, {0, 1, 2}, {1}, {2}, {0, 2})
    assert names(reduce(m, method, seed=3)) == ["p1"]


@pytest.mark.parametrize("method", ["random", "ga", "sa"])
def test_seeded_determinism(method):
    rng = random.Random(11)
    cover_sets, n_req = random_matrix(rng, 12, 12)
    m = matrix(*cover_sets, n_req=n_req)
    assert reduce(m, method, seed=42) == reduce(m, method, seed=42)


def test_ga_config_is_checked():
    with pytest.raises(ValueError):
        GaConfig(initial_probability_to_set_gene=1.5)
    with pytest.raises(ValueError):
        SaConfig(alpha=1.0)
    assert GaConfig() == GaConfig(30, 0.2, 0.4, 0.6, 100, 40)


def test_ga_tiny_chromosomes():
    # fewer than three genes: crossover cannot pick two inner points
    assert names(reduce_ga(matrix({0}, {1}), seed=1)) in (["p0", "p1"], ["p1", "p0"])
    assert names(reduce_ga(matrix({0}), seed=1)) == ["p0"]


def test_repair_completes_cover():
    m = matrix({0}, {1, 2}, {2})
    assert repair(m, []) == [1, 0]
    # p0 and p1 each add one; the tie goes to the lower index
    assert repair(m, [2]) == [2, 0, 1]


def test_unknown_method():
    with pytest.raises(ValueError):
        reduce(matrix({0}), "magic")


def test_matrix_checks_indices():
    with pytest.raises(ValueError):
        CoverageMatrix([TestPath(("x",))], [], [{0}])


def test_no_subpath_rule_examples():
    ab, abc, bc = TestPath(("a", "b")), TestPath(("a", "b", "c")), TestPath(("b", "c"))
    assert enforce_no_subpath_rule([ab, abc]) == [abc]
    assert enforce_no_subpath_rule([ab, bc]) == [ab, bc]
    assert enforce_no_subpath_rule([ab, ab]) == [ab]


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from(["none", "random", "sorted", "chvatal", "ga", "sa"]))
def test_every_reduction_preserves_coverage(seed, method):
    rng = random.Random(seed)
    cover_sets, n_req = random_matrix(rng, 10, 10)
    m = matrix(*cover_sets, n_req=n_req)
    out = reduce(m, method, seed=seed)
    assert covered(m, out) == m.coverable
    assert len(out) <= len(m.paths)
    assert len(set(out)) == len(out)
    opt = exact_cover_size(cover_sets, m.coverable)
    assert len(out) >= opt


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_feasible_individuals_outscore_infeasible(seed):
    rng = random.Random(seed)
    cover_sets, n_req = random_matrix(rng, 8, 8)
    m = matrix(*cover_sets, n_req=n_req)
    n = len(cover_sets)
    full = frozenset(range(n_req))
    scores = {True: [], False: []}
    for bits in itertools.product((0, 1), repeat=n):
        cov = frozenset().union(*(cover_sets[i] for i in range(n) if bits[i])) if any(bits) else frozenset()
        scores[cov == full].append(ga_fitness(bits, m))
        assert ga_fitness(bits, m) + sa_energy(bits, m) == n_req * (n + 1) + n
    if scores[True] and scores[False]:
        assert min(scores[True]) > max(scores[False])

