import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import triangle
from fsmpaths.model import first_vertex, last_vertex, make_graph
from fsmpaths.requirements import Requirement, covers
from fsmpaths.search import find_path_in_range
from oracles import min_path_length, random_graph

V, S = Requirement.visit, Requirement.sequence


@pytest.mark.parametrize("hi", [2, 3, 4, 5, 6])
def test_b_on_triangle(g3, hi):
    assert find_path_in_range(S("b"), g3, 2, hi).edges == ("a", "b")


def test_vertex_visit_as_first_vertex(g3):
    assert find_path_in_range(V("A"), g3, 2, 2).edges == ("a", "b")


def test_c_unreachable_in_three(g3):
    assert find_path_in_range(S("c"), g3, 1, 3) is None


def test_min_length_forces_a_lap(g3):
    # the shortest A->C walk through b with at least 4 edges goes around once
    assert find_path_in_range(S("b"), g3, 4, 5).edges == ("a", "b", "c", "a", "b")
    assert find_path_in_range(S("b"), g3, 3, 4) is None
    assert find_path_in_range(S("c"), g3, 1, 5).edges == ("a", "b", "c", "a", "b")


def test_pair_requirement(g3):
    assert find_path_in_range(S("c", "a"), g3, 1, 6).edges == ("a", "b", "c", "a", "b")
    assert find_path_in_range(S("c", "a"), g3, 1, 4) is None


def test_requirement_longer_than_max(g3):
    assert find_path_in_range(S("a", "b"), g3, 1, 1) is None


def test_bad_range(g3):
    with pytest.raises(ValueError):
        find_path_in_range(S("a"), g3, 0, 3)
    with pytest.raises(ValueError):
        find_path_in_range(S("a"), g3, 4, 3)


def test_overlapping_start_and_end():
    # A is both test start and test end, so the shortest path through a is a full loop
    g = triangle(test_ends={"A"}, end_vertices={"A"})
    assert find_path_in_range(S("a"), g, 1, 6).edges == ("a", "b", "c")
    assert find_path_in_range(V("A"), g, 1, 6).edges == ("a", "b", "c")


def test_parallel_edges_pick_requested_one():
    g = make_graph([("x", "A", "B"), ("y", "A", "B"), ("z", "B", "C")], "A", test_ends={"C"})
    assert find_path_in_range(S("y"), g, 1, 4).edges == ("y", "z")


def test_join_is_minimal_not_first_found():
    # prefix side hits a test start only after 3 backward steps; suffix side has
    # a test end right away but also one far away. The minimum uses both short sides.
    edges = [
        ("s1", "S", "P1"), ("s2", "P1", "P2"), ("s3", "P2", "R0"),
        ("r", "R0", "R1"),
        ("t1", "R1", "T"),
        ("q", "S2", "R0"),
    ]
    g = make_graph(edges, "S", test_starts={"S2"}, test_ends={"T"})
    assert find_path_in_range(S("r"), g, 1, 6).edges == ("q", "r", "t1")
    assert find_path_in_range(S("r"), g, 4, 6).edges == ("s1", "s2", "s3", "r", "t1")


def _check(graph, req, lo, hi):
    got = find_path_in_range(req, graph, lo, hi)
    want = min_path_length(graph, req, lo, hi)
    if want is None:
        assert got is None
        return
    assert got is not None and len(got) == want
    assert lo <= len(got) <= hi
    assert first_vertex(got, graph) in graph.path_starts
    assert last_vertex(got, graph) in graph.path_ends
    assert covers(got, req, graph)


def random_requirement(rng, g):
    kind = rng.random()
    if kind < 0.3:
        return V(rng.choice(g.vertices))
    e = rng.choice(g.edges)
    nxt = g.out_edges[e.target]
    if kind < 0.7 or not nxt:
        return S(e.id)
    return S(e.id, rng.choice(nxt).id)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_matches_brute_force(seed):
    rng = random.Random(seed)
    g = random_graph(rng, max_vertices=7, max_edges=12)
    req = random_requirement(rng, g)
    lo = rng.randint(1, 5)
    hi = rng.randint(lo, 5)
    _check(g, req, lo, hi)
