import pytest

from fsmpaths.model import make_graph


def triangle(priorities=None, vertex_priority=None, **kw):
    """A:a->B, B:b->C, C:c->A with A the start and C the only test end."""
    p = priorities or {}
    edges = [(e, s, t, p.get(e, 0.0)) for e, s, t in (("a", "A", "B"), ("b", "B", "C"), ("c", "C", "A"))]
    kw.setdefault("test_ends", {"C"})
    kw.setdefault("end_vertices", {"C"})
    return make_graph(edges, "A", test_starts={"A"}, vertices=["A", "B", "C"],
                      vertex_priority=vertex_priority or {}, name="G3", **kw)


@pytest.fixture
def g3():
    return triangle()


@pytest.fixture
def g3_b():
    return triangle({"b": 3.0})


def pytest_terminal_summary(terminalreporter):
    from acceptance_report import lines

    report = lines()
    if report:
        terminalreporter.section("acceptance criteria")
        for line in report:
            terminalreporter.write_line(line)
