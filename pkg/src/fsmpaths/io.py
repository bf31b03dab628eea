"""JSON model and path files, result CSVs and Graphviz export."""

from __future__ import annotations

import csv
import dataclasses
import json
from pathlib import Path

from .model import DefectSet, Edge, Graph, PriorityScale, TestPath


class ModelFormatError(ValueError):
    pass


def graph_to_dict(graph: Graph) -> dict:
    return {
        "name": graph.name,
        "priority_scale": [graph.priority_scale.scale_min, graph.priority_scale.scale_max],
        "vertices": [{"id": v, "priority": graph.priority(v)} for v in graph.vertices],
        "edges": [
            {"id": e.id, "source": e.source, "target": e.target, "label": e.label, "priority": e.priority}
            for e in graph.edges
        ],
        "start": graph.start_vertex,
        "end_vertices": sorted(graph.end_vertices),
        "test_starts": sorted(graph.test_starts),
        "test_ends": sorted(graph.test_ends),
        "defects": {
            "type1": sorted(graph.defects.type1),
            "type2": [list(p) for p in sorted(graph.defects.type2)],
        },
    }


def _field(obj, key, where, kind=None):
    if not isinstance(obj, dict):
        raise ModelFormatError(f"{where}: expected an object")
    if key not in obj:
        raise ModelFormatError(f"{where}: missing field {key!r}")
    value = obj[key]
    if kind is not None and not isinstance(value, kind):
        raise ModelFormatError(f"{where}: field {key!r} must be {kind.__name__ if isinstance(kind, type) else kind}")
    return value


def graph_from_dict(data: dict, source: str = "model") -> Graph:
    if not isinstance(data, dict):
        raise ModelFormatError(f"{source}: top level must be an object")
    vertices, priorities = [], {}
    for i, v in enumerate(_field(data, "vertices", source, list)):
        where = f"{source}: vertices[{i}]"
        if isinstance(v, str):
            vertices.append(v)
            continue
        vid = _field(v, "id", where, str)
        vertices.append(vid)
        priorities[vid] = float(v.get("priority", 0.0))
    edges = []
    for i, e in enumerate(_field(data, "edges", source, list)):
        where = f"{source}: edges[{i}]"
        edges.append(Edge(
            id=_field(e, "id", where, str),
            source=_field(e, "source", where, str),
            target=_field(e, "target", where, str),
            label=e.get("label", ""),
            priority=float(e.get("priority", 0.0)),
        ))
    scale = data.get("priority_scale", [0.0, 3.0])
    defects = data.get("defects") or {}
    try:
        return Graph(
            vertices=vertices,
            edges=edges,
            start_vertex=_field(data, "start", source, str),
            end_vertices=_field(data, "end_vertices", source, list),
            test_starts=_field(data, "test_starts", source, list),
            test_ends=_field(data, "test_ends", source, list),
            vertex_priority=priorities,
            priority_scale=PriorityScale(float(scale[0]), float(scale[1])),
            defects=DefectSet(
                frozenset(defects.get("type1", [])),
                frozenset(tuple(p) for p in defects.get("type2", [])),
            ),
            name=data.get("name", ""),
        )
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ModelFormatError):
            raise
        raise ModelFormatError(f"{source}: {exc}") from exc


def read_model(path) -> Graph:
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    graph = graph_from_dict(data, str(path))
    if not graph.name:
        graph = dataclasses.replace(graph, name=path.stem)
    return graph


def write_model(graph: Graph, path) -> None:
    Path(path).write_text(json.dumps(graph_to_dict(graph), indent=2) + "\n", encoding="utf-8")


def path_to_dict(p: TestPath) -> dict:
    return {"edges": list(p.edges)} if p.edges else {"vertex": p.vertex}


def path_from_dict(d) -> TestPath:
    if isinstance(d, list):
        return TestPath(edges=tuple(d))
    if "edges" in d and d["edges"]:
        return TestPath(edges=tuple(d["edges"]))
    if "vertex" in d:
        return TestPath(vertex=d["vertex"])
    raise ModelFormatError(f"path entry needs 'edges' or 'vertex': {d!r}")


def write_paths(paths, path, **meta) -> None:
    doc = dict(meta)
    doc["paths"] = [path_to_dict(p) for p in paths]
    Path(path).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")


def read_paths(path) -> list:
    path = Path(path)
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ModelFormatError(f"{path}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    if isinstance(doc, dict):
        if "paths" not in doc:
            raise ModelFormatError(f"{path}: missing field 'paths'")
        doc = doc["paths"]
    return [path_from_dict(d) for d in doc]


RESULT_COLUMNS = [
    "instance", "coverage", "min_len", "max_len", "reduction",
    "steps", "path_count", "avg_steps", "unique_steps", "ut",
    "type1_activated", "type2_activated", "eff1", "eff2", "runtime_ms",
]


def _present(value):
    if isinstance(value, float):
        return f"{value:.2f}"
    return value


def write_results_csv(rows, path, columns=None) -> None:
    rows = list(rows)
    if columns is None:
        columns = list(RESULT_COLUMNS)
        for row in rows:
            columns.extend(k for k in row if k not in columns)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=columns, extrasaction="ignore")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: _present(v) for k, v in row.items()})


def read_results_csv(path) -> list:
    with open(path, newline="", encoding="utf-8") as fh:
        return list(csv.DictReader(fh))


PATH_COLORS = ["blue", "purple", "brown", "darkcyan", "magenta", "goldenrod", "navy", "olive", "deeppink", "teal"]


def _quote(s) -> str:
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(graph: Graph, paths=()) -> str:
    """Graphviz digraph; test starts green, test ends red, vertices that are both orange.

    Each test path gets its own colour; a model edge used by several paths is
    drawn with a colour list and labelled with the path steps it serves.
    """
    paths = list(paths)
    usage = {}
    for k, p in enumerate(paths):
        for step, eid in enumerate(p.edges, 1):
            usage.setdefault(eid, []).append((k, step))
    lines = [f"digraph {_quote(graph.name or 'model')} {{", "  rankdir=LR;"]
    for v in graph.vertices:
        attrs = [f"label={_quote(f'{v} ({graph.priority(v):g})')}"]
        ts, te = v in graph.test_starts, v in graph.test_ends
        color = "orange" if ts and te else "green" if ts else "red" if te else None
        if color:
            attrs.append(f"style=filled, fillcolor={color}")
        if v == graph.start_vertex:
            attrs.append("shape=doublecircle")
        elif v in graph.end_vertices:
            attrs.append("peripheries=2")
        lines.append(f"  {_quote(v)} [{', '.join(attrs)}];")
    for e in graph.edges:
        label = f"{e.id}:{e.label} ({e.priority:g})"
        used = usage.get(e.id)
        if used:
            colors = list(dict.fromkeys(PATH_COLORS[k % len(PATH_COLORS)] for k, _ in used))
            label += " " + " ".join(f"p{k + 1}.{step}" for k, step in used)
            attrs = f"color={_quote(':'.join(colors))}, penwidth=2"
        else:
            attrs = "color=gray"
        lines.append(f"  {_quote(e.source)} -> {_quote(e.target)} [label={_quote(label)}, {attrs}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def export_dot(graph: Graph, paths, path) -> None:
    Path(path).write_text(to_dot(graph, paths), encoding="utf-8")
