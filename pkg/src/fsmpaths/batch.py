"""Batch experiments over a directory of models, with the repetition and exclusion protocol."""

from __future__ import annotations

import dataclasses
import logging
import statistics
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .defects import compute_metrics, plant_random_defects
from .instances import measure_properties
from .io import ModelFormatError, read_model
from .model import Graph, validate
from .nswitch import EnumerationOverflow
from .pipeline import NoPathsPossible, RunConfig, generate_paths
from .reduction import STOCHASTIC

log = logging.getLogger(__name__)

METRICS = ("steps", "path_count", "avg_steps", "unique_steps", "ut",
           "type1_activated", "type2_activated", "eff1", "eff2")
VARIANCE_COLUMNS = ("steps_var", "eff1_var")


@dataclass
class BatchResult:
    rows: list = field(default_factory=list)
    excluded: list = field(default_factory=list)  # (instance, coverage, min_len, max_len, reason)
    errors: list = field(default_factory=list)  # (file, message)


def default_defects(graph: Graph, seed, priority_weight=1.0):
    """Defect counts in the proportions of the experimental corpus (about one per five and six edges)."""
    m = len(graph.edges)
    if m == 0:
        return graph.defects
    type1 = max(1, m // 5)
    try:
        return plant_random_defects(graph, type1, max(1, m // 6), seed, priority_weight)
    except ValueError:
        return plant_random_defects(graph, type1, 0, seed, priority_weight)


def load_models(model_dir, defect_seed=0, priority_weight=1.0):
    """Parse and validate every ``*.json`` model in ``model_dir``; returns ``(graphs, errors)``.

    Models without defects get one fixed placement derived from ``defect_seed``.
    """
    graphs, errors = [], []
    for path in sorted(Path(model_dir).glob("*.json")):
        try:
            g = read_model(path)
        except (ModelFormatError, OSError) as exc:
            errors.append((str(path), str(exc)))
            continue
        problems = validate(g)
        if problems:
            errors.append((str(path), "; ".join(problems)))
            continue
        if not g.defects:
            g = dataclasses.replace(g, defects=default_defects(g, f"{defect_seed}:{g.name}", priority_weight))
        graphs.append(g)
    return graphs, errors


def run_cell(graph: Graph, config: RunConfig):
    """Run one (instance, configuration) cell ``config.repetitions`` times.

    Returns ``(row, paths_per_rep)`` or raises the generation error that
    excludes the cell.
    """
    reports, runtimes, path_sets = [], [], []
    coverage_ok = True
    for rep in range(config.repetitions):
        seed = None if config.seed is None else config.seed + rep
        t0 = time.perf_counter()
        result = generate_paths(graph, config, seed=seed)
        runtimes.append((time.perf_counter() - t0) * 1000.0)
        if not result.paths:
            raise NoPathsPossible(result.infeasible)
        if not result.report.satisfied:
            coverage_ok = False
            log.error("%s %s: coverage violated: %s", graph.name, config.reduction, result.report.violations()[:3])
        reports.append(compute_metrics(result.paths, graph.defects))
        path_sets.append(result.paths)
    row = {
        "instance": graph.name,
        "coverage": config.coverage.value,
        "min_len": config.min_length,
        "max_len": config.max_length,
        "reduction": config.reduction,
    }
    for name in METRICS:
        row[name] = statistics.fmean(getattr(r, name) for r in reports)
    row["runtime_ms"] = statistics.fmean(runtimes)
    row["steps_var"] = float(statistics.pvariance([r.steps for r in reports]))
    row["eff1_var"] = statistics.pvariance([r.eff1 for r in reports])
    row["repetitions"] = config.repetitions
    row["coverage_ok"] = coverage_ok
    return row, path_sets


def _job(args):
    graph, config = args
    try:
        row, _ = run_cell(graph, config)
        return row, None
    except (NoPathsPossible, EnumerationOverflow) as exc:
        return None, f"{type(exc).__name__}: {exc}"


def _group(config: RunConfig):
    return (config.coverage.value, config.min_length, config.max_length,
            config.selection.select_min, config.selection.select_max)


def run_graphs(graphs, configs, jobs: int = 1) -> BatchResult:
    configs = list(configs)
    tasks = [(g, c) for g in graphs for c in configs]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(_job, tasks, chunksize=4))
    else:
        outcomes = [_job(t) for t in tasks]

    result = BatchResult()
    failed = {}
    for (g, c), (_, err) in zip(tasks, outcomes):
        if err is not None:
            failed.setdefault((g.name, _group(c)), f"{c.reduction}: {err}")
    for (name, group), reason in failed.items():
        log.warning("excluding %s %s for all algorithms (%s)", name, group[:3], reason)
        result.excluded.append((name, group[0], group[1], group[2], reason))

    properties = {}
    for (g, c), (row, _) in zip(tasks, outcomes):
        if (g.name, _group(c)) in failed:
            continue
        if g.name not in properties:
            properties[g.name] = {f"inst_{k}": v for k, v in measure_properties(g, c.selection).as_dict().items()}
        row.update(properties[g.name])
        result.rows.append(row)
    return result


def run_batch(model_dir, configs, defect_seed=0, jobs: int = 1, priority_weight: float = 1.0) -> BatchResult:
    """Run every configuration on every model file; parse errors are collected, not raised."""
    graphs, errors = load_models(model_dir, defect_seed, priority_weight)
    for path, msg in errors:
        log.error("skipping %s: %s", path, msg)
    result = run_graphs(graphs, configs, jobs)
    result.errors = errors
    return result


def summarize(rows, metrics=("steps", "path_count", "eff1", "eff2")) -> dict:
    """Mean of each metric per (coverage, min_len, max_len, reduction)."""
    groups = {}
    for row in rows:
        key = (row["coverage"], int(row["min_len"]), int(row["max_len"]), row["reduction"])
        groups.setdefault(key, []).append(row)
    return {
        key: {m: statistics.fmean(float(r[m]) for r in rs) for m in metrics} | {"n": len(rs)}
        for key, rs in groups.items()
    }


def is_stochastic(reduction: str) -> bool:
    return reduction in STOCHASTIC
