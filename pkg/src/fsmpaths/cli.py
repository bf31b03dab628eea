"""Command line entry point: ``fsmpaths generate|evaluate|batch|gen-instance|export-dot``."""

from __future__ import annotations

import argparse
import dataclasses
import logging
import sys
from pathlib import Path

from . import io
from .batch import run_batch
from .defects import InsufficientCandidates, compute_metrics, plant_random_defects
from .instances import InstanceSpec, SpecUnsatisfiable, generate, measure_properties, random_spec
from .model import PrioritySelection, validate
from .nswitch import DEFAULT_ENUM_CAP, EnumerationOverflow
from .pipeline import ALGORITHMS, NoPathsPossible, RunConfig, generate_paths
from .requirements import check_coverage, generate_requirements

EXIT_OK, EXIT_INVALID, EXIT_NO_PATHS, EXIT_OVERFLOW = 0, 1, 2, 3

log = logging.getLogger("fsmpaths")


def _load(path):
    graph = io.read_model(path)
    problems = validate(graph)
    if problems:
        raise io.ModelFormatError(f"{path}: invalid model: " + "; ".join(problems))
    return graph


def _run_options(p):
    p.add_argument("--coverage", choices=["basic", "extended"], default="basic")
    p.add_argument("--min-length", type=int, default=2)
    p.add_argument("--max-length", type=int, default=6)
    p.add_argument("--select-min", type=float, default=2.0, help="lower end of the priority band")
    p.add_argument("--select-max", type=float, default=3.0, help="upper end of the priority band")
    p.add_argument("--enum-cap", type=int, default=DEFAULT_ENUM_CAP, help="N-switch enumeration limit")


def _range(text):
    lo, _, hi = text.partition(":")
    return int(lo), int(hi)


def cmd_generate(args):
    graph = _load(args.model)
    config = RunConfig(
        coverage=args.coverage, min_length=args.min_length, max_length=args.max_length,
        selection=PrioritySelection(args.select_min, args.select_max),
        reduction=args.reduction, seed=args.seed, enum_cap=args.enum_cap,
    )
    result = generate_paths(graph, config)
    for r in result.infeasible:
        log.warning("infeasible requirement %s", r)
    if args.output:
        io.write_paths(
            result.paths, args.output, model=graph.name, coverage=config.coverage.value,
            min_length=config.min_length, max_length=config.max_length, reduction=config.reduction,
            seed=args.seed, infeasible=[str(r) for r in result.infeasible],
        )
    else:
        for p in result.paths:
            print(" ".join(p.edges))
    if args.dot:
        io.export_dot(graph, result.paths, args.dot)
    m = compute_metrics(result.paths, graph.defects)
    print(f"# {len(result.requirements)} requirements, {len(result.infeasible)} infeasible, "
          f"{m.path_count} paths, {m.steps} steps", file=sys.stderr)
    return EXIT_OK


def cmd_evaluate(args):
    graph = _load(args.model)
    paths = io.read_paths(args.paths)
    metrics = compute_metrics(paths, graph.defects, count_repeats=not args.once_per_path)
    selection = PrioritySelection(args.select_min, args.select_max)
    requirements = generate_requirements(graph, args.coverage, selection)
    from .requirements import filter_feasible

    feasible, _ = filter_feasible(requirements, graph, args.min_length, args.max_length)
    report = check_coverage(paths, feasible, graph, args.min_length, args.max_length)
    sep = args.delimiter
    print(sep.join(["metric", "value"]))
    for k, v in metrics.as_dict().items():
        print(sep.join([k, f"{v:.6g}" if isinstance(v, float) else str(v)]))
    print(sep.join(["coverage_satisfied", str(report.satisfied)]))
    for line in report.violations():
        print(line, file=sys.stderr)
    return EXIT_OK if report.satisfied else EXIT_INVALID


def cmd_batch(args):
    selection = PrioritySelection(args.select_min, args.select_max)
    algorithms = ALGORITHMS if args.reductions == ["all"] else args.reductions
    configs = [
        RunConfig(coverage=cov, min_length=lo, max_length=hi, selection=selection, reduction=red,
                  seed=args.seed, repetitions=args.repetitions, enum_cap=args.enum_cap)
        for cov in args.coverage for lo, hi in args.ranges for red in algorithms
    ]
    result = run_batch(args.model_dir, configs, defect_seed=args.defect_seed, jobs=args.jobs,
                       priority_weight=args.defect_priority_weight)
    out = Path(args.output)
    out.parent.mkdir(parents=True, exist_ok=True)
    io.write_results_csv(result.rows, out)
    print(f"# {len(result.rows)} rows -> {out}", file=sys.stderr)
    for name, cov, lo, hi, reason in result.excluded:
        print(f"# excluded {name} {cov} [{lo},{hi}]: {reason}", file=sys.stderr)
    if not args.no_figures and result.rows:
        from .plotting import render_batch_figures

        fig_dir = Path(args.figures) if args.figures else out.parent
        for p in render_batch_figures(result.rows, fig_dir, prefix=out.stem):
            print(f"# figure {p}", file=sys.stderr)
    return EXIT_INVALID if result.errors else EXIT_OK


def cmd_gen_instance(args):
    if args.random:
        out_dir = Path(args.output)
        out_dir.mkdir(parents=True, exist_ok=True)
        for k in range(args.random):
            seed = args.seed + k
            graph = generate(random_spec(seed, name=f"gen-{seed:04d}"))
            graph = _with_defects(graph, args, seed)
            io.write_model(graph, out_dir / f"{graph.name}.json")
        print(f"# {args.random} models -> {out_dir}", file=sys.stderr)
        return EXIT_OK
    spec = InstanceSpec(
        vertex_count=args.vertices, edge_count=args.edges, cycle_count=args.cycles,
        test_start_count=args.test_starts, test_end_count=args.test_ends, overlap_count=args.overlap,
        end_vertex_count=args.end_vertices, priority_vertex_count=args.priority_vertices,
        priority_edge_count=args.priority_edges, seed=args.seed, name=args.name or "",
    )
    graph = _with_defects(generate(spec), args, args.seed)
    io.write_model(graph, args.output)
    props = measure_properties(graph)
    print(f"# cycles requested {args.cycles}, achieved {props.cycles}", file=sys.stderr)
    return EXIT_OK


def _with_defects(graph, args, seed):
    t1 = args.type1 if args.type1 is not None else max(1, len(graph.edges) // 5) if graph.edges else 0
    t2 = args.type2 if args.type2 is not None else max(1, len(graph.edges) // 6) if graph.edges else 0
    try:
        defects = plant_random_defects(graph, t1, t2, seed, args.defect_priority_weight)
    except InsufficientCandidates:
        if args.type2 is not None:
            raise
        defects = plant_random_defects(graph, t1, 0, seed, args.defect_priority_weight)
    return dataclasses.replace(graph, defects=defects)


def cmd_export_dot(args):
    graph = _load(args.model)
    paths = io.read_paths(args.paths) if args.paths else []
    text = io.to_dot(graph, paths)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="fsmpaths", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="generate a prioritized test path set for one model")
    p.add_argument("model")
    _run_options(p)
    p.add_argument("--reduction", choices=ALGORITHMS, default="sorted")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", help="write paths as JSON instead of printing them")
    p.add_argument("--dot", help="also write a Graphviz rendering with the paths")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("evaluate", help="metrics and coverage check for an existing path set")
    p.add_argument("model")
    p.add_argument("paths")
    _run_options(p)
    p.add_argument("--seed", type=int, default=0, help="unused; accepted for a uniform interface")
    p.add_argument("--once-per-path", action="store_true", help="count a type 1 defect once per path")
    p.add_argument("--delimiter", default=",")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("batch", help="run many configurations over a directory of models")
    p.add_argument("model_dir")
    p.add_argument("-o", "--output", default="results.csv")
    p.add_argument("--coverage", nargs="+", choices=["basic", "extended"], default=["basic", "extended"])
    p.add_argument("--ranges", nargs="+", type=_range, default=[(2, 6), (4, 8)], metavar="MIN:MAX")
    p.add_argument("--reductions", nargs="+", choices=list(ALGORITHMS) + ["all"], default=["all"])
    p.add_argument("--select-min", type=float, default=2.0)
    p.add_argument("--select-max", type=float, default=3.0)
    p.add_argument("--repetitions", type=int, default=3)
    p.add_argument("--enum-cap", type=int, default=DEFAULT_ENUM_CAP)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--defect-seed", type=int, default=0, help="placement seed for models without defects")
    p.add_argument("--defect-priority-weight", type=float, default=1.0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--figures", help="directory for PNG figures (default: next to the CSV)")
    p.add_argument("--no-figures", action="store_true")
    p.set_defaults(func=cmd_batch)

    p = sub.add_parser("gen-instance", help="generate an artificial model")
    p.add_argument("-o", "--output", required=True, help="model file, or directory with --random")
    p.add_argument("--random", type=int, metavar="N", help="write N models with sampled properties")
    p.add_argument("--vertices", type=int, default=10)
    p.add_argument("--edges", type=int, default=19)
    p.add_argument("--cycles", type=int, default=2)
    p.add_argument("--test-starts", type=int, default=2)
    p.add_argument("--test-ends", type=int, default=2)
    p.add_argument("--overlap", type=int, default=1)
    p.add_argument("--end-vertices", type=int, default=1)
    p.add_argument("--priority-vertices", type=int, default=3)
    p.add_argument("--priority-edges", type=int, default=5)
    p.add_argument("--type1", type=int)
    p.add_argument("--type2", type=int)
    p.add_argument("--defect-priority-weight", type=float, default=1.0)
    p.add_argument("--name")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_gen_instance)

    p = sub.add_parser("export-dot", help="Graphviz rendering of a model and optional paths")
    p.add_argument("model")
    p.add_argument("--paths")
    p.add_argument("-o", "--output")
    p.add_argument("--seed", type=int, default=0, help="unused; accepted for a uniform interface")
    p.set_defaults(func=cmd_export_dot)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except NoPathsPossible as exc:
        print(f"error: {exc}", file=sys.stderr)
        for r in exc.infeasible:
            print(f"  infeasible: {r}", file=sys.stderr)
        return EXIT_NO_PATHS
    except EnumerationOverflow as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_OVERFLOW
    except (io.ModelFormatError, SpecUnsatisfiable, InsufficientCandidates, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
