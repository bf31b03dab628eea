"""Prioritized, variable-length test path generation for state-machine models."""

from .defects import MetricsReport, compute_metrics, plant_random_defects
from .instances import InstanceSpec, generate as generate_instance, measure_properties, random_spec
from .io import ModelFormatError, read_model, read_paths, write_model, write_paths, write_results_csv, export_dot
from .model import DefectSet, Edge, Graph, PriorityScale, PrioritySelection, TestPath, make_graph, validate
from .nswitch import EnumerationOverflow, nswitch_reduce
from .pipeline import ALGORITHMS, NoPathsPossible, RunConfig, generate_paths
from .reduction import CoverageMatrix, reduce
from .requirements import Coverage, Requirement, check_coverage, filter_feasible, generate_requirements
from .search import find_path_in_range
from .batch import run_batch

__version__ = "0.1.0"
