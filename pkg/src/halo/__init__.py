"""Deterministic partition-based global optimization.

The solver trisects a normalized box domain the dividing-rectangles way,
estimates a local Lipschitz constant per partition by blending its own
absolute slopes with the ledger-wide maximum, selects partitions through
the resulting lower bounds, and optionally refines promising small
partitions with a derivative-free coordinate search.
"""

from .geometry import (
    BoxDomain,
    BudgetExhaustedError,
    DomainViolationError,
    ObjectiveError,
    ObjectiveHandle,
    Partition,
    PartitionLedger,
    StopRule,
    denormalize_point,
    normalize_point,
)
from .lipschitz import (
    blend_constants,
    blend_local_constant,
    global_slope_max,
    lower_bound,
    update_slopes_on_division,
)
from .local_search import ExclusionRegistry, LocalResult, coordinate_descent_minimize, gate_local_search
from .manifest import load_manifest, problem_from_record, write_manifest
from .metrics import (
    BenchmarkReport,
    RunRecord,
    auoc,
    operational_characteristic,
    run_benchmark,
    step_curve,
    variable_importance,
)
from .partitioning import (
    SamplePlan,
    division_order,
    divide_partition,
    init_root,
    longest_sides,
    sample_partition,
)
from .problems import TestProblem, classical_problem, classical_suite, shift_minimizer
from .schoen import schoen_generate
from .selection import (
    SelectionOutcome,
    select_halo,
    select_hlo,
    select_potentially_optimal,
)
from .solver import RunTrace, SolverConfig, check_stop, run

__all__ = [
    "BoxDomain",
    "BudgetExhaustedError",
    "DomainViolationError",
    "ObjectiveError",
    "ObjectiveHandle",
    "Partition",
    "PartitionLedger",
    "StopRule",
    "normalize_point",
    "denormalize_point",
    "init_root",
    "longest_sides",
    "sample_partition",
    "division_order",
    "divide_partition",
    "SamplePlan",
    "update_slopes_on_division",
    "global_slope_max",
    "blend_local_constant",
    "blend_constants",
    "lower_bound",
    "SelectionOutcome",
    "select_halo",
    "select_hlo",
    "select_potentially_optimal",
    "ExclusionRegistry",
    "LocalResult",
    "gate_local_search",
    "coordinate_descent_minimize",
    "SolverConfig",
    "RunTrace",
    "run",
    "check_stop",
    "TestProblem",
    "classical_problem",
    "classical_suite",
    "shift_minimizer",
    "schoen_generate",
    "load_manifest",
    "write_manifest",
    "problem_from_record",
    "RunRecord",
    "BenchmarkReport",
    "step_curve",
    "operational_characteristic",
    "auoc",
    "variable_importance",
    "run_benchmark",
]
