"""The outer optimization loop: select, sample, divide, update, refine.

Three variants share the loop.  ``halo`` selects through blended local
Lipschitz constants, ``hlo`` uses the single global estimate for every
partition, and ``direct`` uses potentially-optimal hyperrectangles with no
local search.  Runs are fully deterministic: identical configuration and
objective produce bitwise-identical traces.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .geometry import (
    BudgetExhaustedError,
    ObjectiveError,
    ObjectiveHandle,
    PartitionLedger,
    StopRule,
)
from .lipschitz import blend_constants, global_slope_max, update_slopes_on_division
from .local_search import (
    RUN,
    SELECT_FOR_DIVISION,
    ExclusionRegistry,
    coordinate_descent_minimize,
    gate_local_search,
)
from .partitioning import division_order, divide_partition, init_root, sample_partition
from .selection import select_halo, select_hlo, select_potentially_optimal

VARIANTS = ("halo", "hlo", "direct")

STATUS_SOLVED = "solved"
STATUS_BUDGET = "budget_exhausted"
STATUS_ITER_LIMIT = "iter_limit"

# Cap on evaluations a single local refinement may consume, per dimension.
LOCAL_SEARCH_BUDGET_PER_DIM = 100


@dataclass
class SolverConfig:
    """Knobs of a solver run; variant-specific fields are ignored elsewhere."""

    variant: str = "halo"
    beta: float = 1e-4
    exclusion_radius: float = 1e-4
    stop: StopRule = field(default_factory=StopRule)
    local_search_enabled: bool = True
    direct_epsilon_rel: float = 1e-4
    criterion3_by_constant: bool = False

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}, got {self.variant!r}")
        if self.beta < 0.0 or self.exclusion_radius <= 0.0 or self.direct_epsilon_rel < 0.0:
            raise ValueError("beta and epsilon must be nonnegative, radius positive")


@dataclass
class EvalRecord:
    """One objective evaluation: 1-based index, normalized point, value, incumbent."""

    index: int
    point: np.ndarray
    value: float
    best: float


@dataclass
class IterationRecord:
    index: int
    selected: tuple[int, ...]
    partition_count: int
    global_constant: float
    max_half_diagonal: float


@dataclass
class RunTrace:
    """Full record of a run; ``best`` is nonincreasing along ``evals``."""

    evals: list[EvalRecord]
    iterations: list[IterationRecord]
    status: str
    best_value: float
    best_point: Optional[np.ndarray]
    n_evals: int
    n_local_searches: int
    n_local_evals: int
    ledger: Optional[PartitionLedger]


class _SolvedSignal(Exception):
    """Internal: the incumbent reached the stop tolerance mid-operation."""


def relative_error(value: float, known_optimum: float) -> float:
    """Signed error against the known optimum, absolute when it is ~0."""
    if abs(known_optimum) < 1e-12:
        return value - known_optimum
    return (value - known_optimum) / abs(known_optimum)


def _is_solved(best: float, known_optimum: Optional[float], tol: float) -> bool:
    if known_optimum is None or not np.isfinite(best):
        return False
    return relative_error(best, known_optimum) <= tol


def check_stop(trace: RunTrace, obj: ObjectiveHandle, stop: StopRule) -> Optional[str]:
    """Status the run should take now, or None to keep going.

    Solved means the incumbent is within ``rel_error_tol`` of the known
    optimum (absolute comparison when the optimum is within 1e-12 of zero);
    the budget is exhausted once ``eval_count`` reaches ``max_fun_evals``.
    """
    if _is_solved(trace.best_value, obj.known_optimum, stop.rel_error_tol):
        return STATUS_SOLVED
    if obj.eval_count >= stop.max_fun_evals:
        return STATUS_BUDGET
    return None


def run(obj: ObjectiveHandle, cfg: SolverConfig) -> RunTrace:
    """Run the configured variant on ``obj`` until a stop rule fires.

    Each iteration selects partitions from the current ledger snapshot and
    processes them in criterion order: gate a possible local refinement
    (halo/hlo only), then sample, divide and refresh slopes.  The solved
    check fires after every single evaluation, so the evaluation count at
    which a problem is solved is exact; sampling pre-checks the budget so a
    division either happens completely or not at all.
    """
    stop = cfg.stop
    evals: list[EvalRecord] = []
    iterations: list[IterationRecord] = []
    best = np.inf
    best_point: Optional[np.ndarray] = None
    n_local = 0
    n_local_evals = 0
    ledger: Optional[PartitionLedger] = None

    def record(point: np.ndarray, value: float) -> None:
        nonlocal best, best_point
        if value < best:
            best = value
            best_point = point.copy()
        evals.append(EvalRecord(obj.eval_count, point.copy(), value, best))
        if _is_solved(best, obj.known_optimum, stop.rel_error_tol):
            raise _SolvedSignal

    def make_trace(status: str) -> RunTrace:
        return RunTrace(
            evals=evals,
            iterations=iterations,
            status=status,
            best_value=float(best),
            best_point=best_point,
            n_evals=len(evals),
            n_local_searches=n_local,
            n_local_evals=n_local_evals,
            ledger=ledger,
        )

    registry = ExclusionRegistry(radius=cfg.exclusion_radius, beta=cfg.beta)
    status = STATUS_ITER_LIMIT
    try:
        ledger = init_root(obj, on_eval=record)
        if obj.eval_count >= stop.max_fun_evals:
            return make_trace(STATUS_BUDGET)
        for k in range(stop.max_iter):
            g_const = global_slope_max(ledger)
            max_diag = float(ledger.half_diagonals().max())
            if cfg.variant == "direct":
                chosen = select_potentially_optimal(ledger, cfg.direct_epsilon_rel)
                reasons = {}
            else:
                if cfg.variant == "halo":
                    outcome = select_halo(
                        ledger, blend_constants(ledger, g_const), cfg.criterion3_by_constant
                    )
                else:
                    outcome = select_hlo(ledger, g_const, cfg.criterion3_by_constant)
                chosen, reasons = outcome.chosen, outcome.reasons

            budget_hit = False
            for pid in chosen:
                if obj.eval_count >= stop.max_fun_evals:
                    budget_hit = True
                    break
                reason = reasons.get(pid)
                divide = True
                if (
                    cfg.variant != "direct"
                    and cfg.local_search_enabled
                    and reason is not None
                    and reason.local_search_candidate
                ):
                    decision = gate_local_search(pid, ledger, registry)
                    if decision != SELECT_FOR_DIVISION:
                        if decision == RUN:
                            n_local += 1
                            half_diag = float(np.linalg.norm(ledger.half_sides[pid]))
                            remaining = stop.max_fun_evals - obj.eval_count
                            mark = len(evals)
                            try:
                                coordinate_descent_minimize(
                                    obj,
                                    ledger.centers[pid].copy(),
                                    budget=min(remaining, LOCAL_SEARCH_BUDGET_PER_DIM * ledger.dim),
                                    initial_step=max(1e-3, half_diag),
                                    f0=float(ledger.values[pid]),
                                    on_eval=record,
                                )
                            finally:
                                n_local_evals += len(evals) - mark
                        # the largest-box mandate still forces a division
                        divide = reason.largest_best_bound
                if not divide:
                    continue
                try:
                    plan = sample_partition(
                        ledger, pid, obj, max_fun_evals=stop.max_fun_evals, on_eval=record
                    )
                except BudgetExhaustedError:
                    budget_hit = True
                    break
                children = divide_partition(ledger, pid, plan, division_order(plan))
                update_slopes_on_division(ledger, pid, plan, children)

            iterations.append(IterationRecord(k, tuple(chosen), len(ledger), g_const, max_diag))
            if budget_hit or obj.eval_count >= stop.max_fun_evals:
                status = STATUS_BUDGET
                break
    except _SolvedSignal:
        status = STATUS_SOLVED
    except ObjectiveError as err:
        err.partial_trace = make_trace("aborted")
        raise
    return make_trace(status)
