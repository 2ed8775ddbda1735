"""Gating and execution of derivative-free local refinements.

A selected partition may seed a local search only once it is small enough
(half diagonal below ``beta``) and no earlier start lies within the
exclusion radius.  The optimizer itself is a cyclic coordinate search with
an Armijo-style sufficient-decrease test and per-coordinate step control,
projected onto the unit cube.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .geometry import ObjectiveHandle, PartitionLedger
from .partitioning import OnEval

RUN = "run"
SELECT_FOR_DIVISION = "select_for_division"
SKIP_DIVISION_ONLY = "skip_division_only"

ARMIJO_GAMMA = 1e-6
STEP_EXPAND = 2.0
STEP_SHRINK = 0.5


@dataclass
class ExclusionRegistry:
    """Ids of partition centers near which local searches must not restart."""

    members: set[int] = field(default_factory=set)
    radius: float = 1e-4
    beta: float = 1e-4

    def __post_init__(self):
        if self.radius <= 0.0 or self.beta < 0.0:
            raise ValueError("radius must be positive and beta nonnegative")


@dataclass
class LocalResult:
    """Outcome of one local refinement, in normalized coordinates."""

    point: np.ndarray
    value: float
    evals: int
    converged: bool


def gate_local_search(
    candidate_id: int, ledger: PartitionLedger, registry: ExclusionRegistry
) -> str:
    """Decide what to do with a lowest-bound or lowest-value winner.

    Too large a partition is simply divided.  A small one starts a local
    search when no registered point lies within ``radius`` of its center,
    in which case the candidate and every ledger point inside that ball
    join the registry; otherwise the candidate is only registered and is
    neither sampled nor divided this iteration.
    """
    half_diag = float(np.linalg.norm(ledger.half_sides[candidate_id]))
    if half_diag > registry.beta:
        return SELECT_FOR_DIVISION
    center = ledger.centers[candidate_id]
    if registry.members:
        member_ids = np.fromiter(registry.members, dtype=int)
        dists = np.linalg.norm(ledger.centers[member_ids] - center, axis=1)
        if bool((dists <= registry.radius).any()):
            registry.members.add(candidate_id)
            return SKIP_DIVISION_ONLY
    near = np.flatnonzero(np.linalg.norm(ledger.centers - center, axis=1) <= registry.radius)
    registry.members.update(int(i) for i in near)
    registry.members.add(candidate_id)
    return RUN


def coordinate_descent_minimize(
    obj: ObjectiveHandle,
    x0,
    budget: int,
    tol: float = 1e-8,
    initial_step: float = 1e-3,
    f0: Optional[float] = None,
    on_eval: Optional[OnEval] = None,
) -> LocalResult:
    """Cyclic coordinate search from ``x0`` (normalized), within ``budget`` evals.

    For each coordinate the positive step is tried first, then the negative
    one; a move is accepted on the sufficient decrease
    ``f(trial) <= f(x) - gamma * step**2``, expanding that coordinate's step
    by 2, while a double rejection shrinks it by half.  Trial points are
    projected onto [0, 1]^N; a trial that projection leaves identical to the
    current point is rejected without spending an evaluation.  Stops when
    every per-coordinate step falls below ``tol`` (converged) or the budget
    runs out.
    """
    if budget < 1:
        raise ValueError("local search budget must be at least 1")
    x = np.clip(np.asarray(x0, dtype=float), 0.0, 1.0)
    n = x.size
    evals = 0

    def evaluate(q: np.ndarray) -> float:
        nonlocal evals
        evals += 1
        v = obj.eval_normalized(q)
        if on_eval is not None:
            on_eval(q, v)
        return v

    if f0 is None:
        fx = evaluate(x)
    else:
        fx = float(f0)
    steps = np.full(n, float(initial_step))

    while evals < budget:
        if bool((steps < tol).all()):
            return LocalResult(x, fx, evals, converged=True)
        for i in range(n):
            if evals >= budget:
                break
            step = steps[i]
            accepted = False
            for sign in (1.0, -1.0):
                trial = x.copy()
                trial[i] = min(1.0, max(0.0, x[i] + sign * step))
                if trial[i] == x[i]:
                    continue
                f_trial = evaluate(trial)
                # strict: once gamma*step**2 underflows below one ulp of fx, a
                # <= test would accept zero-decrease moves on flat objectives
                if f_trial < fx - ARMIJO_GAMMA * step * step:
                    x, fx = trial, f_trial
                    steps[i] = step * STEP_EXPAND
                    accepted = True
                    break
                if evals >= budget:
                    break
            if not accepted:
                steps[i] = step * STEP_SHRINK
    converged = bool((steps < tol).all())
    return LocalResult(x, fx, evals, converged=converged)
