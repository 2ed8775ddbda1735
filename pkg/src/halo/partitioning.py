"""Sampling along longest sides and trisection of selected partitions.

The scheme keeps the parent's center: new points are placed at distance
``delta = (2/3) * s_max`` on both sides of the center along every longest
coordinate, then the box is cut into thirds along those coordinates, one
coordinate at a time, so the best new value ends up in the largest child.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .geometry import (
    SIDE_REL_TOL,
    BudgetExhaustedError,
    ObjectiveHandle,
    Partition,
    PartitionLedger,
)

OnEval = Callable[[np.ndarray, float], None]


@dataclass
class SamplePlan:
    """Evaluated sample points for one partition about to be divided.

    For each coordinate in ``coords`` (the longest-side set of the parent)
    the plan holds the pair ``center +/- delta * e_p`` and its objective
    values, in the order the points were evaluated.
    """

    parent_id: int
    delta: float
    coords: list[int]
    points_plus: list[np.ndarray]
    points_minus: list[np.ndarray]
    values_plus: list[float]
    values_minus: list[float]

    @property
    def n_evals(self) -> int:
        return 2 * len(self.coords)


def longest_side_coords(half_sides: np.ndarray) -> list[int]:
    """Indices attaining the maximum half side, ties within SIDE_REL_TOL."""
    s_max = float(half_sides.max())
    return [int(i) for i in np.flatnonzero(half_sides >= s_max * (1.0 - SIDE_REL_TOL))]


def longest_sides(part: Partition) -> set[int]:
    """Coordinate set where ``part`` has its longest side."""
    return set(longest_side_coords(part.half_sides))


def init_root(obj: ObjectiveHandle, on_eval: Optional[OnEval] = None) -> PartitionLedger:
    """Create the ledger holding the whole unit cube, evaluated at its center."""
    n = obj.domain.dim
    ledger = PartitionLedger(n)
    center = np.full(n, 0.5)
    value = obj.eval_normalized(center)
    if on_eval is not None:
        on_eval(center, value)
    ledger.append(center, np.full(n, 0.5), value)
    return ledger


def sample_partition(
    ledger: PartitionLedger,
    pid: int,
    obj: ObjectiveHandle,
    max_fun_evals: Optional[int] = None,
    on_eval: Optional[OnEval] = None,
) -> SamplePlan:
    """Evaluate the two new points per longest coordinate of partition ``pid``.

    Consumes exactly ``2 * len(coords)`` evaluations.  If that would push
    ``obj.eval_count`` past ``max_fun_evals`` the plan is abandoned before
    any evaluation and BudgetExhaustedError is raised: partial divisions
    would break the tiling of the cube.
    """
    center = ledger.centers[pid].copy()
    sides = ledger.half_sides[pid]
    coords = longest_side_coords(sides)
    delta = 2.0 * float(sides.max()) / 3.0
    if max_fun_evals is not None and obj.eval_count + 2 * len(coords) > max_fun_evals:
        raise BudgetExhaustedError(
            f"sampling partition {pid} needs {2 * len(coords)} evaluations, "
            f"only {max_fun_evals - obj.eval_count} remain"
        )
    points_plus, points_minus, values_plus, values_minus = [], [], [], []
    for p in coords:
        xp = center.copy()
        xp[p] += delta
        fp = obj.eval_normalized(xp)
        if on_eval is not None:
            on_eval(xp, fp)
        xm = center.copy()
        xm[p] -= delta
        fm = obj.eval_normalized(xm)
        if on_eval is not None:
            on_eval(xm, fm)
        points_plus.append(xp)
        points_minus.append(xm)
        values_plus.append(fp)
        values_minus.append(fm)
    return SamplePlan(pid, delta, coords, points_plus, points_minus, values_plus, values_minus)


def division_order(plan: SamplePlan) -> list[int]:
    """Coordinates of the plan sorted by the lower of their two new values.

    Ascending, so the coordinate holding the best new point is divided
    first and its children keep the largest boxes.  Ties break toward the
    lower coordinate index.
    """
    keyed = [
        (min(plan.values_plus[i], plan.values_minus[i]), coord)
        for i, coord in enumerate(plan.coords)
    ]
    return [coord for _, coord in sorted(keyed)]


def divide_partition(
    ledger: PartitionLedger, pid: int, plan: SamplePlan, order: Sequence[int]
) -> list[int]:
    """Trisect partition ``pid`` along ``order``, appending 2 children per cut.

    Processing one coordinate at a time, the current box around the parent
    center is split into three slabs: the parent keeps the middle (its half
    side drops to ``s_max / 3``) and the two sampled points become centers
    of the outer slabs, which inherit the box extents as they stand at that
    step.  Returns the new ids in creation order (plus point first).
    """
    if sorted(order) != sorted(plan.coords):
        raise ValueError("division order must be a permutation of the sampled coordinates")
    by_coord = {
        coord: (plan.points_plus[i], plan.points_minus[i], plan.values_plus[i], plan.values_minus[i])
        for i, coord in enumerate(plan.coords)
    }
    # new half side produced by one further division by 3, kept exact
    new_half = float(ledger.half_sides[pid].max()) / 3.0
    child_ids: list[int] = []
    for coord in order:
        ledger.set_half_side(pid, coord, new_half)
        current_sides = ledger.half_sides[pid].copy()
        xp, xm, fp, fm = by_coord[coord]
        child_ids.append(ledger.append(xp, current_sides, fp))
        child_ids.append(ledger.append(xm, current_sides, fm))
    return child_ids
