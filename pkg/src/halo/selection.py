"""Rules for choosing which partitions to sample next.

Two families are implemented: the lower-bound criteria driven by local
Lipschitz constant estimates (used by the halo and hlo variants), and the
potentially-optimal-hyperrectangle rule of the classical dividing-
rectangles baseline.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import SIDE_REL_TOL, PartitionLedger
from .lipschitz import lower_bounds


@dataclass(frozen=True)
class SelectionReason:
    """Why a partition was chosen; one id may satisfy several criteria."""

    lowest_lower_bound: bool = False
    lowest_value: bool = False
    largest_best_bound: bool = False

    @property
    def local_search_candidate(self) -> bool:
        """Only lowest-bound / lowest-value winners may seed a local search."""
        return self.lowest_lower_bound or self.lowest_value


@dataclass
class SelectionOutcome:
    chosen: list[int]
    reasons: dict[int, SelectionReason]


def select_halo(
    ledger: PartitionLedger,
    constants: np.ndarray,
    criterion3_by_constant: bool = False,
) -> SelectionOutcome:
    """Select partitions per the three lower-bound criteria.

    Criterion 1: the lowest lower bound over all partitions.
    Criterion 2: the lowest objective value.
    Criterion 3: among the partitions of maximal half diagonal, the lowest
    lower bound (or, with ``criterion3_by_constant``, the lowest local
    constant -- an alternative reading kept behind a switch).

    Argmin ties break toward the lowest id.  The chosen list keeps the
    criterion order 1, 2, 3 with duplicates merged, so it never holds more
    than three ids.
    """
    if len(ledger) == 0:
        raise ValueError("ledger is empty")
    values = ledger.values
    diags = ledger.half_diagonals()
    bounds = lower_bounds(ledger, constants)

    q1 = int(np.argmin(bounds))
    q2 = int(np.argmin(values))
    max_diag = float(diags.max())
    in_max = np.flatnonzero(diags >= max_diag * (1.0 - SIDE_REL_TOL))
    inner = constants if criterion3_by_constant else bounds
    q3 = int(in_max[np.argmin(inner[in_max])])

    chosen: list[int] = []
    for q in (q1, q2, q3):
        if q not in chosen:
            chosen.append(q)
    reasons = {
        q: SelectionReason(
            lowest_lower_bound=(q == q1),
            lowest_value=(q == q2),
            largest_best_bound=(q == q3),
        )
        for q in chosen
    }
    return SelectionOutcome(chosen, reasons)


def select_hlo(
    ledger: PartitionLedger,
    global_constant: float,
    criterion3_by_constant: bool = False,
) -> SelectionOutcome:
    """Same criteria with every local constant replaced by the global one."""
    constants = np.full(len(ledger), float(global_constant))
    return select_halo(ledger, constants, criterion3_by_constant=criterion3_by_constant)


def _size_classes(diags: np.ndarray) -> list[np.ndarray]:
    """Group partition ids by half diagonal within SIDE_REL_TOL, ascending."""
    order = np.argsort(diags, kind="stable")
    classes: list[list[int]] = []
    rep = None
    for idx in order:
        d = diags[idx]
        if rep is None or d > rep * (1.0 + SIDE_REL_TOL):
            classes.append([int(idx)])
            rep = d
        else:
            classes[-1].append(int(idx))
    return [np.asarray(c) for c in classes]


def select_potentially_optimal(ledger: PartitionLedger, epsilon_rel: float) -> list[int]:
    """Ids that are potentially optimal in the dividing-rectangles sense.

    A partition i qualifies when some rate constant K > 0 makes
    ``f_i - K d_i`` no worse than every other partition and at least
    ``epsilon`` below the incumbent, with ``epsilon = epsilon_rel * |f_min|``
    (floored at 1e-8 when f_min is exactly 0 so the test is not vacuous).
    Equivalent to sitting on the lower-right convex hull of the
    (half diagonal, value) cloud; computed here per size class through the
    feasible-K interval of each class minimum.
    """
    if len(ledger) == 0:
        raise ValueError("ledger is empty")
    values = ledger.values
    diags = ledger.half_diagonals()
    f_min = float(values.min())
    eps_abs = epsilon_rel * abs(f_min)
    if epsilon_rel > 0.0 and f_min == 0.0:
        eps_abs = 1e-8

    classes = _size_classes(diags)
    class_d = np.array([float(diags[c].max()) for c in classes])
    class_f = np.array([float(values[c].min()) for c in classes])

    chosen: list[int] = []
    for i, ids in enumerate(classes):
        d_i, f_i = class_d[i], class_f[i]
        below = class_d < d_i
        above = class_d > d_i
        k_low = float(np.max((f_i - class_f[below]) / (d_i - class_d[below]))) if below.any() else 0.0
        k_high = float(np.min((class_f[above] - f_i) / (class_d[above] - d_i))) if above.any() else np.inf
        k_eps = (f_i - (f_min - eps_abs)) / d_i
        k_need = max(k_low, k_eps)
        if k_high > 0.0 and k_high >= k_need:
            chosen.extend(int(j) for j in ids if values[j] == f_i)
    return sorted(chosen)
