"""Box domains, partitions and the append-only partition ledger.

All solver geometry lives in the normalized unit hypercube [0, 1]^N.
Objective functions are evaluated in problem units; the two coordinate
systems are connected by ``normalize_point`` / ``denormalize_point``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

# Relative tolerance used whenever two trisection side lengths are compared.
# Repeated division by 3 is not exact in binary floating point.
SIDE_REL_TOL = 1e-12


class DomainViolationError(ValueError):
    """A point lies outside the box it is being mapped against."""


class BudgetExhaustedError(RuntimeError):
    """An operation would exceed the allowed number of function evaluations."""


class ObjectiveError(RuntimeError):
    """The wrapped evaluator raised; carries the trace gathered so far."""

    def __init__(self, message: str):
        super().__init__(message)
        self.partial_trace = None


@dataclass(frozen=True)
class BoxDomain:
    """Axis-aligned box ``{x : lower <= x <= upper}`` in problem units."""

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lower = np.atleast_1d(np.asarray(self.lower, dtype=float)).copy()
        upper = np.atleast_1d(np.asarray(self.upper, dtype=float)).copy()
        if lower.ndim != 1 or upper.shape != lower.shape or lower.size < 1:
            raise ValueError("lower and upper must be 1-d vectors of equal length >= 1")
        if not np.all(lower < upper):
            raise ValueError("every lower bound must be strictly below its upper bound")
        lower.setflags(write=False)
        upper.setflags(write=False)
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @property
    def dim(self) -> int:
        return self.lower.size

    @property
    def widths(self) -> np.ndarray:
        return self.upper - self.lower


def normalize_point(p, domain: BoxDomain) -> np.ndarray:
    """Map a problem-units point into [0, 1]^N.

    Raises DomainViolationError if ``p`` falls outside the box (bounds
    are inclusive).
    """
    p = np.asarray(p, dtype=float)
    if p.shape != domain.lower.shape:
        raise DomainViolationError(f"point has shape {p.shape}, domain is {domain.dim}-dimensional")
    if np.any(p < domain.lower) or np.any(p > domain.upper):
        raise DomainViolationError(f"point {p} outside domain [{domain.lower}, {domain.upper}]")
    return (p - domain.lower) / domain.widths


def denormalize_point(q, domain: BoxDomain) -> np.ndarray:
    """Map a point in [0, 1]^N back to problem units."""
    q = np.asarray(q, dtype=float)
    if q.shape != domain.lower.shape:
        raise DomainViolationError(f"point has shape {q.shape}, domain is {domain.dim}-dimensional")
    if np.any(q < 0.0) or np.any(q > 1.0):
        raise DomainViolationError(f"normalized point {q} outside the unit cube")
    return domain.lower + q * domain.widths


@dataclass
class Partition:
    """One hyperrectangle of the normalized domain.

    ``center`` and ``half_sides`` are in normalized units; ``half_sides``
    holds half the length of each side, so every entry belongs to the
    trisection closure {0.5 * 3**-m}.  ``slopes`` holds the nonnegative
    absolute directional difference quotients accumulated for this
    partition (units: objective change per normalized length).
    """

    id: int
    center: np.ndarray
    half_sides: np.ndarray
    value: float
    slopes: np.ndarray

    @property
    def half_diagonal(self) -> float:
        """Distance from the center to a vertex, ``norm(half_sides)``."""
        return float(np.linalg.norm(self.half_sides))


class PartitionLedger:
    """Append-only, column-stacked store of every partition created so far.

    Rows are never deleted: dividing a partition shrinks its half sides in
    place and appends the new children, so the set of rows always tiles the
    unit cube.  Ids are dense ``0..count-1`` and never reused.
    """

    def __init__(self, dim: int, capacity: int = 64):
        if dim < 1:
            raise ValueError("dimension must be >= 1")
        self._dim = dim
        self._centers = np.zeros((capacity, dim))
        self._half_sides = np.zeros((capacity, dim))
        self._values = np.zeros(capacity)
        self._slopes = np.zeros((capacity, dim))
        self._count = 0

    def __len__(self) -> int:
        return self._count

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def centers(self) -> np.ndarray:
        """View of all centers, shape (count, dim). Stale after append."""
        return self._centers[: self._count]

    @property
    def half_sides(self) -> np.ndarray:
        return self._half_sides[: self._count]

    @property
    def values(self) -> np.ndarray:
        return self._values[: self._count]

    @property
    def slopes(self) -> np.ndarray:
        return self._slopes[: self._count]

    def _grow(self):
        cap = max(2 * self._centers.shape[0], 64)
        for name in ("_centers", "_half_sides", "_slopes"):
            new = np.zeros((cap, self._dim))
            new[: self._count] = getattr(self, name)[: self._count]
            setattr(self, name, new)
        new_vals = np.zeros(cap)
        new_vals[: self._count] = self._values[: self._count]
        self._values = new_vals

    def append(self, center, half_sides, value: float, slopes=None) -> int:
        if self._count == self._centers.shape[0]:
            self._grow()
        i = self._count
        self._centers[i] = np.asarray(center, dtype=float)
        self._half_sides[i] = np.asarray(half_sides, dtype=float)
        self._values[i] = float(value)
        self._slopes[i] = 0.0 if slopes is None else np.asarray(slopes, dtype=float)
        self._count += 1
        return i

    def partition(self, pid: int) -> Partition:
        """Detached copy of one row."""
        if not 0 <= pid < self._count:
            raise IndexError(f"no partition with id {pid}")
        return Partition(
            id=pid,
            center=self._centers[pid].copy(),
            half_sides=self._half_sides[pid].copy(),
            value=float(self._values[pid]),
            slopes=self._slopes[pid].copy(),
        )

    def set_half_side(self, pid: int, coord: int, value: float):
        self._half_sides[pid, coord] = value

    def set_slope(self, pid: int, coord: int, value: float):
        if value < 0.0:
            raise ValueError("slopes are absolute and must be nonnegative")
        self._slopes[pid, coord] = value

    def set_slope_row(self, pid: int, row):
        row = np.asarray(row, dtype=float)
        if np.any(row < 0.0):
            raise ValueError("slopes are absolute and must be nonnegative")
        self._slopes[pid] = row

    def half_diagonals(self) -> np.ndarray:
        """Per-partition distance from center to vertex."""
        return np.linalg.norm(self.half_sides, axis=1)

    def total_volume(self) -> float:
        """Sum of box volumes; equals 1 whenever the rows tile the cube."""
        return float(np.prod(2.0 * self.half_sides, axis=1).sum())


@dataclass
class ObjectiveHandle:
    """Opaque evaluator of the objective over a box domain.

    ``eval_count`` increments by exactly one per evaluation, including
    evaluations made by local searches.  A handle is owned by a single
    solver run; the wrapped ``evaluator`` itself must be safe to call from
    several handles concurrently.
    """

    evaluator: Callable[[np.ndarray], float]
    domain: BoxDomain
    eval_count: int = 0
    known_optimum: Optional[float] = None
    known_minimizer: Optional[np.ndarray] = None

    def evaluate(self, point) -> float:
        """Evaluate at a problem-units point."""
        point = np.asarray(point, dtype=float)
        try:
            value = float(self.evaluator(point))
        except Exception as exc:
            raise ObjectiveError(f"objective evaluation failed at {point}: {exc}") from exc
        self.eval_count += 1
        return value

    def eval_normalized(self, q) -> float:
        """Evaluate at a normalized point; clips ulp-level drift at the faces."""
        q = np.clip(np.asarray(q, dtype=float), 0.0, 1.0)
        return self.evaluate(denormalize_point(q, self.domain))


@dataclass
class StopRule:
    """Termination thresholds for a solver run."""

    max_fun_evals: int = 30000
    rel_error_tol: float = 1e-4
    max_iter: int = 10_000_000

    def __post_init__(self):
        if self.max_fun_evals < 1 or self.max_iter < 1 or self.rel_error_tol <= 0.0:
            raise ValueError("stop rule fields must be strictly positive")
