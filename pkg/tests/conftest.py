from __future__ import annotations

import numpy as np
import pytest

from halo.geometry import BoxDomain, ObjectiveHandle, PartitionLedger

# Half-side values reachable by repeated trisection from 1/2.
TRISECTION_PALETTE = [0.5 / 3**m for m in range(4)]


def make_handle(fn, lower, upper, known_optimum=None, known_minimizer=None):
    return ObjectiveHandle(
        evaluator=fn,
        domain=BoxDomain(np.asarray(lower, float), np.asarray(upper, float)),
        known_optimum=known_optimum,
        known_minimizer=None if known_minimizer is None else np.asarray(known_minimizer, float),
    )


def unit_handle(fn, n, known_optimum=None):
    return make_handle(fn, np.zeros(n), np.ones(n), known_optimum=known_optimum)


def random_ledger(rng, n, count):
    """Ledger with trisection-exact sizes and random values/slopes.

    Centers are arbitrary: selection rules only read sizes, values and
    slopes, so the rows need not tile the cube.
    """
    ledger = PartitionLedger(n)
    for _ in range(count):
        sides = rng.choice(TRISECTION_PALETTE, size=n)
        ledger.append(
            rng.uniform(0.0, 1.0, n),
            sides,
            rng.uniform(-5.0, 5.0),
            rng.uniform(0.0, 3.0, n),
        )
    return ledger


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
