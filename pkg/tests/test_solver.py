import numpy as np
import pytest

from halo.geometry import BoxDomain, ObjectiveError, ObjectiveHandle, StopRule
from halo.problems import classical_problem, shift_minimizer
from halo.solver import (
    STATUS_BUDGET,
    STATUS_ITER_LIMIT,
    STATUS_SOLVED,
    RunTrace,
    SolverConfig,
    check_stop,
    run,
)

from conftest import unit_handle


def rastrigin_like(x):
    return float(10 * x.size + np.sum((3 * x - 1) ** 2 - 10 * np.cos(2 * np.pi * (3 * x - 1))))


def test_iteration_zero_counts_any_objective():
    for fn in (lambda x: float(np.sum(x)), lambda x: float(np.prod(x + 1)), rastrigin_like):
        h = unit_handle(fn, 2)
        trace = run(h, SolverConfig(stop=StopRule(max_fun_evals=5, max_iter=10)))
        assert trace.n_evals == 5
        assert len(trace.ledger) == 5


def test_budget_one_stops_after_root():
    h = unit_handle(lambda x: 1.0, 3)
    trace = run(h, SolverConfig(stop=StopRule(max_fun_evals=1)))
    assert trace.status == STATUS_BUDGET
    assert trace.n_evals == 1
    assert len(trace.ledger) == 1


def test_check_stop_examples():
    stop = StopRule(rel_error_tol=1e-4)
    h = unit_handle(lambda x: 0.0, 1, known_optimum=1.0)
    trace = RunTrace([], [], "", 1.0001, None, 0, 0, 0, None)
    assert check_stop(trace, h, stop) == STATUS_SOLVED
    trace = RunTrace([], [], "", 1.001, None, 0, 0, 0, None)
    assert check_stop(trace, h, stop) is None
    h0 = unit_handle(lambda x: 0.0, 1, known_optimum=0.0)
    trace = RunTrace([], [], "", 1e-13, None, 0, 0, 0, None)
    assert check_stop(trace, h0, stop) == STATUS_SOLVED


def test_check_stop_budget():
    stop = StopRule(max_fun_evals=10)
    h = unit_handle(lambda x: 0.0, 1)
    h.eval_count = 10
    trace = RunTrace([], [], "", 5.0, None, 10, 0, 0, None)
    assert check_stop(trace, h, stop) == STATUS_BUDGET


def test_determinism_bitwise():
    prob = shift_minimizer(classical_problem("rastrigin", 2), seed=5)
    traces = []
    for _ in range(2):
        h = prob.make_handle()
        traces.append(run(h, SolverConfig(variant="halo", stop=StopRule(max_fun_evals=1500))))
    a, b = traces
    assert a.status == b.status and a.n_evals == b.n_evals
    for ra, rb in zip(a.evals, b.evals):
        assert ra.value == rb.value and ra.best == rb.best
        assert np.array_equal(ra.point, rb.point)
    assert [it.selected for it in a.iterations] == [it.selected for it in b.iterations]


def test_best_so_far_nonincreasing():
    h = unit_handle(rastrigin_like, 2)
    trace = run(h, SolverConfig(stop=StopRule(max_fun_evals=500)))
    bests = [r.best for r in trace.evals]
    assert all(b2 <= b1 for b1, b2 in zip(bests, bests[1:]))


def test_eval_accounting_identity():
    # evals = 1 (root) + 2|P| per division + local-search evals, exactly
    for variant in ("halo", "hlo", "direct"):
        h = unit_handle(rastrigin_like, 2)
        cfg = SolverConfig(variant=variant, beta=1e-2, stop=StopRule(max_fun_evals=900))
        trace = run(h, cfg)
        assert trace.status == STATUS_BUDGET
        sampling_evals = len(trace.ledger) - 1  # every sampled point became a center
        assert trace.n_evals == 1 + sampling_evals + trace.n_local_evals
        assert trace.n_evals == h.eval_count


def test_constant_objective_halo_hlo_traces_coincide():
    # constant f keeps every slope at zero, where the two rules agree
    t = {}
    for variant in ("halo", "hlo"):
        h = unit_handle(lambda x: 2.0, 2)
        t[variant] = run(h, SolverConfig(variant=variant, local_search_enabled=False,
                                         stop=StopRule(max_fun_evals=400)))
    assert [r.value for r in t["halo"].evals] == [r.value for r in t["hlo"].evals]
    assert [it.selected for it in t["halo"].iterations] == [it.selected for it in t["hlo"].iterations]
    for ra, rb in zip(t["halo"].evals, t["hlo"].evals):
        assert np.array_equal(ra.point, rb.point)


def test_denseness_10x10_grid_5000_evals():
    h = unit_handle(rastrigin_like, 2)
    cfg = SolverConfig(variant="halo", local_search_enabled=False,
                       stop=StopRule(max_fun_evals=5000))
    trace = run(h, cfg)
    points = np.array([r.point for r in trace.evals])
    cells = set()
    for p in points:
        cells.add((min(int(p[0] * 10), 9), min(int(p[1] * 10), 9)))
    assert len(cells) == 100
    diags = trace.ledger.half_diagonals()
    assert diags.max() < np.sqrt(2.0) / 2.0
    max_diags = [it.max_half_diagonal for it in trace.iterations]
    assert all(b <= a for a, b in zip(max_diags, max_diags[1:]))
    assert max_diags[-1] < max_diags[0]


def test_solved_status_absolute_fallback():
    prob = shift_minimizer(classical_problem("sphere", 2), seed=3)
    h = prob.make_handle()
    trace = run(h, SolverConfig(variant="halo", stop=StopRule(max_fun_evals=2000)))
    assert trace.status == STATUS_SOLVED
    assert abs(trace.best_value - 0.0) <= 1e-4


def test_iter_limit_status():
    h = unit_handle(lambda x: float(np.sum(x)), 2)
    trace = run(h, SolverConfig(stop=StopRule(max_fun_evals=10_000, max_iter=3)))
    assert trace.status == STATUS_ITER_LIMIT
    assert len(trace.iterations) == 3


def test_solved_check_fires_mid_iteration():
    # the objective is solved at a sampled point: the run must stop there
    prob = shift_minimizer(classical_problem("sphere", 1), seed=9)
    h = prob.make_handle()
    trace = run(h, SolverConfig(variant="halo", stop=StopRule(max_fun_evals=30000)))
    assert trace.status == STATUS_SOLVED
    assert trace.evals[-1].best <= 1e-4
    assert all(r.best > 1e-4 for r in trace.evals[:-1])


def test_objective_failure_attaches_partial_trace():
    calls = {"n": 0}

    def flaky(x):
        calls["n"] += 1
        if calls["n"] > 7:
            raise RuntimeError("sensor died")
        return float(np.sum(x))

    h = ObjectiveHandle(flaky, BoxDomain([0.0, 0.0], [1.0, 1.0]))
    with pytest.raises(ObjectiveError) as info:
        run(h, SolverConfig(stop=StopRule(max_fun_evals=100)))
    partial = info.value.partial_trace
    assert partial is not None
    assert partial.status == "aborted"
    assert partial.n_evals == 7
    assert h.eval_count == 7


def test_direct_variant_divides_all_potentially_optimal():
    h = unit_handle(rastrigin_like, 2)
    cfg = SolverConfig(variant="direct", stop=StopRule(max_fun_evals=600))
    trace = run(h, cfg)
    assert trace.status == STATUS_BUDGET
    assert trace.n_local_searches == 0
    # slopes are still maintained for analytics
    assert trace.ledger.slopes.max() > 0.0


def test_variant_validation():
    with pytest.raises(ValueError):
        SolverConfig(variant="annealing")
