"""Sensitivity of the local-search gate threshold on a benchmark manifest.

Runs the halo variant at several gate sizes and tabulates solved percentage,
average evaluations over solved runs, AUOC and the number of local searches
actually started.  Usage:

    python scripts/beta_sweep.py [manifest] [budget]
"""

from __future__ import annotations

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from halo.geometry import StopRule
from halo.manifest import load_manifest, problem_from_record
from halo.metrics import build_report, record_from_trace
from halo.solver import SolverConfig, run

ROOT = pathlib.Path(__file__).resolve().parents[1]
BETAS = (1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6)


def main() -> None:
    manifest = sys.argv[1] if len(sys.argv) > 1 else ROOT / "benchmarks" / "schoen30.jsonl"
    budget = int(sys.argv[2]) if len(sys.argv) > 2 else 4000
    records = load_manifest(manifest)
    print(f"manifest={manifest} problems={len(records)} budget={budget}")
    print(f"{'beta':>8} {'solved%':>8} {'avg evals':>10} {'auoc':>7} {'avg local searches':>19}")
    for beta in BETAS:
        cfg = SolverConfig(variant="halo", beta=beta, stop=StopRule(max_fun_evals=budget))
        rows = []
        searches = 0
        for record in records:
            problem = problem_from_record(record)
            trace = run(problem.make_handle(), cfg)
            searches += trace.n_local_searches
            rows.append(
                record_from_trace(problem.name, problem.n, "halo", trace, problem.known_optimum)
            )
        report = build_report(rows, cfg)
        avg = "-" if report.average_evals_solved is None else f"{report.average_evals_solved:.1f}"
        print(
            f"{beta:>8g} {report.percent_solved:>8.1f} {avg:>10} "
            f"{report.auoc:>7.3f} {searches / len(records):>19.2f}"
        )


if __name__ == "__main__":
    main()
