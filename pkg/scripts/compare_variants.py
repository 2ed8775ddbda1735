"""Run every solver variant over a manifest and print the summary table.

    python scripts/compare_variants.py [manifest] [budget] [jobs]
"""

from __future__ import annotations

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from halo.geometry import StopRule
from halo.manifest import load_manifest
from halo.metrics import run_benchmark
from halo.solver import VARIANTS, SolverConfig

ROOT = pathlib.Path(__file__).resolve().parents[1]


def main() -> None:
    manifest = sys.argv[1] if len(sys.argv) > 1 else ROOT / "benchmarks" / "classical20.jsonl"
    budget = int(sys.argv[2]) if len(sys.argv) > 2 else 6000
    jobs = int(sys.argv[3]) if len(sys.argv) > 3 else 1
    records = load_manifest(manifest)
    print(f"manifest={manifest} problems={len(records)} budget={budget}")
    print(f"{'variant':>8} {'auoc':>7} {'solved%':>8} {'avg evals (solved)':>19}")
    for variant in VARIANTS:
        cfg = SolverConfig(variant=variant, stop=StopRule(max_fun_evals=budget))
        report = run_benchmark(records, cfg, parallelism=jobs)
        avg = "-" if report.average_evals_solved is None else f"{report.average_evals_solved:.1f}"
        print(f"{variant:>8} {report.auoc:>7.3f} {report.percent_solved:>8.1f} {avg:>19}")


if __name__ == "__main__":
    main()
