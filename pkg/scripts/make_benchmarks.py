"""Regenerate the frozen benchmark manifests under benchmarks/.

Byte-identical on every run: problem seeds, names and stored optima are all
derived deterministically.  The test suite replays these files and checks
they match what this script produces.
"""

from __future__ import annotations

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from halo.manifest import classical_manifest, schoen_manifest, write_manifest

ROOT = pathlib.Path(__file__).resolve().parents[1]
BENCH_DIR = ROOT / "benchmarks"

# 30 multimodal generator problems: seeds 0-14 at n=2, seeds 15-29 at n=3.
SCHOEN30 = "schoen30.jsonl"
# 20 classical problems at n=2; center-optimum functions appear shifted.
CLASSICAL20 = "classical20.jsonl"


def build_schoen30() -> list[dict]:
    return schoen_manifest(n=2, count=15, base_seed=0) + schoen_manifest(
        n=3, count=15, base_seed=15
    )


def build_classical20() -> list[dict]:
    return classical_manifest(n=2, seed=7, count=20)


def main() -> None:
    BENCH_DIR.mkdir(exist_ok=True)
    for name, records in ((SCHOEN30, build_schoen30()), (CLASSICAL20, build_classical20())):
        path = BENCH_DIR / name
        write_manifest(path, records)
        print(f"wrote {len(records)} problems to {path}")


if __name__ == "__main__":
    main()
