#!/usr/bin/env python3
"""Large-scale smoke run through the CLI (n=5000, m=120, l=100).

Generates a synthetic dataset at roughly mediamill scale, round-trips it
through ARFF, then runs `lnemlc train` and `lnemlc evaluate` end to end,
reporting total wall-clock time.
"""

import argparse
import subprocess
import sys
import tempfile
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from lnemlc.dataset import serialize_arff
from lnemlc.synth import clustered_dataset


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n-train", type=int, default=5000)
    parser.add_argument("--n-test", type=int, default=1000)
    parser.add_argument("--features", type=int, default=120)
    parser.add_argument("--labels", type=int, default=100)
    parser.add_argument("--dim", type=int, default=128)
    parser.add_argument("--sample-budget", type=int, default=300_000)
    parser.add_argument("--trees", type=int, default=20)
    parser.add_argument("--workdir", type=Path, default=None,
                        help="keep artifacts here instead of a temp directory")
    args = parser.parse_args()

    workdir = args.workdir or Path(tempfile.mkdtemp(prefix="lnemlc-smoke-"))
    workdir.mkdir(parents=True, exist_ok=True)
    print(f"workdir: {workdir}")

    common = dict(
        m=args.features, l=args.labels, clusters=32, noise=1.0, structure_seed=99,
    )
    t0 = time.perf_counter()
    (workdir / "train.arff").write_text(
        serialize_arff(clustered_dataset(args.n_train, sample_seed=1, **common))
    )
    (workdir / "test.arff").write_text(
        serialize_arff(clustered_dataset(args.n_test, sample_seed=2, **common))
    )
    print(f"data generated in {time.perf_counter() - t0:.1f}s")

    def run(cmd):
        print("+", " ".join(cmd))
        subprocess.run([sys.executable, "-m", "lnemlc.cli", *cmd], check=True)

    run([
        "train", "--data", str(workdir / "train.arff"),
        "--labels", str(args.labels), "--dim", str(args.dim), "--seed", "0",
        "--sample-budget", str(args.sample_budget), "--trees", str(args.trees),
        "--out", str(workdir / "bundle"),
    ])
    run([
        "evaluate", "--model", str(workdir / "bundle"),
        "--test", str(workdir / "test.arff"), "--labels", str(args.labels),
        "--mode", "both", "--baseline", "--out", str(workdir / "report"),
    ])
    print(f"total wall clock: {time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
