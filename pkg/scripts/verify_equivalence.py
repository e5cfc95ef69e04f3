"""Run the cube/qubit equivalence suite over a range of seeds and sizes.

    python3 scripts/verify_equivalence.py --random 500 --seeds 0 1 2
"""
import argparse
import time

from qcube.equivalence import run_full_suite, well_definedness_sweep


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--random", type=int, default=200)
    ap.add_argument("--seeds", type=int, nargs="+", default=[0])
    ap.add_argument("--kernel-pairs", type=int, default=1000)
    args = ap.parse_args()

    bad = 0
    for seed in args.seeds:
        t0 = time.perf_counter()
        r = run_full_suite(args.random, seed).merge(well_definedness_sweep(args.kernel_pairs, seed))
        dt = time.perf_counter() - t0
        print(f"seed {seed}: {r.summary()} ({dt:.2f}s)")
        if not r.ok:
            bad += 1
            print("  first counterexample:", r.first_counterexample.to_json())
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
