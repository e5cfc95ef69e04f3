"""Sampler frequencies against exact branch probabilities for a circuit.

Prints, per outcome sequence, the exact probability, the sampled frequency
and the deviation in binomial standard deviations, for growing shot counts.

    python3 scripts/sampler_convergence.py circuits/noncommute.cq --seed 3
"""
import argparse
from math import sqrt

from qcube.circuit import eval_exact, parse, sample


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("file")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-exp", type=int, default=6, help="largest shot count is 10**max_exp")
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    with open(args.file, encoding="utf-8") as fh:
        c = parse(fh.read())
    exact = {b.key: b.probability for b in eval_exact(c)}
    for e in range(2, args.max_exp + 1):
        n = 10 ** e
        counts = sample(c, n, args.seed, workers=args.workers)
        worst = 0.0
        print(f"shots = {n}")
        for key, p in exact.items():
            f = counts.get(key, 0) / n
            sd = sqrt(float(p * (1 - p)) / n)
            z = (f - float(p)) / sd if sd else 0.0
            worst = max(worst, abs(z))
            print(f"  {key or '-':<16} exact {str(p):>6}  freq {f:.5f}  z {z:+.2f}")
        print(f"  max |z| = {worst:.2f}")


if __name__ == "__main__":
    main()
