"""Compare circle cocycle values with the closed forms -floor(a~ + b~) and frac(-s)."""
import argparse
from fractions import Fraction

import numpy as np

from flatcocycles.cocycles import eval_b, eval_b_lift, eval_c
from flatcocycles.diffeo import CircleRotation, DiffeoWord
from flatcocycles.zigzag import CircleZigzag


def frac(q: Fraction) -> Fraction:
    return q - q.numerator // q.denominator


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-den", type=int, default=64)
    args = ap.parse_args()

    zz = CircleZigzag()
    rng = np.random.default_rng(args.seed)
    mism = {"c0": 0, "c1": 0, "b0": 0, "lift": 0}
    counts = {}
    for _ in range(args.samples):
        a, b = (Fraction(int(rng.integers(-5 * args.max_den, 5 * args.max_den)), int(rng.integers(1, args.max_den + 1))) for _ in range(2))
        g = (DiffeoWord.of(CircleRotation(a)), DiffeoWord.of(CircleRotation(b)))
        s = frac(a) + frac(b)
        want = -(s.numerator // s.denominator)
        c0 = eval_c(zz, 0, g)
        counts[c0] = counts.get(c0, 0) + 1
        mism["c0"] += c0 != want
        mism["c1"] += eval_c(zz, 1, g) != c0
        mism["b0"] += eval_b(zz, 0, g[:1]) != frac(-a)
        mism["lift"] += eval_b_lift(zz, g[:1]) != -frac(a)
    print(f"samples {args.samples}, seed {args.seed}")
    print("value histogram of c_0:", dict(sorted(counts.items())))
    for name, n in mism.items():
        print(f"{name:5s} mismatches: {n}")


if __name__ == "__main__":
    main()
