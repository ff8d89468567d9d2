"""Run every identity suite on the sphere and print a one-line summary per suite."""
import argparse
import json
import time

from flatcocycles.config import Config
from flatcocycles.suites import SUITES, run_named_suite


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--manifold", default="sphere", choices=("circle", "sphere"))
    ap.add_argument("--json", action="store_true", help="print full reports")
    args = ap.parse_args()

    cfg = Config(manifold=args.manifold)
    for name in SUITES:
        t = time.perf_counter()
        rep = run_named_suite(cfg, name, args.samples, args.seed, args.jobs).to_json()
        dt = time.perf_counter() - t
        if args.json:
            print(json.dumps(rep, sort_keys=True))
            continue
        extra = f" sup|c|={rep['stats']['sup_abs']}" if name == "bounded" else ""
        print(f"{name:12s} {rep['result']:4s} pass={rep['pass']:4d} fail={rep['fail']} skip={rep['skipped']} "
              f"max_residual={rep['max_residual']:.2e}{extra} ({dt:.1f}s)")


if __name__ == "__main__":
    main()
