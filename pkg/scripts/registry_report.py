"""Run every registered identity and print a one-line summary per parameter set."""
import argparse
import time

from polymaass import diffops as do


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--only")
    ap.add_argument("--dense", action="store_true")
    args = ap.parse_args()
    grid = do.DENSE_GRID if args.dense else do.DEFAULT_GRID
    t0 = time.perf_counter()
    reports = do.verify_all(args.only, grid)
    for r in reports:
        flag = "ok  " if r.passed else "FAIL"
        print(f"{flag} {r.max_residual:.2e} / {r.tolerance:.0e}  {r.identity}  {r.params}")
    print(f"{sum(r.passed for r in reports)}/{len(reports)} passed in {time.perf_counter() - t0:.1f}s")


if __name__ == "__main__":
    main()
