"""Compare whittaker_w against mpmath on random draws from the parameter box."""
import argparse

import mpmath as mp
import numpy as np

from polymaass import specialfn as sf


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--draws", type=int, default=400)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    worst = []
    for _ in range(args.draws):
        kappa = int(rng.integers(-sf.KAPPA_MAX, sf.KAPPA_MAX + 1))
        mu = complex(rng.uniform(-7, 7), rng.uniform(-7, 7))
        x = float(rng.uniform(sf.ARG_MIN, 40))
        ref = complex(mp.whitw(kappa, mu, x))
        err = abs(sf.whittaker_w(kappa, mu, x) - ref) / abs(ref)
        worst.append((err, kappa, mu, x))
    worst.sort(reverse=True)
    print(f"{args.draws} draws, median relative error {np.median([w[0] for w in worst]):.2e}")
    for err, kappa, mu, x in worst[:8]:
        print(f"  {err:.2e}  kappa={kappa:+d}  mu={mu.real:+.3f}{mu.imag:+.3f}i  x={x:.3f}")


if __name__ == "__main__":
    main()
