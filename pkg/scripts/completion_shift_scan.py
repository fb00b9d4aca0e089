"""Residual of (Delta_k + c) Ê_k = Ê̂_k for c = k^2/4 and c = (k/2)(k/2 - 1), per weight."""
from polymaass import diffops as do

S = 0.3 + 0.4j


def main():
    print(" k   shift k^2/4      shift (k/2)(k/2-1)")
    for k in do.WEIGHTS:
        a = do.verify_identity("double_completion", {"k": k, "s": S, "shift": "printed"}).max_residual
        b = do.verify_identity("double_completion", {"k": k, "s": S, "shift": "corrected"}).max_residual
        print(f"{k:+d}   {a:.3e}        {b:.3e}")


if __name__ == "__main__":
    main()
