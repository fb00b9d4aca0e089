"""First s-Taylor coefficients at weights 0 and 2 against both closed forms."""
import math

import numpy as np

from polymaass import eisenstein as es
from polymaass import specialfn as sf
from polymaass import taylorbasis as tb


def stated_f1(p):
    return (-sf.EULER_GAMMA / 2 + math.log(4 * math.pi)
            + math.log(math.sqrt(p.y) * abs(es.discriminant_delta(p)) ** (1 / 12)))


def stated_g1(p):
    q = np.exp(2j * np.pi * p.z)
    series = sum(sf.divisor_sum(1, n) * q ** n for n in range(1, 60))
    return -np.pi / 6 - 1 / (2 * p.y) + 4 * np.pi * series


def main():
    for z in (1j, 0.3 + 0.9j, -0.25 + 1.4j, 0.2 + 1.3j):
        p = es.as_point(z)
        f1 = tb.plain_coefficient(0, 1, p)
        g1 = tb.plain_coefficient(2, 1, p)
        print(f"z = {z}")
        print(f"  F_1 contour {f1.real:+.15f}  corrected {tb.kronecker_limit_value(p):+.15f}"
              f"  stated-minus-contour {stated_f1(p) - f1.real:+.15f}")
        print(f"  G_1 contour {g1:.15f}  corrected {tb.explicit_G1_series(p):.15f}"
              f"  stated {stated_g1(p):.15f}")
    print(f"constant 1/2 + log(4 pi)/2 = {0.5 + 0.5 * math.log(4 * math.pi):+.15f}")


if __name__ == "__main__":
    main()
