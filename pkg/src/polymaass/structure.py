"""Dimension formulas and Fourier-coefficient shapes at eigenvalue zero.

Depth m may be a half-integer and is stored as twice_depth = 2m.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np

from . import eisenstein as es
from . import specialfn as sf
from .errors import ConsistencyError, RangeError

K_MAX = 26
TWICE_DEPTH_MAX = 16


@dataclass(frozen=True)
class HarmonicDepth:
    twice_depth: int

    def __post_init__(self):
        if int(self.twice_depth) != self.twice_depth or self.twice_depth < 1:
            raise ValueError("twice_depth must be a positive integer")

    @property
    def m(self):
        return self.twice_depth / 2


def dim_holomorphic(k):
    """dim M_k for the full modular group."""
    if k < 0 or k % 2:
        return 0
    return k // 12 + (0 if k % 12 == 2 else 1)


def _dim_cusp_direct(k):
    if k % 12 == 2:
        return max(k // 12 - 1, 0)
    return k // 12


def dim_cusp(k):
    """dim S_k, computed two ways that must agree."""
    if k % 2 or k < 4:
        return 0
    direct = _dim_cusp_direct(k)
    subtract = dim_holomorphic(k) - 1
    if direct != subtract:
        raise ConsistencyError(f"cusp dimension formulas disagree at k = {k}")
    return direct


def dim_polyharmonic(k, depth):
    """dim V_k^m(0); the sum with S_k for k >= 4 is taken to be direct."""
    twice = depth.twice_depth if isinstance(depth, HarmonicDepth) else int(depth)
    if k % 2 or abs(k) > K_MAX:
        raise RangeError(f"weight {k} outside the supported even range |k| <= {K_MAX}")
    if not 1 <= twice <= TWICE_DEPTH_MAX:
        raise RangeError(f"twice_depth {twice} outside [1, {TWICE_DEPTH_MAX}]")
    ceil_m = (twice + 1) // 2
    floor_m = twice // 2
    if k == 0:
        return ceil_m
    if k == 2 or k <= -2:
        return floor_m
    return ceil_m + dim_cusp(k)


def dims_table(kmin, kmax, max_twice_depth):
    """Rows (k, twice_depth, dim) over even k in [kmin, kmax]."""
    rows = []
    for k in range(kmin + (kmin % 2), kmax + 1, 2):
        for twice in range(1, max_twice_depth + 1):
            rows.append((k, twice, dim_polyharmonic(k, twice)))
    return rows


def dims_to_csv(rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["k", "twice_depth", "dim"])
    w.writerows(rows)
    return buf.getvalue()


# ---------------------------------------------------------------- coefficient shapes

@dataclass(frozen=True)
class CoefficientShape:
    mode: int
    descriptors: tuple
    case: str
    reachable: bool = True


def is_center_case(k, s0):
    """Constant-term case where the two exponents s0 and 1-k-s0 coincide."""
    return complex(s0) == (1 - k) / 2


def fourier_shape(k, depth_m, mode_n, s0=0):
    """Allowed basis functions for the n-th Fourier coefficient of a depth-m form.

    Descriptors are tuples:
      ("W", j, sign)     j-th s-derivative of the Whittaker term with sign(n)
      ("y^s0", j)        y^s0 log^j y
      ("y^(1-k-s0)", j)  y^(1-k-s0) log^j y
      ("y^(1-k)/2", j)   y^((1-k)/2) log^j y, only when s0 = (1-k)/2
    """
    if k % 2:
        raise RangeError("even weight expected")
    if int(depth_m) != depth_m or depth_m < 1:
        raise RangeError("depth must be a positive integer")
    if s0 not in (0, 1 - k):
        raise RangeError("at eigenvalue zero the spectral point is 0 or 1 - k")
    m = int(depth_m)
    if mode_n != 0:
        sign = 1 if mode_n > 0 else -1
        return CoefficientShape(mode_n, tuple(("W", j, sign) for j in range(m)), "1")
    if is_center_case(k, s0):
        # needs k = 1; kept for completeness, never reached for even weight
        return CoefficientShape(0, tuple(("y^(1-k)/2", j) for j in range(2 * m)), "2b", False)
    desc = tuple(("y^s0", j) for j in range(m)) + tuple(("y^(1-k-s0)", j) for j in range(m))
    return CoefficientShape(0, desc, "2a")


def shape_function(k, desc, y, s0=0, n=1):
    """Numerical value at height y of one descriptor with j = 0 (no s-derivative)."""
    tag, j = desc[0], desc[1]
    if j != 0:
        raise ValueError("only underived descriptors are evaluated")
    if tag == "W":
        arg = 4 * np.pi * abs(n) * y
        return y ** (-k / 2) * sf.whittaker_w(desc[2] * (k // 2), s0 + (k - 1) / 2, arg)
    if tag == "y^s0":
        return y ** s0
    if tag == "y^(1-k-s0)":
        return y ** (1 - k - s0)
    return y ** ((1 - k) / 2)


# ---------------------------------------------------------------- depth-one template

def one_harmonic_expansion_eval(k, coeffs, z, N=None):
    """sum_n b_n Gamma(1-k, 4 pi n y) e(-nz) + b_0 y^(1-k) + a_0 + sum_n a_n e(nz).

    coeffs has sequences "a" (a_0, a_1, ...) and "b" (b_0, b_1, ...) where b_n
    multiplies the n-th non-holomorphic term.
    """
    p = es.as_point(z)
    a = list(coeffs.get("a", ()))
    b = list(coeffs.get("b", ()))
    N = N if N is not None else max(len(a), len(b), 1) - 1
    total = 0j
    if a:
        total += a[0]
    if b:
        total += b[0] * p.y ** (1 - k)
    zz = p.z
    for n in range(1, N + 1):
        if n < len(a) and a[n] != 0:
            total += a[n] * np.exp(2j * np.pi * n * zz)
        if n < len(b) and b[n] != 0:
            g = sf.incomplete_gamma_upper(1 - k, 4 * np.pi * n * p.y)
            total += b[n] * g * np.exp(-2j * np.pi * n * zz)
    return complex(total)


def one_harmonic_coefficients(k, N=es.DEFAULT_TERMS):
    """Depth-one coefficients of Ê_k(z, 0), read off its Whittaker expansion."""
    fe = es.build_fourier_expansion(k, 0, N)
    a = [fe.constant_plus] + [0j] * N
    b = [fe.constant_minus] + [0j] * N
    for n, c in fe.terms:
        # W_{k/2,(k-1)/2}(t) = t^(k/2) e^(-t/2) and
        # W_{-k/2,(1-k)/2}(t) = t^(k/2) e^(t/2) Gamma(1-k, t)
        if n > 0:
            a[n] = 2 ** (k / 2) * c
        else:
            b[-n] = 2 ** (k / 2) * c
    return {"a": a, "b": b}
