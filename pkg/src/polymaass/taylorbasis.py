"""Taylor coefficients of Ê̂_k(z, s) at s = 0 and the bases built from them.

    Ê̂_k(z, s) = sum_n F_{n,k}(z) s^n   for k <= 0
    Ê̂_k(z, s) = sum_n G_{n,k}(z) s^n   for k >= 2

Coefficients come from the trapezoidal rule on a circle around s = 0, which
is spectrally accurate because Ê̂_k is entire in s.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

import numpy as np

from . import eisenstein as es
from . import specialfn as sf
from .connection import Boundary, ConnectionTable, solve_table
from .errors import AliasError, TableMismatchError, WeightError

MAX_ORDER = 6


@dataclass(frozen=True)
class ContourSpec:
    radius: float = 0.375
    nodes: int = 64

    def __post_init__(self):
        if self.nodes <= 0 or self.nodes % 2:
            raise ValueError("contour nodes must be a positive even number")
        if not self.radius > 0:
            raise ValueError("contour radius must be positive")

    def check_weight(self, k):
        # the circle itself must stay off the formula's zeta poles
        for p in es.singular_abscissae(k):
            if abs(abs(p) - self.radius) < 1e-2:
                raise ValueError(f"contour radius {self.radius} passes near s = {p}")

    def points(self):
        theta = (2 * np.arange(self.nodes) + 1) * np.pi / self.nodes
        return self.radius * np.exp(1j * theta)


DEFAULT_CONTOUR = ContourSpec()


class Family(Enum):
    PLAIN = "plain"
    SYMMETRIZED = "symmetrized"
    MODIFIED = "modified"


@dataclass(frozen=True)
class TaylorCoefficientRequest:
    weight: int
    order: int
    point: es.UpperHalfPoint
    contour: ContourSpec = DEFAULT_CONTOUR
    family: Family = Family.PLAIN
    boundary: Boundary = Boundary.BINOMIAL
    N: int = es.DEFAULT_TERMS


def coefficient_name(k, n):
    return f"F_{{{n},{k}}}" if k <= 0 else f"G_{{{n},{k}}}"


def _check_order(n, contour):
    if n < 0:
        raise ValueError("order must be nonnegative")
    if n > MAX_ORDER or n > contour.nodes // 4:
        raise AliasError(f"order {n} exceeds the aliasing bound for {contour.nodes} nodes")


@lru_cache(maxsize=4096)
def _coefficients(k, x, y, radius, nodes, N):
    contour = ContourSpec(radius, nodes)
    s = contour.points()
    vals = es.eval_on_nodes(k, complex(x, y), s, es.Completion.DOUBLY_COMPLETED, N)
    orders = np.arange(contour.nodes // 4 + 1)
    out = (vals[None, :] * s[None, :] ** (-orders[:, None])).mean(axis=1)
    out.setflags(write=False)
    return out


def plain_coefficients(k, z, max_order, contour=DEFAULT_CONTOUR, N=es.DEFAULT_TERMS):
    """[c_0, ..., c_max_order] with c_n the n-th s-Taylor coefficient of Ê̂_k(z, .)."""
    k = es.check_weight(k)
    _check_order(max_order, contour)
    contour.check_weight(k)
    p = es.as_point(z)
    return np.array(_coefficients(k, p.x, p.y, contour.radius, contour.nodes, N)[: max_order + 1])


def plain_coefficient(k, n, z, contour=DEFAULT_CONTOUR, N=es.DEFAULT_TERMS):
    """F_{n,k}(z) for k <= 0, G_{n,k}(z) for k >= 2; zero for negative n."""
    if n < 0:
        return 0j
    return complex(plain_coefficients(k, z, n, contour, N)[n])


def symmetrized_coefficient(k, n, z, contour=DEFAULT_CONTOUR, N=es.DEFAULT_TERMS):
    """F̃_n (k = 0) or G̃_n (k = 2) with weights C(n+l, n)."""
    if k not in (0, 2):
        raise WeightError("symmetrized bases exist for weights 0 and 2 only")
    c = plain_coefficients(k, z, n, contour, N)
    if k == 0:
        total = c[n] + sum(math.comb(n + l, n) * c[n - l] for l in range(1, n + 1))
        return complex((-1) ** n * total)
    return complex(c[n] + sum((-1) ** l * math.comb(n + l, n) * c[n - l] for l in range(1, n + 1)))


def modified_coefficient(k, n, z, table, contour=DEFAULT_CONTOUR, N=es.DEFAULT_TERMS):
    """(G̃_{n,k}(z), F̃_{n,2-k}(z)) built from a connection table of weight k.

    G̃_{n,k}   = sum_l (-1)^l c_{n,k,l} G_{n-l,k}
    F̃_{n,2-k} = (-1)^n sum_l c_{n,k,l} F_{n-l,2-k}
    """
    if not isinstance(table, ConnectionTable) or table.weight != k:
        raise TableMismatchError(f"table weight does not match k = {k}")
    if table.n_max < n:
        raise TableMismatchError(f"table has rows up to {table.n_max}, need {n}")
    g = plain_coefficients(k, z, n, contour, N)
    f = plain_coefficients(2 - k, z, n, contour, N)
    c = [float(table[n, l]) for l in range(n + 1)]
    g_mod = sum((-1) ** l * c[l] * g[n - l] for l in range(n + 1))
    f_mod = (-1) ** n * sum(c[l] * f[n - l] for l in range(n + 1))
    return complex(g_mod), complex(f_mod)


def taylor_coefficient(req):
    """Dispatch a TaylorCoefficientRequest; MODIFIED returns the weight-k member G̃."""
    family = Family(req.family)
    k, n = req.weight, req.order
    _check_order(n, req.contour)
    if family is Family.PLAIN:
        return plain_coefficient(k, n, req.point, req.contour, req.N)
    if family is Family.SYMMETRIZED:
        return symmetrized_coefficient(k, n, req.point, req.contour, req.N)
    if k < 2:
        raise WeightError("modified bases are indexed by the weight k >= 2")
    table = solve_table(k, req.boundary, n)
    return modified_coefficient(k, n, req.point, table, req.contour, req.N)[0]


# ---------------------------------------------------------------- closed forms

def explicit_G1_series(z, N=None):
    """G_1(z) = Ê_2(z, 0) = pi/6 - 1/(2y) - 4 pi sum sigma_1(n) q^n."""
    p = es.as_point(z)
    N = es._auto_terms(p.y, N, 2)
    q = np.exp(2j * np.pi * p.z)
    n = np.arange(1, N + 1)
    sig = np.array([sf.divisor_sum(1, int(j)) for j in n], dtype=float)
    return complex(np.pi / 6 - 1 / (2 * p.y) - 4 * np.pi * np.sum(sig * q ** n))


def kronecker_limit_value(z):
    """F_1(z) = -gamma/2 - 1/2 + log(4 pi)/2 + log(sqrt(y) |Delta(z)|^(1/12))."""
    p = es.as_point(z)
    delta = abs(es.discriminant_delta(p))
    return (-sf.EULER_GAMMA / 2 - 0.5 + 0.5 * math.log(4 * math.pi)
            + 0.5 * math.log(p.y) + math.log(delta) / 12)
