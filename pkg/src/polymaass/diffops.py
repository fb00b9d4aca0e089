"""Finite-difference Delta_k and xi_k, and a registry of operator identities.

    Delta_k = y^2 (d_xx + d_yy) - i k y (d_x + i d_y)
    xi_k f  = i y^k conj(f_x + i f_y)

Derivatives use five-point central stencils with one Richardson level.
Every identity check computes both sides independently and reports
max |LHS - RHS| / max(1, |RHS|) per grid point.
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from functools import partial
from typing import Callable

import numpy as np

from . import eisenstein as es
from . import specialfn as sf
from . import taylorbasis as tb
from .connection import Boundary, solve_table
from .errors import DomainError, UnknownIdentityError

Y_FLOOR = 0.1


@dataclass(frozen=True)
class Stencil:
    step: float = 1e-2
    richardson: bool = True

    def __post_init__(self):
        if not self.step > 0:
            raise ValueError("stencil step must be positive")


DEFAULT_STENCIL = Stencil()


@dataclass(frozen=True)
class SmoothField:
    evaluator: Callable
    accuracy: float = 1e-9

    def __call__(self, z):
        return self.evaluator(z)


def _field(f):
    return f if isinstance(f, SmoothField) else SmoothField(f)


def _d1(g, h):
    return (-g(2 * h) + 8 * g(h) - 8 * g(-h) + g(-2 * h)) / (12 * h)


def _d2(g, h, g0):
    return (-g(2 * h) + 16 * g(h) - 30 * g0 + 16 * g(-h) - g(-2 * h)) / (12 * h * h)


def _richardson(d, h, on):
    if not on:
        return d(h)
    return (16 * d(h / 2) - d(h)) / 15


def partials(f, z, stencil=DEFAULT_STENCIL, second=True):
    """(f_x, f_y, f_xx, f_yy) at z; second derivatives are None when second=False."""
    f = _field(f)
    z = es.as_point(z).z
    h = stencil.step
    if z.imag - 2 * h <= Y_FLOOR:
        raise DomainError(f"stencil footprint leaves y > {Y_FLOOR}")
    gx = lambda t: complex(f(z + t))
    gy = lambda t: complex(f(z + 1j * t))
    fx = _richardson(partial(_d1, gx), h, stencil.richardson)
    fy = _richardson(partial(_d1, gy), h, stencil.richardson)
    if not second:
        return fx, fy, None, None
    f0 = complex(f(z))
    fxx = _richardson(lambda t: _d2(gx, t, f0), h, stencil.richardson)
    fyy = _richardson(lambda t: _d2(gy, t, f0), h, stencil.richardson)
    return fx, fy, fxx, fyy


def laplacian(f, k, z, stencil=DEFAULT_STENCIL):
    """Delta_k f at z."""
    y = es.as_point(z).y
    fx, fy, fxx, fyy = partials(f, z, stencil)
    return y * y * (fxx + fyy) - 1j * k * y * (fx + 1j * fy)


def xi(f, k, z, stencil=DEFAULT_STENCIL):
    """xi_k f at z."""
    y = es.as_point(z).y
    fx, fy, _, _ = partials(f, z, stencil, second=False)
    return 1j * y ** k * np.conj(fx + 1j * fy)


def xi_field(f, k, stencil=DEFAULT_STENCIL):
    """xi_k f as a new field, for composing operators."""
    return SmoothField(lambda z: xi(f, k, z, stencil))


def laplacian_field(f, k, stencil=DEFAULT_STENCIL):
    return SmoothField(lambda z: laplacian(f, k, z, stencil))


# ---------------------------------------------------------------- single Fourier terms

def fourier_term(k, n, s):
    """The field y^(-k/2) W_{sgn(n) k/2, s+(k-1)/2}(4 pi |n| y) e(nx)."""
    kappa = (k // 2) if n > 0 else -(k // 2)

    def f(z):
        p = es.as_point(z)
        w = sf.whittaker_w(kappa, s + (k - 1) / 2, 4 * np.pi * abs(n) * p.y)
        return p.y ** (-k / 2) * w * np.exp(2j * np.pi * n * p.x)
    return SmoothField(f)


def xi_on_fourier_terms(k, n, s, y, x=0.0):
    """Closed-form xi_k image of fourier_term(k, n, s) at x + iy."""
    if n == 0:
        raise ValueError("mode must be nonzero")
    sb = np.conj(complex(s))
    mu = -sb + (1 - k) / 2
    arg = 4 * np.pi * abs(n) * y
    phase = np.exp(-2j * np.pi * n * x)
    if n < 0:
        w = sf.whittaker_w((2 - k) // 2, mu, arg)
        return complex(-y ** (-(2 - k) / 2) * w * phase)
    w = sf.whittaker_w(-((2 - k) // 2), mu, arg)
    return complex(sb * (1 - k - sb) * y ** (-(2 - k) / 2) * w * phase)


# ---------------------------------------------------------------- reports

@dataclass
class VerificationReport:
    identity: str
    weight: int | None
    params: dict
    points: list
    tolerance: float
    passed: bool = field(default=False)

    @property
    def max_residual(self):
        return max((p["residual"] for p in self.points), default=0.0)

    def to_dict(self):
        return {
            "identity": self.identity,
            "weight": self.weight,
            "params": self.params,
            "points": self.points,
            "tolerance": self.tolerance,
            "pass": self.passed,
        }

    def to_json(self):
        return json.dumps(self.to_dict(), default=_json_default)


def _json_default(o):
    if isinstance(o, complex):
        return {"re": o.real, "im": o.imag}
    if isinstance(o, np.generic):
        return o.item()
    raise TypeError(type(o))


def residual(lhs, rhs):
    return float(abs(lhs - rhs) / max(1.0, abs(rhs)))


def _report(name, k, params, grid, tol, pairs):
    pts = []
    for z in grid:
        res = max(residual(l, r) for l, r in pairs(es.as_point(z)))
        pts.append({"z": [es.as_point(z).x, es.as_point(z).y], "residual": res})
    rep = VerificationReport(name, k, params, pts, tol)
    rep.passed = all(p["residual"] < tol for p in pts)
    return rep


DEFAULT_GRID = (1j, 0.3 + 0.9j, -0.25 + 1.4j)
DENSE_GRID = DEFAULT_GRID + (0.1 + 1.05j, -0.4 + 0.95j, 0.45 + 1.2j, 0.0 + 1.8j, -0.15 + 2.3j)
WEIGHTS = (-4, -2, 0, 2, 4, 6)

TOL_SECOND = 1e-5
TOL_FIRST = 1e-6


def _eis(k, s, level=es.Completion.RAW, N=es.DEFAULT_TERMS):
    return SmoothField(lambda z: es.eval_eisenstein(k, z, s, level, N))


def _coef_field(k, n, N=es.DEFAULT_TERMS, contour=tb.DEFAULT_CONTOUR):
    return SmoothField(lambda z: tb.plain_coefficient(k, n, z, contour, N))


# each check returns a list of (lhs, rhs) pairs at one point

def _eigenfunction(p, k, s, stencil, N):
    f = _eis(k, s, N=N)
    return [(laplacian(f, k, p, stencil), s * (s + k - 1) * f(p))]


def _test_field(z):
    # smooth and not modular; any such field satisfies the operator identities
    p = es.as_point(z)
    return p.y ** 1.3 * np.exp(1j * (0.7 * p.x + 0.2 * p.y)) * (1 + 0.3 * p.x + 0.1j * p.y * p.y)


def _factorization(p, k, s, stencil, N, field_name="eisenstein"):
    if field_name == "power":
        f = SmoothField(lambda z: es.as_point(z).y ** s)
    elif field_name == "test":
        f = SmoothField(_test_field)
    else:
        f = _eis(k, s, es.Completion.COMPLETED, N)
    lhs = xi(xi_field(f, k, stencil), 2 - k, p, stencil)
    return [(lhs, laplacian(f, k, p, stencil))]


_GAMMAS = {"S": es.S, "T": es.T, "TS": es.T @ es.S}


def _slash_commutation(p, k, s, stencil, N, gamma="S"):
    g = _GAMMAS[gamma]
    f = SmoothField(_test_field)
    sl = SmoothField(lambda z: es.apply_slash(f(g.act(z)), k, g, z))
    lhs = xi(sl, k, p, stencil)
    rhs = es._int_power(g.multiplier(p), k - 2) * xi(f, k, g.act(p), stencil)
    return [(lhs, complex(rhs))]


def _xi_on_E_raw(p, k, s, stencil, N):
    sb = np.conj(s)
    lhs = xi(_eis(k, s, N=N), k, p, stencil)
    rhs = sb * es.eval_eisenstein(2 - k, p, sb + k - 1, es.Completion.RAW, N)
    return [(lhs, rhs)]


def _xi_on_E_completed(p, k, s, stencil, N):
    sb = np.conj(s)
    f = _eis(k, s, es.Completion.DOUBLY_COMPLETED, N)
    lhs = xi(f, k, p, stencil)
    rhs = es.eval_eisenstein(2 - k, p, -sb, es.Completion.DOUBLY_COMPLETED, N)
    if k >= 2:
        rhs = sb * (sb + k - 1) * rhs
    return [(lhs, rhs)]


def _double_completion(p, k, s, stencil, N, shift=None):
    shift = k * k / 4 if shift is None else shift
    f = _eis(k, s, es.Completion.COMPLETED, N)
    lhs = laplacian(f, k, p, stencil) + shift * f(p)
    rhs = es.eval_eisenstein(k, p, s, es.Completion.DOUBLY_COMPLETED, N)
    return [(lhs, rhs)]


def _ladder_02(p, n, relation, stencil, N, contour=tb.DEFAULT_CONTOUR):
    F = lambda j: SmoothField(lambda z: tb.symmetrized_coefficient(0, j, z, contour=contour, N=N))
    G = lambda j: SmoothField(lambda z: tb.symmetrized_coefficient(2, j, z, contour=contour, N=N))
    if relation == "delta_F":
        return [(laplacian(F(n), 0, p, stencil), F(n - 1)(p))]
    if relation == "xi_F":
        return [(xi(F(n), 0, p, stencil), G(n)(p))]
    if relation == "delta_G":
        return [(laplacian(G(n), 2, p, stencil), G(n - 1)(p))]
    return [(xi(G(n), 2, p, stencil), F(n - 1)(p))]


def _ramp_tower(p, k, n, relation, boundary, stencil, N, contour=tb.DEFAULT_CONTOUR):
    table = solve_table(k, boundary, n)
    G = lambda j: SmoothField(lambda z: tb.modified_coefficient(k, j, z, table, contour=contour, N=N)[0])
    F = lambda j: SmoothField(lambda z: tb.modified_coefficient(k, j, z, table, contour=contour, N=N)[1])
    if relation == "xi_G":
        return [(xi(G(n), k, p, stencil), (k - 1) * F(n - 1)(p))]
    if relation == "xi_F":
        return [(xi(F(n), 2 - k, p, stencil), G(n)(p))]
    if relation == "delta_G":
        return [(laplacian(G(n), k, p, stencil), (k - 1) * G(n - 1)(p))]
    return [(laplacian(F(n), 2 - k, p, stencil), (k - 1) * F(n - 1)(p))]


def _taylor_recursion(p, k, n, part, stencil, N, contour=tb.DEFAULT_CONTOUR):
    c = lambda kk, j: (tb.plain_coefficient(kk, j, p, contour=contour, N=N) if j >= 0 else 0j)
    fminus = lambda kk, j: (-1) ** j * c(kk, j) if j >= 0 else 0j
    if part == "delta":
        if k >= 2:
            lhs = laplacian(_coef_field(k, n, N, contour), k, p, stencil)
            return [(lhs, (k - 1) * c(k, n - 1) + c(k, n - 2))]
        fm = SmoothField(lambda z: (-1) ** n * tb.plain_coefficient(k, n, z, contour=contour, N=N))
        lhs = laplacian(fm, k, p, stencil)
        return [(lhs, (1 - k) * fminus(k, n - 1) + fminus(k, n - 2))]
    if k >= 2:
        lhs = xi(_coef_field(k, n, N, contour), k, p, stencil)
        return [(lhs, (k - 1) * fminus(2 - k, n - 1) + fminus(2 - k, n - 2))]
    fm = SmoothField(lambda z: (-1) ** n * tb.plain_coefficient(k, n, z, contour=contour, N=N))
    return [(xi(fm, k, p, stencil), c(2 - k, n))]


def _xi_fourier_term(p, k, n, s, stencil, N):
    lhs = xi(fourier_term(k, n, s), k, p, stencil)
    return [(lhs, xi_on_fourier_terms(k, n, s, p.y, p.x))]


def _kronecker_limit(p, stencil, N, contour=tb.DEFAULT_CONTOUR):
    return [(tb.plain_coefficient(0, 1, p, contour=contour, N=N), tb.kronecker_limit_value(p))]


def _g1_closed_form(p, stencil, N, contour=tb.DEFAULT_CONTOUR):
    return [(tb.plain_coefficient(2, 1, p, contour=contour, N=N), tb.explicit_G1_series(p))]


def _printed_kronecker(p):
    d = abs(es.discriminant_delta(p))
    return -sf.EULER_GAMMA / 2 + math.log(4 * math.pi) + math.log(math.sqrt(p.y) * d ** (1 / 12))


def _printed_g1(p):
    return -np.pi / 3 - tb.explicit_G1_series(p) - 1 / p.y


REGISTRY = {
    "eigenfunction": ("weight", TOL_SECOND),
    "factorization": ("weight", TOL_SECOND),
    "slash_commutation": ("weight", TOL_FIRST),
    "xi_on_E_raw": ("weight", TOL_FIRST),
    "xi_on_E_completed": ("weight", TOL_FIRST),
    "xi_fourier_term": ("weight", TOL_FIRST),
    "double_completion": ("weight", TOL_SECOND),
    "ladder_02": ("order", None),
    "ramp_tower_general": ("weight", None),
    "taylor_recursion": ("weight", None),
    "kronecker_limit": ("none", 1e-8),
    "g1_closed_form": ("none", 1e-9),
}


def _relation_tol(relation):
    return TOL_FIRST if relation.startswith("xi") else TOL_SECOND


def verify_identity(name, params=None, grid=DEFAULT_GRID, tolerance=None,
                    stencil=DEFAULT_STENCIL, N=es.DEFAULT_TERMS, contour=tb.DEFAULT_CONTOUR):
    """Check one identity on a grid and return a VerificationReport."""
    if name not in REGISTRY:
        raise UnknownIdentityError(name)
    params = dict(params or {})
    k = params.get("k")
    s = complex(params.get("s", 0.3 + 0.4j))
    default_tol = REGISTRY[name][1]
    extra = {}
    if name == "eigenfunction":
        pairs = lambda p: _eigenfunction(p, k, s, stencil, N)
    elif name == "factorization":
        fname = params.get("field", "eisenstein")
        pairs = lambda p: _factorization(p, k, s, stencil, N, fname)
    elif name == "slash_commutation":
        pairs = lambda p: _slash_commutation(p, k, s, stencil, N, params.get("gamma", "S"))
    elif name == "xi_on_E_raw":
        pairs = lambda p: _xi_on_E_raw(p, k, s, stencil, N)
    elif name == "xi_on_E_completed":
        pairs = lambda p: _xi_on_E_completed(p, k, s, stencil, N)
    elif name == "xi_fourier_term":
        n = int(params.get("n", 1))
        pairs = lambda p: _xi_fourier_term(p, k, n, s, stencil, N)
    elif name == "double_completion":
        shift = params.get("shift", "printed")
        value = k * k / 4 if shift == "printed" else (k / 2) * (k / 2 - 1)
        pairs = lambda p: _double_completion(p, k, s, stencil, N, value)
    elif name == "ladder_02":
        n, rel = int(params.get("n", 1)), params.get("relation", "delta_F")
        default_tol = _relation_tol(rel)
        pairs = lambda p: _ladder_02(p, n, rel, stencil, N, contour)
    elif name == "ramp_tower_general":
        n, rel = int(params.get("n", 1)), params.get("relation", "xi_G")
        boundary = Boundary(params.get("boundary", "binomial"))
        default_tol = _relation_tol(rel)
        pairs = lambda p: _ramp_tower(p, k, n, rel, boundary, stencil, N, contour)
    elif name == "taylor_recursion":
        n, part = int(params.get("n", 1)), params.get("part", "delta")
        default_tol = _relation_tol(part)
        pairs = lambda p: _taylor_recursion(p, k, n, part, stencil, N, contour)
    elif name == "kronecker_limit":
        pairs = lambda p: _kronecker_limit(p, stencil, N, contour)
        extra["printed_form_residuals"] = [
            residual(tb.plain_coefficient(0, 1, z, contour=contour, N=N), _printed_kronecker(es.as_point(z)))
            for z in grid]
    else:
        pairs = lambda p: _g1_closed_form(p, stencil, N, contour)
        extra["printed_form_residuals"] = [
            residual(tb.plain_coefficient(2, 1, z, contour=contour, N=N), _printed_g1(es.as_point(z)))
            for z in grid]
    tol = default_tol if tolerance is None else tolerance
    shown = {key: (_json_default(v) if isinstance(v, complex) else v) for key, v in params.items()}
    if "s" not in shown and name in ("eigenfunction", "factorization", "slash_commutation",
                                     "xi_on_E_raw", "xi_on_E_completed", "xi_fourier_term",
                                     "double_completion"):
        shown["s"] = _json_default(s)
    shown.update(extra)
    return _report(name, k, shown, grid, tol, pairs)


def registry_plan(only=None, weights=WEIGHTS):
    """Default parameter sets for every registry identity."""
    plan = []
    s = 0.3 + 0.4j

    def add(name, **params):
        if only is None or name == only:
            plan.append((name, params))

    for k in weights:
        add("eigenfunction", k=k, s=s)
        add("factorization", k=k, s=s)
        add("slash_commutation", k=k, gamma="S")
        add("xi_on_E_completed", k=k, s=s)
        add("double_completion", k=k, s=s, shift="corrected")
        for part in ("delta", "xi"):
            for n in (1, 2, 3):
                add("taylor_recursion", k=k, n=n, part=part)
    for k in weights:
        # raw E_{2-k} at s + k - 1 must avoid the weight-0 poles
        add("xi_on_E_raw", k=k, s=0.8 + 0.3j)
        for n in (-1, 1):
            add("xi_fourier_term", k=k, n=n, s=0.35 + 0.2j)
    for n in (1, 2, 3):
        for rel in ("delta_F", "xi_F", "delta_G", "xi_G"):
            add("ladder_02", n=n, relation=rel)
    for k in (4, 6):
        for n in (1, 2, 3):
            for rel in ("xi_G", "xi_F", "delta_G", "delta_F"):
                add("ramp_tower_general", k=k, n=n, relation=rel, boundary="binomial")
    add("kronecker_limit")
    add("g1_closed_form")
    return plan


def verify_all(only=None, grid=DEFAULT_GRID, tolerances=None, stencil=DEFAULT_STENCIL,
               N=es.DEFAULT_TERMS, contour=tb.DEFAULT_CONTOUR):
    if only is not None and only not in REGISTRY:
        raise UnknownIdentityError(only)
    tolerances = tolerances or {}
    reports = [verify_identity(name, params, grid, tolerances.get(name), stencil, N, contour)
               for name, params in registry_plan(only)]
    return sorted(reports, key=lambda r: r.identity)
