"""Non-holomorphic Eisenstein series for PSL(2, Z), evaluated two ways.

    E_k(z, s)  = 1/2 sum' y^s / ((mz + n)^k |mz + n|^(2s))
    Ê_k(z, s)  = pi^-(s + k/2) Gamma(s + k/2 + |k|/2) E_k(z, s)
    Ê̂_k(z, s) = (s + k/2)(s + k/2 - 1) Ê_k(z, s)      (entire in s)

The lattice path sums E_k directly where it converges absolutely. The
Fourier path expands Ê_k in Whittaker functions and works for every s.
Ratios of Gamma values in the expansion are rising factorials, so the
only singular points of the formula are the zeta poles at
s in {-k/2, (1-k)/2, 1-k/2}.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np

from . import specialfn as sf
from .errors import ConvergenceError, IterationError, PoleError, TailError, WeightError

WEIGHT_MAX = 12
DEFAULT_TERMS = 24
DEFAULT_CUTOFF = 400
# below this height a point is first moved into the fundamental domain
REDUCE_BELOW = 0.3
# a formula singularity closer than this is bypassed by a contour average
_AVERAGE_WITHIN = 5e-4
_AVERAGE_RADIUS = 1e-3
_AVERAGE_NODES = 16
_BUILD_POLE_GAP = 1e-6


@dataclass(frozen=True)
class UpperHalfPoint:
    x: float
    y: float

    def __post_init__(self):
        if not self.y > 0:
            raise ValueError("point must lie in the upper half-plane")

    @property
    def z(self):
        return complex(self.x, self.y)


def as_point(z):
    """Accept an UpperHalfPoint, a complex number or an (x, y) pair."""
    if isinstance(z, UpperHalfPoint):
        return z
    if isinstance(z, (tuple, list)):
        return UpperHalfPoint(float(z[0]), float(z[1]))
    z = complex(z)
    return UpperHalfPoint(z.real, z.imag)


def _int_power(w, k):
    """w**k for integer k by repeated multiplication."""
    out = np.ones_like(np.asarray(w, dtype=complex))
    base = np.asarray(w, dtype=complex)
    for _ in range(abs(k)):
        out = out * base
    return 1.0 / out if k < 0 else out


@dataclass(frozen=True)
class UnimodularMatrix:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError("matrix must have determinant 1")

    def __matmul__(self, other):
        return UnimodularMatrix(self.a * other.a + self.b * other.c,
                                self.a * other.b + self.b * other.d,
                                self.c * other.a + self.d * other.c,
                                self.c * other.b + self.d * other.d)

    def act(self, z):
        z = as_point(z).z
        w = (self.a * z + self.b) / (self.c * z + self.d)
        return UpperHalfPoint(w.real, w.imag)

    def multiplier(self, z):
        return self.c * as_point(z).z + self.d


IDENTITY = UnimodularMatrix(1, 0, 0, 1)
S = UnimodularMatrix(0, -1, 1, 0)
T = UnimodularMatrix(1, 1, 0, 1)


class Completion(Enum):
    RAW = "raw"
    COMPLETED = "hat"
    DOUBLY_COMPLETED = "hathat"


def check_weight(k):
    if int(k) != k or k % 2:
        raise WeightError(f"weight must be an even integer, got {k}")
    if abs(k) > WEIGHT_MAX:
        raise WeightError(f"|k| <= {WEIGHT_MAX} is supported, got {k}")
    return int(k)


def singular_abscissae(k):
    """Zeta-pole positions of the Fourier formula for weight k."""
    return (-k / 2, (1 - k) / 2, 1 - k / 2)


def _distance_to_singular(k, s):
    return min(abs(complex(s) - p) for p in singular_abscissae(k))


def completion_factor(k, s):
    """pi^-(s+k/2) Gamma(s + k/2 + |k|/2), the factor taking E to Ê."""
    s = np.asarray(s, dtype=complex)
    return np.pi ** (-(s + k / 2)) * sf.gamma_complex_array(s + k / 2 + abs(k) / 2)


def double_factor(k, s):
    """(s + k/2)(s + k/2 - 1), the factor taking Ê to Ê̂."""
    s = np.asarray(s, dtype=complex)
    return (s + k / 2) * (s + k / 2 - 1)


# ---------------------------------------------------------------- Fourier path

def _constant_blocks(k, s):
    """Coefficients of y^s and y^(1-s-k) in the constant term of Ê_k."""
    s = np.atleast_1d(np.asarray(s, dtype=complex))
    ratio_plus = sf.pochhammer(s + k / 2, abs(k) // 2)
    ratio_minus = sf.pochhammer(s, k // 2) if k >= 0 else sf.pochhammer(s + k, -k // 2)
    zh_plus = np.array([sf.zeta_hat(2 * t + k) for t in s])
    zh_minus = np.array([sf.zeta_hat(2 - 2 * t - k) for t in s])
    sign = (-1) ** (abs(k) // 2)
    return ratio_plus * zh_plus, sign * ratio_minus * zh_minus


def _mode_coefficients(k, s, N):
    """Coefficient of (2 pi |n| y)^(-k/2) W(4 pi |n| y) e(nx) for n = 1..N (rows)
    and n = -1..-N, as arrays of shape (N, len(s))."""
    s = np.atleast_1d(np.asarray(s, dtype=complex))
    n = np.arange(1, N + 1, dtype=float)[:, None]
    sign = (-1) ** (abs(k) // 2)
    sigma = np.array([sf.divisor_sums(2 * s + k - 1, m) for m in range(1, N + 1)])
    base = sign * (2 * np.pi) ** (k / 2) * np.exp(-s * np.log(n)) * sigma
    if k >= 0:
        ratio_pos, ratio_neg = np.ones_like(s), sf.pochhammer(s, k)
    else:
        ratio_pos, ratio_neg = sf.pochhammer(s + k, -k), np.ones_like(s)
    return base * ratio_pos, base * ratio_neg


@lru_cache(maxsize=8192)
def _radial(k, y, s_key, N):
    """Constant term and y-dependent mode factors of Ê_k on a fixed s-grid."""
    s = np.array(s_key, dtype=complex)
    c_plus, c_minus = _constant_blocks(k, s)
    const = c_plus * np.exp(s * math.log(y)) + c_minus * np.exp((1 - s - k) * math.log(y))
    pos, neg = _mode_coefficients(k, s, N)
    n = np.arange(1, N + 1, dtype=float)[:, None]
    arg = np.broadcast_to(4 * np.pi * n * y, pos.shape)
    mu = np.broadcast_to(s + (k - 1) / 2, pos.shape)
    scale = (2 * np.pi * n * y) ** (-k / 2)
    w_pos = sf.whittaker_w_array(k // 2, mu, arg)
    w_neg = sf.whittaker_w_array(-k // 2, mu, arg)
    modes = np.concatenate([pos * scale * w_pos, neg * scale * w_neg])
    for a in (const, modes):
        a.setflags(write=False)
    return const, modes


def _ehat_fourier(k, x, y, s, N):
    """Ê_k(x + iy, s) from the Fourier expansion, vectorized over s."""
    s = np.atleast_1d(np.asarray(s, dtype=complex))
    const, modes = _radial(k, float(y), tuple(s.tolist()), int(N))
    n = np.arange(1, N + 1)
    phase = np.concatenate([np.exp(2j * np.pi * n * x), np.exp(-2j * np.pi * n * x)])
    return const + phase @ modes


@dataclass(frozen=True)
class FourierExpansion:
    """Ê_k(z, s) = constant_plus y^s + constant_minus y^(1-s-k)
    + sum over terms (n, c) of c (2 pi |n| y)^(-k/2) W_{sgn(n) k/2, s+(k-1)/2}(4 pi |n| y) e(nx)."""
    weight: int
    s: complex
    constant_plus: complex
    constant_minus: complex
    terms: tuple
    truncation: int

    def evaluate(self, z):
        p = as_point(z)
        k, s = self.weight, self.s
        out = self.constant_plus * p.y ** s + self.constant_minus * p.y ** (1 - s - k)
        ns = np.array([n for n, _ in self.terms])
        cs = np.array([c for _, c in self.terms])
        arg = 4 * np.pi * np.abs(ns) * p.y
        w = sf.whittaker_w_array(np.sign(ns) * (k // 2), s + (k - 1) / 2, arg)
        out += np.sum(cs * (arg / 2) ** (-k / 2) * w * np.exp(2j * np.pi * ns * p.x))
        return complex(out)

    def tail_bound(self, z):
        """Sum of |mode| over the next block of modes past the truncation,
        plus a geometric remainder for everything after that block."""
        p = as_point(z)
        N = self.truncation
        extra = max(N, 8)
        _, modes = _radial(self.weight, float(p.y), (self.s,), N + extra)
        mags = np.abs(modes[:, 0])
        block = np.concatenate([mags[N:N + extra], mags[2 * N + extra:]])
        last = mags[N + extra - 1] + mags[-1]
        q = math.exp(-2 * np.pi * p.y)
        return float(block.sum() + 2 * last * q / (1 - q))


def _contour_nodes(center, radius, nodes):
    theta = (2 * np.arange(nodes) + 1) * np.pi / nodes
    return center + radius * np.exp(1j * theta)


def _regular_limit(fn, s, scale_floor=1.0):
    """Value at s of a function analytic on a punctured disc, or PoleError if it
    has a pole there. fn maps an s-array to an array of values."""
    nodes = _contour_nodes(s, _AVERAGE_RADIUS, _AVERAGE_NODES)
    vals = np.asarray(fn(nodes))
    mean = vals.mean(axis=-1)
    residue = (vals * (nodes - s)).mean(axis=-1)
    scale = np.maximum(np.abs(mean), scale_floor)
    if np.any(np.abs(residue) > 1e-6 * _AVERAGE_RADIUS * scale):
        raise PoleError(f"formula has a genuine pole at s = {s}")
    return mean


def build_fourier_expansion(k, s, N=DEFAULT_TERMS):
    """Fourier expansion of Ê_k(., s) truncated at |n| <= N.

    Close to a zeta pole of the formula each coefficient is replaced by its
    limit when that limit exists; a block with a genuine pole raises PoleError.
    """
    k = check_weight(k)
    s = complex(s)
    if _distance_to_singular(k, s) >= _BUILD_POLE_GAP:
        c_plus, c_minus = (complex(v[0]) for v in _constant_blocks(k, s))
        pos, neg = (v[:, 0] for v in _mode_coefficients(k, s, N))
    else:
        c_plus = complex(_regular_limit(lambda t: _constant_blocks(k, t)[0], s))
        c_minus = complex(_regular_limit(lambda t: _constant_blocks(k, t)[1], s))
        pos = _regular_limit(lambda t: _mode_coefficients(k, t, N)[0], s)
        neg = _regular_limit(lambda t: _mode_coefficients(k, t, N)[1], s)
    terms = tuple((n, complex(pos[n - 1])) for n in range(1, N + 1)) + tuple(
        (-n, complex(neg[n - 1])) for n in range(1, N + 1))
    return FourierExpansion(k, s, c_plus, c_minus, terms, N)


def _level_values(k, x, y, s, completion, N):
    s = np.atleast_1d(np.asarray(s, dtype=complex))
    ehat = _ehat_fourier(k, x, y, s, N)
    if completion is Completion.DOUBLY_COMPLETED:
        return double_factor(k, s) * ehat
    if completion is Completion.COMPLETED:
        return ehat
    return ehat * np.pi ** (s + k / 2) * sf.rgamma(s + k / 2 + abs(k) / 2)


def _eval_reduced(k, p, s, completion, N):
    if _distance_to_singular(k, s) >= _AVERAGE_WITHIN:
        return complex(_level_values(k, p.x, p.y, s, completion, N)[0])
    nodes = _contour_nodes(s, _AVERAGE_RADIUS, _AVERAGE_NODES)
    return complex(np.mean(_level_values(k, p.x, p.y, nodes, completion, N)))


def eval_eisenstein(k, z, s, completion=Completion.DOUBLY_COMPLETED, N=DEFAULT_TERMS):
    """E_k, Ê_k or Ê̂_k at (z, s) through the Fourier expansion.

    Points below height 0.3 are first mapped into the fundamental domain and
    the value is carried back with the weight-k slash.
    """
    k = check_weight(k)
    s = complex(s)
    completion = Completion(completion)
    if k == 0 and completion is not Completion.DOUBLY_COMPLETED:
        if min(abs(s), abs(s - 1)) < _BUILD_POLE_GAP:
            raise PoleError("E_0 and Ê_0 have poles at s = 0 and s = 1")
    p = as_point(z)
    if p.y >= REDUCE_BELOW:
        return _eval_reduced(k, p, s, completion, N)
    q, gamma = reduce_to_fundamental_domain(p)
    return apply_slash(_eval_reduced(k, q, s, completion, N), k, gamma, p)


def eval_on_nodes(k, z, s_nodes, completion=Completion.DOUBLY_COMPLETED, N=DEFAULT_TERMS):
    """Vectorized evaluation on an array of s values that avoid formula singularities."""
    k = check_weight(k)
    p = as_point(z)
    s_nodes = np.asarray(s_nodes, dtype=complex)
    if p.y >= REDUCE_BELOW:
        return _level_values(k, p.x, p.y, s_nodes, Completion(completion), N)
    q, gamma = reduce_to_fundamental_domain(p)
    vals = _level_values(k, q.x, q.y, s_nodes, Completion(completion), N)
    return apply_slash(vals, k, gamma, p)


def fourier_tail_bound(k, z, s, N=DEFAULT_TERMS, completion=Completion.DOUBLY_COMPLETED):
    """Estimated size of the Fourier modes beyond |n| = N at a reduced point,
    scaled to the requested completion level."""
    p = as_point(z)
    if p.y < REDUCE_BELOW:
        p, _ = reduce_to_fundamental_domain(p)
    s = complex(s)
    if _distance_to_singular(k, s) < _BUILD_POLE_GAP:
        s = s + _AVERAGE_RADIUS
    bound = build_fourier_expansion(k, s, N).tail_bound(p)
    completion = Completion(completion)
    if completion is Completion.DOUBLY_COMPLETED:
        return bound * abs(complex(double_factor(k, s)))
    if completion is Completion.RAW:
        return bound / abs(complex(completion_factor(k, s)))
    return bound


# ---------------------------------------------------------------- lattice path

def eval_lattice_sum(k, z, s, M=DEFAULT_CUTOFF, tol=None):
    """Raw E_k(z, s) summed over 0 < max(|m|, |n|) <= M.

    Returns (value, tail_bound) where the bound estimates the omitted shells as
    4 y^Re(s) c^-sigma M^(2 - sigma) / (sigma - 2), sigma = Re(2s + k) and c the
    smallest |mz + n| / max(|m|, |n|) seen on the outermost shell.
    """
    k = check_weight(k)
    s = complex(s)
    p = as_point(z)
    sigma = 2 * s.real + k
    if sigma <= 2.5:
        raise ConvergenceError("lattice sum needs Re(2s + k) > 2.5")
    if M < 50:
        raise ConvergenceError("lattice cutoff must be at least 50")
    r = np.arange(-M, M + 1, dtype=float)
    m, n = np.meshgrid(r, r, indexing="ij")
    w = m * p.z + n
    w[M, M] = 1.0
    terms = np.exp(s * math.log(p.y) - s * np.log((w * w.conj()).real)) * _int_power(w, -k)
    terms[M, M] = 0.0
    value = complex(0.5 * terms.sum())
    shell = np.maximum(np.abs(m), np.abs(n)) == M
    c = float(np.min(np.abs(w[shell]) / M))
    tail = 4 * p.y ** s.real * c ** (-sigma) * M ** (2 - sigma) / (sigma - 2)
    if tol is not None and tail > tol:
        raise TailError(f"tail bound {tail:.3e} exceeds tolerance {tol:.3e}")
    return value, float(tail)


# ---------------------------------------------------------------- modular group

def reduce_to_fundamental_domain(z, max_steps=10_000):
    """Return (z', gamma) with z' = gamma z, |Re z'| <= 1/2 and |z'| >= 1."""
    p = as_point(z)
    w = p.z
    gamma = IDENTITY
    for _ in range(max_steps):
        shift = round(w.real)
        if shift:
            w -= shift
            gamma = UnimodularMatrix(1, -shift, 0, 1) @ gamma
        if abs(w) < 1 - 1e-12:
            w = -1 / w
            gamma = S @ gamma
            continue
        if abs(w.real) <= 0.5 + 1e-12:
            return UpperHalfPoint(w.real, w.imag), gamma
    raise IterationError("fundamental-domain reduction did not terminate")


def apply_slash(value_at_gamma_z, k, gamma, z):
    """(cz + d)^-k times the value at gamma z."""
    return value_at_gamma_z * _int_power(gamma.multiplier(z), -int(k))


# ---------------------------------------------------------------- holomorphic objects

def _auto_terms(y, N, k=0):
    """Smallest count with n^(k-1) |q|^n below 1e-17 past the cut."""
    n = math.ceil(39.0 / (2 * np.pi * y))
    while (k - 1) * math.log(n) - 2 * np.pi * y * n > math.log(1e-17):
        n += 1
    return max(int(N or 0), n)


def holomorphic_eisenstein(k, z, N=None):
    """Normalized E_k(z) = 1 + O(q) for even k >= 4."""
    if k < 4 or k % 2:
        raise WeightError("holomorphic Eisenstein series needs even k >= 4")
    p = as_point(z)
    N = _auto_terms(p.y, N, k)
    q = np.exp(2j * np.pi * p.z)
    n = np.arange(1, N + 1)
    sig = np.array([sf.divisor_sum(k - 1, int(j)) for j in n], dtype=float)
    series = complex(-sf.bernoulli(k) / (2 * k)) + np.sum(sig * q ** n)
    pref = (2j * np.pi) ** k / (sf.zeta_complex(k).real * math.factorial(k - 1))
    return complex(pref * series)


def holomorphic_bridge(k, z, N=None):
    """E_k(z, 0) = zeta(k) E_k(z) for even k >= 4, since the full lattice sum is 2 zeta(k) E_k."""
    return sf.zeta_complex(k).real * holomorphic_eisenstein(k, z, N)


def discriminant_delta(z, N=None):
    """Delta(z) = q prod (1 - q^n)^24."""
    p = as_point(z)
    N = _auto_terms(p.y, N)
    q = np.exp(2j * np.pi * p.z)
    n = np.arange(1, N + 1)
    return complex(q * np.prod((1 - q ** n) ** 24))
