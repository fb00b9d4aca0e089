"""Complex special functions: Gamma, incomplete Gamma, zeta, completed zeta,
divisor sums, Bernoulli numbers and the Whittaker W-function.

All complex powers use the principal branch. Every argument of a
non-integer power in this package is a positive real, so no branch choice
is ever actually exercised.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy import special as sc

from .errors import AccuracyError, ConvergenceError, DomainError, ParameterBoxError, PoleError

EULER_GAMMA = 0.57721566490153286061

_POLE_TOL = 1e-14


def _near_nonpositive_integer(s, tol=_POLE_TOL):
    s = complex(s)
    n = round(s.real)
    return n <= 0 and abs(s - n) < tol


def gamma_complex(s):
    """Gamma(s) for complex s."""
    if _near_nonpositive_integer(s):
        raise PoleError(f"Gamma has a pole at {s}")
    return complex(sc.gamma(complex(s)))


def gamma_complex_array(s):
    """Gamma over a numpy array, without pole checks."""
    return sc.gamma(np.asarray(s, dtype=complex))


def rgamma(s):
    """1/Gamma(s); entire, vectorized over numpy input."""
    return sc.rgamma(np.asarray(s, dtype=complex))


def pochhammer(s, m):
    """Rising factorial s(s+1)...(s+m-1) for an integer m >= 0, vectorized in s."""
    s = np.asarray(s, dtype=complex)
    out = np.ones_like(s)
    for j in range(m):
        out = out * (s + j)
    return out


# ---------------------------------------------------------------- incomplete Gamma

def _gamma_upper_cf(a, x, tol=1e-16, itmax=20000):
    # Legendre continued fraction, modified Lentz
    tiny = 1e-300
    b = x + 1.0 - a
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, itmax):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < tol:
            return np.exp(-x + a * math.log(x)) * h
    raise ConvergenceError(f"continued fraction for Gamma({a}, {x}) did not converge")


def _gamma_lower_series(a, x, tol=1e-17, itmax=2000):
    term = 1.0 / a
    total = term
    for n in range(1, itmax):
        term *= x / (a + n)
        total += term
        if abs(term) < tol * abs(total):
            return np.exp(-x + a * math.log(x)) * total
    raise ConvergenceError(f"series for gamma({a}, {x}) did not converge")


def incomplete_gamma_upper(a, x):
    """Upper incomplete Gamma(a, x) = int_x^inf t^(a-1) e^(-t) dt for x > 0."""
    x = float(x)
    if not x > 0:
        raise DomainError("incomplete Gamma needs x > 0")
    a = complex(a)
    n = round(a.real)
    is_int = abs(a - n) < 1e-13
    if x >= max(1.5, a.real + 1.0):
        val = _gamma_upper_cf(a, x)
    elif a.real > 0.5:
        val = complex(sc.gamma(a)) - _gamma_lower_series(a, x)
    elif is_int:
        # Gamma(0, x) = E_1(x), then walk down in a
        g = float(sc.exp1(x))
        for j in range(0, n, -1):
            aj = j - 1
            g = (g - x ** aj * math.exp(-x)) / aj
        val = g
    else:
        m = math.ceil(0.5 - a.real) + 1
        top = a + m
        g = complex(sc.gamma(top)) - _gamma_lower_series(top, x)
        for j in range(m, 0, -1):
            aj = a + j - 1
            g = (g - np.exp(aj * math.log(x) - x)) / aj
        val = g
    val = complex(val)
    if is_int and a.imag == 0:
        val = complex(val.real, 0.0)
    return val


# ---------------------------------------------------------------- zeta

@lru_cache(maxsize=None)
def bernoulli(n):
    """Exact Bernoulli number B_n (B_1 = -1/2) from sum_j C(n+1, j) B_j = 0."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return Fraction(1)
    if n > 1 and n % 2 == 1:
        return Fraction(0)
    total = sum(math.comb(n + 1, j) * bernoulli(j) for j in range(n))
    return -total / (n + 1)


_EM_TERMS = 20
_EM_COEF = [float(bernoulli(2 * j) / math.factorial(2 * j)) for j in range(1, _EM_TERMS + 1)]


def _zeta_em(s):
    # Euler-Maclaurin with N terms in the head and _EM_TERMS Bernoulli corrections
    N = 30 + math.ceil(abs(s.imag))
    n = np.arange(1, N, dtype=float)
    head = np.exp(-s * np.log(n)).sum()
    lN = math.log(N)
    Ns = np.exp(-s * lN)
    total = head + N * Ns / (s - 1) + 0.5 * Ns
    rising = s
    Npow = Ns / N
    for j, coef in enumerate(_EM_COEF, start=1):
        total += coef * rising * Npow
        rising *= (s + 2 * j - 1) * (s + 2 * j)
        Npow /= N * N
    return complex(total)


def zeta_complex(s):
    """Riemann zeta(s) for complex s != 1."""
    s = complex(s)
    if abs(s - 1) < _POLE_TOL:
        raise PoleError("zeta has a pole at s = 1")
    if s.real >= -0.5:
        return _zeta_em(s)
    # reflection through the completed zeta; Gamma(s/2) zeros give the trivial zeros
    return complex(zeta_hat(1 - s) * np.pi ** (s / 2) * sc.rgamma(s / 2))


def zeta_hat(s):
    """Completed zeta pi^(-s/2) Gamma(s/2) zeta(s), symmetric under s -> 1 - s."""
    s = complex(s)
    if abs(s) < _POLE_TOL or abs(s - 1) < _POLE_TOL:
        raise PoleError(f"completed zeta has a pole at {s}")
    if s.real < 0.5:
        s = 1 - s
    return complex(np.pi ** (-s / 2) * sc.gamma(s / 2) * _zeta_em(s))


def divisor_sum(exponent, n):
    """sigma_e(n) = sum of d^e over positive divisors d of n."""
    n = int(n)
    if n < 1:
        raise ValueError("n must be positive")
    divs = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            divs.append(d)
            if d * d != n:
                divs.append(n // d)
        d += 1
    divs.sort()
    if isinstance(exponent, (int, np.integer)) and exponent >= 0:
        return sum(d ** int(exponent) for d in divs)
    e = complex(exponent)
    return complex(sum(np.exp(e * math.log(d)) for d in divs))


def divisor_sums(exponent, n):
    """sigma_e(n) for a fixed n and an array of complex exponents."""
    e = np.asarray(exponent, dtype=complex)
    n = int(n)
    divs = [d for d in range(1, n + 1) if n % d == 0]
    return sum(np.exp(e * math.log(d)) for d in divs)


# ---------------------------------------------------------------- Whittaker W

@dataclass(frozen=True)
class WhittakerParams:
    kappa: int
    mu: complex
    argument: float


KAPPA_MAX = 8
MU_MAX = 10.0
ARG_MIN = 0.5

# exp-sinh nodes for int_0^inf; the fine grid serves rotated rays
def _exp_sinh_grid(h):
    v = np.arange(-5.5, 3.6 + 1e-12, h)
    log_tau = 0.5 * np.pi * np.sinh(v)
    tau = np.exp(log_tau)
    return tau, log_tau, 0.5 * np.pi * np.cosh(v) * tau * h


_GRID_COARSE = _exp_sinh_grid(1.0 / 32)
_GRID_FINE = _exp_sinh_grid(1.0 / 128)
# above this |Im mu| the real ray loses roughly exp(pi |Im mu| / 2) to cancellation
_ROTATE_ABOVE = 2.0
_ROTATION = 1.0
# below this argument, and with |Im mu| large, the M-function pair is tried
# and kept unless its two halves cancel too much
_SERIES_BELOW = 10.0
_SERIES_MAX_GROWTH = 1e3


def _w_direct(kappa, mu, x):
    """W via x^k e^(-x/2)/Gamma(a) int_0^inf e^-t t^(a-1) (1+t/x)^c dt, Re a > 0.

    For large |Im mu| the ray is turned by one radian towards the saddle,
    t = r e^(i phi), which keeps the integrand free of heavy cancellation.
    """
    a = mu - kappa + 0.5
    c = mu + kappa - 0.5
    phi = np.where(np.abs(mu.imag) > _ROTATE_ABOVE, _ROTATION * np.sign(mu.imag), 0.0)
    tau, log_tau, dtau = _GRID_FINE if np.any(phi != 0) else _GRID_COARSE
    rot = np.exp(1j * phi)[..., None]
    t = tau * rot
    expo = (-t + (a[..., None] - 1) * log_tau
            + c[..., None] * np.log1p(t / x[..., None]))
    terms = np.exp(expo) * dtau
    J = terms.sum(axis=-1) * np.exp(1j * phi * a)
    edge = np.abs(terms[..., 0]) + np.abs(terms[..., -1])
    if np.any(edge > 1e-13 * np.abs(terms).sum(axis=-1)):
        raise AccuracyError("Whittaker quadrature window truncates the integrand")
    return x ** kappa * np.exp(-x / 2) * J * sc.rgamma(a)


def _hyp1f1_series(a, b, x, tol=1e-17, itmax=400):
    term = np.ones(np.broadcast(a, b, x).shape, dtype=complex)
    total = term.copy()
    for n in range(itmax):
        term = term * (a + n) / (b + n) * x / (n + 1)
        total = total + term
        if np.all(np.abs(term) <= tol * np.abs(total)):
            return total
    raise ConvergenceError("1F1 series did not converge")


def _w_connection(kappa, mu, x):
    """W as the Gamma-weighted pair of M-functions; needs 2 mu away from integers."""
    m_plus = np.exp(-x / 2) * x ** (0.5 + mu) * _hyp1f1_series(0.5 + mu - kappa, 1 + 2 * mu, x)
    m_minus = np.exp(-x / 2) * x ** (0.5 - mu) * _hyp1f1_series(0.5 - mu - kappa, 1 - 2 * mu, x)
    t_plus = sc.gamma(-2 * mu) * sc.rgamma(0.5 - mu - kappa) * m_plus
    t_minus = sc.gamma(2 * mu) * sc.rgamma(0.5 + mu - kappa) * m_minus
    w = t_plus + t_minus
    # loss of relative accuracy in the final sum
    growth = np.maximum(np.abs(t_plus), np.abs(t_minus)) / np.abs(w)
    return w, growth


def _w_integral(kappa, mu, x):
    a = mu - kappa + 0.5
    # oscillation in log t near t = 0 needs a faster-vanishing integrand there
    a_min = np.where(np.abs(mu.imag) > _ROTATE_ABOVE, 2.0, 0.5)
    steps = np.where(a.real >= a_min, 0, np.ceil(a_min - a.real)).astype(int)
    k0 = kappa - steps
    hi = _w_direct(k0, mu, x)
    if steps.max(initial=0) > 0:
        lo = _w_direct(k0 - 1, mu, x)
        for t in range(steps.max()):
            kk = k0 + t
            nxt = (x - 2 * kk) * hi - (kk - mu - 0.5) * (kk + mu - 0.5) * lo
            live = t < steps
            lo = np.where(live, hi, lo)
            hi = np.where(live, nxt, hi)
    return hi


def whittaker_w_array(kappa, mu, x, check=True):
    """Vectorized W_{kappa,mu}(x) for integer kappa, complex mu and x > 0.

    mu is first reflected to Re(mu) >= 0. When a = mu - kappa + 1/2 has
    Re(a) >= 1/2 (2 for large |Im mu|) the integral representation is used
    directly; otherwise two seeds just above that line are lifted by the
    three-term recurrence in kappa, the stable direction for the decaying
    solution. Small arguments with large |Im mu| go through the M-function
    connection formula instead, where the integral is badly conditioned.
    """
    kappa, mu, x = np.broadcast_arrays(np.asarray(kappa), np.asarray(mu, dtype=complex),
                                       np.asarray(x, dtype=float))
    if check:
        if np.any(kappa != np.round(kappa)):
            raise ParameterBoxError("kappa must be an integer")
        if np.any(np.abs(kappa) > KAPPA_MAX) or np.any(np.abs(mu) > MU_MAX + 1e-12) \
                or np.any(x < ARG_MIN):
            raise ParameterBoxError("Whittaker parameters outside the supported box")
    shape = mu.shape
    kappa = np.round(kappa.real).astype(int).ravel()
    mu = mu.ravel()
    x = x.ravel()
    mu = np.where(mu.real < 0, -mu, mu)
    series = (np.abs(mu.imag) > _ROTATE_ABOVE) & (x < _SERIES_BELOW)
    hi = np.empty(mu.shape, dtype=complex)
    if np.any(series):
        w, growth = _w_connection(kappa[series], mu[series], x[series])
        hi[series] = w
        ok = np.isfinite(growth) & (growth < _SERIES_MAX_GROWTH)
        series[series] = ok
    if not np.all(series):
        rest = ~series
        hi[rest] = _w_integral(kappa[rest], mu[rest], x[rest])
    if not np.all(np.isfinite(hi)):
        raise AccuracyError("non-finite Whittaker value")
    return hi.reshape(shape)


def whittaker_w(kappa, mu=None, x=None):
    """W_{kappa,mu}(x); accepts (kappa, mu, x) or a single WhittakerParams."""
    if isinstance(kappa, WhittakerParams):
        kappa, mu, x = kappa.kappa, kappa.mu, kappa.argument
    if not x > 0:
        raise ParameterBoxError("argument must be positive")
    return complex(whittaker_w_array(kappa, mu, x)[()])
