import json
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from polymaass import diffops as do
from polymaass import eisenstein as es
from polymaass import specialfn as sf
from polymaass.errors import DomainError, UnknownIdentityError

C = es.Completion


def power(s):
    return do.SmoothField(lambda z: es.as_point(z).y ** s)


def test_laplacian_trivial_fields():
    assert abs(do.laplacian(lambda z: 3.0 + 0j, 0, 1j)) < 1e-10
    assert abs(do.laplacian(power(1), 0, 0.2 + 1.1j)) < 1e-8


@given(st.sampled_from([-4, -2, 0, 2, 4]), st.complex_numbers(max_magnitude=3, allow_nan=False,
                                                               allow_infinity=False))
def test_power_eigenvalue(k, s):
    z = 0.1 + 1.3j
    f = power(s)
    expected = s * (s + k - 1) * f(z)
    assert abs(do.laplacian(f, k, z) - expected) / max(1, abs(expected)) < 1e-6


def test_xi_examples():
    assert abs(do.xi(power(1), 0, 0.3 + 1.2j) - 1) < 1e-9
    assert abs(do.xi(es.discriminant_delta, 12, 0.1 + 1.1j)) < 1e-12
    z = 0.4 + 1.2j
    lhs = do.xi(lambda w: es.eval_eisenstein(0, w, 0.3), 0, z)
    assert abs(lhs - es.eval_eisenstein(2, z, -0.3)) < 1e-6


@given(st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False))
def test_xi_conjugate_linear(alpha):
    f = do.SmoothField(lambda z: np.exp(1j * z) * es.as_point(z).y ** 0.7)
    z = -0.2 + 1.1j
    scaled = do.xi(lambda w: alpha * f(w), 2, z)
    assert abs(scaled - np.conj(alpha) * do.xi(f, 2, z)) < 1e-7 * max(1, abs(alpha))


def test_power_factorization_closed_form():
    s, k, z = 1.7, 2, 0.2 + 1.1j
    lhs = do.xi(do.xi_field(power(s), k), 2 - k, z)
    assert abs(lhs - s * (s + 1) * z.imag ** s) < 1e-4


def test_domain_error():
    with pytest.raises(DomainError):
        do.laplacian(power(1), 0, 0.11j)


def test_fd_convergence():
    f = do.SmoothField(lambda z: es.eval_eisenstein(0, z, 2.5, C.RAW))
    z = 0.2 + 1.1j
    exact = 2.5 * 1.5 * f(z)
    coarse = abs(do.laplacian(f, 0, z, do.Stencil(0.08, False)) - exact)
    fine = abs(do.laplacian(f, 0, z, do.Stencil(0.04, False)) - exact)
    assert fine < coarse / 4


def test_xi_on_fourier_terms_examples():
    y = 0.8
    expected = -sf.whittaker_w(0, -0.5, 4 * math.pi * y)
    assert abs(do.xi_on_fourier_terms(2, -1, 0, y) - expected) < 1e-14
    assert do.xi_on_fourier_terms(2, 1, 0, 0.9) == 0
    fd = do.xi(do.fourier_term(0, 1, 0.4), 0, complex(0, 1.0))
    assert abs(do.xi_on_fourier_terms(0, 1, 0.4, 1.0) - fd) < 1e-7


def test_xi_on_fourier_terms_random(rng):
    for _ in range(20):
        k = int(rng.choice([-4, -2, 0, 2, 4]))
        n = int(rng.choice([-2, -1, 1, 2]))
        s = complex(rng.uniform(-1, 1.5), rng.uniform(-1, 1))
        x, y = rng.uniform(-0.5, 0.5), rng.uniform(0.6, 1.5)
        fd = do.xi(do.fourier_term(k, n, s), k, complex(x, y))
        exact = do.xi_on_fourier_terms(k, n, s, y, x)
        assert abs(fd - exact) / max(1, abs(exact)) < 1e-7


def test_registry_examples():
    rep = do.verify_identity("eigenfunction", {"k": 0, "s": 2.5}, tolerance=1e-5)
    assert rep.passed
    rep = do.verify_identity("factorization", {"k": 2, "s": 1.7, "field": "power"}, tolerance=1e-4)
    assert rep.passed
    rep = do.verify_identity("ladder_02", {"n": 1, "relation": "xi_F"}, grid=[1j], tolerance=1e-6)
    assert rep.passed


def test_report_json():
    rep = do.verify_identity("kronecker_limit")
    d = json.loads(rep.to_json())
    assert set(d) == {"identity", "weight", "params", "points", "tolerance", "pass"}
    assert len(d["points"]) == 3 and d["pass"] is True
    assert min(d["params"]["printed_form_residuals"]) > 0.1


def test_unknown_identity():
    with pytest.raises(UnknownIdentityError):
        do.verify_identity("nonsense")
    with pytest.raises(UnknownIdentityError):
        do.verify_all("nonsense")


@pytest.mark.parametrize("gamma", ["S", "T", "TS"])
@pytest.mark.parametrize("k", [-2, 0, 4])
def test_slash_commutation(k, gamma):
    assert do.verify_identity("slash_commutation", {"k": k, "gamma": gamma}).passed


def test_full_registry_passes():
    reports = do.verify_all()
    failed = [(r.identity, r.params, r.max_residual) for r in reports if not r.passed]
    assert not failed
    assert [r.identity for r in reports] == sorted(r.identity for r in reports)
