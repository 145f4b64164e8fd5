import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from expkernel.kernel import eval_E_unit_disc
from expkernel.shift import (INSIDE, OUTSIDE, TailTooLarge, check_mobius_transfer,
                             check_shift_identity, h2_inner, inner_tail_bound,
                             resolvent_coeffs, resolvent_norm)


def test_resolvent_coeffs_origin():
    res = resolvent_coeffs(0.0, n=8)
    assert res.regime == INSIDE
    np.testing.assert_allclose(res.vector.coeffs,
                               [0, 1, 0, 0, 0, 0, 0, 0], atol=0)


def test_resolvent_coeffs_interior_geometric():
    lam = 0.4 + 0.3j
    res = resolvent_coeffs(lam, n=6)
    c = res.vector.coeffs
    np.testing.assert_allclose(c[0], -lam)
    scale = 1.0 - abs(lam) ** 2
    np.testing.assert_allclose(c[1], scale)
    np.testing.assert_allclose(c[3], scale * np.conj(lam) ** 2)


def test_resolvent_coeffs_exterior_constant():
    lam = 2.0 - 1.0j
    res = resolvent_coeffs(lam, n=8)
    assert res.regime == OUTSIDE
    np.testing.assert_allclose(res.vector.coeffs[0], -1.0 / np.conj(lam))
    assert np.all(res.vector.coeffs[1:] == 0.0)
    # circle points use the exterior form too
    assert resolvent_coeffs(1.0 + 0j, n=4).regime == OUTSIDE


def test_resolvent_coeffs_rejects_tiny_truncation():
    with pytest.raises(ValueError):
        resolvent_coeffs(0.5, n=1)


def test_resolvent_norm_and_inner():
    res = resolvent_coeffs(0.5, n=256)
    # ||resolvent||^2 = |lam|^2 + (1-|lam|^2)^2/(1-|lam|^2) = 1... minus tail
    np.testing.assert_allclose(resolvent_norm(res), 1.0, rtol=1e-12)
    inner = h2_inner(res.vector, res.vector)
    np.testing.assert_allclose(inner, 1.0, rtol=1e-12)


def test_inner_tail_bound_regimes():
    a = resolvent_coeffs(0.9, n=16)
    b = resolvent_coeffs(0.8, n=16)
    out = resolvent_coeffs(1.5, n=16)
    assert inner_tail_bound(a, out) == 0.0
    tail = inner_tail_bound(a, b)
    exact = (1 - 0.81) * (1 - 0.64) * 0.72 ** 15 / (1 - 0.72)
    np.testing.assert_allclose(tail, exact, rtol=1e-12)


def test_shift_identity_frozen_pairs():
    assert check_shift_identity(0.5 + 0j, 0.0 + 0j) < 1e-12
    assert check_shift_identity(0.3 - 0.2j, -0.4 + 0.1j) < 1e-12
    assert check_shift_identity(2.0 + 0j, 3.0 + 0j) < 1e-14
    assert check_shift_identity(0.5 + 0j, 2.0 + 0j) < 1e-14


def test_shift_identity_tail_guard():
    with pytest.raises(TailTooLarge):
        check_shift_identity(0.97, 0.97 + 0j, n=16, tol=1e-10)


def test_mobius_transfer():
    lam, w = 0.8 + 0.3j, -0.4 - 0.1j
    assert check_mobius_transfer(0.0, lam, w) < 1e-4
    assert check_mobius_transfer(-1.0 / 3.0, lam, w) < 1e-4
    with pytest.raises(ValueError):
        check_mobius_transfer(1.0, lam, w)
    with pytest.raises(ValueError):
        check_mobius_transfer(0.0, lam, lam)


@settings(max_examples=25, deadline=None)
@given(st.floats(-0.55, 0.55), st.floats(-0.55, 0.55),
       st.floats(-0.55, 0.55), st.floats(-0.55, 0.55))
def test_shift_identity_property_interior(ax, ay, bx, by):
    lam = complex(ax, ay)
    w = complex(bx, by)
    res_w = resolvent_coeffs(w, n=256)
    res_l = resolvent_coeffs(lam, n=256)
    inner = h2_inner(res_w.vector, res_l.vector)
    assert abs(1.0 - inner - eval_E_unit_disc(lam, w)) < 1e-10
