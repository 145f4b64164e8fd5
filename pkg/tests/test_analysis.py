import math

import numpy as np
import pytest

from expkernel.analysis import (FitResult, NonConvergent, PreconditionFailed,
                                RadialSchedule, check_annulus_bound,
                                default_schedule, estimate_density,
                                estimate_lipschitz_exponent)
from expkernel.density import (annulus_density, disc_density, make_density,
                               unit_disc_density)
from expkernel.geometry import Annulus

UNIT = unit_disc_density()


def test_radial_schedule_validation():
    with pytest.raises(ValueError):
        RadialSchedule(r0=0.0, ratio=0.5, count=8)
    with pytest.raises(ValueError):
        RadialSchedule(r0=0.1, ratio=1.0, count=8)
    with pytest.raises(ValueError):
        RadialSchedule(r0=0.1, ratio=0.5, count=2)
    np.testing.assert_allclose(RadialSchedule(0.4, 0.5, 3).radii(),
                               [0.4, 0.2, 0.1])


def test_default_schedule_tracks_support():
    s = default_schedule(UNIT)
    assert s.r0 == pytest.approx(1.0 / 8.0)
    assert s.ratio == 0.5 and s.count == 8


def test_estimate_density_interior():
    assert estimate_density(UNIT, 0.0) == pytest.approx(1.0, abs=1e-9)
    assert estimate_density(disc_density(0j, 1.0, 0.3), 0.0) == pytest.approx(
        0.3, abs=1e-9)


def test_estimate_density_boundary_half():
    # at a circle point half of every small disc carries density 1
    assert estimate_density(UNIT, 1.0) == pytest.approx(0.5, abs=0.02)


def test_estimate_density_nonconvergent():
    # a thin ring far below the first schedule radius: ratios (0.75, 0, 0)
    g = make_density(0j, 1.0, [(Annulus(0.0, 0.0, 2.0 ** -9, 2.0 ** -8), 1.0)])
    with pytest.raises(NonConvergent):
        estimate_density(g, 0.0)


def test_lipschitz_exponent_unit_disc():
    fit = estimate_lipschitz_exponent(UNIT, 0.0,
                                      RadialSchedule(2.0 ** -3, 0.5, 8))
    # |E(lam, 0)| = |lam|^2 exactly, so the log-log slope is 2
    assert isinstance(fit, FitResult)
    assert fit.slope == pytest.approx(2.0, abs=0.1)
    assert fit.rms < 0.05


def test_lipschitz_requires_divergent_diagonal():
    with pytest.raises(PreconditionFailed):
        estimate_lipschitz_exponent(UNIT, 2.0)


def test_annulus_bound_unit_disc():
    ts = [2.0 ** -k for k in range(2, 7)]
    rows = check_annulus_bound(UNIT, 1.0, ts, eps=0.1, gamma=1.0)
    assert len(rows) == len(ts)
    for t, lhs, rhs, holds in rows:
        assert holds
        # lhs is exactly -ln t for the unit disc
        np.testing.assert_allclose(lhs, -math.log(t), rtol=0, atol=1e-6)
        assert lhs >= rhs - 1e-6


def test_annulus_bound_estimates_gamma_when_missing():
    rows = check_annulus_bound(UNIT, 1.0, [0.25, 0.125], eps=0.2)
    assert all(h for _, _, _, h in rows)


def test_annulus_bound_validation():
    with pytest.raises(ValueError):
        check_annulus_bound(UNIT, 1.0, [0.25], eps=0.0)
    with pytest.raises(ValueError):
        check_annulus_bound(UNIT, 1.0, [1.5], eps=0.1)
    with pytest.raises(ValueError):
        check_annulus_bound(UNIT, 1.0, [], eps=0.1)
