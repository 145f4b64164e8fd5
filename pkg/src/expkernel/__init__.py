"""Exponential kernel of compactly supported planar densities.

Evaluates E_g(lam, w) = exp(-(1/pi) * integral g(u) / (conj(u-w)(u-lam)) da(u))
for densities 0 <= g <= 1 of compact support, cross-validates the adaptive
singular quadrature against closed forms (unit disc, Moebius discs, the
unilateral shift model) and verifies the associated Cauchy-transform and
density/Lipschitz estimates.
"""

from .analysis import (FitResult, NonConvergent, PreconditionFailed,
                       RadialSchedule, check_annulus_bound, default_schedule,
                       estimate_density, estimate_lipschitz_exponent)
from .cauchy import (H0Context, RegimeUnverified, TransformSample,
                     check_h0_binomial, check_power_identity,
                     check_product_identity, check_representation,
                     dbar_transform_stencil, disc_transform, make_h0_context,
                     make_transform, sample_transform)
from .density import (DensityConfigError, DensitySpec, GridLayer, Mcg64,
                      PlacementError, annulus_density, clear_radius,
                      disc_density, eval_density, load_density_file,
                      make_density, parse_density_config, swiss_cheese,
                      unit_disc_density, validate)
from .geometry import Annulus, Disk, Rectangle
from .kernel import (DIAGONAL_DIVERGENT, DIAGONAL_FINITE, OFF_DIAGONAL,
                     KernelValue, MobiusDiscParams, PoleCaseError,
                     ZeroDivisorError, disc_imag_integral,
                     disc_imag_integral_by_quadrature, disc_real_integral,
                     disc_real_integral_by_quadrature, eval_E, eval_E_disc,
                     eval_E_signed_discs, eval_E_unit_disc, mobius_imag_disc,
                     mobius_real_disc, prelim_bound_check, tail_bound_imag,
                     tail_bound_real, tail_imag_by_quadrature,
                     tail_real_by_quadrature)
from .quadrature import (DiagonalMass, InvalidPointError, QuadratureError,
                         QuadratureResult, TolNotReached, ToleranceError,
                         cauchy_transform, disc_mass, integrate_bi_singular,
                         integrate_diagonal, integrate_singular,
                         radial_inverse_square_integral)
from .shift import (CoeffVector, ShiftResolvent, TailTooLarge,
                    check_mobius_transfer, check_shift_identity, h2_inner,
                    inner_tail_bound, resolvent_coeffs, resolvent_norm)
from .suites import (SUITES, CheckResult, SuiteReport, suite_cauchy_algebra,
                     suite_disc_closed_forms, suite_lipschitz,
                     suite_properties, suite_representation, suite_shift,
                     suite_tails)

__version__ = "0.1.0"
