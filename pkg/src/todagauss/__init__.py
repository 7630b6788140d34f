"""Exact discrete periodic Toda flow, its spectral-curve Jacobian, and the box-ball system."""

from .algebra import (NEG_INF, QQ, QQT, BivariateLaurent, FieldMismatchError, Polynomial,
                      RationalFunction, divides, exact_div, laurent_det, poly_divrem,
                      poly_gcd, t_adic_valuation, xgcd2, xgcd3)
from .boxball import (BoxBallState, CyclicClass, DensityError, TropicalState, bbs_step,
                      bbs_step_sequential, cyclic_canonicalize, equal_mod_sigma, eta,
                      rotate, soliton_count, t_lift, tropical_step, tropicalize)
from .harness import (ExperimentConfig, ResampleBudgetError, TraceRecord,
                      gen_random_instance, verify_bbs_diagram, verify_theorem1,
                      verify_torsion)
from .jacobian import (JacobianError, Membership, MumfordDivisor, SpectralCurve,
                       StandardFormCurve, add, compose, divisor_D, divisor_D_tilde,
                       equal_mod_Cn, neg, reduce, scalar_mul, standard_form, sub,
                       to_standard_form, torsion_generator, validate_membership, zero)
from .toda import (DomainExitError, EigenvectorData, FlowDomainError, LaxMatrices,
                   MinorSpec, TodaState, VanishingDenominatorError, ZeroEntryError,
                   characteristic_matrix, cyclic_shift, eigenvector_components,
                   eigenvector_map, identity_checks, lax_matrices, minor_det,
                   spectral_curve, toda_flow, toda_step, toda_step_recursive_check,
                   trimmed_matrix, uvw)

__version__ = "0.1.0"
