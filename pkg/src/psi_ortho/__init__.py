"""Generalized Carlitz polynomials Psi_n(x; a, b, c) with exact and numeric
orthogonality checks against Laguerre, Meixner-Pollaczek and Meixner families."""
from .errors import (AccuracyError, CaseError, DomainError, EvaluationError,
                     InternalConsistencyError, NonIntegrableError, PoleError, PsiOrthoError)
from .families import (DiffKind, FamilyId, apply_diff, extrapolated_limit, hyp_terminating,
                       HypSpec, laguerre, laguerre_family, laguerre_m1, laguerre_m1_family,
                       lemma_limit_poly, limit_lemma_residual, meixner, meixner0,
                       meixner0_family, meixner_family, mp0, mp0_family, mp_family, mp_poly,
                       pochhammer)
from .inner_products import GramMatrix, InnerProductSpec, gram, predicted_norm
from .poly import GaussianRational, Poly, max_relative_deviation
from .psi import (CARLITZ, CaseKind, PsiParams, carlitz_T, classify, f_derivative_closed_form,
                  f_eval, f_taylor_coeffs, favard_norm, psi_from_genfunc, psi_genfunc_sequence,
                  psi_recurrence, psi_sequence, recurrence_coeffs)
from .representations import char_roots, represent, verify_representation
from .verify import Report, run_verify

__version__ = "0.1.0"
