"""Hyperquadratic continued fractions in characteristic 2.

Exact arithmetic over F_q, truncated Laurent series in 1/T, continued
fraction expansion, the explicit partial-quotient recursion for the
hyperquadratic family, and tools for exploring automaticity of the
leading-coefficient sequence.
"""

from .autoseq import (
    KernelReport,
    RelationCandidate,
    frobenius_affine_search,
    pkernel_explore,
    theta_r2_closed_form_check,
    theta_series,
)
from .contfrac import (
    ContFrac,
    ContinuantTable,
    cf_eval,
    cf_expand,
    continuant,
    continuants,
    lemma2_extend,
    periodicity_detect,
)
from .gf import FieldDesc, FieldElem, FieldError, elem_arith, frobenius, make_field, units
from .hyperquad import (
    HyperquadEquation,
    HyperquadSpec,
    SpecError,
    build_equation,
    build_equation_E,
    fib_poly,
    lemma1_closed_form_check,
    lemma1_identity_check,
    lemma3_step,
    root_fixed_point,
    theorem_lambda_stream,
    verify_root,
)
from .polyser import (
    LaurentSeries,
    Poly,
    PrecisionError,
    poly_arith,
    polynomial_part,
    series_frobenius,
    series_from_rational,
    series_inv,
)

__version__ = "0.1.0"
