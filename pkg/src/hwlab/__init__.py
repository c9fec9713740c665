"""Exact and numerical tools for hypoexponential densities (sums of independent exponentials)."""
from .density import (
    AlphaTuple,
    RateMixture,
    build_density,
    density,
    eval_by_series,
    evaluate,
    hw_transform,
    laplace_transform,
    maclaurin_coeff,
    maclaurin_coeffs,
)
from .errors import (
    ArityError,
    CollisionError,
    ConvergenceError,
    DistinctnessError,
    DomainError,
    HWLabError,
    InsufficientDataError,
    PositivityError,
    SingularSystemError,
    SizeError,
    ToleranceError,
)
from .moments import (
    CumulantSeq,
    MomentSeq,
    cumulants,
    hankel_determinants,
    moments,
    moments_to_elementary,
    pf_sequence_check,
    recover_alpha,
    recover_alpha_from_maclaurin,
)
from .pade import kronecker_rank, pade_denominator
from .pfcomp import numerator_evaluations, pf_post_composition, power_rate_mixture, simplex_points
from .poly import Poly, RationalFunction
from .symfunc import (
    complete_homogeneous,
    elementary,
    elementary_matrix,
    elementary_matrix_inverse,
    schur,
    schur_bialternant,
    schur_jacobi_trudi,
    vandermonde_det,
)

__version__ = "0.1.0"
