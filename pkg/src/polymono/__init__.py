"""Global mixed-monotone decompositions of univariate polynomials."""

from .analysis import TightEnvelope, compare, reference_decomposition, tight_envelope, width_profile
from .decomposition import (
    DecompositionFunction,
    Interval,
    JacobianDecomposition,
    decompose,
    evaluate_g,
    jacobian_decomposition,
    real_roots_in_interval,
    validate,
)
from .gram import GramParam, assemble, base_gram, null_basis, quadratic_form_poly, sigma_for_degree
from .polynomial import Polynomial, PolynomialSyntaxError, format_poly, parse
from .psd_split import (
    MonotonicityCertificate,
    PsdSplit,
    certify_monotone,
    eigen_split,
    shift_split,
    solve_split_sdp,
)
from .reach import ReachSpec, ReachTube, containment_report, propagate_embedding, sample_trajectories

__version__ = "0.1.0"
