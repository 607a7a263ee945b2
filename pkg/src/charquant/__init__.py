"""Exact computer algebra for characteristic-p operator algebras.

The package constructs the crystalline, restricted, and divided-power
operator algebras on the affine line over F_p, their polydifferential
cochain complexes with cup and brace structure, and verifies the
structural statements (matrix-algebra fibers, quasi-isomorphisms,
resolution exactness, bracket identities) by Smith-normal-form
homology over the principal-ideal ring F_p[t].
"""

from .errors import (
    ArityMismatch,
    BoundsTooSmall,
    CharquantError,
    CoefficientMismatch,
    CompositionNonzero,
    FlavorMismatch,
    IndexOutOfRange,
    ModulusMismatch,
    ShapeMismatch,
    TooManyInserts,
    TruncationTooSmall,
    UnsupportedCombination,
)
from .homology import HomologySummary, VerificationReport, complex_cohomology
from .poly import Polynomial, frobenius_decompose, frobenius_reassemble, hasse_derivative
from .smith import PolyMatrix, kernel_basis, smith_normal_form, solve_linear
from .weyl import (
    CRYSTALLINE,
    DIVIDED,
    RESTRICTED,
    WeylElement,
    center,
    crystalline_to_divided,
    opposite,
    restrict,
    weyl_act,
    weyl_mul,
)
from .polydiff import (
    COEFF_DFULL,
    COEFF_DRES,
    COEFF_DRESOP,
    COEFF_O,
    PolMonomial,
    TensorOperator,
    brace,
    brace_module_action,
    cochain_differential,
    codegeneracy,
    coface,
    cup,
    evaluate,
    gerstenhaber,
    pol_embed,
)
from .azumaya import EndIso, azumaya_suite, end_iso, fiber_at
from .complexes import (
    ComplexSpec,
    TruncationParams,
    build_complex,
    dhoch_endpoint_check,
    dold_kan_crosscheck,
    full_quant_check,
    full_quant_stability,
    hochschild_cohomology,
    hypersurface_oracle,
    reduced_complex,
    resolution_check,
)
from .twosided import EnvelopingElement, chi, two_sided_check
from .morita import fg_composite
from .identities import identity_suites

__version__ = "0.1.0"
