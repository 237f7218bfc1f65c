"""oddspin: exact-arithmetic intersection theory on the moduli space of
odd spin curves.

Everything is computed over the rationals, with no floating point anywhere:
divisor classes on the spin and curve moduli spaces, the class of the
divisor of non-reduced odd theta-characteristics, the genus-12 Chern-class
pipeline producing a slope-conjecture counterexample of slope 4415/642,
and exact bigness certificates for the spin canonical class.
"""

from .bn import (
    BNContext,
    HTQuery,
    SIDE_X,
    SIDE_Y,
    bn_context,
    evaluate_taut,
    evaluate_taut_recursion,
    expand_c_monomial,
    ht_value,
    ker_substitute,
)
from .errors import (
    BasisMismatchError,
    DimensionError,
    EngineError,
    ExprSyntaxError,
    InternalCheckError,
    NonSymmetricMonomialWarning,
    PreconditionError,
    PresetMismatchError,
    RingDomainError,
    UndefinedSlopeError,
)
from .genus12 import (
    BundleChern,
    SlopeReport,
    bundle_chern,
    c3_difference,
    class_locus,
    d12_class,
    d12_coefficients,
    d12_slope_report,
    degenerate_pencil_class,
    jet_inverse_chern,
    sym2_chern,
)
from .linalg import LinearSolveReport, RatMatrix, det, solve_linear
from .numerics import (
    MukaiProfile,
    SpinCounts,
    boundary_degrees,
    mukai_profile,
    rho,
    riemann_hurwitz_ram,
    scorza_genus,
    theta_counts,
    theta_pencil_profile,
)
from .picard import (
    CertificateReport,
    DivisorClass,
    MODULI,
    PicBasis,
    SPIN,
    TestCurve,
    bn_divisor_class,
    canonical_class,
    certificate,
    combine,
    covering_degree,
    moduli_basis,
    pair,
    pullback,
    pushforward,
    slope,
    solve_zg,
    spin_basis,
    test_curve,
    zg_class,
)
from .ring import (
    Generator,
    RingElem,
    RingPreset,
    RewriteRule,
    adjunction_genus,
    integrate,
    multiply,
    preset_jacobian_product,
    preset_surface_product,
    preset_universal_curve,
    pushforward_relative,
)
from .scalars import Scalar, format_scalar, parse_scalar, recip_factorial

__version__ = "0.1.0"
