"""toepiso: isometries of the upper-triangular Toeplitz matrix algebra.

Factor linear isometries of the algebra as A -> U A V, classify continuous
multiplicative isometries, compute numerical ranges and radii, test the
nilpotent radius bound, and verify the exact symbolic structure behind
singular-value preservation (sparse rational polynomials, Sylvester
resultants).  Hot numeric kernels are numba-compiled; set TOEPISO_NUMBA=0
for the pure-numpy path.
"""

from ._kernels import NUMBA_ENABLED, backend_name
from .errors import (
    CertificateError,
    ContractError,
    NotJordanBlockError,
    NotNilpotentError,
    ShapeError,
    SymbolicSizeError,
    ToepisoError,
)
from .linalg import (
    DEFAULT_TOL,
    Defect,
    Tol,
    adjoint,
    as_matrix,
    frobenius,
    hermitian_eigh,
    hermitian_eigs,
    is_nilpotent,
    is_partial_isometry,
    is_unitary,
    nilpotency_defect,
    nilpotency_order,
    nullspace_basis,
    operator_norm,
    phase_normalize,
    range_basis,
    rank_eps,
    schur_strict_upper,
    subspace_contained,
    svd,
    svd_values,
)
from .toeplitz import (
    ToeplitzFull,
    UpperToeplitz,
    corner_norm,
    embed,
    embed_full,
    filtration_index,
    in_commutant_of_S,
    shift_matrix,
    toeplitz_projection,
    utoe_mul,
)
from .numrange import (
    HdlhVerdict,
    RadiusReport,
    hdlh_check,
    jordan_block_similarity,
    numerical_radius,
    numerical_range_boundary,
)
from .sampling import haar_unitary, random_direction, random_upper_toeplitz, rng_from
from .isometry import (
    ChainReport,
    FactorCert,
    LinearMapA,
    MultClass,
    MultOracle,
    MultWitness,
    Rejection,
    SystemMapT,
    a_twist_oracle,
    amplified_isometry_check,
    apply_map,
    classify_multiplicative,
    coeff_twist_oracle,
    conjugation_oracle,
    corner_blocks,
    factor_isometry,
    factor_system_isometry,
    homomorphism_check,
    nested_chain_check,
    neumann_moments,
    pathological_mult_examples,
    residual_of,
    similarity_oracle,
    singular_preservation_check,
    synthesize_isometry,
    synthesize_system_isometry,
    verify_isometry_sampled,
)
from .exactpoly import (
    SYMBOLIC_CAP,
    PurePowerReport,
    SparsePoly,
    UniPoly,
    char_gram_poly,
    pure_power_check,
    resultant_isometry_test,
    sylvester_matrix,
    sylvester_resultant,
    sym_char_coeffs,
    sym_gram,
)

__version__ = "0.1.0"
