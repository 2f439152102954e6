"""numradlab: numerical radius and operator norm inequality certification.

Computes numerical radii, operator norms, matrix functions, and operator
means on dense complex matrices, and certifies a catalog of operator
inequalities over explicit examples and seeded random ensembles.
"""

__version__ = "0.1.0"

from .catalog import (
    CheckInstance,
    CheckResult,
    EvalOptions,
    InequalityId,
    Status,
    evaluate,
    norm_convexity_check,
    pointwise_lemma_check,
    verify_hypotheses,
)
from .ensembles import EnsembleSpec, sample, sample_unit_vector
from .errors import (
    BudgetExhausted,
    DimensionMismatch,
    DomainViolation,
    InvalidBounds,
    MatrixFormatError,
    NoConvergence,
    NotHermitian,
    NotInvertible,
    NotPositive,
    NotSuperquadratic,
    NumradError,
    UnsupportedParameter,
)
from .functions import (
    ScalarFunction,
    SchwarzPair,
    jensen_gap_mu,
    parse_function,
    parse_pair,
    power,
    schwarz_power_pair,
    superquadratic_defect,
)
from .linalg import (
    HermitianEigen,
    abs_operator,
    adjoint,
    apply_scalar_function,
    hermitian_eigen,
    lambda_max,
    lambda_min,
    loewner_leq,
    operator_norm,
)
from .means import (
    deformed_exp,
    f_connection,
    gamma_factor,
    refined_amgm_factor,
    weighted_arithmetic,
    weighted_geometric,
)
from .radius import RadiusResult, SphereSampler, euclidean_radius, numerical_radius, sphere_sup
from .report import IneqRecord, SuiteReport
from .suite import draw_instance, run_suite
