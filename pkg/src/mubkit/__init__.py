"""Mutually unbiased bases and correlation-based entanglement criteria."""

from .config import TOL, Tolerances
from .criteria import (
    CriterionReport,
    bell_diagonal_state,
    bell_state,
    enclosure_check,
    isotropic_state,
    isotropic_threshold,
    joint_probabilities,
    mutual_predictability,
    optimal_relabeling,
    predictability_criterion,
    schmidt_pair_criterion,
    schmidt_pair_criterion_direct,
    weyl_operator,
)
from .cv import (
    BinnedProbabilities,
    QuadratureError,
    ThresholdReport,
    cv_criterion,
    cv_threshold,
    quadrant_probs_closed_form,
    quadrant_probs_quadrature,
    squeezed_quadrant_probs,
)
from .galois import FieldTable, UnsupportedFieldError, gf_build
from .io import (
    FileFormatError,
    load_density_matrix,
    load_mub_set,
    save_density_matrix,
    save_mub_set,
)
from .mubs import (
    Basis,
    MubSet,
    MubVerificationReport,
    UnsupportedDimensionError,
    canonical_phase,
    conjugate_mub_set,
    construct_mub_set,
    fourier_pair,
    quartic_sum,
    verify_mub_set,
)
from .multipartite import (
    AntiCorrReport,
    MultipartiteState,
    aharonov_noise_threshold,
    aharonov_state,
    aharonov_threshold_bisect,
    anticorrelation,
    anticorrelation_criterion,
    levi_civita,
    white_noise_anticorrelation,
)
from .optimize import (
    OptimizationResult,
    OptimizerConfig,
    UnitaryParams,
    maximize_criterion,
    objective,
    parameterize_unitary,
)
from .qmath import (
    DensityMatrixReport,
    DimensionError,
    SchmidtDecomposition,
    basis_state,
    dagger,
    kron,
    maximally_entangled_state,
    maximally_mixed,
    random_density_matrix,
    random_pure_state,
    random_unitary,
    same_state,
    schmidt_decompose,
    validate_density_matrix,
)
from .sampling import SampledCriterion, estimate_criterion, sample_joint_counts

__version__ = "0.1.0"
