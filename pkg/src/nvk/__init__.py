"""Herglotz-Nevanlinna functions of several variables and their PSD kernels."""

from .errors import (
    CertificateFailure,
    DomainError,
    GrowthViolation,
    HermitianViolation,
    NonConvergent,
    NvkError,
    PoleError,
    Unstable,
)
from .numerics import (
    DEFAULT_QUADRATURE,
    HermitianMatrix,
    QuadratureConfig,
    hermitian_eigenvalues,
    integrate_1d,
    integrate_iterated,
    sample_disk_points,
    sample_offaxis_points,
    sample_upper_points,
)
from .kernels import (
    extended_poisson,
    kernel_difference_check,
    kernel_difference_residual,
    kernel_Kn,
    mixed_n_sum,
    n_term,
    poisson_kernel,
)
from .measures import (
    Atoms,
    CurvePushforward,
    NevanlinnaReport,
    ProductDensity,
    ScaledLebesgue,
    check_nevanlinna,
    growth_norm,
    integrate_measure,
    measure_from_json,
    measure_to_json,
    nevanlinna_defect,
    zero_measure,
)
from .functions import (
    Affine,
    ClosedForm,
    Constant,
    DataBacked,
    DiracPoisson,
    HNData,
    HNFunction,
    InverseSum,
    Polynomial,
    b_limit_estimate,
    function_from_json,
    function_to_json,
    imaginary_part_nonneg_scan,
)
from .psd import (
    GramReport,
    KernelFunction,
    gram_matrix,
    negative_squares_estimate,
    product_sum_closure_check,
    psd_check,
    quadratic_form,
    rank_one_kernel,
    zero_kernel,
)
from .decomposition import (
    DecompositionCertificate,
    PoissonTypeFunction,
    StieltjesResult,
    d_representation,
    decompose,
    decomposition_residual,
    loewner_kernel_identity_residual,
    loewner_residual,
    nevanlinna_kernel,
    nevanlinna_kernel_function,
    nevanlinna_kernel_residual,
    pluriharmonic_defect,
    poisson_type_eval,
    stieltjes_invert,
    symmetric_decomposition_residual,
    symmetric_error_term,
)
from .polydisk import (
    DiskFunction,
    cayley,
    cayley_inverse,
    reparametrize_measure_check,
    residue_identity_check,
    szego_psd_function,
)

__version__ = "0.1.0"
