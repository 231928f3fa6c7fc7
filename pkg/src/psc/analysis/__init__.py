from .covariance import (
    CovarianceCertificate,
    check_channel_covariance,
    check_unitary_covariance,
    conjugated_coefficients,
    fit_affine,
    identify_operator,
    is_permutation_matrix,
    search_affine_covariance,
)
from .models import (
    NegativityObstruction,
    Obstruction,
    OntologicalModel,
    PreconditionError,
    TNCVerdict,
    UnsupportedTransformation,
    build_8state_model,
    build_wigner_model,
    check_transformation_noncontextuality,
    statistics_error,
)
from .positivity import PositivityVerdict, check_positivity_preservation
from .report import REPORT_KEYS, ImplicationViolation, classicality_report
from .theorems import (
    covariance_sweep,
    eight_state_contextuality,
    verify_theorem1,
    verify_theorem2,
    verify_theorem3,
)
