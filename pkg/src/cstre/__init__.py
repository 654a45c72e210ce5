"""Entropic separability thresholds for noisy GHZ states of N qudits.

The library evaluates the conditional sandwiched Tsallis relative entropy
(CSTRE) and the Abe-Rajagopal q-conditional entropy on the one-parameter
family (1 - x)/d^N I + x |phi><phi| across the 1 : N-1 partition, locates the
x where each criterion changes sign, and cross-checks everything against a
dense partial-transpose oracle.
"""

__version__ = "0.1.0"

from .errors import (
    BadSubsystemIndex,
    CstreError,
    DimensionCapExceeded,
    NoConvergence,
    NoSignChange,
    NotHermitian,
    SingularNegativePower,
    ToleranceNotReached,
)
from .linalg import (
    DensityMatrix,
    Spectrum,
    eig_hermitian,
    frac_power,
    is_hermitian,
    kron,
    partial_trace,
    partial_transpose,
)
from .states import (
    DEFAULT_DIMENSION_CAP,
    SandwichSpectrum,
    StateSpectrum,
    WernerPopescuParams,
    ghz_vector,
    sandwich_matrix,
    sandwich_matrix_spectrum,
    sandwich_spectrum,
    state_spectrum,
    werner_popescu,
)
from .entropies import (
    EntropyCriterion,
    EntropyQuery,
    EntropyValue,
    ar_conditional,
    ar_wp_closed_form,
    cstre,
    cstre_wp_closed_form,
    evaluate_wp,
    ppt_min_eigenvalue,
    sandwiched_tsallis_relative,
    tsallis_relative,
    von_neumann_conditional,
    von_neumann_wp_closed_form,
)
from .separability import (
    CurvePoint,
    ThresholdResult,
    asymptotic_threshold,
    criterion_value,
    find_threshold,
    ppt_threshold,
    trace_curve,
)
from .verification import CheckResult, run_all

__all__ = [
    "BadSubsystemIndex",
    "CheckResult",
    "CstreError",
    "CurvePoint",
    "DEFAULT_DIMENSION_CAP",
    "DensityMatrix",
    "DimensionCapExceeded",
    "EntropyCriterion",
    "EntropyQuery",
    "EntropyValue",
    "NoConvergence",
    "NoSignChange",
    "NotHermitian",
    "SandwichSpectrum",
    "SingularNegativePower",
    "Spectrum",
    "StateSpectrum",
    "ThresholdResult",
    "ToleranceNotReached",
    "WernerPopescuParams",
    "ar_conditional",
    "ar_wp_closed_form",
    "asymptotic_threshold",
    "criterion_value",
    "cstre",
    "cstre_wp_closed_form",
    "eig_hermitian",
    "evaluate_wp",
    "find_threshold",
    "frac_power",
    "ghz_vector",
    "is_hermitian",
    "kron",
    "partial_trace",
    "partial_transpose",
    "ppt_min_eigenvalue",
    "ppt_threshold",
    "run_all",
    "sandwich_matrix",
    "sandwich_matrix_spectrum",
    "sandwich_spectrum",
    "sandwiched_tsallis_relative",
    "state_spectrum",
    "tsallis_relative",
    "trace_curve",
    "von_neumann_conditional",
    "von_neumann_wp_closed_form",
    "werner_popescu",
    "__version__",
]
