"""Concurrence of bipartite pure states and bounds for superpositions.

The package is organized as:

* :mod:`supconc.states` — bipartite states, partial traces, Schmidt data;
* :mod:`supconc.measures` — concurrence, entanglement of formation, the
  universal inverter and its sandwich terms;
* :mod:`supconc.bounds` — regime classification, the exact biorthogonal
  formula, and all upper/lower bounds, composed into a report;
* :mod:`supconc.ensembles` — seeded random states, reference fixtures,
  randomized verification campaigns;
* :mod:`supconc.cli` — the ``supconc`` command-line tool.
"""

from .bounds import (
    BoundReport,
    Regime,
    classify_pair,
    evaluate,
    exact_biorthogonal,
    lower_bound_useful,
    qubit_general_bounds,
    qubit_lower_orth,
    qubit_upper_orth,
    qudit_general_bounds,
    qudit_lower_orth,
    qudit_upper_orth,
)
from .ensembles import (
    EnsembleConfig,
    VerificationSummary,
    Violation,
    biorthogonal_pair,
    fixture,
    haar_state,
    haar_unitary,
    orthogonal_pair,
    verify_ensemble,
)
from .errors import (
    DegenerateWeight,
    DeltaOutOfRange,
    DimensionMismatch,
    InternalError,
    InvalidSplit,
    NotHermitian,
    NotNormalized,
    NotTwoQubit,
    NotUnitary,
    OutOfRange,
    RegimeViolation,
    SanityFailure,
    SupconcError,
    UnknownFixture,
    WeightsNotNormalized,
    ZeroVector,
)
from .measures import (
    InverterScale,
    binary_entropy,
    concurrence_qubit,
    concurrence_sq_via_lambda,
    eof_from_concurrence,
    i_concurrence,
    lambda_map,
    lambda_sandwich,
    spin_flip,
    superposition_csq_expansion,
    universal_inverter,
)
from .states import (
    DensityMatrix,
    OperatorAB,
    PureState,
    RawVector,
    SuperpositionSpec,
    apply_local_unitary,
    inner_product,
    load_state,
    make_state,
    normalize,
    outer_operator,
    purity,
    reduced_density,
    save_state,
    schmidt_coefficients,
    state_from_json,
    state_to_json,
    superpose,
)

__version__ = "0.1.0"

__all__ = [
    "BoundReport", "Regime", "classify_pair", "evaluate",
    "exact_biorthogonal", "lower_bound_useful", "qubit_general_bounds",
    "qubit_lower_orth", "qubit_upper_orth", "qudit_general_bounds",
    "qudit_lower_orth", "qudit_upper_orth",
    "EnsembleConfig", "VerificationSummary", "Violation",
    "biorthogonal_pair", "fixture", "haar_state", "haar_unitary",
    "orthogonal_pair", "verify_ensemble",
    "DegenerateWeight", "DeltaOutOfRange", "DimensionMismatch",
    "InternalError", "InvalidSplit", "NotHermitian", "NotNormalized",
    "NotTwoQubit", "NotUnitary", "OutOfRange", "RegimeViolation",
    "SanityFailure", "SupconcError", "UnknownFixture",
    "WeightsNotNormalized", "ZeroVector",
    "InverterScale", "binary_entropy", "concurrence_qubit",
    "concurrence_sq_via_lambda", "eof_from_concurrence", "i_concurrence",
    "lambda_map", "lambda_sandwich", "spin_flip",
    "superposition_csq_expansion", "universal_inverter",
    "DensityMatrix", "OperatorAB", "PureState", "RawVector",
    "SuperpositionSpec", "apply_local_unitary", "inner_product",
    "load_state", "make_state", "normalize", "outer_operator", "purity",
    "reduced_density", "save_state", "schmidt_coefficients",
    "state_from_json", "state_to_json", "superpose",
]
