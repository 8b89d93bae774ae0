"""Two-qubit spin toolkit: continuous spin-value assignment, exact
correlation conservation checks, correlation-conserving mapping games with
classical and quantum players, and CHSH bounds."""

from .hilbert import (
    ATOL,
    Direction,
    ReferenceBasis,
    TwoQubitState,
    direction_operator,
    eigenprojectors,
    embed,
    expectation,
    make_reference_basis_computational,
    make_reference_basis_yx,
    make_singlet,
    partial_trace,
)
from .cvalspin import (
    HBAR,
    SUPPORT_TOL,
    HiddenSample,
    WeakValueParts,
    XiDistribution,
    born_probability,
    born_weights,
    correlation_exact,
    cval_spin,
    local_average_exact,
    local_quantum_average,
    sample_hidden,
    weak_value_parts,
)
from .game import (
    ConservationReport,
    GameConfig,
    RoundRecord,
    Transcript,
    Triple,
    evaluate_conservation,
    referee_round,
    run_game,
)
from .chsh import (
    ChshAngles,
    ChshValue,
    chsh_arithmetic_game,
    chsh_cval,
    chsh_from_correlations,
    chsh_quantum,
)
from .strategies import (
    DeterministicTable,
    InferenceContext,
    LhvSearchResult,
    SharedPairSource,
    infer_direction,
    lhv_chsh_max,
    lhv_exhaustive_conservation,
    make_quantum_players,
    quantum_measure_local,
)

__version__ = "0.1.0"
