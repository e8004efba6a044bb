"""Assisted coherence distillation for multi-qubit states.

Core objects: labeled density matrices (densmat), base-2 coherence and
entropy measures (coherence), single-qubit projective measurements and
residual ensembles (measure), family/channel/random state factories
(states), the distillation optimizer and distribution-core machinery
(distill), multipartite correlation measures (correlations), randomized
property suites (verify), and a CLI (cli).
"""
from .coherence import (
    binary_entropy,
    clean_spectrum,
    conditional_entropy,
    dephase,
    l1_coherence,
    qi_relative_entropy,
    relative_entropy_coherence,
    shannon_entropy,
    von_neumann_entropy,
    xlog2,
)
from .correlations import (
    DEFAULT_DISCORD_CONFIG,
    CorrelationRow,
    DiscordConfig,
    concurrence,
    correlation_row,
    delta_sef,
    entanglement_of_formation,
    measured_conditional_entropy,
    mutual_information,
    three_tangle,
    tripartite_discord,
    tripartite_discord_pure_shortcut,
)
from .densmat import (
    DensityMatrix,
    ValidationReport,
    density_from_json,
    density_to_json,
    eig_hermitian,
    from_state_vector,
    load_density,
    partial_trace,
    save_density,
    tensor,
    validate_density,
)
from .distill import (
    DEFAULT_CONFIG,
    DistillReport,
    InequalityReport,
    OptimizerConfig,
    TauReport,
    c_cop,
    multipartite_inequality_check,
    objective_grid,
    tau,
    tau_symmetrized,
    theorem3_objective,
)
from .errors import (
    CohdistillError,
    DimensionError,
    DomainError,
    InvalidInitialization,
    InvalidPartition,
    InvalidState,
    LabelCollision,
    LabelNotFound,
    NotHermitian,
    OrderingUnavailable,
    PurityRequired,
)
from .measure import (
    MeasurementEnsemble,
    MeasurementOutcome,
    ProjectiveBasis,
    ancilla_blocks,
    apply_measurement,
    average_coherence,
    residual_closed_form_ghz,
)
from .states import (
    FAMILY_NAMES,
    ChannelSpec,
    FamilyParam,
    apply_channel,
    bell_pair,
    channel_isometry,
    ghz_n,
    ghz_type,
    make_family,
    random_density,
    random_pure,
    schmidt_form_eligible,
    w_n,
    w_type,
)
from .verify import SUITE_NAMES, VerifyOutcome, run_suite

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # densmat
    "DensityMatrix", "ValidationReport", "from_state_vector", "tensor",
    "partial_trace", "eig_hermitian", "validate_density",
    "density_to_json", "density_from_json", "load_density", "save_density",
    # coherence
    "shannon_entropy", "binary_entropy", "von_neumann_entropy", "xlog2",
    "clean_spectrum", "dephase", "relative_entropy_coherence", "l1_coherence",
    "qi_relative_entropy", "conditional_entropy",
    # measure
    "ProjectiveBasis", "MeasurementOutcome", "MeasurementEnsemble",
    "ancilla_blocks", "apply_measurement", "average_coherence",
    "residual_closed_form_ghz",
    # states
    "FamilyParam", "ChannelSpec", "FAMILY_NAMES", "make_family", "w_type",
    "ghz_type", "bell_pair", "ghz_n", "w_n", "apply_channel",
    "channel_isometry", "random_density", "random_pure", "schmidt_form_eligible",
    # distill
    "OptimizerConfig", "DistillReport", "TauReport", "InequalityReport",
    "DEFAULT_CONFIG", "c_cop", "tau", "tau_symmetrized", "theorem3_objective",
    "multipartite_inequality_check", "objective_grid",
    # correlations
    "DiscordConfig", "CorrelationRow", "DEFAULT_DISCORD_CONFIG", "concurrence",
    "entanglement_of_formation", "delta_sef", "three_tangle",
    "mutual_information", "measured_conditional_entropy", "tripartite_discord",
    "tripartite_discord_pure_shortcut", "correlation_row",
    # verify
    "VerifyOutcome", "SUITE_NAMES", "run_suite",
    # errors
    "CohdistillError", "LabelCollision", "LabelNotFound", "InvalidPartition",
    "NotHermitian", "InvalidState", "DomainError", "DimensionError",
    "PurityRequired", "OrderingUnavailable", "InvalidInitialization",
]
