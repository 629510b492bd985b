"""Security analysis and simulation of cheat-sensitive quantum bit commitment."""

from .attacks import (
    AliceAttackState,
    BobAttackReport,
    alice_cheat_prepare,
    binary_entropy,
    bob_attack_analyze,
    bob_mutual_information,
    bob_pass_probability,
)
from .bounds import (
    CheckPolicy,
    FairOptimum,
    combined_lower,
    effective_probabilities,
    fair_optimize,
    fair_p_star,
    fair_zeta,
    figure1_scan,
    figure2_scan,
    pa_lower,
    pb_lower,
)
from .errors import *  # noqa: F401,F403
from .protocol import (
    AnalysisReport,
    ProtocolSpec,
    analyze,
    builtin_protocol,
    dump_protocol,
    load_protocol,
    load_protocol_file,
)
from .simulate import MonteCarloStats, RunTranscript, Strategy, exact_outcome, monte_carlo, run_once
from .states import (
    DensityMatrix,
    MeasurementOutcome,
    ProjectorPair,
    PureState,
    fidelity,
    helstrom_projectors,
    measure,
    overlap_check_pass_probability,
    partial_trace,
    trace_distance,
    uhlmann_pair,
)

__version__ = "0.1.0"
