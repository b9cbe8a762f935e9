"""Noise-tolerant public-key quantum money on subspace states, exactly simulated.

The package mints subspace-state banknotes (directly or from conjugate
coding states), injects Pauli X/Z noise, verifies through classical
membership oracles that tolerate up to q errors of each type, optionally
corrects identified errors, and evaluates the scheme's existence and
soundness bound formulas.
"""

from .codes import (
    CertificationReport,
    CodeSpec,
    ErrorSet,
    StabilizerSet,
    SyndromeTable,
    binary_entropy,
    build_syndrome_table,
    certify,
    count_error_pairs,
    enumerate_errors,
    error_count,
    gv_margin,
    load_code,
    save_code,
    search_applicable_code,
    soundness_log2,
    soundness_tradeoff,
    stabilizer_generators,
)
from .errors import (
    BudgetExceededError,
    CodeSearchError,
    SerialCollisionError,
    SyndromeCollisionError,
    UndecodableError,
    UnknownSerialError,
)
from .experiments import (
    ATTACK_KINDS,
    AttackStrategy,
    ExperimentReport,
    amplification_cost,
    analytic_attack_rate,
    completeness_sweep,
    gv_table,
    run_attack,
    smallest_sound_n,
    soundness_table,
    wilson_interval,
)
from .gf2 import (
    BasisMap,
    BitVec,
    Gf2Matrix,
    SubspaceBasis,
    apply_basis_map,
    dual_basis,
    random_basis_map,
    random_bitvec,
    random_isometry,
    random_subspace,
    rref,
)
from .oracles import (
    CombinedOracle,
    CosetPredicate,
    MembershipPredicate,
    QueryLedger,
    apply_phase_oracle,
    ledger_charge,
    member_combined,
    member_subset,
    member_syndrome,
    project_via_control,
    subset_predicate,
    syndrome_predicate,
)
from .scheme import (
    Banknote,
    DoubleVerifyOutcome,
    MintRecord,
    OracleRegistry,
    OracleSession,
    VerifyOutcome,
    apply_verifier,
    conjugate_coding_state,
    conjugate_coset_parameters,
    correct,
    corrupt,
    diagnose,
    double_verify,
    load_banknote,
    load_record,
    mint_conjugate,
    mint_direct,
    random_corruption,
    registry_for_record,
    save_banknote,
    save_record,
    tolerated_projector,
    verification_matrix,
    verify,
)
from .states import (
    CosetLabel,
    DenseState,
    MixedState,
    apply_basis_permutation,
    apply_pauli,
    coset_state,
    coset_to_dense,
    dump_state,
    fidelity,
    fidelity_with_span,
    hadamard_all,
    inner,
    load_state,
    max_deviation,
    subspace_state,
    tolerated_coset_states,
)

__version__ = "0.1.0"
