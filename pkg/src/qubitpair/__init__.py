"""Two driven, decaying two-level atoms with Ising coupling and measurement feedback.

The package computes the closed-system dynamics of the pair, the stationary
states of the dissipative dynamics with and without feedback, the Wootters
concurrence of those states, and the feedback strength that maximizes the
stationary entanglement over an (alpha, J) parameter grid.
"""

from .algebra import (
    BASIS_LABELS,
    check_density_matrix,
    collective_lowering,
    commutator_superoperator,
    dissipator,
    is_hermitian,
    ket,
    lowering,
    pauli,
    sprepost,
    unvectorize,
    vectorize,
)
from .concurrence import (
    ConcurrenceResult,
    concurrence,
    concurrence_hermitian,
    concurrence_pure,
    spin_flip,
)
from .errors import (
    ContractViolationError,
    DegenerateSteadyStateError,
    DomainError,
    NumericalDegeneracyError,
    NumericsError,
    QubitPairError,
    TraceDriftError,
)
from .hamiltonian import (
    EigenSystem,
    ModelParams,
    analytic_eigensystem,
    build_h_drive,
    build_h_int,
    build_h_tot,
    evolve_closed,
    ground_pair_state,
    initial_expansion,
    marker_observable,
    marker_variance,
    marker_variance_numeric,
    numeric_eigensystem,
)
from .lindblad import (
    SteadyStateCoefficients,
    analytic_steady_state,
    feedback_operator,
    liouvillian_fb,
    liouvillian_fb_expanded,
    liouvillian_nofb,
    propagate,
    steady_state,
    steady_state_coefficients,
)
from .optimize import (
    LambdaOptimum,
    OptimizationConfig,
    ScanRecord,
    optimize_lambda,
    scan_grid,
    stationary_concurrence,
)
from .validation import CheckResult, run_checks

__version__ = "0.1.0"
