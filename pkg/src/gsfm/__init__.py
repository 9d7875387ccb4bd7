"""Ground-state feature maps: Trotterized annealing simulation,
frequency-spectrum combinatorics, and Fourier-coefficient analysis."""

from .anneal import (
    AnnealRun,
    FidelityScan,
    basis_functions,
    fidelity_approx,
    fidelity_full,
    fidelity_scan,
    infidelity_vs_T,
    run_anneal,
    trotter_anneal,
)
from .fourier import (
    CoefficientTable,
    ModelSamples,
    coefficient_report,
    concentration_ratio,
    fft_coefficients,
    sample_model,
)
from .ffgsp import (
    CommutingPartition,
    PauliWordTerm,
    RankTwoGenerator,
    build_generator,
    commuting_partition,
    pauli_decompose,
    trotterized_ff,
    u_ff_apply,
    verify_generator_identities,
    word_count_scaling,
)
from .groundtruth import (
    GroundStateResult,
    exact_ground_state,
    ite_ground_state,
    magnetization_curve,
    min_anneal_gap,
)
from .hamiltonians import (
    IsingParams,
    ScheduleParams,
    anneal_hamiltonian,
    ising_dense,
    ising_diagonal,
    tower_generator,
)
from .spectrum import (
    EigenvalueSet,
    SpectrumHistogram,
    degree_scaling,
    gap_spectrum,
    ising_eigenvalue_set,
    mode_spectrum,
    tower_spectrum,
)
from .statevec import (
    DiagonalOperator,
    StateVector,
    apply_diagonal_phase,
    apply_rx_all,
    basis_state,
    expect_diagonal,
    inner,
    plus_state,
)

__version__ = "0.1.0"
