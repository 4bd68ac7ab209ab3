"""Number and phase operators of a quantum oscillator on the phase circle."""
from .operators import (
    CommutatorReport,
    OperatorRep,
    apply_lower,
    apply_number,
    apply_number_after_phase,
    apply_phase,
    boundary_defect,
    build_operators,
)
from .spectral import EigenResult, build_hamiltonian, eigenstate_report, solve_eigen
from .state import (
    FockState,
    PhaseWave,
    Tolerances,
    eigenstate,
    from_phase_wave,
    inner_product,
    make_fock_state,
    random_state,
    to_phase_wave,
)
from .uncertainty import (
    Classification,
    MomentReport,
    analyze,
    classify,
    condition7_residuals,
    covariance_product,
    decompose_eq8,
    delta_n_formula,
    moments,
    rsur_check,
    schwartz_check,
)

__version__ = "0.1.0"
