"""Decoherence of collective-spin probe states coupled to a quantized mode.

Quantifies how preparing a spin probe (coherent spin states, NOON/spin-cat
states) by interaction with a quantized bosonic field degrades its quantum
Fisher information, purity and coherences, via three cross-validating paths:
exact composite evolution, closed-form coherence analytics, and a
semi-classical Gaussian-averaging picture.
"""

from .bosonic import (
    AuxStateSpec,
    FockBasis,
    aux_qfi,
    aux_state,
    choose_cutoff,
    fock_state,
    mode_operator,
    number_variance,
    quadrature_variances,
    squeezed_coherent,
)
from .evolution import (
    CompositeBasis,
    EvolutionParams,
    beam_splitter_angle,
    beamsplitter_hamiltonian,
    branch_coherence,
    case_hamiltonian,
    classical_rotation,
    evolve_full,
    jz_rotation_angle,
    make_propagator,
    partial_trace_b,
    product_state,
    reduced_density_separable,
    separable_evolve,
)
from .metrology import (
    NbTfsResult,
    QfiResult,
    aux_coherence_matrix,
    beamsplitter_aux_qfi,
    beamsplitter_generator_prediction,
    cat_cmax_from_purity,
    cat_purity_from_cmax,
    cat_purity_from_qfi,
    cat_qfi_from_purity,
    coherence_coherent_analytic,
    coherence_numeric,
    coherence_squeezed_analytic,
    nb_tfs,
    nb_tfs_empirical,
    purity,
    qfi_fidelity_oracle,
    qfi_mixed,
    qfi_pure,
    qfi_revival_prediction,
    short_time_predictions,
)
from .semiclassical import (
    GaussianNoiseSpec,
    QuadratureGrid,
    gaussian_grid,
    noise_from_optics,
    semiclassical_bs,
    semiclassical_jz,
)
from .spin_algebra import (
    SpinBasis,
    axis_operator,
    basis_change,
    coherent_spin_state,
    named_state,
    rotation_operator,
    spin_cat,
    spin_operator,
)
from .states import DensityMatrix, PureState

__version__ = "0.1.0"
