//! Closed-form solutions of the resonance regimes in the rotating-wave
//! approximation and their effective Hamiltonians.

mod analytic;
mod catalog;
mod dispersive;
mod effective;
mod flow;
mod mixed;
mod record;
mod second_atom;
mod spectral;
mod two_photon;
mod validity;

pub use analytic::{analytic_series, EFFECTIVE_DT};
pub use catalog::{
    resonance_catalog, Behavior, Catalog, Omitted, RegimeDescriptor, RegimeKind, MIN_BRANCH_RATE,
};
pub use dispersive::{
    dispersive_effective_hamiltonian, dispersive_observables, double_excitation_probability,
    double_excitation_shift, squeezing_shift, DoubleExcitation, MAX_ZETA,
};
pub use effective::{
    apply_exponential, dispersive_state, effective_hamiltonian, effective_series, effective_state,
    squeezed_vacuum, transform_generator, Transform,
};
pub use flow::{
    equal_coupling_flow, equal_coupling_flow_at, flow_coefficients, norm_weight,
    reconstruct_state_from_flow, FlowVariant, SlowFlowState, FLOW_TAIL_LIMIT, MAX_Q_DT,
};
pub use mixed::{
    double_weak_effective_hamiltonian, mixed_effective_hamiltonian, mixed_regime_observables,
    mixed_shift,
};
pub use record::AnalyticRecord;
pub use second_atom::{
    dressed_splitting, second_atom_dispersive_amplitudes, second_atom_shift, SecondAtomAmplitudes,
};
pub use spectral::{spectral_quantities, Branch, SpectralQuantities};
pub use two_photon::{
    two_photon_amplitudes, two_photon_rate, two_photon_shift, TwoPhotonAmplitudes,
};
pub use validity::{horizon_check, worst, Assessed, Check, Margin};
