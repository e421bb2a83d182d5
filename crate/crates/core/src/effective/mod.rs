//! Analytic effective models: anisotropy functions, the projected two-qubit
//! Hamiltonian, the zero-magnetization leakage block and second-order
//! corrections.

mod anisotropy;
mod corrections;
mod projection;

pub use anisotropy::{gamma_parallel, gamma_perp, j_of_phi};
pub use corrections::{
    extract_corrections, numerical_second_order, second_order_corrections, CorrectionForm,
    CorrectionHelpers, CorrectionTerms, InteractionCorrections, LeakageCorrections,
};
pub use projection::{
    build_h_st, build_h_szero, st_params, LeakageSpectrum, StParams, COMPUTATIONAL, LEAKAGE,
    S_ZERO,
};
