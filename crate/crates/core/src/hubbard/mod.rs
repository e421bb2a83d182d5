//! Four-dot Fermi-Hubbard model with crossed Andreev pairing, used as a
//! brute-force reference for the spin model.
//!
//! The superconductor never appears as a Hilbert space; it enters only
//! through the pairing amplitude between the middle dots.

mod couplings;
pub mod fock;
mod model;
mod sw;
mod verify;

pub use couplings::{
    exchange_couplings, gamma_ca_from_tunneling, to_spin_params, CouplingVariant,
    ExchangeCouplings,
};
pub use fock::FockBasis;
pub use model::{build_h_dot, Coulomb, HubbardParams, Lead};
pub use sw::{
    connected_block, exact_effective, schrieffer_wolff2, second_order_shift, split_diagonal,
};
pub use verify::{
    fit_log_slope, numerical_cross_coupling, spin_sector_hamiltonian, sw_row, sw_verify,
    traceless_mismatch, InfiniteCoulombCheck, Reduction, SwReport, SwRow, SwVerifyConfig,
    VariantArbitration,
};
