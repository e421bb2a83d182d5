//! Dense complex linear algebra: operators, Hermitian eigendecomposition and
//! unitary time evolution.

mod eigh;
mod evolve;
mod operator;
pub mod pauli;

pub use eigh::{eigh, EigenDecomposition};
pub use evolve::{evolve, Propagator};
pub use operator::{
    commutator, ensure_same_dim, kron, kron_all, ComplexOperator, HERMITIAN_TOL, UNITARY_TOL,
};
