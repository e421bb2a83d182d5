//! Simulation and verification toolkit for singlet-triplet (ST) spin qubits
//! coupled through a superconductor by crossed Andreev reflection.
//!
//! The crate is layered bottom-up:
//!
//! - [`linalg`]: dense complex matrices, a Jacobi Hermitian eigensolver and
//!   unitary propagators.
//! - [`spin`]: spin rotations and the four-spin exchange Hamiltonian.
//! - [`hubbard`]: the four-dot Fermi-Hubbard model with crossed Andreev
//!   pairing, Schrieffer-Wolff reductions and the analytic exchange couplings.
//! - [`effective`]: projected two-qubit and leakage Hamiltonians, anisotropy
//!   functions and second-order corrections.
//! - [`dynamics`]: leakage traces, cZ gate fidelities and parameter sweeps.
//!
//! Units are fixed throughout: energies in μeV, times in ns, angles in radians.

pub mod constants;
pub mod dynamics;
pub mod effective;
mod error;
pub mod hubbard;
pub mod linalg;
pub mod spin;

pub use error::{Error, Result};
pub use linalg::{ComplexOperator, EigenDecomposition};
pub use num_complex::Complex64;
