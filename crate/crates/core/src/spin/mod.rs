//! Four-spin exchange model: SU(2) spin flips, SO(3) bond rotations, the
//! 16-dimensional Hamiltonian and the Zeeman gauge transformation.
//!
//! Basis states are ordered dot1 ⊗ dot2 ⊗ dot3 ⊗ dot4 with |↑⟩ = (1, 0), so
//! the index of a product state is `8·b₁ + 4·b₂ + 2·b₃ + b₄` with `b = 1` for
//! spin down.

mod device;
mod hamiltonian;
mod rotation;

pub use device::UniformDevice;
pub use hamiltonian::{
    bond_coupling, build_h_spin, gauge_align_zeeman, pair_coefficients, SpinParams, CROSS_BOND,
    INNER_BOND_1, INNER_BOND_2, N_SPINS, SPIN_DIM,
};
pub use rotation::{
    mat3_apply, mat3_mul, mat3_transpose, rotation_matrix, spin_flip_unitary, Matrix3, Rotation3,
};

/// Index of the product state with the given spins (`true` = down).
pub fn product_state(down: [bool; 4]) -> usize {
    down.iter().fold(0, |acc, &d| 2 * acc + d as usize)
}
