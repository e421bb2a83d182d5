//! Pauli matrices in the basis `|↑⟩ = (1, 0)`, `|↓⟩ = (0, 1)`.

use num_complex::Complex64;

use super::operator::{kron_all, ComplexOperator};

const O: Complex64 = Complex64::new(0.0, 0.0);
const R: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

pub fn x() -> ComplexOperator {
    ComplexOperator::from_rows(&[&[O, R], &[R, O]])
}

pub fn y() -> ComplexOperator {
    ComplexOperator::from_rows(&[&[O, -I], &[I, O]])
}

pub fn z() -> ComplexOperator {
    ComplexOperator::from_rows(&[&[R, O], &[O, -R]])
}

/// `[σx, σy, σz]`.
pub fn vector() -> [ComplexOperator; 3] {
    [x(), y(), z()]
}

/// Embeds a single-site operator at `site` of an `n_sites` chain of two-level
/// systems, site 0 being the leftmost tensor factor.
pub fn on_site(op: &ComplexOperator, site: usize, n_sites: usize) -> ComplexOperator {
    assert!(site < n_sites);
    let id = ComplexOperator::identity(op.dim());
    kron_all((0..n_sites).map(|k| if k == site { op } else { &id }))
}
