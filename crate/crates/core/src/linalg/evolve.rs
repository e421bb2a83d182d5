//! Time evolution `exp(-iHt/ħ)` through the eigendecomposition of `H`.

use num_complex::Complex64;

use super::eigh::{eigh, EigenDecomposition};
use super::operator::ComplexOperator;
use crate::constants::HBAR;
use crate::Result;

/// A Hamiltonian diagonalized once and evaluated at many times.
#[derive(Debug, Clone)]
pub struct Propagator {
    eigen: EigenDecomposition,
}

impl Propagator {
    pub fn new(h: &ComplexOperator) -> Result<Self> {
        Ok(Self { eigen: eigh(h)? })
    }

    pub fn eigen(&self) -> &EigenDecomposition {
        &self.eigen
    }

    pub fn dim(&self) -> usize {
        self.eigen.dim()
    }

    /// `U(t) = V diag(e^{-iλt/ħ}) V†`, `t` in ns.
    pub fn at(&self, t: f64) -> ComplexOperator {
        self.eigen.map_values(|l| phase(l, t))
    }

    /// The block `⟨a|U(t)|b⟩` for `a, b` in `indices`.
    pub fn block_at(&self, t: f64, indices: &[usize]) -> ComplexOperator {
        let n = self.dim();
        let v = &self.eigen.vectors;
        let phases: Vec<Complex64> = self.eigen.values.iter().map(|&l| phase(l, t)).collect();
        ComplexOperator::from_fn(indices.len(), |i, j| {
            let (a, b) = (indices[i], indices[j]);
            (0..n).map(|k| v[(a, k)] * phases[k] * v[(b, k)].conj()).sum()
        })
    }
}

fn phase(energy: f64, t: f64) -> Complex64 {
    Complex64::from_polar(1.0, -energy * t / HBAR)
}

/// `exp(-iHt/ħ)` with `H` in μeV and `t` in ns.
pub fn evolve(h: &ComplexOperator, t: f64) -> Result<ComplexOperator> {
    Ok(Propagator::new(h)?.at(t))
}
