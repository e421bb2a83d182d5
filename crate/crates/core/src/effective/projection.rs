use num_complex::Complex64;
use serde::Serialize;

use super::anisotropy::{gamma_parallel, gamma_perp};
use crate::linalg::{kron, pauli, ComplexOperator};
use crate::spin::SpinParams;
use crate::Result;

/// Two-qubit states |00⟩, |01⟩, |10⟩, |11⟩ = ↑↓↑↓, ↑↓↓↑, ↓↑↑↓, ↓↑↓↑.
pub const COMPUTATIONAL: [usize; 4] = [5, 6, 9, 10];
/// The zero-magnetization leakage states ↑↑↓↓ and ↓↓↑↑.
pub const LEAKAGE: [usize; 2] = [3, 12];
/// Computational states followed by the leakage states.
pub const S_ZERO: [usize; 6] = [5, 6, 9, 10, 3, 12];

/// Parameters of the projected two-qubit Hamiltonian.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StParams {
    /// Field acting on the first qubit.
    pub b1: [f64; 3],
    /// Field acting on the second qubit.
    pub b2: [f64; 3],
    /// Ising coupling `jsc·γ∥`.
    pub jzz: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LeakageSpectrum {
    pub e_leak_plus: f64,
    pub e_leak_minus: f64,
    /// Amplitude `jsc·γ⊥/2` linking |00⟩ to ↑↑↓↓ and ↓↓↑↑ to |11⟩.
    pub coupling: Complex64,
}

fn qubit_field(j: f64, phi: f64, theta: f64, dz: f64) -> [f64; 3] {
    let g = gamma_perp(phi, theta);
    [j * g.re, j * g.im, dz]
}

pub fn st_params(p: &SpinParams) -> Result<StParams> {
    p.ensure_aligned()?;
    let h = p.zeeman_z();
    Ok(StParams {
        b1: qubit_field(p.j1, p.rot1.angle(), p.rot1.theta(), h[0] - h[1]),
        b2: qubit_field(p.j2, p.rot2.angle(), p.rot2.theta(), h[2] - h[3]),
        jzz: p.jsc * gamma_parallel(p.rotsc.angle(), p.rotsc.theta()),
    })
}

/// `½ B₁·τ¹ + ½ B₂·τ² + (jzz/4) τz¹τz²` on the computational basis. Equals
/// the traceless part of the computational block of the spin Hamiltonian.
pub fn build_h_st(p: &SpinParams) -> Result<(ComplexOperator, StParams)> {
    let st = st_params(p)?;
    let id = ComplexOperator::identity(2);
    let tau = pauli::vector();
    let mut h = ComplexOperator::zeros(4);
    for a in 0..3 {
        h.add_scaled(Complex64::new(0.5 * st.b1[a], 0.0), &kron(&tau[a], &id));
        h.add_scaled(Complex64::new(0.5 * st.b2[a], 0.0), &kron(&id, &tau[a]));
    }
    h.add_scaled(Complex64::new(0.25 * st.jzz, 0.0), &kron(&tau[2], &tau[2]));
    Ok((h, st))
}

/// The zero-magnetization block: the two-qubit Hamiltonian plus the two
/// leakage levels and their couplings.
pub fn build_h_szero(p: &SpinParams) -> Result<(ComplexOperator, LeakageSpectrum)> {
    let (st_op, st) = build_h_st(p)?;
    let h = p.zeeman_z();
    let inner = p.j1 * gamma_parallel(p.rot1.angle(), p.rot1.theta())
        + p.j2 * gamma_parallel(p.rot2.angle(), p.rot2.theta());
    let split = 0.5 * (h[0] + h[1] - h[2] - h[3]);
    let offset = -0.5 * inner + 0.25 * st.jzz;
    let spectrum = LeakageSpectrum {
        e_leak_plus: split + offset,
        e_leak_minus: -split + offset,
        coupling: 0.5 * p.jsc * gamma_perp(p.rotsc.angle(), p.rotsc.theta()),
    };

    let mut m = ComplexOperator::zeros(6);
    for i in 0..4 {
        for j in 0..4 {
            m[(i, j)] = st_op[(i, j)];
        }
    }
    m[(4, 4)] = Complex64::new(spectrum.e_leak_plus, 0.0);
    m[(5, 5)] = Complex64::new(spectrum.e_leak_minus, 0.0);
    let g = spectrum.coupling;
    m[(0, 4)] = g;
    m[(4, 0)] = g.conj();
    m[(5, 3)] = g;
    m[(3, 5)] = g.conj();
    Ok((m, spectrum))
}
