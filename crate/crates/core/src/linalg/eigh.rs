//! Hermitian eigendecomposition by cyclic complex Jacobi rotations.
//!
//! Each rotation first removes the phase of the pivot `a_pq` with a diagonal
//! unitary and then applies the real symmetric Jacobi rotation, so every
//! step is a unitary similarity and the accumulated product stays unitary
//! to rounding.

use num_complex::Complex64;

use super::operator::ComplexOperator;
use crate::{Error, Result};

const MAX_SWEEPS: usize = 100;
const OFF_DIAGONAL_TOL: f64 = 1e-15;
/// Components below this modulus are skipped when fixing the phase.
const PHASE_TOL: f64 = 1e-8;

/// Eigenvalues in ascending order and the unitary whose columns are the
/// matching eigenvectors.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: ComplexOperator,
}

impl EigenDecomposition {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn vector(&self, k: usize) -> Vec<Complex64> {
        self.vectors.column(k)
    }

    /// `V diag(λ) V†`.
    pub fn reconstruct(&self) -> ComplexOperator {
        self.map_values(|l| Complex64::new(l, 0.0))
    }

    /// `V diag(f(λ)) V†`.
    pub fn map_values(&self, f: impl Fn(f64) -> Complex64) -> ComplexOperator {
        let n = self.dim();
        let fv: Vec<Complex64> = self.values.iter().map(|&l| f(l)).collect();
        let v = &self.vectors;
        ComplexOperator::from_fn(n, |i, j| {
            (0..n).map(|k| v[(i, k)] * fv[k] * v[(j, k)].conj()).sum()
        })
    }
}

/// Eigendecomposition of a Hermitian operator.
///
/// Output is deterministic: eigenvalues ascend, and each eigenvector is
/// scaled so that its first component with modulus above `1e-8` of its
/// largest is real and positive.
pub fn eigh(h: &ComplexOperator) -> Result<EigenDecomposition> {
    h.ensure_hermitian()?;
    let n = h.dim();
    let mut a: Vec<Complex64> = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            // symmetrize so that the working copy is exactly Hermitian
            a.push(0.5 * (h[(i, j)] + h[(j, i)].conj()));
        }
    }
    let v = jacobi_hermitian(&mut a, n)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&p, &q| a[p * n + p].re.total_cmp(&a[q * n + q].re).then(p.cmp(&q)));

    let mut vectors = ComplexOperator::zeros(n);
    let mut values = Vec::with_capacity(n);
    for (k, &c) in order.iter().enumerate() {
        let mut col: Vec<Complex64> = (0..n).map(|i| v[i * n + c]).collect();
        fix_phase(&mut col);
        for (i, z) in col.into_iter().enumerate() {
            vectors[(i, k)] = z;
        }
        values.push(a[c * n + c].re);
    }
    Ok(EigenDecomposition { values, vectors })
}

/// Cyclic Jacobi on a dense Hermitian `n×n` row-major matrix, reduced in
/// place to diagonal form. Returns the accumulated unitary.
fn jacobi_hermitian(a: &mut [Complex64], n: usize) -> Result<Vec<Complex64>> {
    let zero = Complex64::new(0.0, 0.0);
    let mut v = vec![zero; n * n];
    for i in 0..n {
        v[i * n + i] = Complex64::new(1.0, 0.0);
    }
    let total: f64 = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let tol = OFF_DIAGONAL_TOL * total;

    for _ in 0..=MAX_SWEEPS {
        let off = off_diagonal_norm(a, n);
        if off <= tol || off == 0.0 {
            return Ok(v);
        }
        for p in 0..n.saturating_sub(1) {
            for q in p + 1..n {
                let apq = a[p * n + q];
                let modulus = apq.norm();
                if modulus == 0.0 {
                    continue;
                }
                let phase = apq / modulus;
                let theta = (a[q * n + q].re - a[p * n + p].re) / (2.0 * modulus);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // J = diag(1, conj(phase)) · [[c, s], [-s, c]]
                let jqp = -s * phase.conj();
                let jqq = c * phase.conj();
                for k in 0..n {
                    let (akp, akq) = (a[k * n + p], a[k * n + q]);
                    a[k * n + p] = c * akp + jqp * akq;
                    a[k * n + q] = s * akp + jqq * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p * n + k], a[q * n + k]);
                    a[p * n + k] = c * apk + jqp.conj() * aqk;
                    a[q * n + k] = s * apk + jqq.conj() * aqk;
                }
                a[p * n + q] = zero;
                a[q * n + p] = zero;
                a[p * n + p].im = 0.0;
                a[q * n + q].im = 0.0;
                for k in 0..n {
                    let (vkp, vkq) = (v[k * n + p], v[k * n + q]);
                    v[k * n + p] = c * vkp + jqp * vkq;
                    v[k * n + q] = s * vkp + jqq * vkq;
                }
            }
        }
    }
    Err(Error::NoConvergence { sweeps: MAX_SWEEPS })
}

fn off_diagonal_norm(a: &[Complex64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[i * n + j].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn fix_phase(v: &mut [Complex64]) {
    let max = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if let Some(lead) = v.iter().find(|z| z.norm() > PHASE_TOL * max).copied() {
        let phase = lead.conj() / lead.norm();
        for z in v.iter_mut() {
            *z *= phase;
        }
    }
}
