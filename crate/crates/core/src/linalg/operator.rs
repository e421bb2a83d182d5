use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Relative tolerance for the Hermiticity check, scaled by `max(1, ‖H‖_max)`.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Absolute tolerance on `‖U†U − I‖_max`.
pub const UNITARY_TOL: f64 = 1e-10;

/// Dense square complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct ComplexOperator {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexOperator {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    /// Builds a matrix from row slices. Panics if the rows are not square.
    pub fn from_rows(rows: &[&[Complex64]]) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "rows must form a square matrix");
        Self::from_fn(dim, |i, j| rows[i][j])
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    pub fn from_diagonal(diag: &[Complex64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Complex64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.dim).map(|i| self[(i, j)]).collect()
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.dim).map(|i| self[(i, i)]).collect()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    /// `A − tr(A)/dim · I`.
    pub fn traceless(&self) -> Self {
        let shift = self.trace() / self.dim as f64;
        let mut out = self.clone();
        for i in 0..self.dim {
            out[(i, i)] -= shift;
        }
        out
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    pub fn scale_real(&self, factor: f64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    /// `self += factor · other`.
    pub fn add_scaled(&mut self, factor: Complex64, other: &Self) {
        assert_eq!(self.dim, other.dim, "dimension mismatch in add_scaled");
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += factor * b;
        }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch in matmul");
        let n = self.dim;
        let mut out = vec![ZERO; n * n];
        for i in 0..n {
            let row = &mut out[i * n..(i + 1) * n];
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                let brow = &other.data[k * n..(k + 1) * n];
                for (o, b) in row.iter_mut().zip(brow) {
                    *o += a * b;
                }
            }
        }
        Self { dim: n, data: out }
    }

    pub fn apply(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim, "dimension mismatch in apply");
        (0..self.dim)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// `⟨u|A|v⟩`.
    pub fn expectation(&self, u: &[Complex64], v: &[Complex64]) -> Complex64 {
        let av = self.apply(v);
        u.iter().zip(&av).map(|(a, b)| a.conj() * b).sum()
    }

    /// Principal submatrix on `indices` (in the given order).
    pub fn restrict(&self, indices: &[usize]) -> Self {
        Self::from_fn(indices.len(), |i, j| self[(indices[i], indices[j])])
    }

    /// `‖H − H†‖_max`.
    pub fn hermiticity_error(&self) -> f64 {
        let n = self.dim;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermiticity_error() <= HERMITIAN_TOL * self.max_abs().max(1.0)
    }

    pub fn ensure_hermitian(&self) -> Result<()> {
        let deviation = self.hermiticity_error();
        if deviation <= HERMITIAN_TOL * self.max_abs().max(1.0) {
            Ok(())
        } else {
            Err(Error::NonHermitianInput { deviation })
        }
    }

    /// `‖U†U − I‖_max`.
    pub fn unitarity_error(&self) -> f64 {
        let mut p = self.adjoint().matmul(self);
        for i in 0..self.dim {
            p[(i, i)] -= ONE;
        }
        p.max_abs()
    }

    pub fn is_unitary(&self) -> bool {
        self.unitarity_error() <= UNITARY_TOL
    }

    pub fn is_diagonal(&self, tol: f64) -> bool {
        let n = self.dim;
        (0..n).all(|i| (0..n).all(|j| i == j || self[(i, j)].norm() <= tol))
    }
}

/// Kronecker product with entry `((i·db + k), (j·db + l)) = a[i,j]·b[k,l]`.
pub fn kron(a: &ComplexOperator, b: &ComplexOperator) -> ComplexOperator {
    let (da, db) = (a.dim, b.dim);
    let n = da * db;
    let mut out = ComplexOperator::zeros(n);
    for i in 0..da {
        for j in 0..da {
            let aij = a[(i, j)];
            if aij == ZERO {
                continue;
            }
            for k in 0..db {
                for l in 0..db {
                    out[(i * db + k, j * db + l)] = aij * b[(k, l)];
                }
            }
        }
    }
    out
}

/// Kronecker product of a sequence of factors, left to right.
pub fn kron_all<'a>(factors: impl IntoIterator<Item = &'a ComplexOperator>) -> ComplexOperator {
    factors
        .into_iter()
        .fold(ComplexOperator::identity(1), |acc, f| kron(&acc, f))
}

/// `[A, B] = AB − BA`.
pub fn commutator(a: &ComplexOperator, b: &ComplexOperator) -> ComplexOperator {
    &a.matmul(b) - &b.matmul(a)
}

/// Checks that two operators share a dimension.
pub fn ensure_same_dim(a: &ComplexOperator, b: &ComplexOperator) -> Result<()> {
    if a.dim == b.dim {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected: a.dim,
            found: b.dim,
        })
    }
}

impl Index<(usize, usize)> for ComplexOperator {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexOperator {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

impl Add for &ComplexOperator {
    type Output = ComplexOperator;

    fn add(self, rhs: &ComplexOperator) -> ComplexOperator {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in add");
        ComplexOperator {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ComplexOperator {
    type Output = ComplexOperator;

    fn sub(self, rhs: &ComplexOperator) -> ComplexOperator {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch in sub");
        ComplexOperator {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &ComplexOperator {
    type Output = ComplexOperator;

    fn neg(self) -> ComplexOperator {
        self.scale_real(-1.0)
    }
}

impl Mul for &ComplexOperator {
    type Output = ComplexOperator;

    fn mul(self, rhs: &ComplexOperator) -> ComplexOperator {
        self.matmul(rhs)
    }
}

impl fmt::Debug for ComplexOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexOperator({}x{})", self.dim, self.dim)?;
        for i in 0..self.dim {
            let row: Vec<String> = self
                .row(i)
                .iter()
                .map(|z| format!("{:+.4e}{:+.4e}i", z.re, z.im))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::pauli;

    #[test]
    fn kron_of_identities_is_identity() {
        let i2 = ComplexOperator::identity(2);
        assert_eq!(kron(&i2, &i2), ComplexOperator::identity(4));
    }

    #[test]
    fn kron_zz_is_parity_diagonal() {
        let zz = kron(&pauli::z(), &pauli::z());
        assert_eq!(zz, ComplexOperator::from_real_diagonal(&[1.0, -1.0, -1.0, 1.0]));
    }

    #[test]
    fn kron_xx_flips_both_spins() {
        let xx = kron(&pauli::x(), &pauli::x());
        let up_up = [ONE, ZERO, ZERO, ZERO];
        assert_eq!(xx.apply(&up_up), vec![ZERO, ZERO, ZERO, ONE]);
    }

    #[test]
    fn kron_index_layout() {
        let a = ComplexOperator::from_fn(2, |i, j| Complex64::new((i * 2 + j) as f64 + 1.0, 0.0));
        let b = ComplexOperator::from_fn(3, |i, j| Complex64::new(0.0, (i * 3 + j) as f64));
        let ab = kron(&a, &b);
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..3 {
                    for l in 0..3 {
                        assert_eq!(ab[(i * 3 + k, j * 3 + l)], a[(i, j)] * b[(k, l)]);
                    }
                }
            }
        }
    }

    #[test]
    fn traceless_removes_trace() {
        let m = ComplexOperator::from_real_diagonal(&[3.0, 1.0, 2.0]);
        assert!(m.traceless().trace().norm() < 1e-15);
    }

    #[test]
    fn hermiticity_check_rejects_asymmetric() {
        let mut m = ComplexOperator::identity(2);
        m[(0, 1)] = Complex64::new(0.0, 1.0);
        assert!(matches!(m.ensure_hermitian(), Err(Error::NonHermitianInput { .. })));
        m[(1, 0)] = Complex64::new(0.0, -1.0);
        assert!(m.ensure_hermitian().is_ok());
    }
}
