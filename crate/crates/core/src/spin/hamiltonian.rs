use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::rotation::{norm3, rotation_matrix, Matrix3, Rotation3};
use crate::linalg::{pauli, ComplexOperator};
use crate::{Error, Result};

pub const N_SPINS: usize = 4;
pub const SPIN_DIM: usize = 16;

/// Exchange bonds of the chain: (left dot, right dot), zero-based.
pub const INNER_BOND_1: (usize, usize) = (0, 1);
pub const CROSS_BOND: (usize, usize) = (1, 2);
pub const INNER_BOND_2: (usize, usize) = (2, 3);

/// Input to the four-spin model. Energies in μeV.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpinParams {
    /// Zeeman vector of each dot.
    pub h: [[f64; 3]; 4],
    /// Exchange inside the first qubit (dots 1–2).
    pub j1: f64,
    /// Exchange inside the second qubit (dots 3–4).
    pub j2: f64,
    /// Superconductor-mediated exchange (dots 2–3).
    pub jsc: f64,
    pub rot1: Rotation3,
    pub rotsc: Rotation3,
    pub rot2: Rotation3,
}

impl SpinParams {
    /// z-components of the Zeeman vectors.
    pub fn zeeman_z(&self) -> [f64; 4] {
        self.h.map(|v| v[2])
    }

    /// True when every Zeeman vector lies along ±ẑ.
    pub fn is_aligned(&self) -> bool {
        self.h.iter().all(|v| {
            let scale = norm3(*v).max(1.0);
            v[0].abs() <= 1e-12 * scale && v[1].abs() <= 1e-12 * scale
        })
    }

    pub fn ensure_aligned(&self) -> Result<()> {
        if self.is_aligned() {
            Ok(())
        } else {
            Err(Error::UnalignedZeeman)
        }
    }

    /// Mean Zeeman magnitude.
    pub fn h_bar(&self) -> f64 {
        self.h.iter().map(|v| norm3(*v)).sum::<f64>() / 4.0
    }

    /// `(h₁ − h₂, h₂ − h₃, h₃ − h₄)` from the z-components.
    pub fn zeeman_differences(&self) -> (f64, f64, f64) {
        let h = self.zeeman_z();
        (h[0] - h[1], h[1] - h[2], h[2] - h[3])
    }

    pub fn validate(&self) -> Result<()> {
        let finite = self.h.iter().flatten().all(|x| x.is_finite())
            && [self.j1, self.j2, self.jsc].iter().all(|x| x.is_finite());
        if finite {
            Ok(())
        } else {
            Err(Error::InvalidParameter("spin parameters must be finite".into()))
        }
    }

    fn bonds(&self) -> [(f64, Matrix3, (usize, usize)); 3] {
        [
            (self.j1, rotation_matrix(&self.rot1), INNER_BOND_1),
            (self.jsc, rotation_matrix(&self.rotsc), CROSS_BOND),
            (self.j2, rotation_matrix(&self.rot2), INNER_BOND_2),
        ]
    }
}

/// Single-site Pauli operators `σ^a` on each of the four dots.
fn site_paulis() -> [[ComplexOperator; 3]; N_SPINS] {
    let sigma = pauli::vector();
    [0, 1, 2, 3].map(|site| {
        [0, 1, 2].map(|a| pauli::on_site(&sigma[a], site, N_SPINS))
    })
}

/// `½ Σ h_α·σ^α + Σ_bonds (J/4) σ^i·R σ^j`, ordered dot1 ⊗ … ⊗ dot4.
pub fn build_h_spin(p: &SpinParams) -> ComplexOperator {
    let s = site_paulis();
    let mut h = ComplexOperator::zeros(SPIN_DIM);
    for (site, field) in p.h.iter().enumerate() {
        for a in 0..3 {
            if field[a] != 0.0 {
                h.add_scaled(Complex64::new(0.5 * field[a], 0.0), &s[site][a]);
            }
        }
    }
    for (j, r, (i, k)) in p.bonds() {
        if j == 0.0 {
            continue;
        }
        for a in 0..3 {
            for b in 0..3 {
                if r[a][b] != 0.0 {
                    let term = s[i][a].matmul(&s[k][b]);
                    h.add_scaled(Complex64::new(0.25 * j * r[a][b], 0.0), &term);
                }
            }
        }
    }
    h
}

/// Coefficients `c_ab` of `σ^a_i σ^b_j` in a 16×16 operator.
pub fn pair_coefficients(op: &ComplexOperator, i: usize, j: usize) -> Matrix3 {
    let s = site_paulis();
    let mut c = [[0.0; 3]; 3];
    for a in 0..3 {
        for b in 0..3 {
            let probe = s[i][a].matmul(&s[j][b]);
            c[a][b] = (op.matmul(&probe).trace() / SPIN_DIM as f64).re;
        }
    }
    c
}

/// Exchange strength `J` of a term `(J/4) σ^i·R σ^j` inside `op`, given the
/// bond rotation.
pub fn bond_coupling(op: &ComplexOperator, bond: (usize, usize), rotation: &Rotation3) -> f64 {
    let c = pair_coefficients(op, bond.0, bond.1);
    let r = rotation_matrix(rotation);
    let overlap: f64 = (0..3).flat_map(|a| (0..3).map(move |b| (a, b))).map(|(a, b)| r[a][b] * c[a][b]).sum();
    4.0 * overlap / 3.0
}

/// Rotates each dot's spin frame so that its Zeeman field points along +ẑ and
/// renormalizes the bond rotations to `R_{Z,i}⁻¹ R R_{Z,j}`. The spectrum is
/// unchanged.
pub fn gauge_align_zeeman(p: &SpinParams) -> Result<SpinParams> {
    let mut frames = Vec::with_capacity(N_SPINS);
    for (dot, field) in p.h.iter().enumerate() {
        if norm3(*field) == 0.0 {
            return Err(Error::ZeroZeemanField { dot: dot + 1 });
        }
        frames.push(Rotation3::aligning_z_to(*field)?);
    }
    let bond = |r: &Rotation3, (i, j): (usize, usize)| frames[i].inverse().compose(r).compose(&frames[j]);
    Ok(SpinParams {
        h: p.h.map(|v| [0.0, 0.0, norm3(v)]),
        rot1: bond(&p.rot1, INNER_BOND_1),
        rotsc: bond(&p.rotsc, CROSS_BOND),
        rot2: bond(&p.rot2, INNER_BOND_2),
        ..*p
    })
}
