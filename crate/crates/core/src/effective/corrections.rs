//! Second-order corrections to the zero-magnetization block, treating the
//! Zeeman term as the unperturbed Hamiltonian and all exchange as the
//! perturbation.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::projection::S_ZERO;
use crate::hubbard::second_order_shift;
use crate::linalg::{kron, pauli, ComplexOperator};
use crate::spin::{build_h_spin, SpinParams};
use crate::{Error, Result};

/// Which closed forms to evaluate.
///
/// `Transcribed` reproduces the published expressions as printed, with full
/// rotation angles, `sin²Φ₂` in the ↓↑↑↓ element and a prefactor of ½ on the
/// interaction terms. `Verified` is the form that agrees with the numerical
/// second-order reduction: half angles throughout, `sin²(Φ₁/2)` in the ↓↑↑↓
/// element, and unit prefactor on the interaction terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CorrectionForm {
    Transcribed,
    #[default]
    Verified,
}

/// The four independent second-order elements `⟨c|H⁽²⁾|↑↑↓↓⟩` for the
/// computational states `c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LeakageCorrections {
    pub udud: Complex64,
    pub uddu: Complex64,
    pub duud: Complex64,
    pub dudu: Complex64,
}

impl LeakageCorrections {
    pub fn as_array(&self) -> [Complex64; 4] {
        [self.udud, self.uddu, self.duud, self.dudu]
    }

    /// Elements `⟨c|H⁽²⁾|↓↓↑↑⟩` in computational order, which follow from the
    /// independent ones by a global spin flip.
    pub fn partners(&self) -> [Complex64; 4] {
        [Complex64::new(0.0, 0.0), -self.duud.conj(), -self.uddu.conj(), -self.udud.conj()]
    }
}

/// Coefficients of `τx¹τz²`, `τy¹τz²`, `τz¹τx²`, `τz¹τy²`, normalized so
/// that the term reads `(J/4) τ¹τ²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InteractionCorrections {
    pub xz: f64,
    pub yz: f64,
    pub zx: f64,
    pub zy: f64,
}

impl InteractionCorrections {
    pub fn as_array(&self) -> [f64; 4] {
        [self.xz, self.yz, self.zx, self.zy]
    }
}

/// Intermediate quantities of the closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CorrectionHelpers {
    /// Inner-bond amplitude of the first qubit, at `−Φ₁`.
    pub gamma1: Complex64,
    /// Inner-bond amplitude of the second qubit, at `Φ₂`.
    pub gamma2: Complex64,
    pub beta_plus: Complex64,
    pub beta_minus: Complex64,
    pub c_mix1: f64,
    pub s_mix1: f64,
    pub c_mix2: f64,
    pub s_mix2: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CorrectionTerms {
    pub form: CorrectionForm,
    pub leak2: LeakageCorrections,
    pub int2: InteractionCorrections,
    pub helpers: CorrectionHelpers,
}

/// `J (n_x + i n_y) sin a (cos a + i n_z sin a)`.
fn bond_amplitude(j: f64, n: [f64; 3], a: f64) -> Complex64 {
    let (s, c) = a.sin_cos();
    j * Complex64::new(n[0], n[1]) * s * Complex64::new(c, n[2] * s)
}

fn zeeman_magnitudes(p: &SpinParams) -> Result<[f64; 4]> {
    p.ensure_aligned()?;
    let h = p.zeeman_z();
    for (dot, &x) in h.iter().enumerate() {
        if x == 0.0 {
            return Err(Error::ZeroZeemanField { dot: dot + 1 });
        }
        if x < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "Zeeman field on dot {} must point along +z",
                dot + 1
            )));
        }
    }
    Ok(h)
}

pub fn second_order_corrections(p: &SpinParams, form: CorrectionForm) -> Result<CorrectionTerms> {
    let [h1, h2, h3, h4] = zeeman_magnitudes(p)?;
    let (n, phi) = (p.rotsc.axis(), p.rotsc.angle());
    let (n1, phi1) = (p.rot1.axis(), p.rot1.angle());
    let (n2, phi2) = (p.rot2.axis(), p.rot2.angle());
    let angle = |x: f64| match form {
        CorrectionForm::Transcribed => x,
        CorrectionForm::Verified => 0.5 * x,
    };

    let gamma1 = bond_amplitude(p.j1, n1, angle(-phi1));
    let gamma2 = bond_amplitude(p.j2, n2, angle(phi2));
    let beta_plus = bond_amplitude(p.jsc, n, angle(phi));
    let beta_minus = bond_amplitude(p.jsc, [n[0], -n[1], n[2]], angle(phi));

    let nxy = Complex64::new(n[0], n[1]);
    let n1xy = Complex64::new(n1[0], n1[1]);
    let n2xy = Complex64::new(n2[0], n2[1]);
    let sin2 = |x: f64| angle(x).sin().powi(2);
    let udud = match form {
        CorrectionForm::Transcribed => {
            (1.0 / 16.0) * (1.0 / h2 + 1.0 / h3) * (gamma1 * beta_plus + gamma2 * beta_minus)
        }
        CorrectionForm::Verified => {
            0.25 * (1.0 / h2 + 1.0 / h3) * (gamma1 * beta_minus + gamma2.conj() * beta_plus)
        }
    };
    let uddu = -0.125
        * (1.0 / (h2 + h3) + 1.0 / (h3 + h4))
        * p.jsc
        * p.j2
        * (nxy * nxy)
        * (n2xy.conj() * n2xy.conj())
        * sin2(phi)
        * sin2(phi2);
    let duud_angle = match form {
        CorrectionForm::Transcribed => phi2,
        CorrectionForm::Verified => phi1,
    };
    let duud = 0.125
        * (1.0 / (h1 + h2) + 1.0 / (h2 + h3))
        * p.jsc
        * p.j1
        * (nxy.conj() * nxy.conj())
        * (n1xy * n1xy)
        * sin2(phi)
        * sin2(duud_angle);
    let leak2 = LeakageCorrections { udud, uddu, duud, dudu: Complex64::new(0.0, 0.0) };

    // interaction terms always use half angles
    let (s, c) = (0.5 * phi).sin_cos();
    let (b1, a1) = (0.5 * phi1).sin_cos();
    let (b2, a2) = (0.5 * phi2).sin_cos();
    let dot1 = n1[0] * n[0] + n1[1] * n[1];
    let cross1 = n1[0] * n[1] - n1[1] * n[0];
    let dot2 = n2[0] * n[0] + n2[1] * n[1];
    let cross2 = n2[0] * n[1] - n2[1] * n[0];
    let c_mix1 = dot1 * c - cross1 * n[2] * s;
    let s_mix1 = cross1 * c + dot1 * n[2] * s;
    let c_mix2 = dot2 * c + cross2 * n[2] * s;
    let s_mix2 = cross2 * c - dot2 * n[2] * s;
    let k = match form {
        CorrectionForm::Transcribed => 0.5,
        CorrectionForm::Verified => 1.0,
    };
    let left = k * (1.0 / h1 + 1.0 / h2) * p.j1 * p.jsc * b1 * s;
    let right = k * (1.0 / h3 + 1.0 / h4) * p.j2 * p.jsc * b2 * s;
    let int2 = InteractionCorrections {
        xz: -left * (c_mix1 * a1 + s_mix1 * n1[2] * b1),
        yz: -left * (c_mix1 * n1[2] * b1 - s_mix1 * a1),
        zx: right * (c_mix2 * a2 - s_mix2 * n2[2] * b2),
        zy: -right * (-c_mix2 * n2[2] * b2 - s_mix2 * a2),
    };

    Ok(CorrectionTerms {
        form,
        leak2,
        int2,
        helpers: CorrectionHelpers {
            gamma1,
            gamma2,
            beta_plus,
            beta_minus,
            c_mix1,
            s_mix1,
            c_mix2,
            s_mix2,
        },
    })
}

/// Second-order shift of the zero-magnetization block computed numerically
/// from the 16-dimensional model: Zeeman energies as the unperturbed
/// Hamiltonian, everything else as the perturbation. Rows and columns follow
/// [`S_ZERO`].
pub fn numerical_second_order(p: &SpinParams) -> Result<ComplexOperator> {
    zeeman_magnitudes(p)?;
    let full = build_h_spin(p);
    let zeeman = build_h_spin(&SpinParams { j1: 0.0, j2: 0.0, jsc: 0.0, ..*p });
    let v = &full - &zeeman;
    second_order_shift(&zeeman, &v, &S_ZERO)
}

/// Reads the leakage elements and interaction coefficients off a 6×6
/// operator in [`S_ZERO`] order.
pub fn extract_corrections(m: &ComplexOperator) -> Result<(LeakageCorrections, InteractionCorrections)> {
    if m.dim() != 6 {
        return Err(Error::DimensionMismatch { expected: 6, found: m.dim() });
    }
    let leak = LeakageCorrections {
        udud: m[(0, 4)],
        uddu: m[(1, 4)],
        duud: m[(2, 4)],
        dudu: m[(3, 4)],
    };
    let block = m.restrict(&[0, 1, 2, 3]);
    let [x, y, z] = pauli::vector();
    let coeff = |a: &ComplexOperator, b: &ComplexOperator| block.matmul(&kron(a, b)).trace().re;
    let int = InteractionCorrections {
        xz: coeff(&x, &z),
        yz: coeff(&y, &z),
        zx: coeff(&z, &x),
        zy: coeff(&z, &y),
    };
    Ok((leak, int))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spin::Rotation3;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn unit() -> impl Strategy<Value = [f64; 3]> {
        (0.0..PI, 0.0..2.0 * PI).prop_map(|(t, p)| [t.sin() * p.cos(), t.sin() * p.sin(), t.cos()])
    }

    fn params() -> impl Strategy<Value = SpinParams> {
        (
            prop::array::uniform4(10.0..30.0f64),
            prop::array::uniform3(-1.0..1.0f64),
            prop::array::uniform3((unit(), 0.0..2.0 * PI)),
        )
            .prop_map(|(h, j, r)| SpinParams {
                h: h.map(|x| [0.0, 0.0, x]),
                j1: j[0],
                j2: j[1],
                jsc: j[2],
                rot1: Rotation3::new(r[0].0, r[0].1).unwrap(),
                rotsc: Rotation3::new(r[1].0, r[1].1).unwrap(),
                rot2: Rotation3::new(r[2].0, r[2].1).unwrap(),
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn verified_form_matches_numerical_reduction(p in params()) {
            let terms = second_order_corrections(&p, CorrectionForm::Verified).unwrap();
            let m = numerical_second_order(&p).unwrap();
            let (leak, int) = extract_corrections(&m).unwrap();
            for (a, b) in leak.as_array().iter().zip(terms.leak2.as_array()) {
                prop_assert!((a - b).norm() < 1e-12, "{a} vs {b}");
            }
            for (a, b) in int.as_array().iter().zip(terms.int2.as_array()) {
                prop_assert!((a - b).abs() < 1e-12, "{a} vs {b}");
            }
            let partners = [m[(0, 5)], m[(1, 5)], m[(2, 5)], m[(3, 5)]];
            for (a, b) in partners.iter().zip(leak.partners()) {
                prop_assert!((a - b).norm() < 1e-12);
            }
        }

        #[test]
        fn leakage_vanishes_without_inner_rotation(p in params()) {
            let p = SpinParams {
                rot1: Rotation3::new(p.rot1.axis(), 0.0).unwrap(),
                rot2: Rotation3::new(p.rot2.axis(), 0.0).unwrap(),
                ..p
            };
            for form in [CorrectionForm::Transcribed, CorrectionForm::Verified] {
                let t = second_order_corrections(&p, form).unwrap();
                prop_assert!(t.leak2.as_array().iter().all(|z| z.norm() <= 1e-14));
            }
        }

        #[test]
        fn interaction_vanishes_at_sweet_spot(p in params(), azimuth in 0.0..2.0 * PI) {
            let p = SpinParams {
                rotsc: Rotation3::new([azimuth.cos(), azimuth.sin(), 0.0], PI).unwrap(),
                ..p
            };
            for form in [CorrectionForm::Transcribed, CorrectionForm::Verified] {
                let t = second_order_corrections(&p, form).unwrap();
                prop_assert!(t.int2.as_array().iter().all(|x| x.abs() <= 1e-14));
            }
        }
    }

    #[test]
    fn zero_field_is_rejected() {
        let p = SpinParams {
            h: [[0.0, 0.0, 20.0], [0.0; 3], [0.0, 0.0, 19.0], [0.0, 0.0, 18.0]],
            j1: 0.1,
            j2: 0.1,
            jsc: 0.4,
            rot1: Rotation3::identity(),
            rotsc: Rotation3::identity(),
            rot2: Rotation3::identity(),
        };
        assert_eq!(
            second_order_corrections(&p, CorrectionForm::Verified).unwrap_err(),
            Error::ZeroZeemanField { dot: 2 }
        );
    }
}
