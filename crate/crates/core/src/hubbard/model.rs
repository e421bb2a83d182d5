use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::fock::{apply_string, mode, FockBasis, N_DOTS};
use crate::linalg::ComplexOperator;
use crate::spin::{spin_flip_unitary, Rotation3};
use crate::{Error, Result};

/// On-site Coulomb repulsion. Serialized as a number or the string
/// `"infinite"`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CoulombRepr", into = "CoulombRepr")]
pub enum Coulomb {
    Finite(f64),
    /// Double occupation removed from the basis.
    Infinite,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CoulombRepr {
    Value(f64),
    Word(String),
}

impl TryFrom<CoulombRepr> for Coulomb {
    type Error = String;

    fn try_from(r: CoulombRepr) -> std::result::Result<Self, String> {
        match r {
            CoulombRepr::Value(u) => Ok(Coulomb::Finite(u)),
            CoulombRepr::Word(w) if w == "infinite" => Ok(Coulomb::Infinite),
            CoulombRepr::Word(w) => Err(format!("expected a number or \"infinite\", found \"{w}\"")),
        }
    }
}

impl From<Coulomb> for CoulombRepr {
    fn from(c: Coulomb) -> Self {
        match c {
            Coulomb::Finite(u) => CoulombRepr::Value(u),
            Coulomb::Infinite => CoulombRepr::Word("infinite".into()),
        }
    }
}

impl Coulomb {
    pub fn finite(&self) -> Option<f64> {
        match *self {
            Coulomb::Finite(u) => Some(u),
            Coulomb::Infinite => None,
        }
    }
}

/// How the middle dots couple to the superconductor.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Lead {
    #[default]
    Single,
    /// Two superconductors with phases `phi_u` and `phi_l`.
    Junction { phi_u: f64, phi_l: f64 },
}

impl Lead {
    /// Pairing amplitude entering the dot Hamiltonian.
    pub fn effective_amplitude(&self, gamma: f64) -> Complex64 {
        match *self {
            Lead::Single => Complex64::new(gamma, 0.0),
            Lead::Junction { phi_u, phi_l } => {
                2.0 * gamma
                    * (0.5 * (phi_u - phi_l)).cos()
                    * Complex64::from_polar(1.0, -0.5 * (phi_u + phi_l))
            }
        }
    }

    /// `|amplitude|²`, with the junction factor written as `2(1 + cos φ)` so
    /// that it vanishes exactly at `φ = π`.
    pub fn effective_strength(&self, gamma: f64) -> f64 {
        match *self {
            Lead::Single => gamma * gamma,
            Lead::Junction { phi_u, phi_l } => 2.0 * gamma * gamma * (1.0 + (phi_u - phi_l).cos()),
        }
    }
}

/// Four-dot Hubbard chain with crossed Andreev pairing between dots 2 and 3.
/// Energies in μeV.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HubbardParams {
    /// Dot energies relative to the chemical potential.
    pub eps: [f64; 4],
    pub coulomb: Coulomb,
    /// Coulomb energy used for the pairing channel in the analytic cross
    /// coupling. Defaults to `coulomb`; the lattice model always uses
    /// `coulomb` on every dot.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u_pair: Option<f64>,
    pub t1: f64,
    pub t2: f64,
    pub gamma_ca: f64,
    #[serde(default)]
    pub lead: Lead,
    #[serde(default = "Rotation3::identity")]
    pub rot1: Rotation3,
    #[serde(default = "Rotation3::identity")]
    pub rot2: Rotation3,
    #[serde(default = "Rotation3::identity")]
    pub rot_ca: Rotation3,
    #[serde(default)]
    pub h: [[f64; 3]; 4],
}

fn magnitude(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

impl HubbardParams {
    /// Checks the single-occupation window `0 < −ε ± h/2 < U` on every dot
    /// and warns when the tunnelings are not small against the level
    /// spacings.
    pub fn validate(&self) -> Result<()> {
        let scalars = [self.t1, self.t2, self.gamma_ca];
        if self.eps.iter().chain(&scalars).any(|x| !x.is_finite())
            || self.h.iter().flatten().any(|x| !x.is_finite())
        {
            return Err(Error::InvalidParameter("Hubbard parameters must be finite".into()));
        }
        if scalars.iter().any(|&x| x < 0.0) {
            return Err(Error::InvalidParameter("tunnelings and pairing must be non-negative".into()));
        }
        let u = self.coulomb.finite();
        if let Some(u) = u {
            if !(u > 0.0 && u.is_finite()) {
                return Err(Error::InvalidParameter(format!("Coulomb energy {u} must be positive")));
            }
        }
        for dot in 0..N_DOTS {
            let half = 0.5 * magnitude(self.h[dot]);
            let (low, high) = (-self.eps[dot] - half, -self.eps[dot] + half);
            if low <= 0.0 || u.is_some_and(|u| high >= u) {
                return Err(Error::OccupationWindowViolated { dot: dot + 1 });
            }
        }

        let mut scales: Vec<f64> = self.eps.iter().map(|e| e.abs()).collect();
        if let Some(u) = u {
            scales.extend(self.eps.iter().map(|e| u - e.abs()));
        }
        // zero fields are the degenerate reference point, not a small scale
        scales.extend(self.h.iter().map(|v| magnitude(*v)).filter(|&x| x > 0.0));
        let smallest = scales.into_iter().fold(f64::INFINITY, f64::min);
        let largest = self.t1.max(self.t2).max(self.gamma_ca);
        if largest > 0.1 * smallest {
            log::warn!(
                "tunneling {largest} ueV exceeds 10% of the smallest level spacing {smallest} ueV; \
                 perturbative couplings may be inaccurate"
            );
        }
        Ok(())
    }

    pub fn basis(&self) -> FockBasis {
        match self.coulomb {
            Coulomb::Finite(_) => FockBasis::full(),
            Coulomb::Infinite => FockBasis::without_double_occupancy(),
        }
    }

    /// Scales both tunnelings and the pairing amplitude.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            t1: self.t1 * factor,
            t2: self.t2 * factor,
            gamma_ca: self.gamma_ca * factor,
            ..*self
        }
    }
}

struct Builder<'a> {
    basis: &'a FockBasis,
    h: ComplexOperator,
}

impl Builder<'_> {
    /// Adds `coeff · ops` and, when `conjugate` is set, its adjoint.
    fn add(&mut self, coeff: Complex64, ops: &[(usize, bool)], conjugate: bool) {
        if coeff == Complex64::new(0.0, 0.0) {
            return;
        }
        for (col, &s) in self.basis.states().iter().enumerate() {
            if let Some((t, sign)) = apply_string(s, ops) {
                if let Some(row) = self.basis.index_of(t) {
                    let amp = coeff * sign;
                    self.h[(row, col)] += amp;
                    if conjugate {
                        self.h[(col, row)] += amp.conj();
                    }
                }
            }
        }
    }
}

/// Dot Hamiltonian: levels, Zeeman, Coulomb, spin-rotating tunneling inside
/// each qubit and crossed Andreev pairing across the superconductor.
pub fn build_h_dot(p: &HubbardParams) -> Result<(FockBasis, ComplexOperator)> {
    p.validate()?;
    let basis = p.basis();
    let mut b = Builder { h: ComplexOperator::zeros(basis.len()), basis: &basis };
    let sigma = crate::linalg::pauli::vector();

    for dot in 0..N_DOTS {
        let mut zeeman = ComplexOperator::zeros(2);
        for a in 0..3 {
            zeeman.add_scaled(Complex64::new(0.5 * p.h[dot][a], 0.0), &sigma[a]);
        }
        for s in 0..2 {
            b.add(Complex64::new(p.eps[dot], 0.0), &[(mode(dot, s), true), (mode(dot, s), false)], false);
            for s2 in 0..2 {
                b.add(zeeman[(s, s2)], &[(mode(dot, s), true), (mode(dot, s2), false)], false);
            }
        }
        if let Coulomb::Finite(u) = p.coulomb {
            let ops = [
                (mode(dot, 0), true),
                (mode(dot, 0), false),
                (mode(dot, 1), true),
                (mode(dot, 1), false),
            ];
            b.add(Complex64::new(u, 0.0), &ops, false);
        }
    }

    for (t, rot, from, to) in [(p.t1, &p.rot1, 0, 1), (p.t2, &p.rot2, 2, 3)] {
        let u = spin_flip_unitary(rot);
        for s in 0..2 {
            for s2 in 0..2 {
                b.add(t * u[(s, s2)], &[(mode(to, s), true), (mode(from, s2), false)], true);
            }
        }
    }

    // Γ Σ (U†)_{σσ'} d†_{2σ} w_{σ'} with w = (−d†_{3↓}, d†_{3↑})
    let gamma = p.lead.effective_amplitude(p.gamma_ca);
    let ud = spin_flip_unitary(&p.rot_ca).adjoint();
    for s in 0..2 {
        b.add(-gamma * ud[(s, 0)], &[(mode(1, s), true), (mode(2, 1), true)], true);
        b.add(gamma * ud[(s, 1)], &[(mode(1, s), true), (mode(2, 0), true)], true);
    }

    let h = b.h;
    Ok((basis, h))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::commutator;
    use std::f64::consts::PI;

    fn sample() -> HubbardParams {
        HubbardParams {
            eps: [-20.0, -20.5, -19.5, -20.2],
            coulomb: Coulomb::Finite(200.0),
            u_pair: None,
            t1: 0.3,
            t2: 0.2,
            gamma_ca: 0.25,
            lead: Lead::Single,
            rot1: Rotation3::normalized([0.3, 0.4, 0.5], 0.8).unwrap(),
            rot2: Rotation3::normalized([-0.2, 0.1, 0.9], 1.9).unwrap(),
            rot_ca: Rotation3::normalized([0.7, -0.3, 0.2], 2.6).unwrap(),
            h: [[0.0, 0.0, 1.0], [0.0, 0.0, 1.2], [0.0, 0.0, 0.9], [0.0, 0.0, 1.1]],
        }
    }

    #[test]
    fn atomic_limit_is_diagonal() {
        let p = HubbardParams { t1: 0.0, t2: 0.0, gamma_ca: 0.0, ..sample() };
        let (basis, h) = build_h_dot(&p).unwrap();
        assert!(h.is_diagonal(0.0));
        // ground state of the half-filled sector is a product spin state
        let sector = basis.spin_sector();
        let lowest = sector.iter().map(|&i| h[(i, i)].re).fold(f64::INFINITY, f64::min);
        let expected: f64 = p.eps.iter().sum::<f64>() - 0.5 * (1.0 + 1.2 + 0.9 + 1.1);
        assert!((lowest - expected).abs() < 1e-12);
    }

    #[test]
    fn hermitian_and_parity_conserving() {
        let (basis, h) = build_h_dot(&sample()).unwrap();
        assert!(h.is_hermitian());
        assert_eq!(commutator(&h, &basis.parity()).max_abs(), 0.0);
    }

    #[test]
    fn pairing_vanishes_at_phase_pi() {
        let base = HubbardParams { t1: 0.0, t2: 0.0, h: [[0.0; 3]; 4], ..sample() };
        let lead = Lead::Junction { phi_u: 0.4 + PI, phi_l: 0.4 };
        let (_, h) = build_h_dot(&HubbardParams { lead, ..base }).unwrap();
        let (_, atomic) = build_h_dot(&HubbardParams { gamma_ca: 0.0, ..base }).unwrap();
        assert!((&h - &atomic).max_abs() < 1e-16);
        assert_eq!(lead.effective_strength(0.25), 0.0);
    }

    #[test]
    fn occupation_window() {
        let mut p = sample();
        p.eps[2] = 0.1;
        assert_eq!(build_h_dot(&p).unwrap_err(), Error::OccupationWindowViolated { dot: 3 });
        let mut p = sample();
        p.eps[3] = -199.9;
        assert_eq!(p.validate().unwrap_err(), Error::OccupationWindowViolated { dot: 4 });
        p.coulomb = Coulomb::Infinite;
        assert!(p.validate().is_ok());
    }

    #[test]
    fn coulomb_serialization() {
        let c: Coulomb = serde_json::from_str("\"infinite\"").unwrap();
        assert_eq!(c, Coulomb::Infinite);
        let c: Coulomb = serde_json::from_str("12.5").unwrap();
        assert_eq!(c, Coulomb::Finite(12.5));
        assert!(serde_json::from_str::<Coulomb>("\"big\"").is_err());
    }
}
