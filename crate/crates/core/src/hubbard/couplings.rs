use serde::{Deserialize, Serialize};

use super::model::{Coulomb, HubbardParams};
use crate::spin::SpinParams;
use crate::{Error, Result};

/// Closed form used for the superconductor-mediated coupling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CouplingVariant {
    /// `−4|Γ|²U / ((ε₂+ε₃)(2U+ε₂+ε₃))`.
    #[default]
    DoubleU,
    /// `−4|Γ|²U / ((ε₂+ε₃)(U+ε₂+ε₃))`.
    SingleU,
    /// `−4|Γ|² / (ε₂+ε₃)`, independent of `U`.
    InfiniteU,
}

impl CouplingVariant {
    pub const ALL: [CouplingVariant; 3] =
        [CouplingVariant::DoubleU, CouplingVariant::SingleU, CouplingVariant::InfiniteU];

    pub fn name(&self) -> &'static str {
        match self {
            CouplingVariant::DoubleU => "double_u",
            CouplingVariant::SingleU => "single_u",
            CouplingVariant::InfiniteU => "infinite_u",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExchangeCouplings {
    pub j1: f64,
    pub j2: f64,
    pub jsc: f64,
}

impl ExchangeCouplings {
    pub fn max_abs(&self) -> f64 {
        self.j1.abs().max(self.j2.abs()).max(self.jsc.abs())
    }
}

fn nonzero(value: f64, scale: f64, factor: &'static str) -> Result<f64> {
    if value.abs() <= 1e-12 * scale.abs().max(1.0) {
        Err(Error::ResonantDenominator { factor })
    } else {
        Ok(value)
    }
}

/// Inner superexchange `4t²U/(U² − ε̃²)`, zero for infinite `U`.
fn inner_exchange(t: f64, detuning: f64, coulomb: Coulomb, factor: &'static str) -> Result<f64> {
    match coulomb {
        Coulomb::Infinite => Ok(0.0),
        Coulomb::Finite(u) => {
            let den = nonzero(u * u - detuning * detuning, u * u, factor)?;
            Ok(4.0 * t * t * u / den)
        }
    }
}

/// Analytic second-order couplings of the lattice model.
///
/// For infinite `U` the inner couplings vanish and the cross coupling takes
/// the `U → ∞` limit of the chosen variant: `−2|Γ|²/(ε₂+ε₃)` for
/// [`CouplingVariant::DoubleU`], `−4|Γ|²/(ε₂+ε₃)` otherwise.
pub fn exchange_couplings(p: &HubbardParams, variant: CouplingVariant) -> Result<ExchangeCouplings> {
    let j1 = inner_exchange(p.t1, p.eps[0] - p.eps[1], p.coulomb, "U^2 - (eps_1 - eps_2)^2")?;
    let j2 = inner_exchange(p.t2, p.eps[2] - p.eps[3], p.coulomb, "U^2 - (eps_3 - eps_4)^2")?;

    let e23 = p.eps[1] + p.eps[2];
    let strength = p.lead.effective_strength(p.gamma_ca);
    let pair_u = p.u_pair.or(p.coulomb.finite());
    let jsc = match (variant, pair_u) {
        (CouplingVariant::InfiniteU, _) | (CouplingVariant::SingleU, None) => {
            -4.0 * strength / nonzero(e23, e23, "eps_2 + eps_3")?
        }
        (CouplingVariant::DoubleU, None) => -2.0 * strength / nonzero(e23, e23, "eps_2 + eps_3")?,
        (CouplingVariant::DoubleU, Some(u)) => {
            let a = nonzero(e23, e23, "eps_2 + eps_3")?;
            let b = nonzero(2.0 * u + e23, u, "2U + eps_2 + eps_3")?;
            -4.0 * strength * u / (a * b)
        }
        (CouplingVariant::SingleU, Some(u)) => {
            let a = nonzero(e23, e23, "eps_2 + eps_3")?;
            let b = nonzero(u + e23, u, "U + eps_2 + eps_3")?;
            -4.0 * strength * u / (a * b)
        }
    };
    Ok(ExchangeCouplings { j1, j2, jsc })
}

/// The spin model this lattice model reduces to at second order.
pub fn to_spin_params(p: &HubbardParams, variant: CouplingVariant) -> Result<SpinParams> {
    let c = exchange_couplings(p, variant)?;
    Ok(SpinParams {
        h: p.h,
        j1: c.j1,
        j2: c.j2,
        jsc: c.jsc,
        rot1: p.rot1,
        rotsc: p.rot_ca,
        rot2: p.rot2,
    })
}

/// Pairing amplitude from lead tunneling `t_s` (μeV), normal density of
/// states `rho_f` (per μeV per spin), gap `delta` and band half-width
/// `bandwidth`: `2 t_s² ρ_F arctan(W/Δ)`, times `e^{−2w/ξ}` when the
/// dot separation `w/ξ` is given.
pub fn gamma_ca_from_tunneling(
    t_s: f64,
    rho_f: f64,
    delta: f64,
    bandwidth: f64,
    w_over_xi: Option<f64>,
) -> Result<f64> {
    for (name, value) in [("rho_f", rho_f), ("delta", delta), ("bandwidth", bandwidth)] {
        if !(value > 0.0 && value.is_finite()) {
            return Err(Error::InvalidParameter(format!("{name} must be positive, got {value}")));
        }
    }
    let attenuation = match w_over_xi {
        Some(x) if x.is_finite() && x >= 0.0 => (-2.0 * x).exp(),
        Some(x) => return Err(Error::InvalidParameter(format!("w/xi must be non-negative, got {x}"))),
        None => 1.0,
    };
    Ok(2.0 * t_s * t_s * rho_f * (bandwidth / delta).atan() * attenuation)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hubbard::model::Lead;
    use crate::spin::Rotation3;
    use std::f64::consts::PI;

    fn params(coulomb: Coulomb) -> HubbardParams {
        HubbardParams {
            eps: [-20.0; 4],
            coulomb,
            u_pair: None,
            t1: 1.0,
            t2: 1.0,
            gamma_ca: 2.0,
            lead: Lead::Single,
            rot1: Rotation3::identity(),
            rot2: Rotation3::identity(),
            rot_ca: Rotation3::identity(),
            h: [[0.0; 3]; 4],
        }
    }

    #[test]
    fn closed_form_cross_coupling() {
        let c = exchange_couplings(&params(Coulomb::Infinite), CouplingVariant::InfiniteU).unwrap();
        assert!((c.jsc - 0.4).abs() <= 1e-12 * 0.4);
        assert_eq!((c.j1, c.j2), (0.0, 0.0));
    }

    #[test]
    fn inner_superexchange() {
        let mut p = params(Coulomb::Finite(100.0));
        p.eps = [-20.0, -20.0, -30.0, -30.0];
        let c = exchange_couplings(&p, CouplingVariant::DoubleU).unwrap();
        assert!((c.j1 - 0.04).abs() < 1e-15);
    }

    #[test]
    fn junction_switch_off() {
        let mut p = params(Coulomb::Finite(100.0));
        p.lead = Lead::Junction { phi_u: PI, phi_l: 0.0 };
        for v in CouplingVariant::ALL {
            assert_eq!(exchange_couplings(&p, v).unwrap().jsc, 0.0);
        }
    }

    #[test]
    fn resonances_name_the_factor() {
        let mut p = params(Coulomb::Finite(10.0));
        p.eps = [-15.0, -25.0, -20.0, -20.0];
        assert_eq!(
            exchange_couplings(&p, CouplingVariant::DoubleU).unwrap_err(),
            Error::ResonantDenominator { factor: "U^2 - (eps_1 - eps_2)^2" }
        );
        let mut p = params(Coulomb::Finite(20.0));
        p.eps = [-10.0; 4];
        assert_eq!(
            exchange_couplings(&p, CouplingVariant::SingleU).unwrap_err(),
            Error::ResonantDenominator { factor: "U + eps_2 + eps_3" }
        );
    }

    #[test]
    fn variants_at_large_coulomb() {
        // the double-U form tends to half the single-U form as U grows
        let mut previous = f64::INFINITY;
        for u in [1e3, 1e4, 1e5, 1e6] {
            let p = params(Coulomb::Finite(u));
            let a = exchange_couplings(&p, CouplingVariant::DoubleU).unwrap().jsc;
            let b = exchange_couplings(&p, CouplingVariant::SingleU).unwrap().jsc;
            let inf = exchange_couplings(&p, CouplingVariant::InfiniteU).unwrap().jsc;
            let gap = (a / b - 0.5).abs();
            assert!(gap < previous);
            previous = gap;
            assert!((b - inf).abs() / inf.abs() < 100.0 / u);
        }
        let limit = exchange_couplings(&params(Coulomb::Infinite), CouplingVariant::DoubleU).unwrap().jsc;
        assert!((limit - 0.2).abs() < 1e-15);
    }

    #[test]
    fn pairing_from_tunneling() {
        let (t, rho) = (3.0, 0.01);
        let wide = gamma_ca_from_tunneling(t, rho, 1.0, 1e6, None).unwrap();
        assert!((wide / (PI * t * t * rho) - 1.0).abs() < 1e-5);
        let narrow = gamma_ca_from_tunneling(t, rho, 2.0, 2.0, None).unwrap();
        assert!((narrow - 0.5 * PI * t * t * rho).abs() < 1e-15);
        let damped = gamma_ca_from_tunneling(t, rho, 2.0, 2.0, Some(0.5)).unwrap();
        assert!((damped / narrow - (-1.0f64).exp()).abs() < 1e-15);
        assert!(gamma_ca_from_tunneling(t, rho, 0.0, 2.0, None).is_err());
    }
}
