//! Comparison of the lattice model's effective spin Hamiltonian with the
//! analytic four-spin model across tunneling scales.

use serde::{Deserialize, Serialize};

use super::couplings::{exchange_couplings, to_spin_params, CouplingVariant};
use super::model::{build_h_dot, Coulomb, HubbardParams};
use super::sw::{exact_effective, schrieffer_wolff2, split_diagonal};
use crate::linalg::ComplexOperator;
use crate::spin::{bond_coupling, build_h_spin, CROSS_BOND};
use crate::{Error, Result};

/// How the lattice model is reduced to the single-occupation sector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Reduction {
    SecondOrder,
    Exact,
}

/// 16×16 effective Hamiltonian on the single-occupation states, in spin
/// index order.
pub fn spin_sector_hamiltonian(p: &HubbardParams, reduction: Reduction) -> Result<ComplexOperator> {
    let (basis, h) = build_h_dot(p)?;
    let sector = basis.spin_sector();
    match reduction {
        Reduction::SecondOrder => {
            let (d, off) = split_diagonal(&h);
            schrieffer_wolff2(&d, &off, &sector)
        }
        Reduction::Exact => exact_effective(&h, &sector),
    }
}

/// Cross coupling read off the reduced lattice model.
pub fn numerical_cross_coupling(p: &HubbardParams, reduction: Reduction) -> Result<f64> {
    let h = spin_sector_hamiltonian(p, reduction)?;
    Ok(bond_coupling(&h, CROSS_BOND, &p.rot_ca))
}

/// `max |traceless(a) − traceless(b)|`.
pub fn traceless_mismatch(a: &ComplexOperator, b: &ComplexOperator) -> f64 {
    (&a.traceless() - &b.traceless()).max_abs()
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SwVerifyConfig {
    /// Factors applied to the base tunnelings and pairing amplitude.
    #[serde(default = "default_scales")]
    pub scales: Vec<f64>,
    /// Coulomb energy, in units of the mean `|ε|`, for the variant
    /// comparison.
    #[serde(default = "default_arbitration_ratio")]
    pub arbitration_ratio: f64,
}

fn default_scales() -> Vec<f64> {
    vec![1.0, 0.5, 0.25]
}

fn default_arbitration_ratio() -> f64 {
    5.0
}

impl Default for SwVerifyConfig {
    fn default() -> Self {
        Self { scales: default_scales(), arbitration_ratio: default_arbitration_ratio() }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SwRow {
    pub scale: f64,
    pub t1: f64,
    pub t2: f64,
    pub gamma_ca: f64,
    /// Largest analytic coupling magnitude.
    pub coupling_max: f64,
    /// Second-order reduction against the analytic model.
    pub second_order_mismatch: f64,
    /// Exact reduction against the analytic model.
    pub exact_mismatch: f64,
    /// `exact_mismatch / coupling_max`.
    pub exact_relative: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct VariantArbitration {
    pub coulomb: f64,
    pub double_u_mismatch: f64,
    pub single_u_mismatch: f64,
    pub winner: CouplingVariant,
}

#[derive(Debug, Clone, Serialize)]
pub struct InfiniteCoulombCheck {
    pub numerical_jsc: f64,
    pub double_u_limit: f64,
    pub infinite_u_closed_form: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SwReport {
    pub rows: Vec<SwRow>,
    /// Slope of `log(exact_mismatch)` against `log(scale)`.
    pub fitted_order: Option<f64>,
    pub arbitration: VariantArbitration,
    pub infinite_coulomb: InfiniteCoulombCheck,
}

/// Least-squares slope of `log y` against `log x` over positive pairs.
pub fn fit_log_slope(points: &[(f64, f64)]) -> Option<f64> {
    let logs: Vec<(f64, f64)> = points
        .iter()
        .filter(|(x, y)| *x > 0.0 && *y > 0.0)
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    if logs.len() < 2 {
        return None;
    }
    let n = logs.len() as f64;
    let mx = logs.iter().map(|p| p.0).sum::<f64>() / n;
    let my = logs.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = logs.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = logs.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    Some(sxy / sxx)
}

pub fn sw_row(base: &HubbardParams, scale: f64) -> Result<SwRow> {
    let p = base.scaled(scale);
    let analytic_params = to_spin_params(&p, CouplingVariant::DoubleU)?;
    let analytic = build_h_spin(&analytic_params);
    let coupling_max = exchange_couplings(&p, CouplingVariant::DoubleU)?.max_abs();
    let second = spin_sector_hamiltonian(&p, Reduction::SecondOrder)?;
    let exact = spin_sector_hamiltonian(&p, Reduction::Exact)?;
    let exact_mismatch = traceless_mismatch(&exact, &analytic);
    Ok(SwRow {
        scale,
        t1: p.t1,
        t2: p.t2,
        gamma_ca: p.gamma_ca,
        coupling_max,
        second_order_mismatch: traceless_mismatch(&second, &analytic),
        exact_mismatch,
        exact_relative: if coupling_max > 0.0 { exact_mismatch / coupling_max } else { exact_mismatch },
    })
}

/// Runs the scale refinement, the variant comparison at finite `U` and the
/// infinite-`U` check. `base` must have finite Coulomb energy.
pub fn sw_verify(base: &HubbardParams, config: &SwVerifyConfig) -> Result<SwReport> {
    if base.coulomb.finite().is_none() {
        return Err(Error::InvalidParameter("sw-verify needs a finite Coulomb energy".into()));
    }
    if config.scales.is_empty() || config.scales.iter().any(|s| !(s.is_finite() && *s >= 0.0)) {
        return Err(Error::InvalidParameter("scales must be finite and non-negative".into()));
    }
    let rows = config
        .scales
        .iter()
        .map(|&s| sw_row(base, s))
        .collect::<Result<Vec<_>>>()?;
    let fitted_order =
        fit_log_slope(&rows.iter().map(|r| (r.scale, r.exact_mismatch)).collect::<Vec<_>>());

    let smallest = config.scales.iter().copied().filter(|s| *s > 0.0).fold(f64::INFINITY, f64::min);
    let smallest = if smallest.is_finite() { smallest } else { 1.0 };
    let mean_eps = base.eps.iter().map(|e| e.abs()).sum::<f64>() / 4.0;
    let u = config.arbitration_ratio * mean_eps;
    let arb_params = HubbardParams { coulomb: Coulomb::Finite(u), u_pair: None, ..base.scaled(smallest) };
    let reduced = spin_sector_hamiltonian(&arb_params, Reduction::SecondOrder)?;
    let mismatch = |v| -> Result<f64> {
        Ok(traceless_mismatch(&reduced, &build_h_spin(&to_spin_params(&arb_params, v)?)))
    };
    let double_u_mismatch = mismatch(CouplingVariant::DoubleU)?;
    let single_u_mismatch = mismatch(CouplingVariant::SingleU)?;
    let winner = if double_u_mismatch <= single_u_mismatch {
        CouplingVariant::DoubleU
    } else {
        CouplingVariant::SingleU
    };

    let inf = HubbardParams { coulomb: Coulomb::Infinite, u_pair: None, ..*base };
    let infinite_coulomb = InfiniteCoulombCheck {
        numerical_jsc: numerical_cross_coupling(&inf, Reduction::SecondOrder)?,
        double_u_limit: exchange_couplings(&inf, CouplingVariant::DoubleU)?.jsc,
        infinite_u_closed_form: exchange_couplings(&inf, CouplingVariant::InfiniteU)?.jsc,
    };

    Ok(SwReport {
        rows,
        fitted_order,
        arbitration: VariantArbitration { coulomb: u, double_u_mismatch, single_u_mismatch, winner },
        infinite_coulomb,
    })
}
