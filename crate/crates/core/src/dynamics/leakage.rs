use serde::{Deserialize, Serialize};

use crate::effective::COMPUTATIONAL;
use crate::linalg::{ComplexOperator, Propagator};
use crate::spin::{build_h_spin, SpinParams};
use crate::{Error, Result};

/// Which initial states the leakage is computed for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LeakageMode {
    /// Mean over the four computational basis states.
    #[default]
    Average,
    /// A single computational state, `0..4` in the order |00⟩, |01⟩, |10⟩, |11⟩.
    Single(usize),
}

impl LeakageMode {
    pub fn validate(&self) -> Result<()> {
        match *self {
            LeakageMode::Single(k) if k >= 4 => {
                Err(Error::InvalidParameter(format!("computational state index {k} is out of range 0..4")))
            }
            _ => Ok(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LeakageTrace {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
    pub mode: LeakageMode,
}

/// Leakage from the computational block `⟨c|U|c′⟩` of a propagator.
pub fn block_leakage(block: &ComplexOperator, mode: LeakageMode) -> f64 {
    let column_weight = |c: usize| -> f64 { (0..4).map(|r| block[(r, c)].norm_sqr()).sum() };
    let value = match mode {
        LeakageMode::Average => 1.0 - (0..4).map(column_weight).sum::<f64>() / 4.0,
        LeakageMode::Single(c) => 1.0 - column_weight(c),
    };
    value.clamp(0.0, 1.0)
}

/// Average leakage computed as `1 − ‖PUP‖²_F / 4`.
pub fn frobenius_leakage(block: &ComplexOperator) -> f64 {
    1.0 - block.frobenius_norm().powi(2) / 4.0
}

pub fn validate_times(times: &[f64]) -> Result<()> {
    if times.iter().any(|t| !t.is_finite() || *t < 0.0) {
        return Err(Error::InvalidParameter("times must be finite and non-negative".into()));
    }
    if times.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::InvalidParameter("times must be ascending".into()));
    }
    Ok(())
}

/// Leakage out of the computational subspace under the full four-spin
/// evolution, at each time (ns).
pub fn leakage_trace(p: &SpinParams, times: &[f64], mode: LeakageMode) -> Result<LeakageTrace> {
    validate_times(times)?;
    mode.validate()?;
    let propagator = Propagator::new(&build_h_spin(p))?;
    let values = times
        .iter()
        .map(|&t| block_leakage(&propagator.block_at(t, &COMPUTATIONAL), mode))
        .collect();
    Ok(LeakageTrace { times: times.to_vec(), values, mode })
}
