use std::path::{Path, PathBuf};

use serde::Deserialize;
use stc_core::dynamics::{DeviceAxis, LeakageMode, SweepAxis};
use stc_core::hubbard::{HubbardParams, SwVerifyConfig};
use stc_core::spin::UniformDevice;

use crate::error::CliError;

pub const MAX_AXES: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// Parameters that can be swept.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AxisName {
    /// Bare rotation angle fed to the anisotropy functions.
    RotationAngle,
    Theta,
    PhiSo,
    DeltaH,
    HBar,
    JosephsonPhase,
    TimeNs,
}

impl AxisName {
    pub fn as_str(&self) -> &'static str {
        match self {
            AxisName::RotationAngle => "rotation_angle",
            AxisName::Theta => "theta",
            AxisName::PhiSo => "phi_so",
            AxisName::DeltaH => "delta_h",
            AxisName::HBar => "h_bar",
            AxisName::JosephsonPhase => "josephson_phase",
            AxisName::TimeNs => "time_ns",
        }
    }

    pub fn device_axis(&self) -> Option<DeviceAxis> {
        match self {
            AxisName::Theta => Some(DeviceAxis::Theta),
            AxisName::PhiSo => Some(DeviceAxis::PhiSo),
            AxisName::DeltaH => Some(DeviceAxis::DeltaH),
            AxisName::HBar => Some(DeviceAxis::HBar),
            AxisName::JosephsonPhase => Some(DeviceAxis::JosephsonPhase),
            AxisName::RotationAngle | AxisName::TimeNs => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AxisSpec {
    pub name: AxisName,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl AxisSpec {
    pub fn values(&self) -> Vec<f64> {
        stc_core::dynamics::linspace(self.start, self.stop, self.count)
    }

    pub fn device_sweep(&self) -> Option<SweepAxis> {
        self.name
            .device_axis()
            .map(|axis| SweepAxis { axis, start: self.start, stop: self.stop, count: self.count })
    }
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    pub path: Option<PathBuf>,
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Copy, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LeakageSpec {
    #[serde(default)]
    pub mode: LeakageMode,
}

/// Contents of the `--config` file. Energies in μeV, times in ns, angles in
/// radians.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub spin: Option<UniformDevice>,
    pub hubbard: Option<HubbardParams>,
    #[serde(default)]
    pub sweep: Vec<AxisSpec>,
    #[serde(default)]
    pub output: OutputSpec,
    pub workers: Option<usize>,
    #[serde(default)]
    pub leakage: LeakageSpec,
    #[serde(default)]
    pub sw_verify: SwVerifyConfig,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let config: RunConfig =
            serde_json::from_str(text).map_err(|e| CliError::Config(format!("invalid config: {e}")))?;
        config.validate()?;
        Ok(config)
    }

    fn validate(&self) -> Result<(), CliError> {
        if self.sweep.len() > MAX_AXES {
            return Err(CliError::Config(format!("at most {MAX_AXES} sweep axes are allowed")));
        }
        for (i, a) in self.sweep.iter().enumerate() {
            if a.count == 0 {
                return Err(CliError::Config(format!("axis {} needs at least one point", a.name.as_str())));
            }
            if !(a.start.is_finite() && a.stop.is_finite()) {
                return Err(CliError::Config(format!("axis {} has a non-finite bound", a.name.as_str())));
            }
            if self.sweep[..i].iter().any(|b| b.name == a.name) {
                return Err(CliError::Config(format!("axis {} appears twice", a.name.as_str())));
            }
        }
        if self.workers == Some(0) {
            return Err(CliError::Config("workers must be a positive integer".into()));
        }
        Ok(())
    }

    pub fn spin(&self) -> Result<&UniformDevice, CliError> {
        self.spin.as_ref().ok_or_else(|| CliError::Config("missing `spin` section".into()))
    }

    pub fn hubbard(&self) -> Result<&HubbardParams, CliError> {
        self.hubbard.as_ref().ok_or_else(|| CliError::Config("missing `hubbard` section".into()))
    }

    pub fn axis(&self, name: AxisName) -> Option<&AxisSpec> {
        self.sweep.iter().find(|a| a.name == name)
    }

    pub fn require_axis(&self, name: AxisName) -> Result<&AxisSpec, CliError> {
        self.axis(name)
            .ok_or_else(|| CliError::Config(format!("this command needs a `{}` sweep axis", name.as_str())))
    }

    /// Rejects sweep axes the command does not use.
    pub fn only_axes(&self, allowed: &[AxisName]) -> Result<(), CliError> {
        match self.sweep.iter().find(|a| !allowed.contains(&a.name)) {
            Some(a) => Err(CliError::Config(format!(
                "axis `{}` is not used by this command",
                a.name.as_str()
            ))),
            None => Ok(()),
        }
    }
}
