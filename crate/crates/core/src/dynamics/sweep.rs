use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::gate::{cz_fidelity, GateReport};
use crate::spin::UniformDevice;
use crate::{Error, Result};

/// Device parameter varied in a fidelity map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DeviceAxis {
    PhiSo,
    Theta,
    DeltaH,
    HBar,
    JosephsonPhase,
}

impl DeviceAxis {
    pub fn name(&self) -> &'static str {
        match self {
            DeviceAxis::PhiSo => "phi_so",
            DeviceAxis::Theta => "theta",
            DeviceAxis::DeltaH => "delta_h",
            DeviceAxis::HBar => "h_bar",
            DeviceAxis::JosephsonPhase => "josephson_phase",
        }
    }

    pub fn apply(&self, device: &UniformDevice, value: f64) -> UniformDevice {
        let mut d = *device;
        match self {
            DeviceAxis::PhiSo => d.phi_so = value,
            DeviceAxis::Theta => d.theta = value,
            DeviceAxis::DeltaH => d = d.with_delta_h(value),
            DeviceAxis::HBar => d.h_bar = value,
            DeviceAxis::JosephsonPhase => d.josephson_phase = Some(value),
        }
        d
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepAxis {
    pub axis: DeviceAxis,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl SweepAxis {
    /// Evenly spaced values including both ends.
    pub fn values(&self) -> Vec<f64> {
        linspace(self.start, self.stop, self.count)
    }

    pub fn validate(&self) -> Result<()> {
        if self.count == 0 {
            return Err(Error::InvalidParameter(format!("axis {} has zero points", self.axis.name())));
        }
        if !(self.start.is_finite() && self.stop.is_finite()) {
            return Err(Error::InvalidParameter(format!("axis {} has a non-finite bound", self.axis.name())));
        }
        Ok(())
    }
}

pub fn linspace(start: f64, stop: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![start],
        n => (0..n).map(|k| start + (stop - start) * k as f64 / (n - 1) as f64).collect(),
    }
}

/// Cartesian product of the axis values, first axis varying slowest.
pub fn grid_points(axes: &[SweepAxis]) -> Vec<Vec<f64>> {
    axes.iter().fold(vec![Vec::new()], |acc, axis| {
        let values = axis.values();
        acc.iter()
            .flat_map(|prefix| {
                values.iter().map(move |&v| {
                    let mut point = prefix.clone();
                    point.push(v);
                    point
                })
            })
            .collect()
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub coordinates: Vec<f64>,
    pub report: Result<GateReport>,
}

/// Gate report at every grid point, computed on `workers` threads (all
/// available cores when `None`). Rows come back in grid order; failures at
/// individual points are kept in the row.
pub fn fidelity_map(base: &UniformDevice, axes: &[SweepAxis], workers: Option<usize>) -> Result<Vec<SweepRow>> {
    base.validate()?;
    for axis in axes {
        axis.validate()?;
    }
    let points = grid_points(axes);
    let run = || {
        points
            .par_iter()
            .map(|coords| {
                let device = axes.iter().zip(coords).fold(*base, |d, (a, &v)| a.axis.apply(&d, v));
                let report = device.validate().and_then(|_| cz_fidelity(&device.spin_params()));
                SweepRow { coordinates: coords.clone(), report }
            })
            .collect()
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = workers {
        if n == 0 {
            return Err(Error::InvalidParameter("worker count must be positive".into()));
        }
        builder = builder.num_threads(n);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::InvalidParameter(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(run))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn base() -> UniformDevice {
        UniformDevice {
            h_bar: 20.0,
            delta_h: 2.0,
            delta_h1: 1.0,
            delta_h2: 1.0,
            j1: 0.0,
            j2: 0.0,
            jsc: 0.4,
            phi_so: PI / 2.0,
            theta: PI / 2.0,
            josephson_phase: None,
        }
    }

    #[test]
    fn linspace_is_inclusive() {
        assert_eq!(linspace(0.0, 1.0, 5), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        assert_eq!(linspace(2.0, 3.0, 1), vec![2.0]);
    }

    #[test]
    fn grid_order_is_row_major() {
        let axes = [
            SweepAxis { axis: DeviceAxis::PhiSo, start: 0.0, stop: 1.0, count: 2 },
            SweepAxis { axis: DeviceAxis::Theta, start: 0.0, stop: 2.0, count: 3 },
        ];
        let g = grid_points(&axes);
        assert_eq!(g.len(), 6);
        assert_eq!(g[1], vec![0.0, 1.0]);
        assert_eq!(g[3], vec![1.0, 0.0]);
        assert_eq!(grid_points(&[]), vec![Vec::<f64>::new()]);
    }

    #[test]
    fn result_independent_of_workers() {
        let axes = [SweepAxis { axis: DeviceAxis::PhiSo, start: 0.2, stop: 1.4, count: 5 }];
        let one = fidelity_map(&base(), &axes, Some(1)).unwrap();
        let four = fidelity_map(&base(), &axes, Some(4)).unwrap();
        assert_eq!(one, four);
    }

    #[test]
    fn point_failures_stay_in_their_row() {
        // at phi_so = pi/2 with theta = 0 the Ising term survives, at the
        // josephson phase pi the coupling vanishes
        let axes = [SweepAxis { axis: DeviceAxis::JosephsonPhase, start: 0.0, stop: PI, count: 2 }];
        let rows = fidelity_map(&base(), &axes, Some(2)).unwrap();
        assert!(rows[0].report.is_ok());
        assert_eq!(rows[1].report, Err(Error::ZeroCoupling));
    }

    #[test]
    fn rejects_empty_axis() {
        let axes = [SweepAxis { axis: DeviceAxis::Theta, start: 0.0, stop: 1.0, count: 0 }];
        assert!(fidelity_map(&base(), &axes, None).is_err());
    }
}
