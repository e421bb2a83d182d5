use serde::{Deserialize, Serialize};

use super::hamiltonian::SpinParams;
use super::rotation::Rotation3;
use crate::effective::j_of_phi;
use crate::{Error, Result};

/// A chain in which every tunneling rotates the spin by the same angle about
/// a shared axis in the xz-plane, with Zeeman fields along ẑ.
///
/// Inner bonds rotate by `phi_so`, the bond through the superconductor by
/// `2·phi_so`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UniformDevice {
    /// Mean Zeeman splitting.
    pub h_bar: f64,
    /// `h₂ − h₃`.
    pub delta_h: f64,
    /// `h₁ − h₂`.
    pub delta_h1: f64,
    /// `h₃ − h₄`.
    pub delta_h2: f64,
    #[serde(default)]
    pub j1: f64,
    #[serde(default)]
    pub j2: f64,
    /// Superconductor-mediated exchange at zero Josephson phase (or for a
    /// single superconductor).
    pub jsc: f64,
    pub phi_so: f64,
    /// Polar angle of the rotation axis from ẑ.
    pub theta: f64,
    /// When set, the cross coupling becomes `4·jsc·cos²(φ/2)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub josephson_phase: Option<f64>,
}

impl UniformDevice {
    /// Zeeman profile with mean `h_bar` and the three successive differences.
    pub fn zeeman(&self) -> [f64; 4] {
        let h1 = self.h_bar + (3.0 * self.delta_h1 + 2.0 * self.delta_h + self.delta_h2) / 4.0;
        let h2 = h1 - self.delta_h1;
        let h3 = h2 - self.delta_h;
        let h4 = h3 - self.delta_h2;
        [h1, h2, h3, h4]
    }

    pub fn cross_coupling(&self) -> f64 {
        match self.josephson_phase {
            Some(phi) => j_of_phi(self.jsc, phi),
            None => self.jsc,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let values = [
            self.h_bar,
            self.delta_h,
            self.delta_h1,
            self.delta_h2,
            self.j1,
            self.j2,
            self.jsc,
            self.phi_so,
            self.theta,
            self.josephson_phase.unwrap_or(0.0),
        ];
        if values.iter().all(|x| x.is_finite()) {
            Ok(())
        } else {
            Err(Error::InvalidParameter("device parameters must be finite".into()))
        }
    }

    pub fn spin_params(&self) -> SpinParams {
        let inner = Rotation3::in_xz_plane(self.theta, self.phi_so);
        SpinParams {
            h: self.zeeman().map(|x| [0.0, 0.0, x]),
            j1: self.j1,
            j2: self.j2,
            jsc: self.cross_coupling(),
            rot1: inner,
            rotsc: Rotation3::in_xz_plane(self.theta, 2.0 * self.phi_so),
            rot2: inner,
        }
    }

    /// Sets `delta_h`, rescaling `delta_h1` and `delta_h2` by the same factor
    /// so their ratios to `delta_h` are kept.
    pub fn with_delta_h(&self, delta_h: f64) -> Self {
        let mut d = *self;
        if self.delta_h != 0.0 {
            let ratio = delta_h / self.delta_h;
            d.delta_h1 *= ratio;
            d.delta_h2 *= ratio;
        }
        d.delta_h = delta_h;
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn device() -> UniformDevice {
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
    fn zeeman_profile() {
        let d = device();
        let h = d.zeeman();
        assert_eq!(h, [22.0, 21.0, 19.0, 18.0]);
        let p = d.spin_params();
        assert!((p.h_bar() - 20.0).abs() < 1e-14);
        assert_eq!(p.zeeman_differences(), (1.0, 2.0, 1.0));
    }

    #[test]
    fn cross_bond_doubles_angle() {
        let p = device().spin_params();
        assert!((p.rotsc.angle() - PI).abs() < 1e-15);
        assert!((p.rot1.theta() - PI / 2.0).abs() < 1e-15);
    }

    #[test]
    fn josephson_phase_scales_coupling() {
        let d = UniformDevice { josephson_phase: Some(0.0), ..device() };
        assert!((d.cross_coupling() - 1.6).abs() < 1e-15);
        let d = UniformDevice { josephson_phase: Some(PI), ..device() };
        assert_eq!(d.cross_coupling(), 0.0);
    }

    #[test]
    fn delta_h_keeps_ratios() {
        let d = device().with_delta_h(4.0);
        assert_eq!((d.delta_h, d.delta_h1, d.delta_h2), (4.0, 2.0, 2.0));
    }
}
