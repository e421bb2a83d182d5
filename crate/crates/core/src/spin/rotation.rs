use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::linalg::{pauli, ComplexOperator};
use crate::{Error, Result};

const AXIS_TOL: f64 = 1e-12;

pub type Matrix3 = [[f64; 3]; 3];

/// Axis-angle rotation. The axis is a unit vector; the angle is kept as
/// given (not reduced modulo 2π) so that the SU(2) sign is preserved.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawRotation", into = "RawRotation")]
pub struct Rotation3 {
    axis: [f64; 3],
    angle: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRotation {
    axis: [f64; 3],
    angle: f64,
}

impl TryFrom<RawRotation> for Rotation3 {
    type Error = Error;

    fn try_from(raw: RawRotation) -> Result<Self> {
        Rotation3::new(raw.axis, raw.angle)
    }
}

impl From<Rotation3> for RawRotation {
    fn from(r: Rotation3) -> Self {
        RawRotation { axis: r.axis, angle: r.angle }
    }
}

impl Rotation3 {
    pub fn new(axis: [f64; 3], angle: f64) -> Result<Self> {
        let norm = norm3(axis);
        if (norm - 1.0).abs() > AXIS_TOL || !norm.is_finite() {
            return Err(Error::NonUnitAxis { norm });
        }
        if !angle.is_finite() {
            return Err(Error::InvalidParameter(format!("rotation angle {angle} is not finite")));
        }
        Ok(Self { axis, angle })
    }

    /// Like [`Rotation3::new`] but rescales any nonzero axis to unit length.
    pub fn normalized(axis: [f64; 3], angle: f64) -> Result<Self> {
        let norm = norm3(axis);
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NonUnitAxis { norm });
        }
        Self::new(axis.map(|x| x / norm), angle)
    }

    pub fn identity() -> Self {
        Self { axis: [0.0, 0.0, 1.0], angle: 0.0 }
    }

    /// Rotation by `angle` about an axis in the xz-plane at polar angle
    /// `theta` from ẑ.
    pub fn in_xz_plane(theta: f64, angle: f64) -> Self {
        Self { axis: [theta.sin(), 0.0, theta.cos()], angle }
    }

    pub fn axis(&self) -> [f64; 3] {
        self.axis
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }

    /// Polar angle of the axis, `acos(n_z)`.
    pub fn theta(&self) -> f64 {
        self.axis[2].clamp(-1.0, 1.0).acos()
    }

    /// Angle reduced to `[0, 2π)`.
    pub fn canonical_angle(&self) -> f64 {
        self.angle.rem_euclid(2.0 * PI)
    }

    pub fn inverse(&self) -> Self {
        Self { axis: self.axis, angle: -self.angle }
    }

    /// The rotation whose matrix is `R(self)·R(other)`.
    pub fn compose(&self, other: &Self) -> Self {
        let q = quat_mul(self.quaternion(), other.quaternion());
        Self::from_quaternion(q)
    }

    /// The smallest rotation taking ẑ onto the direction of `v`. Antiparallel
    /// vectors use a rotation by π about x̂.
    pub fn aligning_z_to(v: [f64; 3]) -> Result<Self> {
        let norm = norm3(v);
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NonUnitAxis { norm });
        }
        let u = v.map(|x| x / norm);
        let cross = [-u[1], u[0], 0.0];
        let s = norm3(cross);
        if s < 1e-15 {
            return Ok(if u[2] > 0.0 {
                Self::identity()
            } else {
                Self { axis: [1.0, 0.0, 0.0], angle: PI }
            });
        }
        let angle = s.atan2(u[2]);
        Ok(Self { axis: cross.map(|x| x / s), angle })
    }

    fn quaternion(&self) -> [f64; 4] {
        let (s, c) = (0.5 * self.angle).sin_cos();
        [c, s * self.axis[0], s * self.axis[1], s * self.axis[2]]
    }

    fn from_quaternion(q: [f64; 4]) -> Self {
        let v = [q[1], q[2], q[3]];
        let s = norm3(v);
        if s < 1e-300 {
            return Self::identity();
        }
        Self { axis: v.map(|x| x / s), angle: 2.0 * s.atan2(q[0]) }
    }
}

fn quat_mul(a: [f64; 4], b: [f64; 4]) -> [f64; 4] {
    [
        a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
        a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
        a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
        a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
    ]
}

pub(crate) fn norm3(v: [f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

/// `U = exp(iΦ n·σ/2) = cos(Φ/2) I + i sin(Φ/2) n·σ`.
pub fn spin_flip_unitary(r: &Rotation3) -> ComplexOperator {
    let (s, c) = (0.5 * r.angle).sin_cos();
    let [x, y, z] = pauli::vector();
    let n = r.axis;
    let ns = &(&x.scale_real(n[0]) + &y.scale_real(n[1])) + &z.scale_real(n[2]);
    &ComplexOperator::identity(2).scale_real(c) + &ns.scale(Complex64::new(0.0, s))
}

/// Rodrigues matrix `cos Φ I + (1 − cos Φ) n nᵀ + sin Φ [n]×`, satisfying
/// `U† σ U = R⁻¹ σ` for `U = spin_flip_unitary(r)`.
pub fn rotation_matrix(r: &Rotation3) -> Matrix3 {
    let (s, c) = r.angle.sin_cos();
    let n = r.axis;
    let cross = [[0.0, -n[2], n[1]], [n[2], 0.0, -n[0]], [-n[1], n[0], 0.0]];
    let mut m = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let delta = if i == j { 1.0 } else { 0.0 };
            m[i][j] = c * delta + (1.0 - c) * n[i] * n[j] + s * cross[i][j];
        }
    }
    m
}

pub fn mat3_mul(a: &Matrix3, b: &Matrix3) -> Matrix3 {
    let mut m = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    m
}

pub fn mat3_transpose(a: &Matrix3) -> Matrix3 {
    let mut m = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            m[i][j] = a[j][i];
        }
    }
    m
}

pub fn mat3_apply(a: &Matrix3, v: [f64; 3]) -> [f64; 3] {
    [0, 1, 2].map(|i| (0..3).map(|k| a[i][k] * v[k]).sum())
}
