use num_complex::Complex64;

/// Ising anisotropy `2 sin²θ sin²(Φ/2) − 1`, in `[−1, 1]`.
pub fn gamma_parallel(phi: f64, theta: f64) -> f64 {
    let s = theta.sin() * (0.5 * phi).sin();
    2.0 * s * s - 1.0
}

/// Leakage amplitude `[cos(Φ/2) + i cosθ sin(Φ/2)]²`.
pub fn gamma_perp(phi: f64, theta: f64) -> Complex64 {
    let (s, c) = (0.5 * phi).sin_cos();
    let z = Complex64::new(c, theta.cos() * s);
    z * z
}

/// Phase-tunable cross coupling `4·jsc·cos²(φ/2)`, written as
/// `2·jsc·(1 + cos φ)` so that it vanishes exactly at `φ = π`.
pub fn j_of_phi(jsc: f64, phi: f64) -> f64 {
    2.0 * jsc * (1.0 + phi.cos())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    #[test]
    fn parallel_values() {
        assert!((gamma_parallel(PI, PI / 2.0) - 1.0).abs() < 1e-15);
        assert_eq!(gamma_parallel(0.0, 0.7), -1.0);
        assert!((gamma_parallel(PI, 0.0) + 1.0).abs() < 1e-15);
    }

    #[test]
    fn perp_values() {
        assert!(gamma_perp(PI, PI / 2.0).norm() < 1e-30);
        assert_eq!(gamma_perp(0.0, 1.3), Complex64::new(1.0, 0.0));
        assert!((gamma_perp(PI, 0.0) + 1.0).norm() < 1e-15);
    }

    #[test]
    fn phase_dependence() {
        assert_eq!(j_of_phi(0.4, 0.0), 1.6);
        assert_eq!(j_of_phi(0.4, PI), 0.0);
        assert!((j_of_phi(0.4, PI / 2.0) - 0.8).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn perp_modulus_identity(phi in -10.0..10.0f64, theta in -4.0..4.0f64) {
            let gp = gamma_perp(phi, theta);
            let gl = gamma_parallel(phi, theta);
            prop_assert!((gp.norm() - 0.5 * (1.0 - gl)).abs() < 1e-14);
            prop_assert!(gp.norm() <= 1.0 + 1e-15);
            prop_assert!((-1.0..=1.0 + 1e-15).contains(&gl));
        }

        #[test]
        fn phase_dependence_is_periodic(phi in -10.0..10.0f64) {
            let a = j_of_phi(1.0, phi);
            prop_assert!((a - j_of_phi(1.0, phi + 2.0 * PI)).abs() < 1e-12);
            prop_assert!((0.0..=4.0).contains(&a));
        }
    }
}
