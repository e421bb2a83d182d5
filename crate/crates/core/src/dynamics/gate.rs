use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::leakage::{block_leakage, LeakageMode};
use crate::constants::{HBAR, MIN_COUPLING};
use crate::effective::{gamma_parallel, COMPUTATIONAL};
use crate::linalg::{ComplexOperator, Propagator};
use crate::spin::{build_h_spin, SpinParams};
use crate::{Error, Result};

/// Grid resolution per angle of the coarse local-phase search.
const PHASE_GRID: usize = 64;
const NEWTON_STEPS: usize = 60;
const GRADIENT_TOL: f64 = 1e-12;
/// Samples of the leakage over the gate window.
pub const LEAKAGE_SAMPLES: usize = 256;

/// `τz` eigenvalues of the two qubits on |00⟩, |01⟩, |10⟩, |11⟩.
const QUBIT1_SIGN: [f64; 4] = [1.0, 1.0, -1.0, -1.0];
const QUBIT2_SIGN: [f64; 4] = [1.0, -1.0, 1.0, -1.0];

/// `πħ / |j|` in ns.
pub fn gate_time(j_eff: f64) -> Result<f64> {
    if !(j_eff.abs() >= MIN_COUPLING) {
        return Err(Error::ZeroCoupling);
    }
    Ok(PI * HBAR / j_eff.abs())
}

/// Diagonal of the target `exp(−iπ τz¹τz²/4)`.
pub fn cz_target() -> [Complex64; 4] {
    [0, 1, 2, 3].map(|k| Complex64::from_polar(1.0, -0.25 * PI * QUBIT1_SIGN[k] * QUBIT2_SIGN[k]))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LocalPhaseOptimum {
    pub raw: f64,
    pub optimized: f64,
    pub alpha: f64,
    pub beta: f64,
}

/// `|¼ Σ_k a_k e^{i(s₁α + s₂β)/2}|²` and its gradient and Hessian.
struct PhaseObjective {
    a: [Complex64; 4],
}

impl PhaseObjective {
    fn sums(&self, alpha: f64, beta: f64) -> [Complex64; 6] {
        let mut out = [Complex64::new(0.0, 0.0); 6];
        for k in 0..4 {
            let (s1, s2) = (0.5 * QUBIT1_SIGN[k], 0.5 * QUBIT2_SIGN[k]);
            let z = self.a[k] * Complex64::from_polar(1.0, s1 * alpha + s2 * beta);
            let i = Complex64::new(0.0, 1.0);
            out[0] += z;
            out[1] += i * s1 * z;
            out[2] += i * s2 * z;
            out[3] += -s1 * s1 * z;
            out[4] += -s1 * s2 * z;
            out[5] += -s2 * s2 * z;
        }
        out
    }

    fn value(&self, alpha: f64, beta: f64) -> f64 {
        self.sums(alpha, beta)[0].norm_sqr() / 16.0
    }

    /// Value, gradient and Hessian.
    fn local(&self, alpha: f64, beta: f64) -> (f64, [f64; 2], [[f64; 2]; 2]) {
        let [s, sa, sb, saa, sab, sbb] = self.sums(alpha, beta);
        let re = |z: Complex64| 2.0 * z.re / 16.0;
        let grad = [re(s.conj() * sa), re(s.conj() * sb)];
        let hess = [
            [re(sa.conj() * sa + s.conj() * saa), re(sb.conj() * sa + s.conj() * sab)],
            [re(sa.conj() * sb + s.conj() * sab), re(sb.conj() * sb + s.conj() * sbb)],
        ];
        (s.norm_sqr() / 16.0, grad, hess)
    }
}

/// Fidelity `|¼ tr(U_cZ† U)|²` of a 4×4 computational block against the
/// cZ gate, raw and maximized over local z-rotations
/// `exp(iα τz¹/2) exp(iβ τz²/2)`.
pub fn fidelity_against_cz(block: &ComplexOperator) -> Result<LocalPhaseOptimum> {
    if block.dim() != 4 {
        return Err(Error::DimensionMismatch { expected: 4, found: block.dim() });
    }
    let target = cz_target();
    let obj = PhaseObjective { a: [0, 1, 2, 3].map(|k| target[k].conj() * block[(k, k)]) };
    let raw = obj.value(0.0, 0.0);

    let step = 2.0 * PI / PHASE_GRID as f64;
    let (mut best, mut alpha, mut beta) = (raw, 0.0, 0.0);
    for i in 0..PHASE_GRID {
        for j in 0..PHASE_GRID {
            let (a, b) = (i as f64 * step, j as f64 * step);
            let f = obj.value(a, b);
            if f > best {
                (best, alpha, beta) = (f, a, b);
            }
        }
    }

    for _ in 0..NEWTON_STEPS {
        let (f, g, h) = obj.local(alpha, beta);
        if g[0].hypot(g[1]) < GRADIENT_TOL {
            break;
        }
        let det = h[0][0] * h[1][1] - h[0][1] * h[1][0];
        let newton = if det > 0.0 && h[0][0] < 0.0 {
            Some([-(h[1][1] * g[0] - h[0][1] * g[1]) / det, -(h[0][0] * g[1] - h[1][0] * g[0]) / det])
        } else {
            None
        };
        let candidate = newton.map(|d| (alpha + d[0], beta + d[1])).filter(|&(a, b)| obj.value(a, b) >= f);
        let (a, b) = match candidate {
            Some(c) => c,
            None => {
                // fall back to a short ascent step
                let (a, b) = (alpha + 0.1 * g[0], beta + 0.1 * g[1]);
                if obj.value(a, b) <= f {
                    break;
                }
                (a, b)
            }
        };
        (alpha, beta) = (a, b);
        best = best.max(obj.value(alpha, beta));
    }
    let optimized = obj.value(alpha, beta).max(best).min(1.0);
    Ok(LocalPhaseOptimum {
        raw,
        optimized,
        alpha: alpha.rem_euclid(2.0 * PI),
        beta: beta.rem_euclid(2.0 * PI),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GateReport {
    /// ns.
    pub t_gate: f64,
    pub fidelity_raw: f64,
    pub fidelity_optimized: f64,
    pub infidelity: f64,
    /// Largest average leakage sampled over `[0, t_gate]`.
    pub leakage_max: f64,
    pub leakage_final: f64,
}

/// Ising coupling `jsc·γ∥` that sets the gate time.
pub fn ising_coupling(p: &SpinParams) -> f64 {
    p.jsc * gamma_parallel(p.rotsc.angle(), p.rotsc.theta())
}

/// Evolves the full four-spin model for one gate time and compares the
/// computational block with cZ.
pub fn cz_fidelity(p: &SpinParams) -> Result<GateReport> {
    p.ensure_aligned()?;
    let t_gate = gate_time(ising_coupling(p))?;
    let propagator = Propagator::new(&build_h_spin(p))?;
    let block = propagator.block_at(t_gate, &COMPUTATIONAL);
    let fid = fidelity_against_cz(&block)?;
    let leakage_final = block_leakage(&block, LeakageMode::Average);
    let leakage_max = (0..LEAKAGE_SAMPLES)
        .map(|k| {
            let t = t_gate * k as f64 / (LEAKAGE_SAMPLES - 1) as f64;
            block_leakage(&propagator.block_at(t, &COMPUTATIONAL), LeakageMode::Average)
        })
        .fold(leakage_final, f64::max);
    Ok(GateReport {
        t_gate,
        fidelity_raw: fid.raw,
        fidelity_optimized: fid.optimized,
        infidelity: 1.0 - fid.optimized,
        leakage_max,
        leakage_final,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::effective::build_h_st;
    use crate::linalg::evolve;
    use crate::spin::{Rotation3, UniformDevice};
    use proptest::prelude::*;

    #[test]
    fn gate_times() {
        assert!((gate_time(0.4).unwrap() - 5.1696).abs() < 1e-3);
        assert!((gate_time(0.2).unwrap() - 2.0 * gate_time(0.4).unwrap()).abs() < 1e-12);
        assert_eq!(gate_time(0.0), Err(Error::ZeroCoupling));
        assert_eq!(gate_time(1e-16), Err(Error::ZeroCoupling));
    }

    #[test]
    fn ideal_ising_evolution_is_cz() {
        let p = SpinParams {
            h: [[0.0, 0.0, 20.0]; 4],
            j1: 0.0,
            j2: 0.0,
            jsc: 0.4,
            rot1: Rotation3::identity(),
            rotsc: Rotation3::in_xz_plane(PI / 2.0, PI),
            rot2: Rotation3::identity(),
        };
        let (h, st) = build_h_st(&p).unwrap();
        let u = evolve(&h, gate_time(st.jzz).unwrap()).unwrap();
        let f = fidelity_against_cz(&u).unwrap();
        assert!((f.optimized - 1.0).abs() < 1e-12);
        assert!(f.optimized >= f.raw - 1e-12);
    }

    #[test]
    fn local_phases_alone_reach_one_half() {
        // pure local z fields and no entangling term
        let phases: Vec<Complex64> = (0..4)
            .map(|k| Complex64::from_polar(1.0, 0.3 + 0.5 * QUBIT1_SIGN[k] - 1.2 * QUBIT2_SIGN[k]))
            .collect();
        let u = ComplexOperator::from_diagonal(&phases);
        let f = fidelity_against_cz(&u).unwrap();
        assert!((f.optimized - 0.5).abs() < 1e-12, "{}", f.optimized);
    }

    #[test]
    fn sweet_spot_gate() {
        let d = UniformDevice {
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
        };
        let r = cz_fidelity(&d.spin_params()).unwrap();
        assert!(r.infidelity < 1e-4, "{}", r.infidelity);
        assert!(r.fidelity_optimized >= r.fidelity_raw - 1e-12);
        assert!((0.0..=1.0).contains(&r.leakage_max) && r.leakage_max >= r.leakage_final);
    }

    #[test]
    fn vanishing_ising_term_is_an_error() {
        let d = UniformDevice {
            h_bar: 20.0,
            delta_h: 2.0,
            delta_h1: 1.0,
            delta_h2: 1.0,
            j1: 0.0,
            j2: 0.0,
            jsc: 0.0,
            phi_so: PI / 2.0,
            theta: PI / 2.0,
            josephson_phase: None,
        };
        assert_eq!(cz_fidelity(&d.spin_params()), Err(Error::ZeroCoupling));
    }

    proptest! {
        #[test]
        fn optimum_never_below_raw(phases in prop::array::uniform4(-PI..PI), mags in prop::array::uniform4(0.0..1.0f64)) {
            let diag: Vec<Complex64> = (0..4).map(|k| Complex64::from_polar(mags[k], phases[k])).collect();
            let f = fidelity_against_cz(&ComplexOperator::from_diagonal(&diag)).unwrap();
            prop_assert!(f.optimized >= f.raw - 1e-12);
            prop_assert!(f.optimized <= 1.0);
        }
    }
}
