use std::f64::consts::PI;

use stc_core::hubbard::{
    exchange_couplings, gamma_ca_from_tunneling, numerical_cross_coupling, sw_row, sw_verify,
    Coulomb, CouplingVariant, HubbardParams, Lead, Reduction, SwVerifyConfig,
};
use stc_core::spin::Rotation3;
use stc_core::Error;

fn base() -> HubbardParams {
    HubbardParams {
        eps: [-18.0, -22.0, -19.0, -21.0],
        coulomb: Coulomb::Finite(200.0),
        u_pair: None,
        t1: 0.2,
        t2: 0.2,
        gamma_ca: 0.2,
        lead: Lead::Single,
        rot1: Rotation3::normalized([0.0, 0.6, 0.8], 0.7).unwrap(),
        rot2: Rotation3::normalized([1.0, 0.0, 0.0], 1.1).unwrap(),
        rot_ca: Rotation3::normalized([0.2, 0.3, 0.9], 2.0).unwrap(),
        h: [[0.0; 3]; 4],
    }
}

#[test]
fn exact_reduction_converges_at_fourth_order() {
    let report = sw_verify(&base(), &SwVerifyConfig::default()).unwrap();
    let order = report.fitted_order.unwrap();
    assert!((order - 4.0).abs() < 0.3, "order {order}");
    for row in &report.rows {
        assert!(row.exact_relative < 1e-3, "{row:?}");
        assert!(row.second_order_mismatch < 1e-12 * row.coupling_max.max(1.0));
    }
    assert_eq!(report.arbitration.winner, CouplingVariant::DoubleU);
    assert!(report.arbitration.double_u_mismatch < 1e-3 * report.arbitration.single_u_mismatch);
}

#[test]
fn zero_tunneling_gives_zero_mismatch() {
    let row = sw_row(&base(), 0.0).unwrap();
    assert!(row.exact_mismatch < 1e-12);
    assert!(row.second_order_mismatch < 1e-12);
}

#[test]
fn infinite_coulomb_limit_is_half_the_closed_form() {
    let report = sw_verify(&base(), &SwVerifyConfig::default()).unwrap();
    let c = report.infinite_coulomb;
    assert!((c.numerical_jsc - c.double_u_limit).abs() < 1e-9 * c.double_u_limit.abs(), "{c:?}");
    assert!((c.infinite_u_closed_form - 2.0 * c.double_u_limit).abs() < 1e-15);
}

#[test]
fn josephson_phase_switches_the_lattice_coupling() {
    let at = |phi: f64| {
        let p = HubbardParams { lead: Lead::Junction { phi_u: phi, phi_l: 0.0 }, ..base() };
        numerical_cross_coupling(&p, Reduction::Exact).unwrap()
    };
    let j0 = at(0.0);
    assert!(j0.abs() > 1e-4);
    for phi in [0.4, 1.0, PI / 2.0, 2.2, 2.9] {
        let ratio = at(phi) / j0;
        assert!((ratio - (0.5 * phi).cos().powi(2)).abs() < 1e-3, "phi {phi}: {ratio}");
    }
    assert!(at(PI).abs() <= 1e-12);
    let analytic = HubbardParams { lead: Lead::Junction { phi_u: PI, phi_l: 0.0 }, ..base() };
    for v in CouplingVariant::ALL {
        assert_eq!(exchange_couplings(&analytic, v).unwrap().jsc, 0.0);
    }
}

#[test]
fn junction_depends_on_phase_difference_only() {
    let a = HubbardParams { lead: Lead::Junction { phi_u: 1.3, phi_l: 0.4 }, ..base() };
    let b = HubbardParams { lead: Lead::Junction { phi_u: 0.9, phi_l: 0.0 }, ..base() };
    let (ja, jb) = (
        numerical_cross_coupling(&a, Reduction::SecondOrder).unwrap(),
        numerical_cross_coupling(&b, Reduction::SecondOrder).unwrap(),
    );
    assert!((ja - jb).abs() < 1e-14);
}

#[test]
fn occupation_window_is_enforced() {
    let p = HubbardParams { eps: [-18.0, -22.0, 5.0, -21.0], ..base() };
    assert_eq!(numerical_cross_coupling(&p, Reduction::SecondOrder), Err(Error::OccupationWindowViolated { dot: 3 }));
    let p = HubbardParams { eps: [-18.0, -250.0, -19.0, -21.0], ..base() };
    assert_eq!(numerical_cross_coupling(&p, Reduction::SecondOrder), Err(Error::OccupationWindowViolated { dot: 2 }));
}

/// Composite Simpson rule on `[a, b]` with `n` (even) intervals.
fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let inner: f64 = (1..n).map(|k| f(a + k as f64 * h) * if k % 2 == 1 { 4.0 } else { 2.0 }).sum();
    (f(a) + f(b) + inner) * h / 3.0
}

#[test]
fn pairing_amplitude_matches_band_integral() {
    // t² ρ ∫_{−W}^{W} Δ / (ξ² + Δ²) dξ
    let (t, rho) = (2.5, 0.02);
    for (delta, w) in [(1.0, 1.0), (1.0, 10.0), (3.0, 50.0), (0.2, 7.0)] {
        let integral = simpson(|xi| t * t * rho * delta / (xi * xi + delta * delta), -w, w, 20_000);
        let closed = gamma_ca_from_tunneling(t, rho, delta, w, None).unwrap();
        assert!((integral - closed).abs() < 1e-9 * closed, "Δ={delta}, W={w}");
    }
}
