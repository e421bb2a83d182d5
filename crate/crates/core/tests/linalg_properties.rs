use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stc_core::linalg::{eigh, evolve, kron, ComplexOperator, Propagator};
use stc_core::Complex64;

fn random_hermitian(n: usize, rng: &mut impl Rng) -> ComplexOperator {
    let a = ComplexOperator::from_fn(n, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    (&a + &a.adjoint()).scale_real(0.5)
}

fn random_operator(n: usize, rng: &mut impl Rng) -> ComplexOperator {
    ComplexOperator::from_fn(n, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
}

#[test]
fn eigendecomposition_reconstructs_random_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in [1, 2, 3, 8, 16, 64, 256] {
        let h = random_hermitian(n, &mut rng);
        let e = eigh(&h).unwrap();
        let scale = h.max_abs();
        assert!(e.vectors.unitarity_error() < 1e-11, "n = {n}");
        assert!((&e.reconstruct() - &h).max_abs() < 1e-11 * scale.max(1.0) * n as f64, "n = {n}");
        assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
        let trace: f64 = e.values.iter().sum();
        assert!((trace - h.trace().re).abs() < 1e-10 * n as f64);
    }
}

#[test]
fn nearly_degenerate_complex_levels_are_resolved() {
    // two levels split by 1e-9 inside a complex rotated frame
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let q = eigh(&random_hermitian(6, &mut rng)).unwrap().vectors;
    let d = ComplexOperator::from_real_diagonal(&[-3.0, 1.0, 1.0 + 1e-9, 2.0, 5.0, 40.0]);
    let h = q.matmul(&d).matmul(&q.adjoint());
    let e = eigh(&h).unwrap();
    for k in 0..6 {
        let v = e.vector(k);
        let hv = h.apply(&v);
        let residual: f64 = hv.iter().zip(&v).map(|(a, b)| (a - b * e.values[k]).norm_sqr()).sum::<f64>().sqrt();
        assert!(residual < 1e-12, "level {k}: residual {residual}");
    }
    assert!((e.values[2] - e.values[1] - 1e-9).abs() < 1e-12);
}

#[test]
fn propagators_stay_unitary_for_long_times() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let h = random_hermitian(16, &mut rng);
    let norm = eigh(&h).unwrap().values.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let hbar = stc_core::constants::HBAR;
    for target in [1.0, 10.0, 100.0, 1000.0] {
        let t = target * hbar / norm;
        let u = evolve(&h, t).unwrap();
        assert!(u.unitarity_error() < 1e-10, "‖H‖t/ħ = {target}");
    }
}

#[test]
fn propagator_composes_in_time() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let h = random_hermitian(8, &mut rng);
    let p = Propagator::new(&h).unwrap();
    let (a, b) = (0.37, 1.91);
    assert!((&p.at(a).matmul(&p.at(b)) - &p.at(a + b)).max_abs() < 1e-12);
    assert!((&p.at(0.0) - &ComplexOperator::identity(8)).max_abs() < 1e-13);
}

fn seed() -> impl Strategy<Value = u64> {
    any::<u64>()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn kron_is_associative(s in seed(), dims in prop::array::uniform3(1usize..4)) {
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let a = random_operator(dims[0], &mut rng);
        let b = random_operator(dims[1], &mut rng);
        let c = random_operator(dims[2], &mut rng);
        let left = kron(&kron(&a, &b), &c);
        let right = kron(&a, &kron(&b, &c));
        prop_assert!((&left - &right).max_abs() < 1e-14);
    }

    #[test]
    fn kron_mixed_product(s in seed(), n in 1usize..4, m in 1usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let (a, c) = (random_operator(n, &mut rng), random_operator(n, &mut rng));
        let (b, d) = (random_operator(m, &mut rng), random_operator(m, &mut rng));
        let lhs = kron(&a, &b).matmul(&kron(&c, &d));
        let rhs = kron(&a.matmul(&c), &b.matmul(&d));
        prop_assert!((&lhs - &rhs).max_abs() < 1e-13);
    }

    #[test]
    fn spectrum_shifts_with_identity(s in seed(), n in 1usize..12, shift in -50.0..50.0f64) {
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let h = random_hermitian(n, &mut rng);
        let shifted = &h + &ComplexOperator::identity(n).scale_real(shift);
        let (a, b) = (eigh(&h).unwrap().values, eigh(&shifted).unwrap().values);
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x + shift - y).abs() < 1e-11);
        }
    }
}
