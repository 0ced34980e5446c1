mod common;

use std::f64::consts::PI;

use common::*;
use num_complex::Complex64 as C64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use relspin::linalg::{kron, trace_product, Operator};
use relspin::locc::partial_transpose;
use relspin::states::{collective_rotation_matrix, reference_pair};
use relspin::{
    collective_rotate, haar_rotation, invariant_average, product_coherent_pair, werner_state, DensityMatrix, Direction,
    Error, InvariantState, RandomSeed, Rotation, SpinQuantumNumber,
};

fn random_direction<R: Rng>(rng: &mut R) -> Direction {
    Direction::new(rng.gen_range(-1.0f64..1.0).acos(), rng.gen_range(0.0..2.0 * PI)).unwrap()
}

fn random_density<R: Rng>(rng: &mut R, j1: SpinQuantumNumber, j2: SpinQuantumNumber) -> DensityMatrix {
    let d = j1.dim() * j2.dim();
    let g = Operator::from_fn(d, d, |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    let m = &g * g.adjoint();
    let tr = m.trace();
    DensityMatrix::new(m / tr, j1, j2).unwrap()
}

#[test]
fn coherent_pairs_are_pure() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..20 {
        let rho = product_coherent_pair(spin(2), spin(3), random_direction(&mut rng), random_direction(&mut rng)).unwrap();
        assert!((rho.matrix().trace().re - 1.0).abs() < 1e-12);
        assert!((rho.purity() - 1.0).abs() < 1e-12);
        DensityMatrix::new(rho.matrix().clone(), spin(2), spin(3)).unwrap();
    }
}

#[test]
fn rotated_overlap_depends_only_on_rotation() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (j1, j2) = (spin(1), spin(2));
    for _ in 0..20 {
        let r = random_rotation(&mut rng);
        let u = collective_rotation_matrix(j1, j2, r);
        let n1 = random_direction(&mut rng);
        let n2 = random_direction(&mut rng);
        let frame = random_rotation(&mut rng);
        let overlap = |rho: &DensityMatrix| trace_product(rho.matrix(), &(&u * rho.matrix() * u.adjoint())).re;
        let a = product_coherent_pair(j1, j2, n1, n2).unwrap();
        // re-orienting both spins by the same frame rotation conjugates R by it,
        // so compare against the conjugated rotation
        let b = product_coherent_pair(j1, j2, frame.apply(n1), frame.apply(n2)).unwrap();
        let uf = collective_rotation_matrix(j1, j2, frame);
        let u_conj = &uf * &u * uf.adjoint();
        let ob = trace_product(b.matrix(), &(&u_conj * b.matrix() * u_conj.adjoint())).re;
        assert!((overlap(&a) - ob).abs() < 1e-10);
    }
}

#[test]
fn collective_rotation_equals_rotated_preparation() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for (ta, tb) in [(1, 1), (1, 4), (2, 3)] {
        let (j1, j2) = (spin(ta), spin(tb));
        for _ in 0..20 {
            let n1 = random_direction(&mut rng);
            let n2 = random_direction(&mut rng);
            let r = random_rotation(&mut rng);
            let rotated = collective_rotate(&product_coherent_pair(j1, j2, n1, n2).unwrap(), r);
            let direct = product_coherent_pair(j1, j2, r.apply(n1), r.apply(n2)).unwrap();
            assert!(max_abs(&(rotated.matrix() - direct.matrix())) < 1e-10);
            let mut a = rotated.eigenvalues();
            let mut b = direct.eigenvalues();
            a.sort_by(f64::total_cmp);
            b.sort_by(f64::total_cmp);
            for (x, y) in a.iter().zip(&b) {
                assert!((x - y).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn haar_average_matches_block_weights() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let half = SpinQuantumNumber::HALF;
    let rho = random_density(&mut rng, half, half);
    let exact = invariant_average(&rho).unwrap().reconstruct().unwrap();
    let n = 100_000;
    let mut stream = RandomSeed(8).stream();
    let mut sum = Operator::zeros(4, 4);
    let mut sum_sq_re = nalgebra::DMatrix::<f64>::zeros(4, 4);
    let mut sum_sq_im = nalgebra::DMatrix::<f64>::zeros(4, 4);
    for _ in 0..n {
        let r = haar_rotation(&mut stream);
        let m = collective_rotate(&rho, r);
        for (k, z) in m.matrix().iter().enumerate() {
            sum_sq_re[k] += z.re * z.re;
            sum_sq_im[k] += z.im * z.im;
        }
        sum += m.matrix();
    }
    let nf = n as f64;
    for k in 0..16 {
        let mean = sum[k] / nf;
        let se_re = ((sum_sq_re[k] / nf - mean.re * mean.re).max(0.0) / nf).sqrt();
        let se_im = ((sum_sq_im[k] / nf - mean.im * mean.im).max(0.0) / nf).sqrt();
        assert!((mean.re - exact.matrix()[k].re).abs() <= 5.0 * se_re + 1e-12, "entry {k} re");
        assert!((mean.im - exact.matrix()[k].im).abs() <= 5.0 * se_im + 1e-12, "entry {k} im");
    }
}

#[test]
fn werner_half_sits_on_ppt_boundary() {
    let r = partial_transpose(werner_state(0.5).unwrap().matrix(), (2, 2)).unwrap();
    assert!(r.min_eigenvalue.abs() < 1e-12);
    let separable = partial_transpose(werner_state(0.4).unwrap().matrix(), (2, 2)).unwrap();
    assert!(separable.min_eigenvalue > 0.0);
    let entangled = partial_transpose(werner_state(0.6).unwrap().matrix(), (2, 2)).unwrap();
    assert!(entangled.min_eigenvalue < 0.0);
}

#[test]
fn werner_is_rotation_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let w = werner_state(0.7).unwrap();
    for _ in 0..10 {
        let r = collective_rotate(&w, random_rotation(&mut rng));
        assert!(max_abs(&(r.matrix() - w.matrix())) < 1e-12);
    }
}

#[test]
fn invariant_state_validation() {
    let half = SpinQuantumNumber::HALF;
    assert!(matches!(InvariantState::new(half, half, vec![0.5, 0.6]), Err(Error::Domain(_))));
    assert!(matches!(InvariantState::new(half, half, vec![1.0]), Err(Error::Domain(_))));
    assert!(matches!(InvariantState::new(half, half, vec![-0.1, 1.1]), Err(Error::Domain(_))));
    let s = InvariantState::new(half, half, vec![0.25, 0.75]).unwrap();
    assert!(max_abs(&(s.reconstruct().unwrap().matrix() - werner_state(0.25).unwrap().matrix())) < 1e-15);
}

#[test]
fn product_of_mixed_states_has_unit_trace() {
    let a = Operator::from_diagonal(&nalgebra::DVector::from_vec(vec![C64::new(0.3, 0.0), C64::new(0.7, 0.0)]));
    let b = Operator::from_diagonal(&nalgebra::DVector::from_vec(vec![
        C64::new(0.2, 0.0),
        C64::new(0.5, 0.0),
        C64::new(0.3, 0.0),
    ]));
    let rho = DensityMatrix::new(kron(&a, &b), SpinQuantumNumber::HALF, SpinQuantumNumber::ONE).unwrap();
    assert_eq!(rho.dims(), (2, 3));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn averaging_is_idempotent(seed in any::<u64>(), ta in 0u32..=4, tb in 0u32..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rho = random_density(&mut rng, spin(ta), spin(tb));
        let once = invariant_average(&rho).unwrap();
        let twice = invariant_average(&once.reconstruct().unwrap()).unwrap();
        for ((_, a), (_, b)) in once.weights.iter().zip(&twice.weights) {
            prop_assert!((a - b).abs() < 1e-13);
        }
        let total: f64 = once.probabilities().iter().sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn averaging_forgets_collective_rotations(seed in any::<u64>(), ta in 0u32..=4, tb in 0u32..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let rho = random_density(&mut rng, spin(ta), spin(tb));
        let r = random_rotation(&mut rng);
        let a = invariant_average(&rho).unwrap();
        let b = invariant_average(&collective_rotate(&rho, r)).unwrap();
        for ((_, x), (_, y)) in a.weights.iter().zip(&b.weights) {
            prop_assert!((x - y).abs() < 1e-11);
        }
    }

    #[test]
    fn weights_depend_only_on_relative_angle(seed in any::<u64>(), ta in 1u32..=4, tb in 1u32..=4, alpha in 0.0..PI) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (j1, j2) = (spin(ta), spin(tb));
        let reference = invariant_average(&reference_pair(j1, j2, alpha).unwrap()).unwrap();
        // a second configuration at the same angle, arbitrarily oriented
        let frame = random_rotation(&mut rng);
        let n1 = frame.apply(Direction::PLUS_Z);
        let n2 = frame.apply(Direction::in_xz_plane(alpha));
        prop_assert!((n1.angle_to(n2) - alpha).abs() < 1e-9);
        let other = invariant_average(&product_coherent_pair(j1, j2, n1, n2).unwrap()).unwrap();
        for ((_, x), (_, y)) in reference.weights.iter().zip(&other.weights) {
            prop_assert!((x - y).abs() < 1e-11);
        }
    }
}

#[test]
fn identity_rotation_is_noop() {
    let rho = reference_pair(spin(1), spin(3), 0.9).unwrap();
    assert!(max_abs(&(collective_rotate(&rho, Rotation::IDENTITY).matrix() - rho.matrix())) < 1e-15);
}
