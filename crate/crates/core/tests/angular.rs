mod common;

use std::f64::consts::PI;

use common::*;
use num_complex::Complex64 as C64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use relspin::angular::{spin_along, wigner_small_d};
use relspin::linalg::identity;
use relspin::{coherent_state, rotation_matrix, Direction, Rotation};

#[test]
fn rotation_matches_matrix_exponential() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for tj in 0..=10 {
        for _ in 0..10 {
            let r = random_rotation(&mut rng);
            let d = rotation_matrix(spin(tj), r);
            let oracle = rotation_oracle(spin(tj), r);
            assert!(max_abs(&(d - oracle)) < 1e-10, "j = {tj}/2");
        }
    }
}

#[test]
fn small_d_is_real_and_matches_closed_form_top_column() {
    for tj in 0..=8 {
        let j = spin(tj);
        for beta in [0.0, 0.3, 1.7, PI] {
            let d = wigner_small_d(j, beta);
            let oracle = coherent_oracle(j, beta, 0.0);
            for a in 0..j.dim() {
                assert!((d[(a, 0)] - oracle[a].re).abs() < 1e-12);
            }
        }
    }
}

#[test]
fn coherent_overlaps() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    use rand::Rng;
    for _ in 0..50 {
        let n1 = Direction::new(rng.gen_range(0.0..PI), rng.gen_range(0.0..2.0 * PI)).unwrap();
        let n2 = Direction::new(rng.gen_range(0.0..PI), rng.gen_range(0.0..2.0 * PI)).unwrap();
        let alpha = n1.angle_to(n2);
        let c2 = (0.5 * alpha).cos().powi(2);
        for tj in 1..=10 {
            let j = spin(tj);
            // states built independently from the binomial formula
            let a = coherent_oracle(j, n1.theta(), n1.phi());
            let b = coherent_oracle(j, n2.theta(), n2.phi());
            let expected = a.dotc(&b).norm_sqr();
            assert!((expected - c2.powi(tj as i32)).abs() < 1e-11);
            let got = coherent_state(j, n1).overlap(&coherent_state(j, n2)).norm_sqr();
            assert!((got - expected).abs() < 1e-11, "j = {tj}/2");
        }
    }
}

#[test]
fn coherent_state_matches_binomial_formula() {
    for tj in 0..=10 {
        let n = Direction::new(1.1, 4.0).unwrap();
        let got = coherent_state(spin(tj), n).amplitudes;
        let want = coherent_oracle(spin(tj), n.theta(), n.phi());
        assert!((got - want).iter().all(|z| z.norm() < 1e-12));
    }
}

fn rotation_strategy() -> impl Strategy<Value = Rotation> {
    (-PI..PI, 0.0..PI, -PI..PI).prop_map(|(a, b, g)| Rotation::new(a, b, g))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn rotations_unitary_and_homomorphic(tj in 0u32..=10, r1 in rotation_strategy(), r2 in rotation_strategy()) {
        let j = spin(tj);
        let d1 = rotation_matrix(j, r1);
        let d2 = rotation_matrix(j, r2);
        prop_assert!(max_abs(&(&d1 * d1.adjoint() - identity(j.dim()))) < 1e-12);
        let composed = rotation_matrix(j, r1.compose(r2));
        let product = &d1 * &d2;
        let diff = if j.is_half_odd() {
            phase_insensitive_diff(&product, &composed)
        } else {
            max_abs(&(&product - &composed))
        };
        prop_assert!(diff < 1e-10, "diff {diff}");
    }

    #[test]
    fn coherent_state_eigen_equation(tj in 0u32..=10, theta in 0.0..PI, phi in 0.0..(2.0 * PI)) {
        let j = spin(tj);
        let n = Direction::new(theta, phi).unwrap();
        let v = coherent_state(j, n).amplitudes;
        let residual = spin_along(j, n) * &v - &v * C64::new(j.value(), 0.0);
        prop_assert!(residual.norm() < 1e-11);
        prop_assert!((v.norm_squared() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn direction_unit_norm(theta in 0.0..PI, phi in -10.0..10.0f64) {
        let n = Direction::new(theta, phi).unwrap();
        prop_assert!((n.unit_vector().norm() - 1.0).abs() < 1e-14);
        prop_assert!((0.0..2.0 * PI).contains(&n.phi()));
    }

    #[test]
    fn rotations_act_on_directions(r in rotation_strategy(), theta in 0.0..PI, phi in 0.0..(2.0 * PI)) {
        // D(R)|n> is |R n> up to a phase
        let j = spin(3);
        let n = Direction::new(theta, phi).unwrap();
        let rotated = rotation_matrix(j, r) * coherent_state(j, n).amplitudes;
        let direct = coherent_state(j, r.apply(n)).amplitudes;
        prop_assert!((rotated.dotc(&direct).norm() - 1.0).abs() < 1e-11);
    }
}
