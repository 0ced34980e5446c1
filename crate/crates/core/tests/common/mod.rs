//! Independent reference computations used only by tests.
#![allow(dead_code)]

use std::f64::consts::PI;

use nalgebra::DVector;
use num_complex::Complex64 as C64;
use rand::Rng;
use relspin::angular::angular_momentum_operators;
use relspin::linalg::{identity, kron, Operator};
use relspin::{Rotation, SpinQuantumNumber};

pub fn spin(twice: u32) -> SpinQuantumNumber {
    SpinQuantumNumber::from_twice(twice)
}

pub fn max_abs(m: &Operator) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// Matrix exponential by scaling and squaring of a truncated Taylor series.
pub fn expm(a: &Operator) -> Operator {
    let norm = a.iter().map(|z| z.norm()).sum::<f64>().max(1e-300);
    let mut s = 0;
    while norm / 2f64.powi(s) > 0.25 {
        s += 1;
    }
    let scaled = a * C64::new(1.0 / 2f64.powi(s), 0.0);
    let n = a.nrows();
    let mut term = identity(n);
    let mut sum = identity(n);
    for k in 1..30 {
        term = &term * &scaled * C64::new(1.0 / k as f64, 0.0);
        sum += &term;
    }
    for _ in 0..s {
        sum = &sum * &sum;
    }
    sum
}

/// `exp(-iαJz) exp(-iβJy) exp(-iγJz)` via `expm`.
pub fn rotation_oracle(j: SpinQuantumNumber, r: Rotation) -> Operator {
    let (_, jy, jz) = angular_momentum_operators(j);
    let mi = C64::new(0.0, -1.0);
    expm(&(&jz * (mi * r.alpha))) * expm(&(&jy * (mi * r.beta))) * expm(&(&jz * (mi * r.gamma)))
}

pub fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Coherent-state amplitudes from the binomial formula
/// `sqrt(C(2j, j+m)) cos^{j+m}(θ/2) sin^{j-m}(θ/2) e^{-imφ}`.
pub fn coherent_oracle(j: SpinQuantumNumber, theta: f64, phi: f64) -> DVector<C64> {
    let n = j.twice();
    let (s, c) = (0.5 * theta).sin_cos();
    DVector::from_iterator(
        j.dim(),
        (0..=n).map(|k| {
            // k = j - m
            let up = n - k;
            let m = (up as f64 - k as f64) / 2.0;
            let mag = binomial(n, up).sqrt() * c.powi(up as i32) * s.powi(k as i32);
            C64::from_polar(mag, -m * phi)
        }),
    )
}

pub fn random_rotation<R: Rng>(rng: &mut R) -> Rotation {
    Rotation::new(rng.gen_range(-PI..PI), rng.gen_range(0.0..PI), rng.gen_range(-PI..PI))
}

/// Collective `J_k ⊗ I + I ⊗ J_k` for each axis.
pub fn total_angular_momentum(j1: SpinQuantumNumber, j2: SpinQuantumNumber) -> [Operator; 3] {
    let (ax, ay, az) = angular_momentum_operators(j1);
    let (bx, by, bz) = angular_momentum_operators(j2);
    let i1 = identity(j1.dim());
    let i2 = identity(j2.dim());
    let t = |a: &Operator, b: &Operator| kron(a, &i2) + kron(&i1, b);
    [t(&ax, &bx), t(&ay, &by), t(&az, &bz)]
}

/// Min over the sign of `|a - b|`, for comparisons that hold up to `±1`.
pub fn phase_insensitive_diff(a: &Operator, b: &Operator) -> f64 {
    let plus = max_abs(&(a - b));
    let minus = max_abs(&(a + b));
    plus.min(minus)
}

pub fn alpha_grid(n: usize) -> Vec<f64> {
    (0..n).map(|k| PI * k as f64 / (n - 1) as f64).collect()
}
