//! Gauss-Legendre quadrature on `[0, π]`.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

/// Nodes and weights of an `n`-point rule mapped onto `[0, π]`.
#[derive(Clone, Debug)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

pub const START_ORDER: usize = 16;
pub const MAX_ORDER: usize = 8192;

impl GaussLegendre {
    /// Cached rule of order `n`.
    pub fn on_zero_pi(n: usize) -> Arc<Self> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<GaussLegendre>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(rule) = cache.lock().unwrap().get(&n) {
            return rule.clone();
        }
        let (x, w) = legendre_rule(n);
        let rule = Arc::new(Self {
            nodes: x.iter().map(|&t| 0.5 * PI * (t + 1.0)).collect(),
            weights: w.iter().map(|&v| 0.5 * PI * v).collect(),
        });
        cache.lock().unwrap().insert(n, rule.clone());
        rule
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }
}

/// Nodes on `[-1, 1]` in increasing order, by Newton iteration on `P_n`.
fn legendre_rule(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        // Tricomi initial guess for the i-th largest root
        let theta = PI * (i as f64 + 0.75) / (nf + 0.5);
        let mut z = (1.0 - (nf - 1.0) / (8.0 * nf.powi(3))) * theta.cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_and_derivative(n, z);
            dp = d;
            let dz = p / d;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre_and_derivative(n, z);
        if d != 0.0 {
            dp = d;
        }
        let weight = 2.0 / ((1.0 - z * z) * dp * dp);
        x[n - 1 - i] = z;
        x[i] = -z;
        w[i] = weight;
        w[n - 1 - i] = weight;
    }
    (x, w)
}

fn legendre_and_derivative(n: usize, z: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = z;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (z * p1 - p0) / (z * z - 1.0);
    (p1, d)
}

/// Result of a node-doubling integration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub order: usize,
    pub converged: bool,
}

/// Integrates over `[0, π]` with orders 16, 32, ... until two successive
/// estimates differ by less than `tol`.
pub fn integrate_adaptive(f: impl Fn(f64) -> f64, tol: f64) -> Integral {
    let mut order = START_ORDER;
    let mut prev = GaussLegendre::on_zero_pi(order).integrate(&f);
    while order < MAX_ORDER {
        order *= 2;
        let next = GaussLegendre::on_zero_pi(order).integrate(&f);
        if (next - prev).abs() < tol {
            return Integral { value: next, order, converged: true };
        }
        prev = next;
    }
    Integral { value: prev, order, converged: false }
}
