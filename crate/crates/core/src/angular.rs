//! SU(2) representation machinery: angular momentum matrices, Wigner rotation
//! matrices and spin coherent states.
//!
//! Basis vectors of a spin-`j` space are ordered by descending `m`, so index
//! `0` is `|j, j>` and index `2j` is `|j, -j>`.

use std::collections::HashMap;
use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::{DMatrix, DVector, SymmetricEigen, Vector3};

use crate::error::{Error, Result};
use crate::linalg::{c, Operator, C64};
use crate::spin::SpinQuantumNumber;

/// Euler angles in the z-y-z convention, `R = exp(-iαJz) exp(-iβJy) exp(-iγJz)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Rotation {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl Rotation {
    pub const IDENTITY: Self = Self { alpha: 0.0, beta: 0.0, gamma: 0.0 };

    pub const fn new(alpha: f64, beta: f64, gamma: f64) -> Self {
        Self { alpha, beta, gamma }
    }

    /// The rotation taking `+z` to `n` with no final twist.
    pub fn to_direction(n: Direction) -> Self {
        Self::new(n.phi(), n.theta(), 0.0)
    }

    pub fn inverse(self) -> Self {
        Self::new(-self.gamma, -self.beta, -self.alpha)
    }

    /// Spin-1/2 representative.
    pub fn su2(self) -> [[C64; 2]; 2] {
        let (s, cb) = (0.5 * self.beta).sin_cos();
        let sum = 0.5 * (self.alpha + self.gamma);
        let diff = 0.5 * (self.alpha - self.gamma);
        [
            [C64::from_polar(cb, -sum), -C64::from_polar(s, -diff)],
            [C64::from_polar(s, diff), C64::from_polar(cb, sum)],
        ]
    }

    /// Recovers z-y-z Euler angles from an SU(2) matrix. The result is
    /// defined up to the overall sign of the matrix.
    pub fn from_su2(u: [[C64; 2]; 2]) -> Self {
        let cb = u[0][0].norm();
        let sb = u[1][0].norm();
        let beta = 2.0 * sb.atan2(cb);
        // arg(u11) - arg(u00) = alpha + gamma; arg(u10) - arg(-u01) = alpha - gamma
        let (sum, diff) = if sb < 1e-15 {
            (u[1][1].arg() - u[0][0].arg(), 0.0)
        } else if cb < 1e-15 {
            (0.0, u[1][0].arg() - (-u[0][1]).arg())
        } else {
            (u[1][1].arg() - u[0][0].arg(), u[1][0].arg() - (-u[0][1]).arg())
        };
        Self::new(0.5 * (sum + diff), beta, 0.5 * (sum - diff))
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(self, other: Self) -> Self {
        let a = self.su2();
        let b = other.su2();
        let mut p = [[C64::new(0.0, 0.0); 2]; 2];
        for i in 0..2 {
            for k in 0..2 {
                p[i][k] = a[i][0] * b[0][k] + a[i][1] * b[1][k];
            }
        }
        Self::from_su2(p)
    }

    /// The SO(3) matrix acting on ordinary vectors.
    pub fn so3(self) -> nalgebra::Matrix3<f64> {
        let rz = |t: f64| {
            let (s, c) = t.sin_cos();
            nalgebra::Matrix3::new(c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0)
        };
        let (s, cb) = self.beta.sin_cos();
        let ry = nalgebra::Matrix3::new(cb, 0.0, s, 0.0, 1.0, 0.0, -s, 0.0, cb);
        rz(self.alpha) * ry * rz(self.gamma)
    }

    pub fn apply(self, n: Direction) -> Direction {
        Direction::from_vector(self.so3() * n.unit_vector()).expect("rotation preserves norm")
    }
}

/// A point on the unit sphere.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Direction {
    theta: f64,
    phi: f64,
}

impl Direction {
    pub const PLUS_Z: Self = Self { theta: 0.0, phi: 0.0 };

    /// Polar angle `theta` must lie in `[0, π]`; `phi` is wrapped into `[0, 2π)`.
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !(0.0..=PI).contains(&theta) || !phi.is_finite() {
            return Err(Error::Domain(format!("direction angles (theta={theta}, phi={phi}) out of range")));
        }
        Ok(Self { theta, phi: phi.rem_euclid(2.0 * PI) })
    }

    pub fn from_vector(v: Vector3<f64>) -> Result<Self> {
        let norm = v.norm();
        if norm.is_nan() || norm <= 0.0 || !norm.is_finite() {
            return Err(Error::Domain("direction vector must be non-zero".into()));
        }
        let u = v / norm;
        let theta = u.z.clamp(-1.0, 1.0).acos();
        let phi = if u.x == 0.0 && u.y == 0.0 { 0.0 } else { u.y.atan2(u.x) };
        Self::new(theta, phi)
    }

    /// Direction in the x-z plane at angle `alpha` from `+z`.
    pub fn in_xz_plane(alpha: f64) -> Self {
        Self::from_vector(Vector3::new(alpha.sin(), 0.0, alpha.cos())).expect("unit vector")
    }

    pub fn theta(self) -> f64 {
        self.theta
    }

    pub fn phi(self) -> f64 {
        self.phi
    }

    pub fn unit_vector(self) -> Vector3<f64> {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        Vector3::new(st * cp, st * sp, ct)
    }

    pub fn antipode(self) -> Self {
        Self::from_vector(-self.unit_vector()).expect("unit vector")
    }

    /// Angle `arccos(n1 · n2)` in `[0, π]`.
    pub fn angle_to(self, other: Self) -> f64 {
        let a = self.unit_vector();
        let b = other.unit_vector();
        // atan2 form stays accurate near 0 and π
        a.cross(&b).norm().atan2(a.dot(&b))
    }
}

/// Normalised state of a single spin in the `|j, m>` basis.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    pub j: SpinQuantumNumber,
    pub amplitudes: DVector<C64>,
}

impl StateVector {
    pub fn new(j: SpinQuantumNumber, amplitudes: DVector<C64>) -> Result<Self> {
        if amplitudes.len() != j.dim() {
            return Err(Error::Domain(format!(
                "state of length {} for spin {j} (expected {})",
                amplitudes.len(),
                j.dim()
            )));
        }
        let norm2 = amplitudes.norm_squared();
        if (norm2 - 1.0).abs() > 1e-12 {
            return Err(Error::Domain(format!("state has squared norm {norm2}")));
        }
        Ok(Self { j, amplitudes })
    }

    /// `|j, m>` with `m = twice_m / 2`.
    pub fn basis(j: SpinQuantumNumber, twice_m: i32) -> Result<Self> {
        let k = j
            .index_of(twice_m)
            .ok_or_else(|| Error::Domain(format!("m = {twice_m}/2 is not on the ladder of j = {j}")))?;
        let mut v = DVector::zeros(j.dim());
        v[k] = c(1.0);
        Ok(Self { j, amplitudes: v })
    }

    pub fn overlap(&self, other: &Self) -> C64 {
        self.amplitudes.dotc(&other.amplitudes)
    }

    pub fn projector(&self) -> Operator {
        &self.amplitudes * self.amplitudes.adjoint()
    }
}

/// `(Jx, Jy, Jz)` for spin `j`.
pub fn angular_momentum_operators(j: SpinQuantumNumber) -> (Operator, Operator, Operator) {
    let d = j.dim();
    let jj = j.value();
    let ms: Vec<f64> = j.m_values().collect();
    let jz = Operator::from_diagonal(&DVector::from_iterator(d, ms.iter().map(|&m| c(m))));
    // J+ |m> = sqrt(j(j+1) - m(m+1)) |m+1>; |m+1> sits one index above |m>
    let mut jplus = Operator::zeros(d, d);
    for k in 1..d {
        let m = ms[k];
        jplus[(k - 1, k)] = c((jj * (jj + 1.0) - m * (m + 1.0)).sqrt());
    }
    let jminus = jplus.adjoint();
    let jx = (&jplus + &jminus) * c(0.5);
    let jy = (&jplus - &jminus) * C64::new(0.0, -0.5);
    (jx, jy, jz)
}

/// Eigen-decomposition of `Jx`, shared by every rotation at the same `j`.
/// `Jx` is real symmetric and its spectrum is exactly `{j, j-1, ..., -j}`.
struct JxEigen {
    values: Vec<f64>,
    vectors: DMatrix<f64>,
}

fn jx_eigen(j: SpinQuantumNumber) -> Arc<JxEigen> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<JxEigen>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(e) = cache.lock().unwrap().get(&j.twice()) {
        return e.clone();
    }
    let d = j.dim();
    let jj = j.value();
    let ms: Vec<f64> = j.m_values().collect();
    let mut jx = DMatrix::<f64>::zeros(d, d);
    for k in 1..d {
        let m = ms[k];
        let v = 0.5 * (jj * (jj + 1.0) - m * (m + 1.0)).sqrt();
        jx[(k - 1, k)] = v;
        jx[(k, k - 1)] = v;
    }
    let eig = SymmetricEigen::new(jx);
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let vectors = DMatrix::from_fn(d, d, |r, col| eig.eigenvectors[(r, order[col])]);
    // snap to the exact spectrum
    let values = ms.clone();
    let e = Arc::new(JxEigen { values, vectors });
    cache.lock().unwrap().insert(j.twice(), e.clone());
    e
}

/// Wigner small-d matrix `d^j(β) = exp(-iβJy)`, computed by diagonalising
/// `Jy = exp(-iπ/2 Jz) Jx exp(iπ/2 Jz)`.
pub fn wigner_small_d(j: SpinQuantumNumber, beta: f64) -> DMatrix<f64> {
    let d = j.dim();
    let eig = jx_eigen(j);
    let ms: Vec<f64> = j.m_values().collect();
    let phases: Vec<C64> = eig.values.iter().map(|&l| C64::from_polar(1.0, -beta * l)).collect();
    DMatrix::from_fn(d, d, |a, b| {
        let acc: C64 =
            phases.iter().enumerate().map(|(k, ph)| ph * (eig.vectors[(a, k)] * eig.vectors[(b, k)])).sum();
        // conjugation by exp(-iπ/2 Jz) contributes exp(-iπ/2 (m_a - m_b))
        (acc * C64::from_polar(1.0, -FRAC_PI_2 * (ms[a] - ms[b]))).re
    })
}

/// First column of `d^j(β)`, i.e. `d^j_{m,j}(β)` for every `m`.
fn wigner_small_d_top_column(j: SpinQuantumNumber, beta: f64) -> Vec<f64> {
    let d = j.dim();
    let eig = jx_eigen(j);
    let ms: Vec<f64> = j.m_values().collect();
    let phases: Vec<C64> = eig.values.iter().map(|&l| C64::from_polar(1.0, -beta * l)).collect();
    (0..d)
        .map(|a| {
            let acc: C64 =
                phases.iter().enumerate().map(|(k, ph)| ph * (eig.vectors[(a, k)] * eig.vectors[(0, k)])).sum();
            (acc * C64::from_polar(1.0, -FRAC_PI_2 * (ms[a] - ms[0]))).re
        })
        .collect()
}

/// Unitary `D^j(R) = exp(-iαJz) exp(-iβJy) exp(-iγJz)`.
pub fn rotation_matrix(j: SpinQuantumNumber, r: Rotation) -> Operator {
    let small = wigner_small_d(j, r.beta);
    let ms: Vec<f64> = j.m_values().collect();
    Operator::from_fn(j.dim(), j.dim(), |a, b| {
        C64::from_polar(small[(a, b)], -(r.alpha * ms[a] + r.gamma * ms[b]))
    })
}

/// Spin coherent state `|j n> = D^j(φ, θ, 0) |j, j>`.
pub fn coherent_state(j: SpinQuantumNumber, n: Direction) -> StateVector {
    let col = wigner_small_d_top_column(j, n.theta());
    let amplitudes = DVector::from_iterator(
        j.dim(),
        col.iter().zip(j.m_values()).map(|(&d, m)| C64::from_polar(d, -n.phi() * m)),
    );
    StateVector { j, amplitudes }
}

/// `J · n`.
pub fn spin_along(j: SpinQuantumNumber, n: Direction) -> Operator {
    let (jx, jy, jz) = angular_momentum_operators(j);
    let u = n.unit_vector();
    jx * c(u.x) + jy * c(u.y) + jz * c(u.z)
}
