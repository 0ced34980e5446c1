//! Small dense helpers over `nalgebra` complex matrices.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

pub type C64 = Complex64;

/// Dense complex operator on a finite-dimensional Hilbert space.
pub type Operator = DMatrix<C64>;

/// Product-space dimensions above this are refused by the dense path.
pub const DENSE_DIM_CAP: usize = 4096;

pub fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

pub fn identity(n: usize) -> Operator {
    Operator::identity(n, n)
}

pub fn kron(a: &Operator, b: &Operator) -> Operator {
    a.kronecker(b)
}

/// Largest entry modulus.
pub fn max_abs(m: &Operator) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

pub fn max_abs_diff(a: &Operator, b: &Operator) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.iter().zip(b.iter()).fold(0.0, |acc, (x, y)| acc.max((x - y).norm()))
}

pub fn hermiticity_defect(m: &Operator) -> f64 {
    max_abs_diff(m, &m.adjoint())
}

/// Eigenvalues of a Hermitian matrix in ascending order. Only the lower
/// triangle is assumed meaningful, so the input is symmetrised first.
pub fn hermitian_eigenvalues(m: &Operator) -> Vec<f64> {
    let h = (m + m.adjoint()) * c(0.5);
    let mut ev: Vec<f64> = h.symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(|a, b| a.total_cmp(b));
    ev
}

/// Eigen-decomposition `m = V diag(w) V†` with eigenvalues ascending.
pub fn hermitian_eigen(m: &Operator) -> (DVector<f64>, Operator) {
    let h = (m + m.adjoint()) * c(0.5);
    let eig = SymmetricEigen::new(h);
    let n = eig.eigenvalues.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = DVector::from_iterator(n, order.iter().map(|&k| eig.eigenvalues[k]));
    let vectors = Operator::from_fn(n, n, |r, col| eig.eigenvectors[(r, order[col])]);
    (values, vectors)
}

/// `Tr(a b)` without forming the product.
pub fn trace_product(a: &Operator, b: &Operator) -> C64 {
    assert_eq!(a.ncols(), b.nrows());
    assert_eq!(a.nrows(), b.ncols());
    let mut acc = C64::new(0.0, 0.0);
    for i in 0..a.nrows() {
        for k in 0..a.ncols() {
            acc += a[(i, k)] * b[(k, i)];
        }
    }
    acc
}

/// `v† m v`.
pub fn expectation(m: &Operator, v: &DVector<C64>) -> C64 {
    v.dotc(&(m * v))
}

pub fn check_dense_dim(dim: usize) -> crate::Result<()> {
    if dim > DENSE_DIM_CAP {
        Err(crate::Error::Capacity { dim, cap: DENSE_DIM_CAP })
    } else {
        Ok(())
    }
}
