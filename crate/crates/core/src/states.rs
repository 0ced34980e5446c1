//! Joint states of two spins: product coherent pairs, collective rotations,
//! rotational averaging and the two-qubit Werner family.

use crate::angular::{coherent_state, rotation_matrix, Direction, Rotation};
use crate::coupling::{decomposition, CouplingDecomposition};
use crate::error::{Error, Result};
use crate::linalg::{c, check_dense_dim, hermitian_eigenvalues, hermiticity_defect, kron, Operator};
use crate::spin::SpinQuantumNumber;

/// Eigenvalues below this are treated as roundoff rather than negativity.
pub const POSITIVITY_TOL: f64 = -1e-10;

/// A density matrix on `H_{j1} ⊗ H_{j2}`.
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    matrix: Operator,
    j1: SpinQuantumNumber,
    j2: SpinQuantumNumber,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(matrix: Operator, j1: SpinQuantumNumber, j2: SpinQuantumNumber) -> Result<Self> {
        let dim = j1.dim() * j2.dim();
        if matrix.shape() != (dim, dim) {
            return Err(Error::Domain(format!(
                "matrix of shape {:?} does not match dims ({}, {})",
                matrix.shape(),
                j1.dim(),
                j2.dim()
            )));
        }
        let herm = hermiticity_defect(&matrix);
        if herm > 1e-12 {
            return Err(Error::Domain(format!("matrix is not Hermitian (defect {herm:e})")));
        }
        let tr = matrix.trace();
        if (tr.re - 1.0).abs() > 1e-12 || tr.im.abs() > 1e-12 {
            return Err(Error::Domain(format!("trace {tr} is not 1")));
        }
        let min = hermitian_eigenvalues(&matrix)[0];
        if min < POSITIVITY_TOL {
            return Err(Error::Domain(format!("matrix has negative eigenvalue {min:e}")));
        }
        Ok(Self { matrix, j1, j2 })
    }

    fn new_unchecked(matrix: Operator, j1: SpinQuantumNumber, j2: SpinQuantumNumber) -> Self {
        Self { matrix, j1, j2 }
    }

    pub fn matrix(&self) -> &Operator {
        &self.matrix
    }

    pub fn spins(&self) -> (SpinQuantumNumber, SpinQuantumNumber) {
        (self.j1, self.j2)
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.j1.dim(), self.j2.dim())
    }

    pub fn purity(&self) -> f64 {
        crate::linalg::trace_product(&self.matrix, &self.matrix).re
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.matrix)
    }

    pub fn maximally_mixed(j1: SpinQuantumNumber, j2: SpinQuantumNumber) -> Result<Self> {
        let d = j1.dim() * j2.dim();
        check_dense_dim(d)?;
        Ok(Self::new_unchecked(Operator::identity(d, d) * c(1.0 / d as f64), j1, j2))
    }
}

/// `|j1 n1><j1 n1| ⊗ |j2 n2><j2 n2|`.
pub fn product_coherent_pair(
    j1: SpinQuantumNumber,
    j2: SpinQuantumNumber,
    n1: Direction,
    n2: Direction,
) -> Result<DensityMatrix> {
    check_dense_dim(j1.dim() * j2.dim())?;
    let a = coherent_state(j1, n1).projector();
    let b = coherent_state(j2, n2).projector();
    Ok(DensityMatrix::new_unchecked(kron(&a, &b), j1, j2))
}

/// The pair with `n1 = +z` and `n2` at angle `alpha` in the x-z plane.
pub fn reference_pair(j1: SpinQuantumNumber, j2: SpinQuantumNumber, alpha: f64) -> Result<DensityMatrix> {
    product_coherent_pair(j1, j2, Direction::PLUS_Z, Direction::in_xz_plane(alpha))
}

/// `R(Ω) = R_{j1}(Ω) ⊗ R_{j2}(Ω)`.
pub fn collective_rotation_matrix(j1: SpinQuantumNumber, j2: SpinQuantumNumber, r: Rotation) -> Operator {
    kron(&rotation_matrix(j1, r), &rotation_matrix(j2, r))
}

/// `R(Ω) ρ R(Ω)†`.
pub fn collective_rotate(rho: &DensityMatrix, r: Rotation) -> DensityMatrix {
    let u = collective_rotation_matrix(rho.j1, rho.j2, r);
    let m = &u * &rho.matrix * u.adjoint();
    DensityMatrix::new_unchecked(m, rho.j1, rho.j2)
}

/// A rotationally invariant state `Σ_J (p_J / (2J+1)) Π_J`, stored as the
/// classical distribution `p_J` over total angular momentum.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantState {
    pub j1: SpinQuantumNumber,
    pub j2: SpinQuantumNumber,
    /// `(J, p_J)` in increasing `J`.
    pub weights: Vec<(SpinQuantumNumber, f64)>,
}

impl InvariantState {
    pub fn new(j1: SpinQuantumNumber, j2: SpinQuantumNumber, probs: Vec<f64>) -> Result<Self> {
        let js = crate::coupling::total_j_values(j1, j2);
        if probs.len() != js.len() {
            return Err(Error::Domain(format!("expected {} block weights, got {}", js.len(), probs.len())));
        }
        if probs.iter().any(|&p| p.is_nan() || p < -1e-15) {
            return Err(Error::Domain("block weights must be non-negative".into()));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::Domain(format!("block weights sum to {total}")));
        }
        Ok(Self { j1, j2, weights: js.into_iter().zip(probs).collect() })
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.weights.iter().map(|&(_, p)| p).collect()
    }

    pub fn weight(&self, j: SpinQuantumNumber) -> Option<f64> {
        self.weights.iter().find(|(jj, _)| *jj == j).map(|&(_, p)| p)
    }

    pub fn reconstruct(&self) -> Result<DensityMatrix> {
        let dec = decomposition(self.j1, self.j2)?;
        Ok(self.reconstruct_with(&dec))
    }

    pub fn reconstruct_with(&self, dec: &CouplingDecomposition) -> DensityMatrix {
        let d = dec.dim();
        let mut m = Operator::zeros(d, d);
        for ((j, p), proj) in self.weights.iter().zip(dec.projectors()) {
            debug_assert_eq!(*j, proj.j);
            m += proj.matrix * c(p / j.dim() as f64);
        }
        DensityMatrix::new_unchecked(m, self.j1, self.j2)
    }
}

/// Haar average of `R(Ω) ρ R(Ω)†`. Since the coupling is multiplicity free,
/// the average is fixed by the block weights `p_J = Tr(Π_J ρ)`.
pub fn invariant_average(rho: &DensityMatrix) -> Result<InvariantState> {
    let dec = decomposition(rho.j1, rho.j2)?;
    Ok(invariant_average_with(rho, &dec))
}

pub fn invariant_average_with(rho: &DensityMatrix, dec: &CouplingDecomposition) -> InvariantState {
    let probs = dec.block_weights(&rho.matrix);
    InvariantState { j1: rho.j1, j2: rho.j2, weights: dec.total_js().into_iter().zip(probs).collect() }
}

/// Two-qubit Werner state `p Π_A + (1 - p) Π_S / 3`.
pub fn werner_state(p: f64) -> Result<DensityMatrix> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Domain(format!("Werner parameter {p} outside [0, 1]")));
    }
    let half = SpinQuantumNumber::HALF;
    InvariantState::new(half, half, vec![p, 1.0 - p])?.reconstruct()
}
