//! Local measurements: partial transposes, PPT thresholds for invariant
//! two-outcome POVMs, and the one-way LOCC protocol for spin-1/2 ⊗ spin-j.

use std::f64::consts::PI;

use crate::angular::{coherent_state, Direction};
use crate::coupling::decomposition;
use crate::error::{Error, Result};
use crate::estimation::{PovmElement, RotInvariantPovm};
use crate::linalg::{c, hermitian_eigen, hermitian_eigenvalues, max_abs_diff, trace_product, Operator};
use crate::spin::SpinQuantumNumber;
use crate::states::{invariant_average, reference_pair};

/// Eigenvalues above this count as non-negative for negativity bookkeeping.
pub const PPT_TOL: f64 = -1e-12;

#[derive(Clone, Debug)]
pub struct PartialTransposeResult {
    pub transposed: Operator,
    pub min_eigenvalue: f64,
    /// Sum of the magnitudes of the negative eigenvalues.
    pub negativity: f64,
}

impl PartialTransposeResult {
    pub fn is_ppt(&self) -> bool {
        self.min_eigenvalue >= PPT_TOL
    }
}

/// Transposes the second tensor factor of `op` on a `d1 × d2` product space.
pub fn transpose_second(op: &Operator, dims: (usize, usize)) -> Result<Operator> {
    let (d1, d2) = dims;
    if op.shape() != (d1 * d2, d1 * d2) {
        return Err(Error::Domain(format!("operator of shape {:?} does not factor as {d1} × {d2}", op.shape())));
    }
    Ok(Operator::from_fn(d1 * d2, d1 * d2, |r, col| {
        let (i, k) = (r / d2, r % d2);
        let (j, l) = (col / d2, col % d2);
        op[(i * d2 + l, j * d2 + k)]
    }))
}

pub fn partial_transpose(op: &Operator, dims: (usize, usize)) -> Result<PartialTransposeResult> {
    let transposed = transpose_second(op, dims)?;
    let ev = hermitian_eigenvalues(&transposed);
    let negativity = ev.iter().filter(|&&x| x < PPT_TOL).map(|x| -x).sum();
    Ok(PartialTransposeResult { min_eigenvalue: ev[0], negativity, transposed })
}

/// `Π_- + x Π_+` on spin-1/2 ⊗ spin-j.
fn weighted_pair_operator(proj_minus: &Operator, proj_plus: &Operator, x: f64) -> Operator {
    proj_minus + proj_plus * c(x)
}

/// Smallest `x ∈ [0, 1]` for which `Π_- + x Π_+` has a positive partial
/// transpose, by bisection to `1e-12`. PPT is only a necessary condition for
/// separability in general, so this is an upper bound on the separable
/// threshold (and exact for `j ≤ 1`).
pub fn ppt_threshold(j: SpinQuantumNumber) -> Result<f64> {
    if j.twice() == 0 {
        return Err(Error::Domain("spin-1/2 ⊗ spin-0 has a single block".into()));
    }
    let half = SpinQuantumNumber::HALF;
    let dec = decomposition(half, j)?;
    let dims = (2, j.dim());
    let js = dec.total_js();
    let minus = dec.projector(js[0])?.matrix;
    let plus = dec.projector(js[1])?.matrix;
    let min_eig = |x: f64| -> Result<f64> {
        Ok(partial_transpose(&weighted_pair_operator(&minus, &plus, x), dims)?.min_eigenvalue)
    };

    // the sign of the smallest eigenvalue must switch at most once on [0, 1]
    let samples: Vec<bool> = (0..20).map(|k| min_eig(k as f64 / 19.0).map(|v| v >= 0.0)).collect::<Result<_>>()?;
    if samples.windows(2).any(|w| w[0] && !w[1]) {
        return Err(Error::Consistency(format!("PPT region for j = {j} is not an interval ending at 1")));
    }
    if samples[0] {
        return Ok(0.0);
    }
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if min_eig(mid)? >= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// `{Π_1, Π_2}` with `Π_1 = (2j+1)/(2j+2) Π_+` ("aligned") and
/// `Π_2 = Π_- + 1/(2j+2) Π_+` ("anti-aligned").
pub fn optimal_local_povm(j: SpinQuantumNumber) -> Result<RotInvariantPovm> {
    if j.twice() == 0 {
        return Err(Error::Domain("the local POVM needs j ≥ 1/2".into()));
    }
    let jj = j.value();
    let w = 1.0 / (2.0 * jj + 2.0);
    RotInvariantPovm::new(
        SpinQuantumNumber::HALF,
        j,
        vec![
            PovmElement { label: "aligned".into(), weights: vec![0.0, 1.0 - w] },
            PovmElement { label: "anti-aligned".into(), weights: vec![1.0, w] },
        ],
    )
}

/// Measurement directions for the spin-j side of the protocol: `2j+1`
/// directions in the x-z plane at `θ_m = 2πm/(2j+1)` from `+z`.
#[derive(Clone, Debug)]
pub struct LoccProtocolConfig {
    pub j: SpinQuantumNumber,
    pub angles: Vec<f64>,
}

impl LoccProtocolConfig {
    pub fn new(j: SpinQuantumNumber) -> Result<Self> {
        if j.twice() == 0 {
            return Err(Error::Domain("protocol needs j ≥ 1/2".into()));
        }
        let n = j.dim();
        Ok(Self { j, angles: (0..n).map(|m| 2.0 * PI * m as f64 / n as f64).collect() })
    }

    pub fn directions(&self) -> Vec<Direction> {
        self.angles.iter().map(|&t| Direction::in_xz_plane(t)).collect()
    }

    /// Canonical tight frame `S^{-1/2} |j n_m><j n_m| S^{-1/2}` built from the
    /// coherent states, `S = Σ_m |j n_m><j n_m|`.
    pub fn spin_j_frame(&self) -> Result<Vec<Operator>> {
        let d = self.j.dim();
        let projs: Vec<Operator> = self.directions().into_iter().map(|n| coherent_state(self.j, n).projector()).collect();
        let frame_op = projs.iter().fold(Operator::zeros(d, d), |acc, p| acc + p);
        let (vals, vecs) = hermitian_eigen(&frame_op);
        if vals[0] < 1e-12 {
            return Err(Error::Consistency(format!("coherent-state frame for j = {} is not complete", self.j)));
        }
        let inv_sqrt = &vecs
            * Operator::from_diagonal(&vals.map(|v| c(1.0 / v.sqrt())))
            * vecs.adjoint();
        Ok(projs.iter().map(|p| &inv_sqrt * p * &inv_sqrt).collect())
    }

    /// `(E_aligned, E_anti)` on spin-1/2 ⊗ spin-j.
    pub fn protocol_elements(&self) -> Result<(Operator, Operator)> {
        let frame = self.spin_j_frame()?;
        let d = 2 * self.j.dim();
        let mut aligned = Operator::zeros(d, d);
        let mut anti = Operator::zeros(d, d);
        for (n, f) in self.directions().into_iter().zip(&frame) {
            let up = coherent_state(SpinQuantumNumber::HALF, n).projector();
            let down = coherent_state(SpinQuantumNumber::HALF, n.antipode()).projector();
            aligned += up.kronecker(f);
            anti += down.kronecker(f);
        }
        Ok((aligned, anti))
    }
}

/// Outcome distribution of the protocol next to the invariant POVM
/// `{Π_1, Π_2}` it is meant to reproduce.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProtocolStatistics {
    pub alpha: f64,
    pub aligned: f64,
    pub anti_aligned: f64,
    pub predicted_aligned: f64,
    pub predicted_anti_aligned: f64,
}

impl ProtocolStatistics {
    pub fn deviation(&self) -> f64 {
        (self.aligned - self.predicted_aligned).abs().max((self.anti_aligned - self.predicted_anti_aligned).abs())
    }
}

/// Protocol statistics for a pair at relative angle `alpha`, averaged over
/// the collective orientation.
pub fn locc_protocol_statistics(config: &LoccProtocolConfig, alpha: f64) -> Result<ProtocolStatistics> {
    let elements = config.protocol_elements()?;
    protocol_statistics_with(config, &elements, alpha)
}

fn protocol_statistics_with(
    config: &LoccProtocolConfig,
    (aligned, anti): &(Operator, Operator),
    alpha: f64,
) -> Result<ProtocolStatistics> {
    let half = SpinQuantumNumber::HALF;
    let rho = reference_pair(half, config.j, alpha)?;
    let averaged = invariant_average(&rho)?;
    let rho_alpha = averaged.reconstruct()?;
    let p = |e: &Operator| trace_product(e, rho_alpha.matrix()).re;
    let povm = optimal_local_povm(config.j)?;
    let block = averaged.probabilities();
    Ok(ProtocolStatistics {
        alpha,
        aligned: p(aligned),
        anti_aligned: p(anti),
        predicted_aligned: povm.likelihood(0, &block),
        predicted_anti_aligned: povm.likelihood(1, &block),
    })
}

/// Largest protocol-vs-prediction gap over `alphas`.
pub fn protocol_deviation(config: &LoccProtocolConfig, alphas: &[f64]) -> Result<f64> {
    let elements = config.protocol_elements()?;
    let mut worst = 0.0f64;
    for &a in alphas {
        worst = worst.max(protocol_statistics_with(config, &elements, a)?.deviation());
    }
    Ok(worst)
}

/// Minimum partial-transpose eigenvalue of each element of a spin-1/2 ⊗
/// spin-j invariant POVM.
pub fn element_min_pt_eigenvalues(povm: &RotInvariantPovm) -> Result<Vec<f64>> {
    let dec = decomposition(povm.j1, povm.j2)?;
    let dims = (povm.j1.dim(), povm.j2.dim());
    (0..povm.len())
        .map(|k| partial_transpose(&povm.element_operator(k, &dec), dims).map(|r| r.min_eigenvalue))
        .collect()
}

/// `max |T_2(T_2(op)) - op|`.
pub fn involution_defect(op: &Operator, dims: (usize, usize)) -> Result<f64> {
    let twice = transpose_second(&transpose_second(op, dims)?, dims)?;
    Ok(max_abs_diff(&twice, op))
}
