//! Bayesian estimation of the relative angle between two spin coherent states
//! from a rotationally invariant measurement.
//!
//! Every rotationally invariant POVM is a table `s[λ][J]` of weights on the
//! total-`J` projectors, so outcome statistics only need the block weights
//! `p(J|α) = Tr(Π_J ρ_α)`. These come either from closed forms (one of the
//! spins is 0 or 1/2) or from the dense coupling path.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use nalgebra::DVector;
use rayon::prelude::*;

use crate::angular::{coherent_state, Direction, Rotation};
use crate::coupling::{decomposition, total_j_values, CouplingDecomposition};
use crate::error::{Error, Result};
use crate::linalg::{Operator, C64};
use crate::quadrature::{integrate_adaptive, GaussLegendre};
use crate::spin::SpinQuantumNumber;

/// Node-doubling tolerance for information-gain integrals.
pub const INFO_TOL: f64 = 1e-10;
/// Tolerance for normalisations and evidences, which have smooth integrands.
pub const NORM_TOL: f64 = 1e-14;

/// Closed-form `p(J = j - 1/2 | α) = 2j/(2j+1) sin²(α/2)` for spin-1/2 ⊗ spin-j.
pub fn spin_half_lower_probability(j: SpinQuantumNumber, alpha: f64) -> f64 {
    let jj = j.value();
    let s = (0.5 * alpha).sin();
    2.0 * jj / (2.0 * jj + 1.0) * s * s
}

/// Source of the block weights `p(J|α)` for a product coherent pair.
#[derive(Clone, Debug)]
pub enum AngleModel {
    /// One spin is 0 or 1/2.
    ClosedForm { j1: SpinQuantumNumber, j2: SpinQuantumNumber },
    /// Dense evaluation of `Tr(Π_J ρ_{α,Ω})` for the pair `R(Ω)(|+z> ⊗ |n_α>)`.
    Dense { decomposition: Arc<CouplingDecomposition>, orientation: Rotation },
}

impl AngleModel {
    /// Closed form when available, dense path otherwise.
    pub fn new(j1: SpinQuantumNumber, j2: SpinQuantumNumber) -> Result<Self> {
        if j1.twice() <= 1 || j2.twice() <= 1 {
            Ok(Self::ClosedForm { j1, j2 })
        } else {
            Self::dense(j1, j2)
        }
    }

    pub fn dense(j1: SpinQuantumNumber, j2: SpinQuantumNumber) -> Result<Self> {
        Self::dense_oriented(j1, j2, Rotation::IDENTITY)
    }

    /// Dense path with the pair collectively rotated by `orientation`.
    pub fn dense_oriented(j1: SpinQuantumNumber, j2: SpinQuantumNumber, orientation: Rotation) -> Result<Self> {
        Ok(Self::Dense { decomposition: Arc::new(decomposition(j1, j2)?), orientation })
    }

    pub fn spins(&self) -> (SpinQuantumNumber, SpinQuantumNumber) {
        match self {
            Self::ClosedForm { j1, j2 } => (*j1, *j2),
            Self::Dense { decomposition, .. } => (decomposition.j1, decomposition.j2),
        }
    }

    pub fn total_js(&self) -> Vec<SpinQuantumNumber> {
        let (j1, j2) = self.spins();
        total_j_values(j1, j2)
    }

    /// `p(J|α)` for each `J` in increasing order.
    pub fn probabilities(&self, alpha: f64) -> Vec<f64> {
        match self {
            Self::ClosedForm { j1, j2 } => {
                let (small, big) = if j1 <= j2 { (*j1, *j2) } else { (*j2, *j1) };
                if small.twice() == 0 {
                    vec![1.0]
                } else {
                    let lower = spin_half_lower_probability(big, alpha);
                    vec![lower, 1.0 - lower]
                }
            }
            Self::Dense { decomposition: dec, orientation } => {
                let n1 = orientation.apply(Direction::PLUS_Z);
                let n2 = orientation.apply(Direction::in_xz_plane(alpha));
                let psi = kron_vec(&coherent_state(dec.j1, n1).amplitudes, &coherent_state(dec.j2, n2).amplitudes);
                dec.blocks
                    .iter()
                    .map(|b| {
                        let mut acc = 0.0;
                        for col in b.isometry.column_iter() {
                            let mut z = C64::new(0.0, 0.0);
                            for (x, a) in col.iter().zip(psi.iter()) {
                                z += a * *x;
                            }
                            acc += z.norm_sqr();
                        }
                        acc
                    })
                    .collect()
            }
        }
    }
}

fn kron_vec(a: &DVector<C64>, b: &DVector<C64>) -> DVector<C64> {
    DVector::from_iterator(a.len() * b.len(), a.iter().flat_map(|x| b.iter().map(move |y| x * y)))
}

/// `p(J|α)` for a product coherent pair at relative angle `alpha`.
pub fn outcome_probability(
    j1: SpinQuantumNumber,
    j2: SpinQuantumNumber,
    j: SpinQuantumNumber,
    alpha: f64,
) -> Result<f64> {
    check_alpha(alpha)?;
    let js = total_j_values(j1, j2);
    let k = js
        .iter()
        .position(|&x| x == j)
        .ok_or_else(|| Error::Domain(format!("J = {j} is not in {j1} ⊗ {j2}")))?;
    Ok(AngleModel::new(j1, j2)?.probabilities(alpha)[k])
}

fn check_alpha(alpha: f64) -> Result<()> {
    if (0.0..=PI).contains(&alpha) {
        Ok(())
    } else {
        Err(Error::Domain(format!("relative angle {alpha} outside [0, π]")))
    }
}

/// A probability density on `[0, π]`.
#[derive(Clone)]
pub struct AngleDensity {
    name: String,
    f: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl AngleDensity {
    pub fn new(name: impl Into<String>, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Result<Self> {
        let d = Self { name: name.into(), f: Arc::new(f) };
        let total = d.normalisation();
        if (total - 1.0).abs() > 1e-10 {
            return Err(Error::Domain(format!("density `{}` integrates to {total}", d.name)));
        }
        Ok(d)
    }

    pub fn eval(&self, alpha: f64) -> f64 {
        (self.f)(alpha)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn normalisation(&self) -> f64 {
        integrate_adaptive(|a| self.eval(a), NORM_TOL).value
    }
}

impl fmt::Debug for AngleDensity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AngleDensity").field("name", &self.name).finish()
    }
}

/// A distribution over the relative angle `α ∈ [0, π]`.
#[derive(Clone, Debug)]
pub enum AngleDistribution {
    /// `(α, weight)` support points.
    Discrete(Vec<(f64, f64)>),
    Density(AngleDensity),
}

pub type PriorOverAngle = AngleDistribution;

impl AngleDistribution {
    pub fn discrete(support: Vec<(f64, f64)>) -> Result<Self> {
        if support.is_empty() {
            return Err(Error::Domain("empty support".into()));
        }
        for &(a, w) in &support {
            check_alpha(a)?;
            if w.is_nan() || w < 0.0 {
                return Err(Error::Domain(format!("negative weight {w}")));
            }
        }
        let total: f64 = support.iter().map(|p| p.1).sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::Domain(format!("weights sum to {total}")));
        }
        Ok(Self::Discrete(support))
    }

    /// Equal weight on parallel and anti-parallel spins.
    pub fn parallel_antiparallel() -> Self {
        Self::Discrete(vec![(0.0, 0.5), (PI, 0.5)])
    }

    /// Both directions independently uniform on the sphere: `p(α) = sin(α)/2`.
    pub fn uniform_directions() -> Self {
        Self::Density(AngleDensity { name: "sin(alpha)/2".into(), f: Arc::new(|a: f64| 0.5 * a.sin()) })
    }

    pub fn from_kind(kind: PriorKind) -> Self {
        match kind {
            PriorKind::ParallelAntiparallel => Self::parallel_antiparallel(),
            PriorKind::UniformDirections => Self::uniform_directions(),
        }
    }

    /// Weight (discrete) or density value at `alpha`.
    pub fn value_at(&self, alpha: f64) -> f64 {
        match self {
            Self::Discrete(s) => s.iter().filter(|p| p.0 == alpha).map(|p| p.1).sum(),
            Self::Density(d) => d.eval(alpha),
        }
    }

    /// `E[g(α)]`.
    pub fn expectation(&self, g: impl Fn(f64) -> f64) -> f64 {
        match self {
            Self::Discrete(s) => s.iter().map(|&(a, w)| w * g(a)).sum(),
            Self::Density(d) => integrate_adaptive(|a| d.eval(a) * g(a), NORM_TOL).value,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PriorKind {
    ParallelAntiparallel,
    UniformDirections,
}

#[derive(Clone, Debug)]
pub struct PosteriorOverAngle {
    pub outcome: String,
    /// `p(λ)`.
    pub evidence: f64,
    pub distribution: AngleDistribution,
}

/// One element `E_λ = Σ_J s_{λ,J} Π_J`.
#[derive(Clone, Debug, PartialEq)]
pub struct PovmElement {
    pub label: String,
    /// `s_{λ,J}` in increasing `J`.
    pub weights: Vec<f64>,
}

/// A rotationally invariant POVM on `H_{j1} ⊗ H_{j2}`.
#[derive(Clone, Debug, PartialEq)]
pub struct RotInvariantPovm {
    pub j1: SpinQuantumNumber,
    pub j2: SpinQuantumNumber,
    pub elements: Vec<PovmElement>,
}

impl RotInvariantPovm {
    pub fn new(j1: SpinQuantumNumber, j2: SpinQuantumNumber, elements: Vec<PovmElement>) -> Result<Self> {
        let n_j = total_j_values(j1, j2).len();
        if elements.is_empty() {
            return Err(Error::Domain("POVM needs at least one element".into()));
        }
        for e in &elements {
            if e.weights.len() != n_j {
                return Err(Error::Domain(format!("element `{}` has {} weights, expected {n_j}", e.label, e.weights.len())));
            }
            if e.weights.iter().any(|&w| w.is_nan() || w < 0.0) {
                return Err(Error::Domain(format!("element `{}` has a negative weight", e.label)));
            }
        }
        for k in 0..n_j {
            let total: f64 = elements.iter().map(|e| e.weights[k]).sum();
            if (total - 1.0).abs() > 1e-12 {
                return Err(Error::Domain(format!("weights for block {k} sum to {total}")));
            }
        }
        Ok(Self { j1, j2, elements })
    }

    /// The projective measurement `{Π_J}`.
    pub fn optimal(j1: SpinQuantumNumber, j2: SpinQuantumNumber) -> Self {
        let js = total_j_values(j1, j2);
        let elements = js
            .iter()
            .enumerate()
            .map(|(k, j)| PovmElement {
                label: format!("J={j}"),
                weights: (0..js.len()).map(|i| if i == k { 1.0 } else { 0.0 }).collect(),
            })
            .collect();
        Self { j1, j2, elements }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn labels(&self) -> Vec<&str> {
        self.elements.iter().map(|e| e.label.as_str()).collect()
    }

    pub fn outcome_index(&self, label: &str) -> Result<usize> {
        self.elements
            .iter()
            .position(|e| e.label == label)
            .ok_or_else(|| Error::Domain(format!("no outcome labelled `{label}`")))
    }

    /// `p(λ|α)` given block weights `p(J|α)`.
    pub fn likelihood(&self, outcome: usize, block_probs: &[f64]) -> f64 {
        self.elements[outcome].weights.iter().zip(block_probs).map(|(s, p)| s * p).sum()
    }

    /// Dense operator `Σ_J s_{λ,J} Π_J`.
    pub fn element_operator(&self, outcome: usize, dec: &CouplingDecomposition) -> Operator {
        let d = dec.dim();
        let mut m = Operator::zeros(d, d);
        for (s, p) in self.elements[outcome].weights.iter().zip(dec.projectors()) {
            if *s != 0.0 {
                m += p.matrix * C64::new(*s, 0.0);
            }
        }
        m
    }

    /// Post-processing `E'_μ = Σ_λ q(μ|λ) E_λ` with a row-stochastic `q`
    /// indexed `[λ][μ]`.
    pub fn coarse_grain(&self, q: &[Vec<f64>]) -> Result<Self> {
        if q.len() != self.len() {
            return Err(Error::Domain("coarse-graining matrix has wrong row count".into()));
        }
        let n_out = q[0].len();
        let n_j = self.elements[0].weights.len();
        let elements = (0..n_out)
            .map(|mu| PovmElement {
                label: format!("mu{mu}"),
                weights: (0..n_j).map(|k| (0..self.len()).map(|l| q[l][mu] * self.elements[l].weights[k]).sum()).collect(),
            })
            .collect();
        Self::new(self.j1, self.j2, elements)
    }
}

fn likelihood_fn(model: &AngleModel, povm: &RotInvariantPovm, outcome: usize) -> impl Fn(f64) -> f64 + Send + Sync + 'static {
    let model = model.clone();
    let weights = povm.elements[outcome].weights.clone();
    move |a: f64| model.probabilities(a).iter().zip(&weights).map(|(p, s)| p * s).sum()
}

fn check_povm_matches(model: &AngleModel, povm: &RotInvariantPovm) -> Result<()> {
    if model.total_js().len() != povm.elements[0].weights.len() {
        return Err(Error::Domain(format!(
            "POVM for {} ⊗ {} does not match model for {} ⊗ {}",
            povm.j1,
            povm.j2,
            model.spins().0,
            model.spins().1
        )));
    }
    Ok(())
}

/// Posterior `p(α|λ) = p(λ|α) p(α) / p(λ)`.
pub fn bayes_update(
    prior: &PriorOverAngle,
    model: &AngleModel,
    povm: &RotInvariantPovm,
    outcome: usize,
) -> Result<PosteriorOverAngle> {
    check_povm_matches(model, povm)?;
    let label = povm
        .elements
        .get(outcome)
        .ok_or_else(|| Error::Domain(format!("outcome index {outcome} out of range")))?
        .label
        .clone();
    match prior {
        AngleDistribution::Discrete(support) => {
            let joint: Vec<(f64, f64)> = support
                .iter()
                .map(|&(a, w)| (a, w * povm.likelihood(outcome, &model.probabilities(a))))
                .collect();
            let evidence: f64 = joint.iter().map(|p| p.1).sum();
            if evidence <= 1e-15 {
                return Err(Error::ImpossibleOutcome(label));
            }
            let post: Vec<(f64, f64)> = joint.iter().map(|&(a, w)| (a, w / evidence)).collect();
            // renormalise so the weights sum to one to the last bit available
            let total: f64 = post.iter().map(|p| p.1).sum();
            let post = post.into_iter().map(|(a, w)| (a, w / total)).collect();
            Ok(PosteriorOverAngle { outcome: label, evidence, distribution: AngleDistribution::Discrete(post) })
        }
        AngleDistribution::Density(d) => {
            let lik = likelihood_fn(model, povm, outcome);
            let pf = d.f.clone();
            let evidence = integrate_adaptive(|a| pf(a) * lik(a), NORM_TOL).value;
            if evidence <= 1e-15 {
                return Err(Error::ImpossibleOutcome(label));
            }
            let density = AngleDensity {
                name: format!("posterior[{label}]"),
                f: Arc::new(move |a: f64| pf(a) * lik(a) / evidence),
            };
            Ok(PosteriorOverAngle { outcome: label, evidence, distribution: AngleDistribution::Density(density) })
        }
    }
}

/// `q log2(q/p)` with `0 log 0 = 0`.
fn kl_term(q: f64, p: f64, alpha: f64) -> Result<f64> {
    if q <= 0.0 {
        Ok(0.0)
    } else if p <= 0.0 {
        Err(Error::Divergence { alpha, mass: q })
    } else {
        Ok(q * (q / p).log2())
    }
}

/// Kullback-Leibler divergence `D(posterior || prior)` in bits.
pub fn information_gain(prior: &PriorOverAngle, posterior: &AngleDistribution) -> Result<f64> {
    match (prior, posterior) {
        (AngleDistribution::Discrete(p), AngleDistribution::Discrete(q)) => {
            if p.len() != q.len() || p.iter().zip(q).any(|(a, b)| a.0 != b.0) {
                return Err(Error::Domain("prior and posterior have different supports".into()));
            }
            p.iter().zip(q).map(|(&(a, pw), &(_, qw))| kl_term(qw, pw, a)).sum()
        }
        (AngleDistribution::Density(p), AngleDistribution::Density(q)) => {
            let failure = std::sync::Mutex::new(None);
            let value = integrate_adaptive(
                |a| {
                    kl_term(q.eval(a), p.eval(a), a).unwrap_or_else(|e| {
                        failure.lock().unwrap().get_or_insert(e);
                        0.0
                    })
                },
                INFO_TOL,
            )
            .value;
            match failure.into_inner().unwrap() {
                Some(e) => Err(e),
                None => Ok(value),
            }
        }
        _ => Err(Error::Domain("prior and posterior use different representations".into())),
    }
}

#[derive(Clone, Debug)]
pub struct OutcomeReport {
    pub label: String,
    pub probability: f64,
    /// `None` when the outcome cannot occur.
    pub posterior: Option<PosteriorOverAngle>,
    pub information_bits: f64,
}

#[derive(Clone, Debug)]
pub struct EstimationReport {
    pub povm: RotInvariantPovm,
    pub outcomes: Vec<OutcomeReport>,
    pub average_bits: f64,
}

/// Per-outcome probabilities, posteriors and gains, plus their average.
pub fn average_information_gain(
    model: &AngleModel,
    prior: &PriorOverAngle,
    povm: &RotInvariantPovm,
) -> Result<EstimationReport> {
    check_povm_matches(model, povm)?;
    let mut outcomes = Vec::with_capacity(povm.len());
    for (k, e) in povm.elements.iter().enumerate() {
        match bayes_update(prior, model, povm, k) {
            Ok(post) => {
                let info = information_gain(prior, &post.distribution)?;
                outcomes.push(OutcomeReport {
                    label: e.label.clone(),
                    probability: post.evidence,
                    information_bits: info,
                    posterior: Some(post),
                });
            }
            Err(Error::ImpossibleOutcome(_)) => outcomes.push(OutcomeReport {
                label: e.label.clone(),
                probability: 0.0,
                posterior: None,
                information_bits: 0.0,
            }),
            Err(err) => return Err(err),
        }
    }
    let average_bits = outcomes.iter().map(|o| o.probability * o.information_bits).sum();
    Ok(EstimationReport { povm: povm.clone(), outcomes, average_bits })
}

/// Maximum a posteriori angle. Discrete ties resolve to the smaller angle.
pub fn map_estimate(posterior: &AngleDistribution) -> f64 {
    match posterior {
        AngleDistribution::Discrete(s) => {
            let mut sorted = s.clone();
            sorted.sort_by(|a, b| a.0.total_cmp(&b.0));
            let mut best = sorted[0];
            for &p in &sorted[1..] {
                if p.1 > best.1 {
                    best = p;
                }
            }
            best.0
        }
        AngleDistribution::Density(d) => {
            let rule = GaussLegendre::on_zero_pi(128);
            let mut grid = Vec::with_capacity(rule.len() + 2);
            grid.push(0.0);
            grid.extend_from_slice(&rule.nodes);
            grid.push(PI);
            let (best, _) = grid
                .iter()
                .enumerate()
                .map(|(i, &a)| (i, d.eval(a)))
                .fold((0, f64::NEG_INFINITY), |acc, (i, v)| if v > acc.1 { (i, v) } else { acc });
            let lo = grid[best.saturating_sub(1)];
            let hi = grid[(best + 1).min(grid.len() - 1)];
            golden_section_max(|a| d.eval(a), lo, hi, 1e-10)
        }
    }
}

fn golden_section_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while b - a > tol {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    let mid = 0.5 * (a + b);
    // endpoint maxima survive the bracket shrinking toward them
    [a, mid, b].into_iter().fold(mid, |best, x| if f(x) > f(best) { x } else { best })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PovmKind {
    Optimal,
    OptimalLocal,
}

/// One of the four spin-1/2 ⊗ spin-j information-gain curves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Scenario {
    pub prior: PriorKind,
    pub povm: PovmKind,
}

impl Scenario {
    pub const A: Self = Self { prior: PriorKind::ParallelAntiparallel, povm: PovmKind::Optimal };
    pub const B: Self = Self { prior: PriorKind::ParallelAntiparallel, povm: PovmKind::OptimalLocal };
    pub const C: Self = Self { prior: PriorKind::UniformDirections, povm: PovmKind::Optimal };
    pub const D: Self = Self { prior: PriorKind::UniformDirections, povm: PovmKind::OptimalLocal };

    pub fn letter(self) -> char {
        match (self.prior, self.povm) {
            (PriorKind::ParallelAntiparallel, PovmKind::Optimal) => 'a',
            (PriorKind::ParallelAntiparallel, PovmKind::OptimalLocal) => 'b',
            (PriorKind::UniformDirections, PovmKind::Optimal) => 'c',
            (PriorKind::UniformDirections, PovmKind::OptimalLocal) => 'd',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        match c.to_ascii_lowercase() {
            'a' => Some(Self::A),
            'b' => Some(Self::B),
            'c' => Some(Self::C),
            'd' => Some(Self::D),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CurveRow {
    pub j: SpinQuantumNumber,
    pub average_bits: f64,
}

/// Average gain for spin-1/2 ⊗ spin-j under `scenario`.
pub fn scenario_report(j: SpinQuantumNumber, scenario: Scenario) -> Result<EstimationReport> {
    let half = SpinQuantumNumber::HALF;
    let povm = match scenario.povm {
        PovmKind::Optimal => RotInvariantPovm::optimal(half, j),
        PovmKind::OptimalLocal => crate::locc::optimal_local_povm(j)?,
    };
    let model = AngleModel::ClosedForm { j1: half, j2: j };
    average_information_gain(&model, &AngleDistribution::from_kind(scenario.prior), &povm)
}

/// One row per `j`, computed in parallel; row order follows `js`.
pub fn infogain_curve(js: &[SpinQuantumNumber], scenario: Scenario) -> Result<Vec<CurveRow>> {
    js.par_iter()
        .map(|&j| scenario_report(j, scenario).map(|r| CurveRow { j, average_bits: r.average_bits }))
        .collect()
}

/// Largest gap between `p(J|α)` and the Born probabilities of measuring the
/// spin-`j1` coherent state along the classical axis of the spin-`j2` system,
/// where outcome `J = j2 + m` pairs with projection `m`.
pub fn born_limit_check(j1: SpinQuantumNumber, alpha: f64, j2: SpinQuantumNumber) -> Result<f64> {
    check_alpha(alpha)?;
    if j2 < j1 {
        return Err(Error::Domain(format!("the classical spin j2 = {j2} must be at least j1 = {j1}")));
    }
    let probs = AngleModel::new(j1, j2)?.probabilities(alpha);
    let (s, c) = (0.5 * alpha).sin_cos();
    let n = j1.twice() as i32;
    let born = (0..=n).map(|k| {
        // k = j1 + m counts up from m = -j1
        binomial(n as u32, k as u32) * c.powi(2 * k) * s.powi(2 * (n - k))
    });
    Ok(probs.iter().zip(born).map(|(p, b)| (p - b).abs()).fold(0.0, f64::max))
}

fn binomial(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}
