//! Monte Carlo oracles: Haar-random rotations, outcome sampling and
//! repeated single-shot experiments.

use std::f64::consts::PI;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::angular::{Direction, Rotation};
use crate::coupling::{decomposition, CouplingDecomposition};
use crate::error::{Error, Result};
use crate::estimation::{average_information_gain, AngleDistribution, AngleModel, PriorOverAngle, RotInvariantPovm};
use crate::spin::SpinQuantumNumber;
use crate::states::{invariant_average_with, product_coherent_pair, DensityMatrix, InvariantState};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RandomSeed(pub u64);

impl RandomSeed {
    /// Generator for the whole experiment.
    pub fn stream(self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.0)
    }

    /// Independent generator for trial `index`; same seed and index always
    /// give the same stream regardless of execution order.
    pub fn trial_stream(self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.0);
        rng.set_stream(index);
        rng
    }
}

/// Haar-random SU(2) element as Euler angles: `cos β` uniform on `[-1, 1]`,
/// `α` uniform on `[0, 2π)` and `γ` uniform on `[0, 4π)` so both sheets of
/// the double cover are reached.
pub fn haar_rotation<R: Rng + ?Sized>(rng: &mut R) -> Rotation {
    let alpha = rng.gen_range(0.0..2.0 * PI);
    let beta = rng.gen_range(-1.0f64..=1.0).acos();
    let gamma = rng.gen_range(0.0..4.0 * PI);
    Rotation::new(alpha, beta, gamma)
}

/// A state whose outcome statistics under an invariant POVM are requested.
#[derive(Clone, Copy, Debug)]
pub enum MeasuredState<'a> {
    Dense(&'a DensityMatrix),
    Invariant(&'a InvariantState),
}

/// `Tr(E_λ ρ)` for every element.
pub fn outcome_distribution(state: MeasuredState<'_>, povm: &RotInvariantPovm) -> Result<Vec<f64>> {
    let blocks = match state {
        MeasuredState::Dense(rho) => {
            let (j1, j2) = rho.spins();
            check_spins(povm, j1, j2)?;
            invariant_average_with(rho, &decomposition(j1, j2)?).probabilities()
        }
        MeasuredState::Invariant(inv) => {
            check_spins(povm, inv.j1, inv.j2)?;
            inv.probabilities()
        }
    };
    Ok((0..povm.len()).map(|k| povm.likelihood(k, &blocks)).collect())
}

fn check_spins(povm: &RotInvariantPovm, j1: SpinQuantumNumber, j2: SpinQuantumNumber) -> Result<()> {
    if (povm.j1, povm.j2) != (j1, j2) {
        return Err(Error::Domain(format!("POVM on {} ⊗ {} applied to a {j1} ⊗ {j2} state", povm.j1, povm.j2)));
    }
    Ok(())
}

/// Categorical sampler over precomputed outcome probabilities.
#[derive(Clone, Debug)]
pub struct OutcomeSampler {
    cumulative: Vec<f64>,
}

impl OutcomeSampler {
    pub fn new(probs: &[f64]) -> Result<Self> {
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > 1e-9 || probs.iter().any(|&p| p < -1e-12) {
            return Err(Error::Consistency(format!("outcome probabilities {probs:?} do not form a distribution")));
        }
        let mut acc = 0.0;
        let cumulative = probs
            .iter()
            .map(|&p| {
                acc += p.max(0.0);
                acc
            })
            .collect();
        Ok(Self { cumulative })
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let total = *self.cumulative.last().unwrap();
        let u = rng.gen::<f64>() * total;
        // skip zero-probability outcomes even when u lands on a boundary
        self.cumulative.iter().position(|&c| u < c).unwrap_or(self.cumulative.len() - 1)
    }
}

pub fn sample_outcome<R: Rng + ?Sized>(
    state: MeasuredState<'_>,
    povm: &RotInvariantPovm,
    rng: &mut R,
) -> Result<usize> {
    let probs = outcome_distribution(state, povm)?;
    Ok(OutcomeSampler::new(&probs)?.sample(rng))
}

/// Draws relative angles from a prior.
#[derive(Clone, Debug)]
enum AngleSampler {
    Discrete { alphas: Vec<f64>, sampler: OutcomeSampler },
    Rejection { prior: PriorOverAngle, bound: f64 },
}

impl AngleSampler {
    fn new(prior: &PriorOverAngle) -> Result<Self> {
        match prior {
            AngleDistribution::Discrete(s) => Ok(Self::Discrete {
                alphas: s.iter().map(|p| p.0).collect(),
                sampler: OutcomeSampler::new(&s.iter().map(|p| p.1).collect::<Vec<_>>())?,
            }),
            AngleDistribution::Density(d) => {
                let peak = (0..=4096).map(|k| d.eval(PI * k as f64 / 4096.0)).fold(0.0, f64::max);
                Ok(Self::Rejection { prior: prior.clone(), bound: 1.05 * peak + 1e-12 })
            }
        }
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self {
            Self::Discrete { alphas, sampler } => alphas[sampler.sample(rng)],
            Self::Rejection { prior, bound } => loop {
                let a = rng.gen_range(0.0..=PI);
                if rng.gen::<f64>() * bound <= prior.value_at(a) {
                    return a;
                }
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentSummary {
    pub n_trials: usize,
    pub labels: Vec<String>,
    pub counts: Vec<usize>,
    pub frequencies: Vec<f64>,
    /// `sqrt(f (1 - f) / n)` per outcome.
    pub frequency_std_errors: Vec<f64>,
    pub mean_gain_bits: f64,
    /// Sample standard deviation of the per-trial gain over `sqrt(n)`.
    pub gain_std_error: f64,
    /// Analytic `I_av` the mean gain estimates.
    pub analytic_average_bits: f64,
    /// Analytic `p(λ)`.
    pub analytic_probabilities: Vec<f64>,
}

/// One trial: draw `α` from the prior and `Ω` from Haar, prepare
/// `R(Ω)(|+z> ⊗ |n_α>)`, and sample an outcome.
fn run_trial(
    seed: RandomSeed,
    index: u64,
    angles: &AngleSampler,
    dec: &CouplingDecomposition,
    povm: &RotInvariantPovm,
) -> Result<usize> {
    let mut rng = seed.trial_stream(index);
    let alpha = angles.sample(&mut rng);
    let omega = haar_rotation(&mut rng);
    let n1 = omega.apply(Direction::PLUS_Z);
    let n2 = omega.apply(Direction::in_xz_plane(alpha));
    let rho = product_coherent_pair(dec.j1, dec.j2, n1, n2)?;
    let blocks = invariant_average_with(&rho, dec).probabilities();
    let probs: Vec<f64> = (0..povm.len()).map(|k| povm.likelihood(k, &blocks)).collect();
    Ok(OutcomeSampler::new(&probs)?.sample(&mut rng))
}

/// Repeated single-shot experiments. Trials run in parallel on per-trial
/// streams and are aggregated in trial order.
pub fn run_experiment(
    j1: SpinQuantumNumber,
    j2: SpinQuantumNumber,
    prior: &PriorOverAngle,
    povm: &RotInvariantPovm,
    n_trials: usize,
    seed: RandomSeed,
) -> Result<ExperimentSummary> {
    if n_trials == 0 {
        return Err(Error::Domain("need at least one trial".into()));
    }
    check_spins(povm, j1, j2)?;
    let report = average_information_gain(&AngleModel::new(j1, j2)?, prior, povm)?;
    let gains: Vec<f64> = report.outcomes.iter().map(|o| o.information_bits).collect();
    let dec = decomposition(j1, j2)?;
    let angles = AngleSampler::new(prior)?;

    let outcomes: Vec<usize> = (0..n_trials as u64)
        .into_par_iter()
        .map(|t| run_trial(seed, t, &angles, &dec, povm))
        .collect::<Result<_>>()?;

    let mut counts = vec![0usize; povm.len()];
    let mut sum = 0.0;
    for &k in &outcomes {
        counts[k] += 1;
        sum += gains[k];
    }
    let n = n_trials as f64;
    let mean = sum / n;
    let var = if n_trials > 1 {
        outcomes.iter().map(|&k| (gains[k] - mean).powi(2)).sum::<f64>() / (n - 1.0)
    } else {
        0.0
    };
    let frequencies: Vec<f64> = counts.iter().map(|&c| c as f64 / n).collect();
    Ok(ExperimentSummary {
        n_trials,
        labels: povm.elements.iter().map(|e| e.label.clone()).collect(),
        frequency_std_errors: frequencies.iter().map(|f| (f * (1.0 - f) / n).sqrt()).collect(),
        counts,
        frequencies,
        mean_gain_bits: mean,
        gain_std_error: (var / n).sqrt(),
        analytic_average_bits: report.average_bits,
        analytic_probabilities: report.outcomes.iter().map(|o| o.probability).collect(),
    })
}
