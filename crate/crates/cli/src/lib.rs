//! Scenario configuration, command execution and serialization behind the
//! `relspin` binary. Every command returns its output as a string so the
//! binary only decides where to write it.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use relspin::{
    average_information_gain, infogain_curve, map_estimate, optimal_local_povm, ppt_threshold, run_experiment,
    AngleDistribution, AngleModel, EstimationReport, PovmKind, PriorKind, RandomSeed, RotInvariantPovm, Scenario,
    SpinQuantumNumber,
};
use serde::Serialize;

pub const SCHEMA: u32 = 1;
pub const DEFAULT_GRID: usize = 181;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Consistency(String),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Usage(_) => 2,
            Self::Consistency(_) | Self::Io(_) => 1,
        }
    }
}

impl From<relspin::Error> for CliError {
    fn from(e: relspin::Error) -> Self {
        match e {
            relspin::Error::Domain(_) | relspin::Error::Capacity { .. } => Self::Usage(e.to_string()),
            _ => Self::Consistency(e.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        match s {
            "csv" => Ok(Self::Csv),
            "json" => Ok(Self::Json),
            _ => Err(CliError::Usage(format!("format: expected csv or json, got `{s}`"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Csv => "csv",
            Self::Json => "json",
        })
    }
}

pub fn parse_prior(s: &str) -> CliResult<PriorKind> {
    match s {
        "pap" => Ok(PriorKind::ParallelAntiparallel),
        "uniform" => Ok(PriorKind::UniformDirections),
        _ => Err(CliError::Usage(format!("prior: expected pap or uniform, got `{s}`"))),
    }
}

pub fn prior_name(p: PriorKind) -> &'static str {
    match p {
        PriorKind::ParallelAntiparallel => "pap",
        PriorKind::UniformDirections => "uniform",
    }
}

pub fn parse_povm(s: &str) -> CliResult<PovmKind> {
    match s {
        "optimal" => Ok(PovmKind::Optimal),
        "local" => Ok(PovmKind::OptimalLocal),
        _ => Err(CliError::Usage(format!("povm: expected optimal or local, got `{s}`"))),
    }
}

pub fn povm_name(p: PovmKind) -> &'static str {
    match p {
        PovmKind::Optimal => "optimal",
        PovmKind::OptimalLocal => "local",
    }
}

/// Parses a spin label, naming `field` in the error.
pub fn parse_spin(field: &str, s: &str) -> CliResult<SpinQuantumNumber> {
    s.parse().map_err(|e: relspin::Error| CliError::Usage(format!("{field}: {e}")))
}

/// Angle in `[0, π]` written as a number or as `pi`, `pi/n`, `k*pi/n`, `kpi/n`.
pub fn parse_alpha(s: &str) -> CliResult<f64> {
    let bad = || CliError::Usage(format!("alpha: `{s}` is not a number or a multiple of pi"));
    let t = s.trim();
    let value = if let Some(pos) = t.find("pi") {
        let coeff = t[..pos].trim_end_matches('*').trim();
        let coeff: f64 = if coeff.is_empty() { 1.0 } else { coeff.parse().map_err(|_| bad())? };
        let rest = t[pos + 2..].trim();
        let den: f64 = match rest.strip_prefix('/') {
            Some(d) => d.trim().parse().map_err(|_| bad())?,
            None if rest.is_empty() => 1.0,
            None => return Err(bad()),
        };
        let v = coeff * PI / den;
        // `pi/1`, `3pi/3` and friends land exactly on the endpoint
        if (v - PI).abs() < 1e-15 {
            PI
        } else {
            v
        }
    } else {
        t.parse().map_err(|_| bad())?
    };
    if !(0.0..=PI).contains(&value) {
        return Err(CliError::Usage(format!("alpha: {value} is outside [0, pi]")));
    }
    Ok(value)
}

/// One estimation scenario. The canonical text form is space-separated
/// `key=value` tokens in the order `j1 j2 prior povm format [seed] [alpha]`.
#[derive(Clone, Debug, PartialEq)]
pub struct ScenarioConfig {
    pub j1: SpinQuantumNumber,
    pub j2: SpinQuantumNumber,
    pub prior: PriorKind,
    pub povm: PovmKind,
    pub format: Format,
    pub seed: Option<u64>,
    pub alpha: Option<f64>,
}

impl fmt::Display for ScenarioConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "j1={} j2={} prior={} povm={} format={}",
            self.j1,
            self.j2,
            prior_name(self.prior),
            povm_name(self.povm),
            self.format
        )?;
        if let Some(seed) = self.seed {
            write!(f, " seed={seed}")?;
        }
        if let Some(alpha) = self.alpha {
            write!(f, " alpha={alpha:?}")?;
        }
        Ok(())
    }
}

impl FromStr for ScenarioConfig {
    type Err = CliError;

    fn from_str(s: &str) -> CliResult<Self> {
        let mut fields: Vec<(&str, &str)> = Vec::new();
        for token in s.split_whitespace() {
            let (k, v) = token
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("config: token `{token}` is not key=value")))?;
            if fields.iter().any(|f| f.0 == k) {
                return Err(CliError::Usage(format!("config: duplicate key `{k}`")));
            }
            fields.push((k, v));
        }
        let get = |k: &str| fields.iter().find(|f| f.0 == k).map(|f| f.1);
        let need = |k: &str| get(k).ok_or_else(|| CliError::Usage(format!("config: missing `{k}`")));
        for (k, _) in &fields {
            if !["j1", "j2", "prior", "povm", "format", "seed", "alpha"].contains(k) {
                return Err(CliError::Usage(format!("config: unknown key `{k}`")));
            }
        }
        Ok(Self {
            j1: parse_spin("j1", need("j1")?)?,
            j2: parse_spin("j2", need("j2")?)?,
            prior: parse_prior(need("prior")?)?,
            povm: parse_povm(need("povm")?)?,
            format: need("format")?.parse()?,
            seed: get("seed")
                .map(|v| v.parse().map_err(|_| CliError::Usage(format!("seed: `{v}` is not a u64"))))
                .transpose()?,
            alpha: get("alpha").map(parse_alpha).transpose()?,
        })
    }
}

/// Rounds to 10 significant digits.
pub fn sig10(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.9e}").parse().unwrap_or(x)
}

fn to_json<T: Serialize>(value: &T) -> CliResult<String> {
    serde_json::to_string_pretty(value)
        .map(|s| s + "\n")
        .map_err(|e| CliError::Consistency(format!("serialization failed: {e}")))
}

fn grid(n: usize) -> Vec<f64> {
    (0..n).map(|k| if k + 1 == n { PI } else { PI * k as f64 / (n - 1) as f64 }).collect()
}

#[derive(Serialize)]
struct ProbRow {
    alpha: f64,
    #[serde(rename = "J")]
    j: String,
    probability: f64,
}

#[derive(Serialize)]
struct ProbTable {
    schema: u32,
    j1: String,
    j2: String,
    rows: Vec<ProbRow>,
}

/// `p(J|α)` for every `J` on the default grid, or at `config.alpha`.
pub fn cmd_probs(config: &ScenarioConfig) -> CliResult<String> {
    let model = AngleModel::new(config.j1, config.j2)?;
    let js = model.total_js();
    let alphas = match config.alpha {
        Some(a) => vec![a],
        None => grid(DEFAULT_GRID),
    };
    let mut rows = Vec::with_capacity(alphas.len() * js.len());
    for &alpha in &alphas {
        let probs = model.probabilities(alpha);
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > 1e-10 {
            return Err(CliError::Consistency(format!("probabilities at alpha = {alpha} sum to {total}")));
        }
        for (j, p) in js.iter().zip(probs) {
            rows.push(ProbRow { alpha, j: j.to_string(), probability: p });
        }
    }
    match config.format {
        Format::Csv => {
            let mut out = String::from("alpha,J,probability\n");
            for r in rows {
                out.push_str(&format!("{},{},{}\n", r.alpha, r.j, r.probability));
            }
            Ok(out)
        }
        Format::Json => {
            let rows = rows.into_iter().map(|r| ProbRow { alpha: sig10(r.alpha), probability: sig10(r.probability), ..r });
            to_json(&ProbTable { schema: SCHEMA, j1: config.j1.to_string(), j2: config.j2.to_string(), rows: rows.collect() })
        }
    }
}

/// The POVM named by `kind` on `j1 ⊗ j2`. The local POVM needs one spin-1/2.
pub fn build_povm(kind: PovmKind, j1: SpinQuantumNumber, j2: SpinQuantumNumber) -> CliResult<RotInvariantPovm> {
    let half = SpinQuantumNumber::HALF;
    match kind {
        PovmKind::Optimal => Ok(RotInvariantPovm::optimal(j1, j2)),
        PovmKind::OptimalLocal if j1 == half => Ok(optimal_local_povm(j2)?),
        PovmKind::OptimalLocal if j2 == half => {
            // the block weights only depend on J, so swapping the factors keeps them
            let p = optimal_local_povm(j1)?;
            Ok(RotInvariantPovm::new(j1, j2, p.elements)?)
        }
        PovmKind::OptimalLocal => {
            Err(CliError::Usage(format!("povm: the local measurement needs a spin-1/2, got {j1} and {j2}")))
        }
    }
}

#[derive(Serialize)]
struct PovmJson {
    j1: String,
    j2: String,
    kind: &'static str,
    #[serde(rename = "J")]
    js: Vec<String>,
    elements: Vec<ElementJson>,
}

#[derive(Serialize)]
struct ElementJson {
    label: String,
    weights: Vec<f64>,
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum PosteriorJson {
    Discrete { support: Vec<SupportPoint> },
    Density { map_alpha: f64, mean_alpha: f64 },
}

#[derive(Serialize)]
struct SupportPoint {
    alpha: f64,
    weight: f64,
}

#[derive(Serialize)]
struct OutcomeJson {
    label: String,
    p: f64,
    #[serde(rename = "I_bits")]
    i_bits: f64,
    posterior: Option<PosteriorJson>,
}

#[derive(Serialize)]
struct ReportJson {
    schema: u32,
    config: String,
    povm: PovmJson,
    outcomes: Vec<OutcomeJson>,
    #[serde(rename = "I_av_bits")]
    i_av_bits: f64,
}

fn posterior_json(d: &AngleDistribution) -> PosteriorJson {
    match d {
        AngleDistribution::Discrete(s) => PosteriorJson::Discrete {
            support: s.iter().map(|&(a, w)| SupportPoint { alpha: sig10(a), weight: sig10(w) }).collect(),
        },
        AngleDistribution::Density(_) => {
            PosteriorJson::Density { map_alpha: sig10(map_estimate(d)), mean_alpha: sig10(d.expectation(|a| a)) }
        }
    }
}

pub fn estimation_report(config: &ScenarioConfig) -> CliResult<EstimationReport> {
    let povm = build_povm(config.povm, config.j1, config.j2)?;
    let model = AngleModel::new(config.j1, config.j2)?;
    Ok(average_information_gain(&model, &AngleDistribution::from_kind(config.prior), &povm)?)
}

/// Outcome probabilities, posteriors and information gains as JSON.
pub fn cmd_report(config: &ScenarioConfig) -> CliResult<String> {
    if config.format == Format::Csv {
        return Err(CliError::Usage("format: report is only available as json".into()));
    }
    let report = estimation_report(config)?;
    let js = relspin::total_j_values(config.j1, config.j2);
    let json = ReportJson {
        schema: SCHEMA,
        config: config.to_string(),
        povm: PovmJson {
            j1: config.j1.to_string(),
            j2: config.j2.to_string(),
            kind: povm_name(config.povm),
            js: js.iter().map(|j| j.to_string()).collect(),
            elements: report
                .povm
                .elements
                .iter()
                .map(|e| ElementJson { label: e.label.clone(), weights: e.weights.iter().copied().map(sig10).collect() })
                .collect(),
        },
        outcomes: report
            .outcomes
            .iter()
            .map(|o| OutcomeJson {
                label: o.label.clone(),
                p: sig10(o.probability),
                i_bits: sig10(o.information_bits),
                posterior: o.posterior.as_ref().map(|p| posterior_json(&p.distribution)),
            })
            .collect(),
        i_av_bits: sig10(report.average_bits),
    };
    to_json(&json)
}

/// Half-integers from `min` to `max` inclusive in steps of `step`.
pub fn spin_range(
    min: SpinQuantumNumber,
    max: SpinQuantumNumber,
    step: SpinQuantumNumber,
) -> CliResult<Vec<SpinQuantumNumber>> {
    if step.twice() == 0 {
        return Err(CliError::Usage("j-step: must be positive".into()));
    }
    if min.twice() == 0 {
        return Err(CliError::Usage("j-min: must be at least 1/2".into()));
    }
    if min > max {
        return Err(CliError::Usage(format!("j-min: empty range {min}..{max}")));
    }
    Ok((min.twice()..=max.twice()).step_by(step.twice() as usize).map(SpinQuantumNumber::from_twice).collect())
}

pub fn parse_curves(s: &str) -> CliResult<Vec<Scenario>> {
    let out: Vec<Scenario> = s
        .chars()
        .map(|c| Scenario::from_letter(c).ok_or_else(|| CliError::Usage(format!("curves: unknown curve `{c}`"))))
        .collect::<CliResult<_>>()?;
    if out.is_empty() {
        return Err(CliError::Usage("curves: no curve selected".into()));
    }
    Ok(out)
}

#[derive(Serialize)]
struct CurveRowJson {
    j: String,
    #[serde(rename = "I_av_bits")]
    i_av_bits: f64,
    scenario: char,
}

#[derive(Serialize)]
struct CurveJson {
    schema: u32,
    rows: Vec<CurveRowJson>,
}

/// Average gain for spin-1/2 ⊗ spin-j over a range of `j`, one block of rows
/// per curve in the order given.
pub fn cmd_curve(js: &[SpinQuantumNumber], curves: &[Scenario], format: Format) -> CliResult<String> {
    let mut rows = Vec::new();
    for &scenario in curves {
        for r in infogain_curve(js, scenario)? {
            rows.push(CurveRowJson { j: r.j.to_string(), i_av_bits: r.average_bits, scenario: scenario.letter() });
        }
    }
    match format {
        Format::Csv => {
            let mut out = String::from("j,I_av_bits,scenario\n");
            for r in rows {
                out.push_str(&format!("{},{},{}\n", r.j, r.i_av_bits, r.scenario));
            }
            Ok(out)
        }
        Format::Json => {
            let rows = rows.into_iter().map(|r| CurveRowJson { i_av_bits: sig10(r.i_av_bits), ..r }).collect();
            to_json(&CurveJson { schema: SCHEMA, rows })
        }
    }
}

#[derive(Serialize)]
struct PptJson {
    schema: u32,
    j: String,
    x_star: f64,
    predicted: f64,
    abs_diff: f64,
}

/// PPT threshold of `Π_- + x Π_+` on spin-1/2 ⊗ spin-j.
pub fn cmd_ppt(j: SpinQuantumNumber, format: Format) -> CliResult<String> {
    let x = ppt_threshold(j)?;
    let predicted = 1.0 / (2.0 * j.value() + 2.0);
    let diff = (x - predicted).abs();
    match format {
        Format::Csv => Ok(format!("j,x_star,predicted,abs_diff\n{j},{x},{predicted},{diff}\n")),
        Format::Json => to_json(&PptJson {
            schema: SCHEMA,
            j: j.to_string(),
            x_star: sig10(x),
            predicted: sig10(predicted),
            abs_diff: sig10(diff),
        }),
    }
}

#[derive(Serialize)]
struct SimOutcomeJson {
    label: String,
    count: usize,
    frequency: f64,
    std_error: f64,
    analytic_p: f64,
}

#[derive(Serialize)]
struct SimulationJson {
    schema: u32,
    config: String,
    n_trials: usize,
    outcomes: Vec<SimOutcomeJson>,
    mean_gain_bits: f64,
    gain_std_error: f64,
    #[serde(rename = "analytic_I_av_bits")]
    analytic_i_av_bits: f64,
    /// `(mean - analytic) / std_error`; `null` when the gain does not vary.
    z_score: Option<f64>,
}

/// Monte Carlo experiment summary. The seed defaults to 0.
pub fn cmd_simulate(config: &ScenarioConfig, n_trials: usize) -> CliResult<String> {
    if n_trials == 0 {
        return Err(CliError::Usage("n: need at least one trial".into()));
    }
    if config.format == Format::Csv {
        return Err(CliError::Usage("format: simulate is only available as json".into()));
    }
    let povm = build_povm(config.povm, config.j1, config.j2)?;
    let prior = AngleDistribution::from_kind(config.prior);
    let seed = RandomSeed(config.seed.unwrap_or(0));
    let s = run_experiment(config.j1, config.j2, &prior, &povm, n_trials, seed)?;
    let z = (s.gain_std_error > 0.0).then(|| sig10((s.mean_gain_bits - s.analytic_average_bits) / s.gain_std_error));
    to_json(&SimulationJson {
        schema: SCHEMA,
        config: config.to_string(),
        n_trials: s.n_trials,
        outcomes: (0..s.labels.len())
            .map(|k| SimOutcomeJson {
                label: s.labels[k].clone(),
                count: s.counts[k],
                frequency: sig10(s.frequencies[k]),
                std_error: sig10(s.frequency_std_errors[k]),
                analytic_p: sig10(s.analytic_probabilities[k]),
            })
            .collect(),
        mean_gain_bits: sig10(s.mean_gain_bits),
        gain_std_error: sig10(s.gain_std_error),
        analytic_i_av_bits: sig10(s.analytic_average_bits),
        z_score: z,
    })
}
