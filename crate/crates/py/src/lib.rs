//! Python bindings. Spins are accepted as `Spin` objects, strings such as
//! `"3/2"`, or numbers that are integers or half-integers.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyComplex, PyDict, PyList};
use relspin::{
    average_information_gain, clebsch_gordan, infogain_curve, optimal_local_povm, outcome_probability, ppt_threshold,
    run_experiment, total_j_values, werner_state, AngleDistribution, AngleModel, PriorKind, RandomSeed,
    RotInvariantPovm, Scenario, SpinQuantumNumber,
};

fn to_py(e: relspin::Error) -> PyErr {
    match e {
        relspin::Error::Domain(_) | relspin::Error::Capacity { .. } => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

/// A spin quantum number `j ∈ {0, 1/2, 1, …}`.
#[pyclass(name = "Spin", frozen, eq, hash, skip_from_py_object)]
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct PySpin(SpinQuantumNumber);

#[pymethods]
impl PySpin {
    #[new]
    fn new(j: &Bound<'_, PyAny>) -> PyResult<Self> {
        spin_of(j).map(Self)
    }

    #[getter]
    fn twice_j(&self) -> u32 {
        self.0.twice()
    }

    #[getter]
    fn value(&self) -> f64 {
        self.0.value()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Spin('{}')", self.0)
    }
}

fn spin_of(obj: &Bound<'_, PyAny>) -> PyResult<SpinQuantumNumber> {
    if let Ok(s) = obj.cast::<PySpin>() {
        return Ok(s.get().0);
    }
    if let Ok(s) = obj.extract::<String>() {
        return s.parse().map_err(to_py);
    }
    if let Ok(x) = obj.extract::<f64>() {
        let twice = 2.0 * x;
        if x >= 0.0 && twice.fract() == 0.0 && twice <= u32::MAX as f64 {
            return Ok(SpinQuantumNumber::from_twice(twice as u32));
        }
        return Err(PyValueError::new_err(format!("{x} is not a non-negative integer or half-integer")));
    }
    Err(PyValueError::new_err("expected a Spin, a string such as '3/2', or a number"))
}

fn twice_m(m: f64) -> PyResult<i32> {
    let t = 2.0 * m;
    if t.fract() != 0.0 {
        return Err(PyValueError::new_err(format!("{m} is not an integer or half-integer projection")));
    }
    Ok(t as i32)
}

fn prior_of(name: &str) -> PyResult<PriorKind> {
    match name {
        "pap" => Ok(PriorKind::ParallelAntiparallel),
        "uniform" => Ok(PriorKind::UniformDirections),
        _ => Err(PyValueError::new_err(format!("prior must be 'pap' or 'uniform', got '{name}'"))),
    }
}

fn povm_of(name: &str, j1: SpinQuantumNumber, j2: SpinQuantumNumber) -> PyResult<RotInvariantPovm> {
    let half = SpinQuantumNumber::HALF;
    match name {
        "optimal" => Ok(RotInvariantPovm::optimal(j1, j2)),
        "local" if j1 == half => optimal_local_povm(j2).map_err(to_py),
        "local" if j2 == half => {
            let p = optimal_local_povm(j1).map_err(to_py)?;
            RotInvariantPovm::new(j1, j2, p.elements).map_err(to_py)
        }
        "local" => Err(PyValueError::new_err("the local measurement needs one spin-1/2")),
        _ => Err(PyValueError::new_err(format!("povm must be 'optimal' or 'local', got '{name}'"))),
    }
}

/// Parse a spin label.
#[pyfunction]
fn spin(j: &Bound<'_, PyAny>) -> PyResult<PySpin> {
    spin_of(j).map(PySpin)
}

/// Allowed total spins `|j1 - j2| … j1 + j2`.
#[pyfunction]
fn total_spins(j1: &Bound<'_, PyAny>, j2: &Bound<'_, PyAny>) -> PyResult<Vec<PySpin>> {
    Ok(total_j_values(spin_of(j1)?, spin_of(j2)?).into_iter().map(PySpin).collect())
}

/// Clebsch-Gordan coefficient `<j1 m1; j2 m2 | J M>` (Condon-Shortley).
#[pyfunction]
#[pyo3(name = "clebsch_gordan")]
#[allow(non_snake_case)]
fn py_clebsch_gordan(
    j1: &Bound<'_, PyAny>,
    m1: f64,
    j2: &Bound<'_, PyAny>,
    m2: f64,
    J: &Bound<'_, PyAny>,
    M: f64,
) -> PyResult<f64> {
    clebsch_gordan(spin_of(j1)?, spin_of(j2)?, twice_m(m1)?, twice_m(m2)?, spin_of(J)?, twice_m(M)?).map_err(to_py)
}

/// `[(J, p(J|alpha))]` for a coherent pair at relative angle `alpha`.
#[pyfunction]
fn outcome_probabilities(j1: &Bound<'_, PyAny>, j2: &Bound<'_, PyAny>, alpha: f64) -> PyResult<Vec<(PySpin, f64)>> {
    let (a, b) = (spin_of(j1)?, spin_of(j2)?);
    // validates alpha
    outcome_probability(a, b, total_j_values(a, b)[0], alpha).map_err(to_py)?;
    let model = AngleModel::new(a, b).map_err(to_py)?;
    Ok(model.total_js().into_iter().map(PySpin).zip(model.probabilities(alpha)).collect())
}

/// Outcome probabilities, information gains and their average, as a dict.
#[pyfunction]
#[pyo3(signature = (j1, j2, prior = "pap", povm = "optimal"))]
fn report<'py>(
    py: Python<'py>,
    j1: &Bound<'py, PyAny>,
    j2: &Bound<'py, PyAny>,
    prior: &str,
    povm: &str,
) -> PyResult<Bound<'py, PyDict>> {
    let (a, b) = (spin_of(j1)?, spin_of(j2)?);
    let povm = povm_of(povm, a, b)?;
    let model = AngleModel::new(a, b).map_err(to_py)?;
    let r = average_information_gain(&model, &AngleDistribution::from_kind(prior_of(prior)?), &povm).map_err(to_py)?;
    let outcomes = PyList::empty(py);
    for o in &r.outcomes {
        let d = PyDict::new(py);
        d.set_item("label", &o.label)?;
        d.set_item("p", o.probability)?;
        d.set_item("I_bits", o.information_bits)?;
        match o.posterior.as_ref().map(|p| &p.distribution) {
            Some(AngleDistribution::Discrete(s)) => d.set_item("posterior", s.clone())?,
            Some(dist) => d.set_item("posterior_map", relspin::map_estimate(dist))?,
            None => d.set_item("posterior", py.None())?,
        }
        outcomes.append(d)?;
    }
    let out = PyDict::new(py);
    out.set_item("outcomes", outcomes)?;
    out.set_item("I_av_bits", r.average_bits)?;
    Ok(out)
}

/// Average gain for spin-1/2 with each spin in `js` under scenario `a`-`d`.
#[pyfunction]
fn curve(js: Vec<Bound<'_, PyAny>>, scenario: char) -> PyResult<Vec<f64>> {
    let scenario = Scenario::from_letter(scenario)
        .ok_or_else(|| PyValueError::new_err(format!("scenario must be one of a, b, c, d, got '{scenario}'")))?;
    let js: Vec<SpinQuantumNumber> = js.iter().map(spin_of).collect::<PyResult<_>>()?;
    Ok(infogain_curve(&js, scenario).map_err(to_py)?.into_iter().map(|r| r.average_bits).collect())
}

/// Smallest `x` with `Π_- + x Π_+` PPT on spin-1/2 ⊗ spin-j.
#[pyfunction]
#[pyo3(name = "ppt_threshold")]
fn py_ppt_threshold(j: &Bound<'_, PyAny>) -> PyResult<f64> {
    ppt_threshold(spin_of(j)?).map_err(to_py)
}

/// Two-qubit Werner state as nested lists of complex numbers.
#[pyfunction]
#[pyo3(name = "werner_state")]
fn py_werner_state<'py>(py: Python<'py>, p: f64) -> PyResult<Vec<Vec<Bound<'py, PyComplex>>>> {
    let w = werner_state(p).map_err(to_py)?;
    let m = w.matrix();
    Ok((0..m.nrows())
        .map(|r| (0..m.ncols()).map(|c| PyComplex::from_doubles(py, m[(r, c)].re, m[(r, c)].im)).collect())
        .collect())
}

/// Monte Carlo experiment summary as a dict.
#[pyfunction]
#[pyo3(signature = (j1, j2, n, prior = "pap", povm = "optimal", seed = 0))]
fn simulate<'py>(
    py: Python<'py>,
    j1: &Bound<'py, PyAny>,
    j2: &Bound<'py, PyAny>,
    n: usize,
    prior: &str,
    povm: &str,
    seed: u64,
) -> PyResult<Bound<'py, PyDict>> {
    let (a, b) = (spin_of(j1)?, spin_of(j2)?);
    let povm = povm_of(povm, a, b)?;
    let prior = AngleDistribution::from_kind(prior_of(prior)?);
    let s = py
        .detach(|| run_experiment(a, b, &prior, &povm, n, RandomSeed(seed)))
        .map_err(to_py)?;
    let out = PyDict::new(py);
    out.set_item("n_trials", s.n_trials)?;
    out.set_item("labels", s.labels)?;
    out.set_item("counts", s.counts)?;
    out.set_item("frequencies", s.frequencies)?;
    out.set_item("frequency_std_errors", s.frequency_std_errors)?;
    out.set_item("mean_gain_bits", s.mean_gain_bits)?;
    out.set_item("gain_std_error", s.gain_std_error)?;
    out.set_item("analytic_I_av_bits", s.analytic_average_bits)?;
    out.set_item("analytic_probabilities", s.analytic_probabilities)?;
    Ok(out)
}

#[pymodule]
fn relspin_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySpin>()?;
    m.add_function(wrap_pyfunction!(spin, m)?)?;
    m.add_function(wrap_pyfunction!(total_spins, m)?)?;
    m.add_function(wrap_pyfunction!(py_clebsch_gordan, m)?)?;
    m.add_function(wrap_pyfunction!(outcome_probabilities, m)?)?;
    m.add_function(wrap_pyfunction!(report, m)?)?;
    m.add_function(wrap_pyfunction!(curve, m)?)?;
    m.add_function(wrap_pyfunction!(py_ppt_threshold, m)?)?;
    m.add_function(wrap_pyfunction!(py_werner_state, m)?)?;
    m.add_function(wrap_pyfunction!(simulate, m)?)?;
    Ok(())
}

