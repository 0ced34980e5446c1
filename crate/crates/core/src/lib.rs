//! Optimal joint and local measurements for estimating the relative angle
//! between two spins prepared in SU(2) coherent states.
//!
//! Rotationally invariant measurements are weighted sums of the total angular
//! momentum projectors `Π_J`; the best one is the projective measurement of
//! `J` itself. The modules build that machinery from the spin representations
//! up:
//!
//! - [`angular`]: spin operators, Wigner rotation matrices, coherent states
//! - [`coupling`]: Clebsch-Gordan coefficients, total-`J` blocks, projectors
//! - [`states`]: coherent pairs, collective rotations, rotational averaging
//! - [`estimation`]: priors, Bayes updates, information gain, MAP estimates
//! - [`locc`]: partial transposes, PPT thresholds, the local protocol
//! - [`sim`]: Haar sampling and Monte Carlo experiments

pub mod angular;
pub mod coupling;
mod error;
pub mod estimation;
pub mod linalg;
pub mod locc;
pub mod quadrature;
pub mod sim;
mod spin;
pub mod states;

pub use angular::{coherent_state, rotation_matrix, Direction, Rotation, StateVector};
pub use coupling::{clebsch_gordan, decomposition, projector, total_j_values, CouplingDecomposition, Projector};
pub use error::{Error, Result};
pub use estimation::{
    average_information_gain, bayes_update, born_limit_check, infogain_curve, information_gain, map_estimate,
    outcome_probability, AngleDistribution, AngleModel, EstimationReport, PosteriorOverAngle, PovmKind, PriorKind,
    PriorOverAngle, RotInvariantPovm, Scenario,
};
pub use linalg::Operator;
pub use locc::{locc_protocol_statistics, optimal_local_povm, partial_transpose, ppt_threshold, LoccProtocolConfig};
pub use sim::{haar_rotation, run_experiment, sample_outcome, ExperimentSummary, RandomSeed};
pub use spin::SpinQuantumNumber;
pub use states::{
    collective_rotate, invariant_average, product_coherent_pair, werner_state, DensityMatrix, InvariantState,
};
