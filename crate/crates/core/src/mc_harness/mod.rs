//! Monte Carlo experiments: trial fan-out, exact order-independent
//! reduction, escape estimates, log–log fits and convergence diagnostics.

mod diagnostic;
mod experiment;
mod fit;
mod stats;

pub use diagnostic::{convergence_diagnostic, ConvergenceReport, SizeDiagnostic};
pub use experiment::{
    estimate_escape, expected_exponent, run_experiment, Estimate, ExperimentResult, ExperimentSpec,
    ModelSpec, ResultRow, Statistic, DEFAULT_MAX_WORK,
};
pub use fit::{scaling_fit, ScalingFit};
pub use stats::{
    chi_square_p_value, ks_critical, ks_statistic, normal_quantile, total_variation, Summary,
    TrialStats,
};
