use serde::{Deserialize, Serialize};

use super::Summary;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SizeDiagnostic {
    pub n: u64,
    pub mean: f64,
    /// Variance across trials.
    pub dispersion: f64,
    pub ci_half: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub sizes: Vec<SizeDiagnostic>,
    /// Successive differences of the means.
    pub drift: Vec<f64>,
    /// Sizes whose dispersion did not drop below the previous size's.
    pub non_shrinking: Vec<u64>,
}

impl ConvergenceReport {
    pub fn dispersion_shrinks(&self) -> bool {
        self.non_shrinking.is_empty()
    }
}

/// Per-size dispersion and mean drift of a sequence like `𝓡_n / n`.
/// No rate is asserted; the report only flags sizes where dispersion stalls.
pub fn convergence_diagnostic(series: &[(u64, Summary)]) -> ConvergenceReport {
    let sizes: Vec<SizeDiagnostic> = series
        .iter()
        .map(|(n, s)| SizeDiagnostic {
            n: *n,
            mean: s.mean,
            dispersion: s.variance.unwrap_or(0.0),
            ci_half: s.ci_half,
        })
        .collect();
    let drift = sizes.windows(2).map(|w| w[1].mean - w[0].mean).collect();
    let non_shrinking = sizes
        .windows(2)
        .filter(|w| w[1].dispersion >= w[0].dispersion && w[0].dispersion > 0.0)
        .map(|w| w[1].n)
        .collect();
    ConvergenceReport {
        sizes,
        drift,
        non_shrinking,
    }
}
